#include "tt/collapse.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tt/canonical.hpp"
#include "tt/catalog.hpp"
#include "tt/lp.hpp"
#include "tt/moves.hpp"

namespace tt {

bigon_boundary boundary_of(const track& t, const face_map& fm, int region) {
    auto& reg = fm.regions[region];
    if (!reg.bigon()) throw precondition_error("region " + std::to_string(region) + " is not a bigon");
    bigon_boundary b;
    b.region = region;
    b.E = reg.sides[0];
    for (auto it = reg.sides[1].rbegin(); it != reg.sides[1].rend(); ++it) b.F.push_back(*it ^ 1);
    b.P = t.at[b.E.front()].sw;
    b.Q = t.at[b.E.back() ^ 1].sw;
    std::map<int, int> uses;
    for (auto& side : reg.sides)
        for (int d : side) uses[branch_of(d)]++;
    for (auto [br, n] : uses)
        if (n > 1) b.selfint.push_back(br);
    struct passage {
        int sw, b1, b2;
    };
    std::vector<passage> inner;
    for (auto& side : reg.sides)
        for (size_t i = 0; i + 1 < side.size(); ++i) inner.push_back({t.at[side[i + 1]].sw, branch_of(side[i]), branch_of(side[i + 1])});
    std::vector<int> sws;
    for (auto& p : inner) sws.push_back(p.sw);
    // a cusp counts as a passage through its two sides' end branches
    inner.push_back({b.P, branch_of(b.E.front()), branch_of(b.F.front())});
    inner.push_back({b.Q, branch_of(b.E.back()), branch_of(b.F.back())});
    sws.push_back(b.P);
    sws.push_back(b.Q);
    std::sort(sws.begin(), sws.end());
    for (size_t i = 0; i + 1 < sws.size(); ++i)
        if (sws[i] == sws[i + 1] && (b.repeated.empty() || b.repeated.back() != sws[i])) b.repeated.push_back(sws[i]);
    b.embedded = b.selfint.empty() && b.repeated.empty();
    std::set<int> iso;
    for (size_t i = 0; i < inner.size(); ++i)
        for (size_t j = i + 1; j < inner.size(); ++j) {
            auto& x = inner[i];
            auto& y = inner[j];
            if (x.sw != y.sw) continue;
            if (x.b1 == y.b1 || x.b1 == y.b2 || x.b2 == y.b1 || x.b2 == y.b2) continue;
            iso.insert(x.sw);
        }
    b.isolated.assign(iso.begin(), iso.end());
    return b;
}

namespace {

// merge the two branches at a bivalent switch: tangential weights add, transverse weights agree
void dissolve(track& t, weights& nu, weights& lam, std::vector<int>& bij, int s) {
    auto m = dissolve_bivalent(t, s);
    weights n2(m.t.nbr, rat(0)), l2(m.t.nbr, rat(0));
    for (int b = 0; b < t.nbr; ++b) {
        n2[m.bij[b]] += nu[b];
        l2[m.bij[b]] = lam[b];
    }
    for (int& x : bij)
        if (x >= 0) x = m.bij[x];
    t = std::move(m.t);
    nu = std::move(n2);
    lam = std::move(l2);
}

std::vector<int> replace_pair(std::vector<int> v, int first, int second, int by) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] == first && v[i + 1] == second) {
            v[i] = by;
            v.erase(v.begin() + i + 1);
            return v;
        }
    throw structural_error("bigon cusp halves are not adjacent");
}

}  // namespace

bigon_collapse collapse_bigon(const track& t, const weights& nu, const weights& lambda, int region) {
    face_map fm = trace_regions(t);
    bigon_boundary bb = boundary_of(t, fm, region);
    if (!bb.embedded) throw precondition_error("bigon boundary is not embedded");
    const auto& E = bb.E;
    const auto& F = bb.F;
    auto prefix = [&](const std::vector<int>& S) {
        std::vector<rat> x{0};
        for (int d : S) x.push_back(x.back() + nu[branch_of(d)]);
        return x;
    };
    auto xe = prefix(E), xf = prefix(F);
    if (xe.back() != xf.back()) throw precondition_error("bigon sides carry different weight");
    std::set<rat> cut;
    for (size_t i = 1; i + 1 < xe.size(); ++i) cut.insert(xe[i]);
    for (size_t i = 1; i + 1 < xf.size(); ++i) cut.insert(xf[i]);
    std::vector<rat> pts{0};
    pts.insert(pts.end(), cut.begin(), cut.end());
    pts.push_back(xe.back());
    int m = (int)pts.size() - 1;

    std::vector<bool> on_boundary(t.nbr, false);
    for (int d : E) on_boundary[branch_of(d)] = true;
    for (int d : F) on_boundary[branch_of(d)] = true;
    bigon_collapse out;
    out.bij.assign(t.nbr, -1);
    int nb = 0;
    for (int b = 0; b < t.nbr; ++b)
        if (!on_boundary[b]) out.bij[b] = nb++;
    std::vector<int> piece(m);
    for (int k = 0; k < m; ++k) piece[k] = nb + k;
    int nbr = nb + m;
    auto nh = [&](int h) {
        int b = out.bij[branch_of(h)];
        if (b < 0) throw structural_error("bigon boundary meets itself");
        return 2 * b + (h & 1);
    };
    auto mapped = [&](const std::vector<int>& v, size_t from, size_t to) {
        std::vector<int> r;
        for (size_t i = from; i < to; ++i) r.push_back(nh(v[i]));
        return r;
    };
    // which segment of a side covers the piece starting at p
    auto cover = [&](const std::vector<rat>& x, const rat& p) {
        int i = 0;
        while (!(x[i] <= p && p < x[i + 1])) ++i;
        return i;
    };

    std::set<int> gone;
    for (size_t i = 0; i + 1 < E.size(); ++i) gone.insert(t.at[E[i + 1]].sw);
    for (size_t i = 0; i + 1 < F.size(); ++i) gone.insert(t.at[F[i + 1]].sw);

    track r;
    r.bigons = t.bigons;
    r.nbr = nbr;
    std::vector<int> smap(t.nsw(), -1);
    for (int s = 0; s < t.nsw(); ++s) {
        if (gone.count(s)) continue;
        smap[s] = r.nsw();
        std::array<std::vector<int>, 2> ns;
        for (int k = 0; k < 2; ++k) {
            auto A = away(t, s, k);
            if (s == bb.P && t.at[E.front()].side == k) A = replace_pair(A, F.front(), E.front(), -1);
            if (s == bb.Q && t.at[E.back() ^ 1].side == k) A = replace_pair(A, E.back() ^ 1, F.back() ^ 1, -2);
            for (int h : A) ns[k].push_back(h == -1 ? 2 * piece[0] : h == -2 ? 2 * piece[m - 1] + 1 : nh(h));
        }
        r.sw.push_back({});
        set_away(r, r.nsw() - 1, 0, ns[0]);
        set_away(r, r.nsw() - 1, 1, ns[1]);
    }
    // halves meeting the bigon sides from outside, at a cut point
    std::map<rat, std::array<std::vector<int>, 4>> rest;  // east E, west E, east F, west F
    for (size_t i = 0; i + 1 < E.size(); ++i) {
        int v = t.at[E[i + 1]].sw;
        auto eo = away(t, v, t.at[E[i + 1]].side);
        auto ei = away(t, v, t.at[E[i] ^ 1].side);
        if (eo.front() != E[i + 1] || ei.back() != (E[i] ^ 1)) throw structural_error("bigon side is not outermost at its switch");
        auto& R = rest[xe[i + 1]];
        R[0] = mapped(eo, 1, eo.size());
        R[1] = mapped(ei, 0, ei.size() - 1);
    }
    for (size_t j = 0; j + 1 < F.size(); ++j) {
        int w = t.at[F[j + 1]].sw;
        auto fo = away(t, w, t.at[F[j + 1]].side);
        auto fi = away(t, w, t.at[F[j] ^ 1].side);
        if (fo.back() != F[j + 1] || fi.front() != (F[j] ^ 1)) throw structural_error("bigon side is not outermost at its switch");
        auto& R = rest[xf[j + 1]];
        R[2] = mapped(fo, 0, fo.size() - 1);
        R[3] = mapped(fi, 1, fi.size());
    }
    for (int k = 0; k + 1 < m; ++k) {
        auto& R = rest.at(pts[k + 1]);
        std::vector<int> east = R[2], west = R[1];
        east.push_back(2 * piece[k + 1]);
        east.insert(east.end(), R[0].begin(), R[0].end());
        west.push_back(2 * piece[k] + 1);
        west.insert(west.end(), R[3].begin(), R[3].end());
        r.sw.push_back({});
        set_away(r, r.nsw() - 1, 0, east);
        set_away(r, r.nsw() - 1, 1, west);
    }

    out.nu.assign(nbr, rat(0));
    out.lambda.assign(nbr, rat(0));
    for (int b = 0; b < t.nbr; ++b)
        if (out.bij[b] >= 0) {
            out.nu[out.bij[b]] = nu[b];
            out.lambda[out.bij[b]] = lambda[b];
        }
    for (int k = 0; k < m; ++k) {
        out.nu[piece[k]] = pts[k + 1] - pts[k];
        out.lambda[piece[k]] = lambda[branch_of(E[cover(xe, pts[k])])] + lambda[branch_of(F[cover(xf, pts[k])])];
    }
    auto piece_at = [&](const std::vector<rat>& x, int i) {
        for (int k = 0; k < m; ++k)
            if (x[i] <= pts[k] && pts[k] < x[i + 1]) return piece[k];
        throw structural_error("segment without a piece");
    };
    for (int d : t.punct) {
        int b = branch_of(d);
        if (out.bij[b] >= 0) {
            r.punct.push_back(nh(d));
            continue;
        }
        auto ie = std::find(E.begin(), E.end(), d ^ 1);
        auto jf = std::find(F.begin(), F.end(), d);
        if (ie != E.end()) r.punct.push_back(2 * piece_at(xe, int(ie - E.begin())) + 1);
        else if (jf != F.end()) r.punct.push_back(2 * piece_at(xf, int(jf - F.begin())));
        else throw structural_error("puncture inside a bigon");
    }
    for (int b : t.marks) {
        if (out.bij[b] >= 0) {
            r.marks.push_back(out.bij[b]);
            continue;
        }
        for (size_t i = 0; i < E.size(); ++i)
            if (branch_of(E[i]) == b) r.marks.push_back(piece_at(xe, (int)i));
        for (size_t j = 0; j < F.size(); ++j)
            if (branch_of(F[j]) == b) r.marks.push_back(piece_at(xf, (int)j));
    }
    std::sort(r.marks.begin(), r.marks.end());
    r.marks.erase(std::unique(r.marks.begin(), r.marks.end()), r.marks.end());
    r.index();
    std::vector<int> ends{smap[bb.P], smap[bb.Q]};
    std::sort(ends.rbegin(), ends.rend());
    for (int s : ends)
        if (r.valence(s) == 2) dissolve(r, out.nu, out.lambda, out.bij, s);
    check_structure(r);
    out.t = std::move(r);
    return out;
}

std::optional<weights> fit_tangential(const track& t, const weights& guess, const std::vector<bool>& fixed) {
    lp_problem p;
    int n = t.nbr, sv = n;
    p.nvars = n + 1;
    auto side_coef = [&](const std::vector<int>& side, std::vector<rat>& c, int sign) {
        for (int d : side) c[branch_of(d)] += sign;
    };
    auto emit = [&](const std::vector<rat>& c, sense s, rat slack, rat rhs) {
        lp_row row;
        for (int b = 0; b < n; ++b)
            if (c[b] != 0) row.coef.emplace_back(b, c[b]);
        if (slack != 0) row.coef.emplace_back(sv, slack);
        row.s = s;
        row.rhs = rhs;
        p.rows.push_back(row);
    };
    for (auto& reg : trace_regions(t).regions) {
        if (reg.trigon()) {
            for (int i = 0; i < 3; ++i) {
                std::vector<rat> c(n, rat(0));
                side_coef(reg.sides[i], c, 1);
                side_coef(reg.sides[(i + 1) % 3], c, -1);
                side_coef(reg.sides[(i + 2) % 3], c, -1);
                emit(c, sense::le, 1, 0);
            }
        } else if (reg.bigon()) {
            std::vector<rat> c(n, rat(0));
            side_coef(reg.sides[0], c, 1);
            side_coef(reg.sides[1], c, -1);
            emit(c, sense::eq, 0, 0);
        }
    }
    for (int b = 0; b < n; ++b) {
        std::vector<rat> c(n, rat(0));
        c[b] = 1;
        emit(c, sense::ge, -1, 0);
        if (b < (int)fixed.size() && fixed[b]) emit(c, sense::eq, 0, guess[b]);
    }
    emit(std::vector<rat>(n, rat(0)), sense::le, 1, 1);
    p.obj.assign(n + 1, rat(0));
    p.obj[sv] = 1;
    auto res = lp_solve(p);
    if (res.status != lp_status::optimal || res.x[sv] <= 0) return std::nullopt;
    return weights(res.x.begin(), res.x.begin() + n);
}

quadruple dual_quadruple(const duality& d, const weights& mu, std::mt19937_64& rng) {
    quadruple q;
    q.eta = d.dual;
    q.nu = sneak_up(d, mu).mu_star;
    q.lambda = generic_guide(d.dual, rng);
    return q;
}

namespace {

struct state {
    track t;
    weights nu, lam;
    int refits = 0;
};

int bigon_count(const face_map& fm) {
    int n = 0;
    for (auto& r : fm.regions) n += r.bigon();
    return n;
}

int canonical_dart(const canonical_form& cf, int d) {
    int b = branch_of(d);
    return 2 * cf.bmap[b] + ((d & 1) ^ (int)cf.swap[b]);
}

// keep the measure where it is still valid, solve for the rest, or start afresh
void refit(state& s, const std::vector<int>& touched) {
    bool positive = true;
    for (auto& w : s.nu) positive = positive && w > 0;
    if (positive && satisfies_tangential(s.t, s.nu, true)) return;
    // solved on the canonical relabeling so the answer does not depend on labels
    canonical_form cf = canonical(s.t);
    int n = s.t.nbr;
    weights g(n);
    std::vector<bool> fixed(n, true);
    for (int b = 0; b < n; ++b) g[cf.bmap[b]] = s.nu[b];
    for (int b : touched) fixed[cf.bmap[b]] = false;
    auto w = fit_tangential(cf.form, g, fixed);
    if (!w) {
        s.refits++;
        w = fit_tangential(cf.form, g, {});
    }
    if (!w) throw collapse_error("no positive strict tangential measure after a move");
    for (int b = 0; b < n; ++b) s.nu[b] = (*w)[cf.bmap[b]];
}

void check_carried(const state& s, const std::string& what) {
    for (auto& w : s.lam)
        if (w < 0) throw collapse_error(what + " leaves the guide with a negative weight");
    if (!satisfies_switches(s.t, s.lam)) throw collapse_error(what + " breaks a switch condition of the guide");
}

// returns the branches whose ends moved
std::vector<int> do_comb(state& s, int sw) {
    try {
        auto r = comb_step(s.t, sw, s.nu, &s.lam);
        s.t = std::move(r.t);
        s.nu = std::move(r.nu);
        s.lam = std::move(*r.lam);
        return {r.new_branch};
    } catch (const infeasible_error&) {
        auto c = comb_track(s.t, sw);
        s.lam.push_back(s.lam[c.outer[0]] + s.lam[c.outer[1]]);
        s.nu.push_back(0);
        s.t = std::move(c.t);
        std::vector<int> touched{c.outer[0], c.outer[1], c.new_branch};
        refit(s, touched);
        return touched;
    }
}

}  // namespace

collapse_run lambda_collapse(const quadruple& q, int budget) {
    if (!satisfies_switches(q.eta, q.lambda)) throw precondition_error("guide does not satisfy the switch conditions");
    for (auto& w : q.lambda)
        if (w <= 0) throw precondition_error("guide is not positive");
    for (auto& w : q.nu)
        if (w <= 0) throw precondition_error("tangential measure is not positive");
    if (!satisfies_tangential(q.eta, q.nu, true)) throw precondition_error("tangential measure is not strict on trigons");
    collapse_run run;
    run.budget = budget >= 0 ? budget : 4 * q.eta.nbr;
    state s{q.eta, q.nu, q.lambda, 0};
    int anchor = -1;  // a dart on the boundary of the bigon being worked on
    auto log = [&](const std::string& action, int bigons, int selfint) {
        run.steps.push_back({action, bigons, selfint});
        if ((int)run.steps.size() > run.budget) throw collapse_error("step budget exceeded");
    };
    // a boundary dart of the current bigon avoiding the branches a move touches
    auto keep_anchor = [&](const bigon_boundary& bb, const std::vector<int>& touched) {
        std::vector<int> all = bb.E;
        for (int d : bb.F) all.push_back(d ^ 1);
        for (int d : all)
            if (std::find(touched.begin(), touched.end(), branch_of(d)) == touched.end()) return d;
        return -1;
    };
    while (true) {
        face_map fm = trace_regions(s.t);
        int nb = bigon_count(fm);
        if (nb == 0) break;
        canonical_form cf = canonical(s.t);
        if (anchor < 0 || anchor >= 2 * s.t.nbr || !fm.regions[fm.of_dart[anchor]].bigon()) {
            int best = -1;
            for (auto& reg : fm.regions) {
                if (!reg.bigon()) continue;
                for (int d : reg.darts())
                    if (best < 0 || canonical_dart(cf, d) < canonical_dart(cf, best)) best = d;
            }
            anchor = best;
        }
        int region = fm.of_dart[anchor];
        auto bb = boundary_of(s.t, fm, region);
        int si = (int)bb.selfint.size();
        if (bb.embedded) {
            auto c = collapse_bigon(s.t, s.nu, s.lam, region);
            s.t = std::move(c.t);
            s.nu = std::move(c.nu);
            s.lam = std::move(c.lambda);
            refit(s, {});
            check_carried(s, "bigon collapse");
            int after = bigon_count(trace_regions(s.t));
            run.bigon_events.push_back({nb, after});
            log("collapse-bigon", after, 0);
            anchor = -1;
            continue;
        }
        if (bb.P == bb.Q) {
            auto touched = do_comb(s, bb.P);
            anchor = keep_anchor(bb, touched);
            check_carried(s, "comb");
            log("comb-cusp s" + std::to_string(bb.P), nb, si);
            continue;
        }
        if (!bb.isolated.empty()) {
            int sw = bb.isolated.front();
            auto touched = do_comb(s, sw);
            anchor = keep_anchor(bb, touched);
            check_carried(s, "comb");
            log("comb-isolated s" + std::to_string(sw), nb, si);
            continue;
        }
        auto at_cusp = [&](int b) {
            for (int h : {2 * b, 2 * b + 1})
                if (s.t.at[h].sw == bb.P || s.t.at[h].sw == bb.Q) return true;
            return false;
        };
        auto by_label = [&](std::vector<int> v) {
            std::sort(v.begin(), v.end(), [&](int a, int b) { return cf.bmap[a] < cf.bmap[b]; });
            return v;
        };
        std::vector<int> free_si, cusp_si;
        for (int b : bb.selfint) (at_cusp(b) ? cusp_si : free_si).push_back(b);
        if (!free_si.empty())
            for (int b : free_si)
                if (classify_branch(s.t, b) != branch_kind::large) throw collapse_error("self-intersection branch away from the cusps is not large");
        // large branches at a cusp are split as well
        for (int b : cusp_si)
            if (classify_branch(s.t, b) == branch_kind::large) free_si.push_back(b);
        // moves below need trivalent ends; comb the target's ends first
        auto comb_ends = [&](int b) {
            for (int h : {2 * b, 2 * b + 1}) {
                int sw = s.t.at[h].sw;
                if (s.t.valence(sw) < 4) continue;
                auto touched = do_comb(s, sw);
                anchor = keep_anchor(bb, touched);
                check_carried(s, "comb");
                log("comb-end s" + std::to_string(sw), nb, si);
                return true;
            }
            return false;
        };
        if (!free_si.empty()) {
            int e = by_label(free_si).front();
            if (comb_ends(e)) continue;
            dir d = mu_direction(s.t, s.lam, e);
            if (d == dir::collision) throw collapse_error("guide ties at a self-intersection branch");
            auto k = split_corners(s.t, e);
            s.lam = transport_split(s.t, s.lam, e, d);
            s.t = split(s.t, e, d);
            refit(s, {e});
            anchor = keep_anchor(bb, {e, branch_of(k.a), branch_of(k.b), branch_of(k.c), branch_of(k.d)});
            check_carried(s, "split");
            log(std::string("split b") + std::to_string(e) + " " + dir_char(d), nb, si);
            continue;
        }
        if (cusp_si.empty()) {
            // a loop at a cusp: the switch is passed twice through four distinct halves
            int sw = bb.repeated.front();
            if (s.t.valence(sw) < 4) throw collapse_error("bigon boundary repeats a trivalent switch");
            auto touched = do_comb(s, sw);
            anchor = keep_anchor(bb, touched);
            check_carried(s, "comb");
            log("comb-loop s" + std::to_string(sw), nb, si);
            continue;
        }
        int b = by_label(cusp_si).front();
        if (comb_ends(b)) continue;
        auto kind = classify_branch(s.t, b);
        if (kind == branch_kind::small) {
            auto c = collapse(s.t, b);
            if (!c) throw collapse_error("small self-intersection branch at a cusp cannot be collapsed");
            s.t = std::move(c->t);
            auto k = split_corners(s.t, b);
            s.lam[b] = s.lam[branch_of(k.a)] + s.lam[branch_of(k.b)];
            refit(s, {b});
            anchor = keep_anchor(bb, {b});
            check_carried(s, "collapse");
            log("collapse b" + std::to_string(b), nb, si);
        } else if (kind == branch_kind::mixed) {
            s.t = shift(s.t, b);
            int hL = s.t.large_half(2 * b) ? 2 * b : 2 * b + 1;
            rat sum = 0;
            auto& sl = s.t.at[hL];
            for (int h : s.t.sw[sl.sw][1 - sl.side]) sum += s.lam[branch_of(h)];
            s.lam[b] = sum;
            refit(s, {b});
            anchor = keep_anchor(bb, {b});
            check_carried(s, "shift");
            log("shift b" + std::to_string(b), nb, si);
        } else {
            throw collapse_error("large self-intersection branch at a cusp");
        }
    }
    log("stop", 0, 0);
    s.t.bigons = false;
    while (auto sw = first_comb_switch(s.t)) {
        do_comb(s, *sw);
        check_carried(s, "comb");
        log("comb-generic s" + std::to_string(*sw), 0, 0);
    }
    run.t = s.t;
    run.nu = s.nu;
    run.lambda = s.lam;
    run.refits = s.refits;
    run.report = completeness_surrogate(s.t);
    run.carries = satisfies_switches(s.t, s.lam);
    for (auto& w : s.lam) run.carries = run.carries && w > 0;
    return run;
}

std::string trace_line(int k, const collapse_step& s) {
    return "step" + std::to_string(k) + " " + s.action + " bigons=" + std::to_string(s.bigons) + " selfint=" + std::to_string(s.selfint);
}

}  // namespace tt
