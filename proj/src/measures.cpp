#include "tt/measures.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tt/moves.hpp"

namespace tt {

lp_problem transverse_system(const track& t) {
    lp_problem p;
    p.nvars = t.nbr;
    for (int s = 0; s < t.nsw(); ++s) {
        lp_row r;
        std::vector<rat> c(t.nbr, rat(0));
        for (int h : t.sw[s][0]) c[branch_of(h)] += 1;
        for (int h : t.sw[s][1]) c[branch_of(h)] -= 1;
        rat off = 0;
        for (int b = 0; b < t.nbr; ++b)
            if (c[b] != 0) {
                r.coef.emplace_back(b, c[b]);
                off += c[b];
            }
        r.s = sense::eq;
        r.rhs = -off;
        if (!r.coef.empty() || r.rhs != 0) p.rows.push_back(r);
    }
    p.obj.assign(t.nbr, rat(-1));
    return p;
}

lp_problem tangential_system(const track& t, bool strict) {
    lp_problem p;
    p.nvars = t.nbr + (strict ? 1 : 0);
    int tv = t.nbr;
    face_map fm = trace_regions(t);
    auto side_coef = [&](const std::vector<int>& side, std::vector<rat>& c, int sign) {
        for (int d : side) c[branch_of(d)] += sign;
    };
    auto emit = [&](const std::vector<rat>& c, sense s, bool slack) {
        lp_row r;
        rat off = 0;
        for (int b = 0; b < t.nbr; ++b)
            if (c[b] != 0) {
                r.coef.emplace_back(b, c[b]);
                off += c[b];
            }
        if (slack) r.coef.emplace_back(tv, rat(1));
        r.s = s;
        r.rhs = -off;
        p.rows.push_back(r);
    };
    for (auto& reg : fm.regions) {
        if (reg.trigon()) {
            for (int i = 0; i < 3; ++i) {
                std::vector<rat> c(t.nbr, rat(0));
                side_coef(reg.sides[i], c, 1);
                side_coef(reg.sides[(i + 1) % 3], c, -1);
                side_coef(reg.sides[(i + 2) % 3], c, -1);
                emit(c, sense::le, strict);
            }
        } else if (reg.bigon()) {
            std::vector<rat> c(t.nbr, rat(0));
            side_coef(reg.sides[0], c, 1);
            side_coef(reg.sides[1], c, -1);
            emit(c, sense::eq, false);
        }
    }
    if (strict) {
        lp_row cap;
        cap.coef.emplace_back(tv, rat(1));
        cap.s = sense::le;
        cap.rhs = 1;
        p.rows.push_back(cap);
        p.obj.assign(p.nvars, rat(0));
        p.obj[tv] = 1;
    } else {
        p.obj.assign(p.nvars, rat(-1));
    }
    return p;
}

std::optional<weights> positive_transverse(const track& t) {
    lp_result r = lp_solve(transverse_system(t));
    if (r.status != lp_status::optimal) return std::nullopt;
    weights w(t.nbr);
    for (int b = 0; b < t.nbr; ++b) w[b] = r.x[b] + 1;
    return w;
}

std::optional<weights> positive_tangential(const track& t, bool strict) {
    lp_result r = lp_solve(tangential_system(t, strict));
    if (r.status != lp_status::optimal) return std::nullopt;
    if (strict && r.x[t.nbr] <= 0) return std::nullopt;
    weights w(t.nbr);
    for (int b = 0; b < t.nbr; ++b) w[b] = r.x[b] + 1;
    return w;
}

bool satisfies_tangential(const track& t, const weights& nu, bool strict) {
    face_map fm = trace_regions(t);
    auto sw = [&](const std::vector<int>& side) {
        rat s = 0;
        for (int d : side) s += nu[branch_of(d)];
        return s;
    };
    for (auto& reg : fm.regions) {
        if (reg.trigon()) {
            rat r[3] = {sw(reg.sides[0]), sw(reg.sides[1]), sw(reg.sides[2])};
            for (int i = 0; i < 3; ++i) {
                rat rhs = r[(i + 1) % 3] + r[(i + 2) % 3];
                if (strict ? !(r[i] < rhs) : !(r[i] <= rhs)) return false;
            }
        } else if (reg.bigon()) {
            if (sw(reg.sides[0]) != sw(reg.sides[1])) return false;
        }
    }
    return true;
}

surrogate_report completeness_surrogate(const track& t) {
    surrogate_report r;
    r.maximal = is_maximal(t);
    r.generic = is_generic(t);
    r.recurrent = positive_transverse(t).has_value();
    r.transversely_recurrent = positive_tangential(t, true).has_value();
    return r;
}

bool is_subtrack(const track& t, const std::vector<int>& branches) {
    if (branches.empty()) return false;
    std::vector<bool> in(t.nbr, false);
    for (int b : branches) in[b] = true;
    for (int s = 0; s < t.nsw(); ++s) {
        bool side[2] = {false, false};
        for (int k = 0; k < 2; ++k)
            for (int h : t.sw[s][k])
                if (in[branch_of(h)]) side[k] = true;
        if (side[0] != side[1]) return false;
    }
    return true;
}

std::vector<int> positive_subtrack(const track& t, const weights& mu) {
    std::vector<int> out;
    for (int b = 0; b < t.nbr; ++b)
        if (mu[b] > 0) out.push_back(b);
    if (out.empty()) throw std::invalid_argument("measure has empty support");
    if (!is_subtrack(t, out)) throw std::logic_error("support of a switch-consistent measure is not a subtrack");
    return out;
}

extracted extract_subtrack(const track& t, const std::vector<int>& branches) {
    std::vector<int> bmap(t.nbr, -1);
    int nb = 0;
    std::vector<int> sorted = branches;
    std::sort(sorted.begin(), sorted.end());
    for (int b : sorted) bmap[b] = nb++;
    track r;
    r.nbr = nb;
    r.bigons = true;
    for (int s = 0; s < t.nsw(); ++s) {
        std::array<std::vector<int>, 2> ns;
        for (int k = 0; k < 2; ++k)
            for (int h : t.sw[s][k])
                if (bmap[branch_of(h)] >= 0) ns[k].push_back(2 * bmap[branch_of(h)] + (h & 1));
        if (ns[0].empty() && ns[1].empty()) continue;
        if (ns[0].empty() || ns[1].empty()) throw std::invalid_argument("branch set is not a subtrack");
        r.sw.push_back(ns);
    }
    for (int b : t.marks)
        if (bmap[b] >= 0) r.marks.push_back(bmap[b]);
    r.index();
    move_result m = smooth_bivalent(r);
    extracted e;
    e.t = m.t;
    e.bij.assign(t.nbr, -1);
    for (int b = 0; b < t.nbr; ++b)
        if (bmap[b] >= 0) e.bij[b] = m.bij[bmap[b]];
    return e;
}

}  // namespace tt
