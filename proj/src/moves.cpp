#include "tt/moves.hpp"

#include <algorithm>

namespace tt {

char dir_char(dir d) { return d == dir::right ? 'R' : d == dir::left ? 'L' : 'X'; }

dir parse_dir(const std::string& s) {
    if (s == "R" || s == "r" || s == "right") return dir::right;
    if (s == "L" || s == "l" || s == "left") return dir::left;
    if (s == "X" || s == "x" || s == "collision") return dir::collision;
    throw std::invalid_argument("bad direction '" + s + "'");
}

corners split_corners(const track& t, int e) {
    if (e < 0 || e >= t.nbr) throw precondition_error("no branch " + std::to_string(e));
    int h0 = 2 * e, h1 = 2 * e + 1;
    if (!t.large_half(h0) || !t.large_half(h1)) throw precondition_error("branch " + std::to_string(e) + " is not large");
    corners c;
    c.s1 = t.at[h0].sw;
    c.s2 = t.at[h1].sw;
    if (c.s1 == c.s2) throw precondition_error("large branch " + std::to_string(e) + " is a loop");
    auto Y = away(t, c.s1, 1 - t.at[h0].side);
    auto Z = away(t, c.s2, 1 - t.at[h1].side);
    if (Y.size() != 2 || Z.size() != 2) throw precondition_error("split needs trivalent ends at " + std::to_string(e));
    c.a = Y[1];
    c.b = Y[0];
    c.d = Z[0];
    c.c = Z[1];
    return c;
}

track split(const track& t, int e, dir d) {
    if (d == dir::collision) throw precondition_error("split direction must be R or L");
    corners k = split_corners(t, e);
    track r = t;
    reanchor_marks(r, {e});
    int h0 = 2 * e, h1 = 2 * e + 1;
    if (d == dir::right) {
        r.sw[k.s1] = {std::vector<int>{k.d, h0}, std::vector<int>{k.a}};
        r.sw[k.s2] = {std::vector<int>{k.c}, std::vector<int>{h1, k.b}};
    } else {
        r.sw[k.s1] = {std::vector<int>{h0, k.c}, std::vector<int>{k.b}};
        r.sw[k.s2] = {std::vector<int>{k.d}, std::vector<int>{k.a, h1}};
    }
    r.index();
    return r;
}

std::optional<collapse_result> collapse(const track& t, int f) {
    if (f < 0 || f >= t.nbr) throw precondition_error("no branch " + std::to_string(f));
    if (classify_branch(t, f) != branch_kind::small) throw precondition_error("branch " + std::to_string(f) + " is not small");
    int g0 = 2 * f, g1 = 2 * f + 1;
    int P = t.at[g0].sw, Q = t.at[g1].sw;
    if (P == Q) return std::nullopt;
    int fp = t.at[g0].side, fq = t.at[g1].side;
    if (t.sw[P][fp].size() != 2 || t.sw[P][1 - fp].size() != 1) return std::nullopt;
    if (t.sw[Q][fq].size() != 2 || t.sw[Q][1 - fq].size() != 1) return std::nullopt;
    auto AP = away(t, P, fp), AQ = away(t, Q, fq);
    bool lastP = AP[1] == g0, lastQ = AQ[1] == g1;
    int a, b, c, d;
    collapse_result res;
    if (lastP && lastQ) {
        res.d = dir::right;
        a = t.sw[P][1 - fp][0];
        d = AP[0];
        c = t.sw[Q][1 - fq][0];
        b = AQ[0];
    } else if (!lastP && !lastQ) {
        res.d = dir::left;
        b = t.sw[P][1 - fp][0];
        c = AP[1];
        d = t.sw[Q][1 - fq][0];
        a = AQ[1];
    } else {
        return std::nullopt;
    }
    track r = t;
    reanchor_marks(r, {f});
    r.sw[P] = {std::vector<int>{g0}, std::vector<int>{a, b}};
    r.sw[Q] = {std::vector<int>{d, c}, std::vector<int>{g1}};
    r.index();
    res.t = std::move(r);
    return res;
}

track shift(const track& t, int b) {
    if (b < 0 || b >= t.nbr) throw precondition_error("no branch " + std::to_string(b));
    if (classify_branch(t, b) != branch_kind::mixed) throw precondition_error("branch " + std::to_string(b) + " is not mixed");
    int hL = t.large_half(2 * b) ? 2 * b : 2 * b + 1;
    int hS = hL ^ 1;
    int u = t.at[hL].sw, v = t.at[hS].sw;
    if (u == v) throw precondition_error("mixed branch " + std::to_string(b) + " is a loop");
    auto U = away(t, u, 1 - t.at[hL].side);
    std::reverse(U.begin(), U.end());
    auto Vs = away(t, v, t.at[hS].side);
    std::reverse(Vs.begin(), Vs.end());
    auto Z = away(t, v, 1 - t.at[hS].side);
    if (U.size() != 2 || Vs.size() != 2) throw precondition_error("shift needs trivalent ends at " + std::to_string(b));
    std::vector<int> ub, vb;
    if (Vs[0] == hS) {
        ub = {U[1], Vs[1]};
        vb = {U[0], hS};
    } else {
        ub = {Vs[0], U[0]};
        vb = {hS, U[1]};
    }
    track r = t;
    reanchor_marks(r, {b});
    r.sw[u] = {std::vector<int>{hL}, ub};
    r.sw[v] = {Z, vb};
    r.index();
    return r;
}

namespace {

// drop branch e (already detached from every switch) and renumber
move_result drop_branch(const track& t, int e) {
    move_result m;
    m.bij.resize(t.nbr);
    for (int b = 0; b < t.nbr; ++b) m.bij[b] = b < e ? b : b == e ? -1 : b - 1;
    auto nh = [&](int h) { return 2 * m.bij[branch_of(h)] + (h & 1); };
    track r;
    r.nbr = t.nbr - 1;
    r.bigons = t.bigons;
    for (auto& s : t.sw) {
        std::array<std::vector<int>, 2> ns;
        for (int k = 0; k < 2; ++k)
            for (int h : s[k]) ns[k].push_back(nh(h));
        r.sw.push_back(ns);
    }
    for (int d : t.punct) r.punct.push_back(nh(d));
    for (int b : t.marks)
        if (b != e) r.marks.push_back(m.bij[b]);
    r.index();
    m.t = std::move(r);
    return m;
}

}  // namespace

move_result collide(const track& t, int e, bool smooth) {
    track r = split(t, e, dir::right);
    for (int h : {2 * e, 2 * e + 1}) {
        auto& side = r.sw[r.at[h].sw][r.at[h].side];
        side.erase(std::find(side.begin(), side.end(), h));
    }
    r.marks.erase(std::remove(r.marks.begin(), r.marks.end(), e), r.marks.end());
    move_result m = drop_branch(r, e);
    if (!smooth) return m;
    move_result s = smooth_bivalent(m.t);
    return {s.t, compose(m.bij, s.bij)};
}

move_result dissolve_bivalent(const track& t, int s) {
    if (t.sw[s][0].size() != 1 || t.sw[s][1].size() != 1) throw precondition_error("switch " + std::to_string(s) + " is not bivalent");
    int h1 = t.sw[s][0][0], h2 = t.sw[s][1][0];
    int B1 = branch_of(h1), B2 = branch_of(h2);
    if (B1 == B2) throw precondition_error("switch " + std::to_string(s) + " sits on a one-branch circle");
    track r = t;
    int far = h2 ^ 1;
    {
        auto& sl = r.at[far];
        r.sw[sl.sw][sl.side][sl.pos] = h1;
    }
    for (int& d : r.punct) {
        if (d == h2) d = h1 ^ 1;
        else if (d == (h2 ^ 1)) d = h1;
    }
    for (int& b : r.marks)
        if (b == B2) b = B1;
    r.sw.erase(r.sw.begin() + s);
    // B2 is now detached from every switch
    std::vector<std::array<std::vector<int>, 2>> keep = r.sw;
    r.at.clear();
    move_result m;
    m.bij.resize(t.nbr);
    for (int b = 0; b < t.nbr; ++b) m.bij[b] = b < B2 ? b : b == B2 ? -1 : b - 1;
    auto nh = [&](int h) { return 2 * m.bij[branch_of(h)] + (h & 1); };
    track o;
    o.nbr = t.nbr - 1;
    o.bigons = t.bigons;
    for (auto& sd : keep) {
        std::array<std::vector<int>, 2> ns;
        for (int k = 0; k < 2; ++k)
            for (int h : sd[k]) ns[k].push_back(nh(h));
        o.sw.push_back(ns);
    }
    for (int d : r.punct) o.punct.push_back(nh(d));
    for (int b : r.marks) o.marks.push_back(m.bij[b]);
    std::sort(o.marks.begin(), o.marks.end());
    o.marks.erase(std::unique(o.marks.begin(), o.marks.end()), o.marks.end());
    o.index();
    m.bij[B2] = m.bij[B1];
    m.t = std::move(o);
    return m;
}

move_result smooth_bivalent(const track& t) {
    move_result cur{t, {}};
    cur.bij.resize(t.nbr);
    for (int b = 0; b < t.nbr; ++b) cur.bij[b] = b;
    for (;;) {
        int found = -1;
        for (int s = 0; s < cur.t.nsw() && found < 0; ++s)
            if (cur.t.valence(s) == 2 && branch_of(cur.t.sw[s][0][0]) != branch_of(cur.t.sw[s][1][0])) found = s;
        if (found < 0) return cur;
        move_result m = dissolve_bivalent(cur.t, found);
        cur = {m.t, compose(cur.bij, m.bij)};
    }
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> out(first.size());
    for (size_t i = 0; i < first.size(); ++i) out[i] = first[i] < 0 ? -1 : second[first[i]];
    return out;
}

weights apply_bijection(const weights& w, const std::vector<int>& bij, int nbr) {
    weights out(nbr, rat(0));
    std::vector<bool> set(nbr, false);
    for (size_t b = 0; b < bij.size(); ++b) {
        int n = bij[b];
        if (n < 0) continue;
        if (set[n] && out[n] != w[b]) throw std::logic_error("merged branches carry different weights");
        out[n] = w[b];
        set[n] = true;
    }
    return out;
}

rat switch_residual(const track& t, const weights& mu, int s) {
    rat r = 0;
    for (int h : t.sw[s][0]) r += mu[branch_of(h)];
    for (int h : t.sw[s][1]) r -= mu[branch_of(h)];
    return r;
}

bool satisfies_switches(const track& t, const weights& mu) {
    for (int s = 0; s < t.nsw(); ++s)
        if (switch_residual(t, mu, s) != 0) return false;
    return true;
}

dir mu_direction(const track& t, const weights& mu, int e) {
    if (mu[e] <= 0) throw precondition_error("branch " + std::to_string(e) + " has no mass");
    corners k = split_corners(t, e);
    const rat& a = mu[branch_of(k.a)];
    const rat& d = mu[branch_of(k.d)];
    if (a > d) return dir::right;
    if (a < d) return dir::left;
    return dir::collision;
}

weights transport_split(const track& t, const weights& mu, int e, dir d) {
    corners k = split_corners(t, e);
    rat a = mu[branch_of(k.a)], dd = mu[branch_of(k.d)];
    weights out = mu;
    if (d == dir::right) {
        if (a < dd) throw precondition_error("right split needs mu(a) >= mu(d): " + to_string(a) + " < " + to_string(dd));
        out[e] = a - dd;
    } else if (d == dir::left) {
        if (dd < a) throw precondition_error("left split needs mu(d) >= mu(a): " + to_string(dd) + " < " + to_string(a));
        out[e] = dd - a;
    } else {
        if (a != dd) throw precondition_error("collision needs mu(a) = mu(d)");
        out[e] = 0;
    }
    return out;
}

weights transport_collide(const track& t, const weights& mu, int e) {
    weights w = transport_split(t, mu, e, dir::collision);
    move_result m = collide(t, e, true);
    return apply_bijection(w, m.bij, m.t.nbr);
}

namespace {

struct affine {
    rat c = 0, q = 0;
    affine operator+(const affine& o) const { return {c + o.c, q + o.q}; }
    affine operator-(const affine& o) const { return {c - o.c, q - o.q}; }
};

}  // namespace

comb_shape comb_track(const track& t, int s) {
    if (t.valence(s) < 4) throw precondition_error("switch " + std::to_string(s) + " has valence below 4");
    int X = t.sw[s][0].size() >= t.sw[s][1].size() ? 0 : 1;
    auto A = away(t, s, X);
    comb_shape c;
    c.t = t;
    c.new_branch = t.nbr;
    c.t.nbr = t.nbr + 1;
    c.outer = {branch_of(A[0]), branch_of(A[1])};
    std::vector<int> nA{2 * c.new_branch};
    nA.insert(nA.end(), A.begin() + 2, A.end());
    set_away(c.t, s, X, nA);
    c.new_switch = c.t.nsw();
    c.t.sw.push_back({std::vector<int>{A[0], A[1]}, std::vector<int>{2 * c.new_branch + 1}});
    c.t.index();
    return c;
}

comb_result comb_step(const track& t, int s, const weights& nu, const weights* lam) {
    comb_shape cs = comb_track(t, s);
    track& r = cs.t;
    int bm = cs.outer[0], bm1 = cs.outer[1];
    int c1 = cs.new_branch, sn = cs.new_switch;

    std::vector<affine> w(r.nbr);
    for (int b = 0; b < t.nbr; ++b) w[b] = {nu[b], 0};
    w[c1] = {0, 1};
    w[bm] = w[bm] - affine{0, 1};
    w[bm1] = w[bm1] - affine{0, 1};

    // admissible q form an open interval (lo, hi), or a single forced value
    rat lo = 0, hi = bm == bm1 ? rat(nu[bm] / 2) : rat(std::min(nu[bm], nu[bm1]));
    std::optional<rat> fixed;
    bool bad = false;
    face_map fm = trace_regions(r);
    for (auto& reg : fm.regions) {
        if (reg.trigon()) {
            std::vector<affine> sw_(3);
            for (int i = 0; i < 3; ++i)
                for (int d : reg.sides[i]) sw_[i] = sw_[i] + w[branch_of(d)];
            for (int i = 0; i < 3; ++i) {
                affine g = sw_[i] - sw_[(i + 1) % 3] - sw_[(i + 2) % 3];
                if (g.q > 0) hi = std::min(hi, rat(-g.c / g.q));
                else if (g.q < 0) lo = std::max(lo, rat(-g.c / g.q));
                else if (g.c >= 0) bad = true;
            }
        } else if (t.bigons && reg.bigon()) {
            affine g;
            for (int d : reg.sides[0]) g = g + w[branch_of(d)];
            for (int d : reg.sides[1]) g = g - w[branch_of(d)];
            if (g.q == 0) {
                if (g.c != 0) bad = true;
            } else {
                rat v = -g.c / g.q;
                if (fixed && *fixed != v) bad = true;
                fixed = v;
            }
        }
    }
    rat q;
    if (fixed) {
        if (!(*fixed > lo && *fixed < hi)) bad = true;
        q = *fixed;
    } else {
        if (!(lo < hi)) bad = true;
        q = (lo + hi) / 2;
    }
    if (bad) throw infeasible_error("no admissible comb parameter at switch " + std::to_string(s));
    comb_result res;
    res.t = std::move(r);
    res.nu.resize(res.t.nbr);
    for (int b = 0; b < res.t.nbr; ++b) res.nu[b] = w[b].c + w[b].q * q;
    if (lam) {
        weights l = *lam;
        l.push_back((*lam)[bm] + (*lam)[bm1]);
        res.lam = l;
    }
    res.q = q;
    res.lo = fixed ? q : lo;
    res.hi = fixed ? q : hi;
    res.new_switch = sn;
    res.new_branch = c1;
    return res;
}

std::optional<int> first_comb_switch(const track& t) {
    for (int s = 0; s < t.nsw(); ++s)
        if (t.valence(s) >= 4) return s;
    return std::nullopt;
}

}  // namespace tt
