#pragma once

// brute-force references used by the tests; none of this calls the code it checks

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "tt/lp.hpp"
#include "tt/moves.hpp"
#include "tt/track.hpp"

namespace oracle {

using tt::rat;

// faces as cycles of rotation after edge reversal; returns per face (length, cusps, punctures)
struct face_info {
    int length, cusps, punctures;
    auto operator<=>(const face_info&) const = default;
};

inline std::vector<face_info> faces(const tt::track& t) {
    int H = 2 * t.nbr;
    std::vector<int> rot(H, -1), side(H, -1), sw(H, -1);
    for (int s = 0; s < t.nsw(); ++s) {
        std::vector<int> cyc = t.sw[s][0];
        for (int k = (int)t.sw[s][1].size() - 1; k >= 0; --k) cyc.push_back(t.sw[s][1][k]);
        for (size_t i = 0; i < cyc.size(); ++i) rot[cyc[i]] = cyc[(i + 1) % cyc.size()];
        for (int k = 0; k < 2; ++k)
            for (int h : t.sw[s][k]) side[h] = k, sw[h] = s;
    }
    std::vector<int> face(H, -1);
    std::vector<face_info> out;
    for (int h = 0; h < H; ++h) {
        if (face[h] >= 0) continue;
        face_info f{0, 0, 0};
        int x = h;
        while (face[x] < 0) {
            face[x] = (int)out.size();
            int arrive = x ^ 1;
            int nx = rot[arrive];
            if (side[nx] == side[arrive]) ++f.cusps;
            ++f.length;
            x = nx;
        }
        out.push_back(f);
    }
    for (int d : t.punct) out[face[d]].punctures++;
    std::sort(out.begin(), out.end());
    return out;
}

// standard form A x = b, x >= 0 with max c.x; built independently of the simplex
struct std_form {
    std::vector<std::vector<rat>> A;
    std::vector<rat> b, c;
    int n = 0;
};

inline std_form standardize(const tt::lp_problem& p) {
    std_form f;
    int slacks = 0;
    for (auto& r : p.rows)
        if (r.s != tt::sense::eq) ++slacks;
    f.n = p.nvars + slacks;
    int k = p.nvars;
    for (auto& r : p.rows) {
        std::vector<rat> row(f.n, rat(0));
        for (auto& [j, v] : r.coef) row[j] += v;
        if (r.s == tt::sense::le) row[k++] = 1;
        else if (r.s == tt::sense::ge) row[k++] = -1;
        f.A.push_back(row);
        f.b.push_back(r.rhs);
    }
    f.c.assign(f.n, rat(0));
    for (int j = 0; j < p.nvars && j < (int)p.obj.size(); ++j) f.c[j] = p.obj[j];
    return f;
}

// solve square system, nullopt when singular
inline std::optional<std::vector<rat>> solve(std::vector<std::vector<rat>> M, std::vector<rat> v) {
    int n = (int)M.size();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(M[c], M[piv]);
        std::swap(v[c], v[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            rat f = M[r][c] / M[c][c];
            for (int j = c; j < n; ++j) M[r][j] -= f * M[c][j];
            v[r] -= f * v[c];
        }
    }
    for (int i = 0; i < n; ++i) v[i] /= M[i][i];
    return v;
}

// drop dependent rows (checking consistency); nullopt when inconsistent
inline std::optional<std_form> independent_rows(const std_form& f) {
    std_form g = f;
    g.A.clear();
    g.b.clear();
    std::vector<std::vector<rat>> ech;
    std::vector<rat> echb;
    std::vector<int> pc;
    for (size_t i = 0; i < f.A.size(); ++i) {
        std::vector<rat> r = f.A[i];
        rat rb = f.b[i];
        for (size_t k = 0; k < ech.size(); ++k) {
            if (r[pc[k]] == 0) continue;
            rat m = r[pc[k]] / ech[k][pc[k]];
            for (int j = 0; j < f.n; ++j) r[j] -= m * ech[k][j];
            rb -= m * echb[k];
        }
        int lead = -1;
        for (int j = 0; j < f.n; ++j)
            if (r[j] != 0) {
                lead = j;
                break;
            }
        if (lead < 0) {
            if (rb != 0) return std::nullopt;
            continue;
        }
        ech.push_back(r);
        echb.push_back(rb);
        pc.push_back(lead);
        g.A.push_back(f.A[i]);
        g.b.push_back(f.b[i]);
    }
    return g;
}

struct enum_result {
    bool feasible = false;
    rat best = 0;
};

// every basic solution is tried; the best objective over feasible ones is returned
inline enum_result vertex_enumeration(const tt::lp_problem& p) {
    enum_result res;
    auto f0 = independent_rows(standardize(p));
    if (!f0) return res;
    const std_form& f = *f0;
    int m = (int)f.A.size(), n = f.n;
    if (m == 0) {
        res.feasible = true;
        return res;
    }
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        std::vector<std::vector<rat>> M(m, std::vector<rat>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) M[i][j] = f.A[i][pick[j]];
        auto x = solve(M, f.b);
        if (x && std::all_of(x->begin(), x->end(), [](const rat& v) { return v >= 0; })) {
            rat val = 0;
            for (int j = 0; j < m; ++j) val += f.c[pick[j]] * (*x)[j];
            if (!res.feasible || val > res.best) res.best = val;
            res.feasible = true;
        }
        int i = m - 1;
        while (i >= 0 && pick[i] == n - m + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return res;
}

inline tt::track random_relabel(const tt::track& t, std::mt19937_64& rng) {
    std::vector<int> bm(t.nbr), sm(t.nsw());
    std::iota(bm.begin(), bm.end(), 0);
    std::iota(sm.begin(), sm.end(), 0);
    std::shuffle(bm.begin(), bm.end(), rng);
    std::shuffle(sm.begin(), sm.end(), rng);
    std::vector<bool> flip(t.nsw()), swap(t.nbr);
    for (auto&& f : flip) f = rng() & 1;
    for (auto&& s : swap) s = rng() & 1;
    return tt::relabel(t, bm, sm, flip, swap);
}

// is some permutation of seq, applied from t, starting with (e, d), ending at the same labeled track
inline bool permutation_front(const tt::track& t, const std::vector<tt::split_record>& seq, int e, tt::dir d) {
    auto replay = [&](const std::vector<tt::split_record>& s, tt::track& out) {
        tt::track cur = t;
        for (auto& r : s) {
            if (tt::classify_branch(cur, r.slot) != tt::branch_kind::large) return false;
            cur = tt::split(cur, r.slot, r.d);
        }
        out = cur;
        return true;
    };
    tt::track target;
    if (!replay(seq, target)) return false;
    std::vector<int> idx(seq.size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
        if (seq[idx[0]].slot != e || seq[idx[0]].d != d) continue;
        std::vector<tt::split_record> s;
        for (int i : idx) s.push_back(seq[i]);
        tt::track out;
        if (replay(s, out) && tt::same_labeled(out, target)) return true;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return false;
}

}  // namespace oracle
