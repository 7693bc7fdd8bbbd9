#include "tt/lp.hpp"

#include <algorithm>

namespace tt {

namespace {

struct tableau {
    int m = 0, n = 0;                  // rows, structural columns (rhs kept apart)
    std::vector<std::vector<rat>> a;   // m x n
    std::vector<rat> b;                // m
    std::vector<int> basis;            // m
    std::vector<rat> cost;             // n, maximized
    std::vector<rat> d;                // reduced costs
    rat z;                             // objective value

    void price() {
        d = cost;
        z = 0;
        for (int i = 0; i < m; ++i) {
            const rat& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (int j = 0; j < n; ++j)
                if (a[i][j] != 0) d[j] -= cb * a[i][j];
            z += cb * b[i];
        }
    }

    void pivot(int r, int c) {
        rat p = a[r][c];
        if (p != 1) {
            for (int j = 0; j < n; ++j)
                if (a[r][j] != 0) a[r][j] /= p;
            b[r] /= p;
        }
        std::vector<int> nz;
        for (int j = 0; j < n; ++j)
            if (a[r][j] != 0) nz.push_back(j);
        for (int i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0) continue;
            rat f = a[i][c];
            for (int j : nz) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        if (d[c] != 0) {
            rat f = d[c];
            for (int j : nz) d[j] -= f * a[r][j];
            z += f * b[r];
        }
        basis[r] = c;
    }

    // Bland's rule; returns false when unbounded
    bool run(const std::vector<bool>& allowed) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < n && enter < 0; ++j)
                if (allowed[j] && d[j] > 0) enter = j;
            if (enter < 0) return true;
            int leave = -1;
            rat best;
            for (int i = 0; i < m; ++i) {
                if (a[i][enter] <= 0) continue;
                rat ratio = b[i] / a[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    rat value() const { return z; }
};

}  // namespace

lp_result lp_solve(const lp_problem& p) {
    int m = (int)p.rows.size();
    int nx = p.nvars;
    int nslack = 0;
    for (auto& r : p.rows)
        if (r.s != sense::eq) ++nslack;
    tableau T;
    T.m = m;
    T.n = nx + nslack + m;
    T.a.assign(m, std::vector<rat>(T.n, rat(0)));
    T.b.assign(m, rat(0));
    T.basis.assign(m, -1);
    int art0 = nx + nslack;
    int sl = nx;
    std::vector<bool> is_art(T.n, false);
    for (int i = 0; i < m; ++i) {
        const lp_row& r = p.rows[i];
        for (auto& [j, c] : r.coef) T.a[i][j] += c;
        int slack = -1;
        if (r.s == sense::le) {
            slack = sl++;
            T.a[i][slack] = 1;
        } else if (r.s == sense::ge) {
            slack = sl++;
            T.a[i][slack] = -1;
        }
        T.b[i] = r.rhs;
        if (T.b[i] < 0) {
            for (auto& v : T.a[i]) v = -v;
            T.b[i] = -T.b[i];
        }
        if (slack >= 0 && T.a[i][slack] == 1) {
            T.basis[i] = slack;
        } else {
            T.a[i][art0 + i] = 1;
            T.basis[i] = art0 + i;
            is_art[art0 + i] = true;
        }
    }
    // phase one
    T.cost.assign(T.n, rat(0));
    bool any_art = false;
    for (int j = 0; j < T.n; ++j)
        if (is_art[j]) {
            T.cost[j] = -1;
            any_art = true;
        }
    std::vector<bool> allowed(T.n, true);
    for (int i = 0; i < m; ++i)
        if (!is_art[art0 + i]) allowed[art0 + i] = false;
    lp_result res;
    T.price();
    if (any_art) {
        T.run(allowed);
        if (T.value() < 0) {
            res.status = lp_status::infeasible;
            return res;
        }
        // drive artificials out of the basis
        for (int i = 0; i < T.m; ++i) {
            if (!is_art[T.basis[i]]) continue;
            int c = -1;
            for (int j = 0; j < art0 && c < 0; ++j)
                if (T.a[i][j] != 0) c = j;
            if (c >= 0) {
                T.pivot(i, c);
            } else {
                T.a.erase(T.a.begin() + i);
                T.b.erase(T.b.begin() + i);
                T.basis.erase(T.basis.begin() + i);
                --T.m;
                --i;
            }
        }
    }
    for (int j = art0; j < T.n; ++j) allowed[j] = false;
    T.cost.assign(T.n, rat(0));
    for (int j = 0; j < nx && j < (int)p.obj.size(); ++j) T.cost[j] = p.obj[j];
    T.price();
    if (!T.run(allowed)) {
        res.status = lp_status::unbounded;
        return res;
    }
    res.status = lp_status::optimal;
    res.x.assign(nx, rat(0));
    for (int i = 0; i < T.m; ++i)
        if (T.basis[i] < nx) res.x[T.basis[i]] = T.b[i];
    res.value = T.value();
    return res;
}

}  // namespace tt
