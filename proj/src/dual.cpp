#include "tt/dual.hpp"

#include <stdexcept>

#include "tt/moves.hpp"

namespace tt {

duality dual_track(const track& t) {
    if (!is_generic(t)) throw precondition_error("source track is not generic");
    if (!is_maximal(t)) throw precondition_error("source track is not maximal");
    duality d;
    d.source = t;
    d.regions = trace_regions(t);
    track& r = d.dual;
    r.bigons = true;
    r.nbr = t.nbr;
    d.region_of.assign(t.nbr, -1);
    d.central.resize(d.regions.regions.size());
    auto new_branch = [&](int reg) {
        d.region_of.push_back(reg);
        return r.nbr++;
    };
    auto new_switch = [&]() {
        r.sw.push_back({});
        return r.nsw() - 1;
    };
    std::vector<int> loop_of(d.regions.regions.size(), -1);
    for (size_t ri = 0; ri < d.regions.regions.size(); ++ri) {
        auto& reg = d.regions.regions[ri];
        if (!reg.trigon() && !reg.punctured_monogon()) throw precondition_error("source region is neither a trigon nor a punctured monogon");
        int n = (int)reg.sides.size();
        int first = (int)d.sides.size();
        for (int i = 0; i < n; ++i) {
            side_fan f;
            f.region = (int)ri;
            f.side = i;
            f.darts = reg.sides[i];
            f.fan = new_switch();
            // the dual arc of a dart ends at the fan with half id equal to the dart
            std::vector<int> out(f.darts.rbegin(), f.darts.rend());
            set_away(r, f.fan, 0, out);
            if (f.darts.size() >= 2) {
                f.connector = new_branch((int)ri);
                set_away(r, f.fan, 1, {2 * f.connector});
                f.end = new_switch();
                set_away(r, f.end, 0, {2 * f.connector + 1});
            } else {
                f.end = f.fan;
            }
            d.sides.push_back(f);
        }
        if (n == 3) {
            int A[3];
            for (int i = 0; i < 3; ++i) A[i] = new_branch((int)ri);
            for (int i = 0; i < 3; ++i) {
                int prev = A[(i + 2) % 3], next = A[i];
                set_away(r, d.sides[first + i].end, 1, {2 * prev + 1, 2 * next});
                d.central[ri].push_back(A[i]);
            }
        } else {
            int L = new_branch((int)ri);
            set_away(r, d.sides[first].end, 1, {2 * L, 2 * L + 1});
            d.central[ri].push_back(L);
            loop_of[ri] = L;
        }
    }
    for (int p : t.punct) {
        int L = loop_of[d.regions.of_dart[p]];
        if (L < 0) throw precondition_error("puncture outside a monogon");
        r.punct.push_back(2 * L + 1);
    }
    r.index();
    check_structure(r);
    return d;
}

census region_census(const track& t) {
    census c;
    for (auto& reg : trace_regions(t).regions) {
        if (reg.trigon()) c.trigons++;
        else if (reg.punctured_monogon()) c.monogons++;
        else if (reg.bigon()) c.bigons++;
        else c.other++;
    }
    return c;
}

weights induced_tangential(const duality& d, const weights& mu) {
    if ((int)mu.size() != d.source.nbr) throw precondition_error("measure has the wrong length");
    for (auto& w : mu)
        if (w.get_den() != 1 || w < 4) throw precondition_error("guide must be integral with every weight at least 4");
    weights nu(d.dual.nbr, rat(0));
    for (int b = 0; b < d.source.nbr; ++b) nu[b] = mu[b];
    return nu;
}

sneak_result sneak_up(const duality& d, const weights& mu) {
    induced_tangential(d, mu);
    sneak_result s;
    // a side of several branches gives up two curves: one crosses its connector,
    // the other crosses the central region. a single branch side gives up one curve.
    auto pulls = [](const side_fan& f) { return f.darts.size() >= 2 ? 2 : 1; };
    std::vector<int> lost(d.source.nbr, 0);
    for (auto& f : d.sides)
        for (int x : f.darts) lost[branch_of(x)] += pulls(f);
    s.base = mu;
    for (int b = 0; b < d.source.nbr; ++b)
        if (mu[b] - lost[b] <= 0) {
            for (auto& w : s.base) w *= 2;
            break;
        }
    weights& w = s.mu_star;
    w.assign(d.dual.nbr, rat(0));
    s.predicted = 0;
    for (int b = 0; b < d.source.nbr; ++b) {
        w[b] = s.base[b] - lost[b];
        s.predicted += s.base[b];
    }
    for (auto& f : d.sides) {
        int l = (int)f.darts.size();
        s.pulled += pulls(f);
        s.predicted -= l * pulls(f);
        if (f.connector >= 0) {
            w[f.connector] += 1;
            s.predicted += 1;
        }
        // the deep curve crosses the central boundary twice
        s.predicted += 2;
        auto& reg = d.regions.regions[f.region];
        if (reg.trigon()) {
            int n = 3, i = f.side;
            w[d.central[f.region][i]] += 1;
            w[d.central[f.region][(i + n - 1) % n]] += 1;
        } else {
            w[d.central[f.region][0]] += 2;
        }
    }
    return s;
}

std::vector<std::vector<rat>> side_weights(const track& t, const weights& nu) {
    std::vector<std::vector<rat>> out;
    for (auto& reg : trace_regions(t).regions) {
        std::vector<rat> ws;
        for (auto& side : reg.sides) {
            rat x = 0;
            for (int dd : side) x += nu[branch_of(dd)];
            ws.push_back(x);
        }
        out.push_back(ws);
    }
    return out;
}

}  // namespace tt
