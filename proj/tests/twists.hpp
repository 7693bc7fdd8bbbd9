#pragma once

#include <optional>

#include "tt/bicombing.hpp"
#include "tt/canonical.hpp"

namespace twists {

using namespace tt;

// pull the linearly transported guide back along the isomorphism fixing every branch off the circle;
// a twist power n changes both circle weights by n times the crossing weight and nothing else
inline std::optional<tt::rat> twist_power(const tt::catalog_entry& c, const tt::connector& cn, const tt::sequence& seq) {
    weights mu = c.guide;
    track cur = c.t;
    for (auto& s : seq) {
        mu = linear_transport(cur, mu, s.slot, s.d);
        cur = split(cur, s.slot, s.d);
    }
    if (!satisfies_switches(cur, mu)) return std::nullopt;
    for (auto& iso : isomorphisms(cur, c.t)) {
        bool fixed = true;
        for (int b = 0; b < c.t.nbr; ++b)
            if (b != cn.large && b != cn.small && iso.bmap[b] != b) fixed = false;
        if (!fixed) continue;
        weights back(c.t.nbr);
        for (int b = 0; b < c.t.nbr; ++b) back[iso.bmap[b]] = mu[b];
        int s = c.t.at[2 * cn.large].sw;
        rat cross = 0;
        for (int k = 0; k < 2; ++k)
            for (int h : c.t.sw[s][k])
                if (branch_of(h) != cn.large && branch_of(h) != cn.small) cross = c.guide[branch_of(h)];
        if (cross <= 0) return std::nullopt;
        for (int b = 0; b < c.t.nbr; ++b)
            if (b != cn.large && b != cn.small && back[b] != c.guide[b]) return std::nullopt;
        rat dl = back[cn.large] - c.guide[cn.large], ds = back[cn.small] - c.guide[cn.small];
        if (dl != ds) return std::nullopt;
        return rat(dl / cross);
    }
    return std::nullopt;
}

}  // namespace twists
