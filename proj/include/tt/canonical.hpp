#pragma once

#include <string>
#include <vector>

#include "tt/track.hpp"

namespace tt {

struct canonical_form {
    std::string code;
    track form;
    // old label -> canonical label
    std::vector<int> bmap, smap;
    std::vector<bool> flip, swap;
};

canonical_form canonical(const track& t);
std::string canonical_code(const track& t);

struct isomorphism {
    std::vector<int> bmap;   // branch of a -> branch of b
    std::vector<bool> swap;  // ends exchanged
    std::vector<int> smap;
    std::vector<bool> flip;
};

// all ribbon isomorphisms a -> b matching punctures and marks (connected tracks)
std::vector<isomorphism> isomorphisms(const track& a, const track& b);

}  // namespace tt
