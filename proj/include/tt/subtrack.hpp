#pragma once

#include <optional>
#include <vector>

#include "tt/moves.hpp"
#include "tt/strips.hpp"

namespace tt {

// a subtrack is kept as a branch mask over the ambient track
using mask = std::vector<bool>;

mask to_mask(int nbr, const std::vector<int>& branches);
int sigma_complexity(const mask& in);

// the ambient branches making up the subtrack branch through b, in trainpath order
std::vector<int> sigma_branch(const track& t, const mask& in, int b);
bool sigma_large(const track& t, const mask& in, int b);

// the image of the subtrack after a split at h, when the split keeps every trainpath of it
std::optional<mask> sigma_image(const track& t, const mask& in, int h, dir d);

struct tightened {
    track t;
    mask in;
    weights mu;
    sequence seq;
    int e;  // the ambient branch that now is the whole subtrack branch
    std::vector<int> complexity;  // sigma complexity before each split and at the end
};

// guide-directed splits at proper subbranches of the subtrack branch through e until it is one branch
tightened tighten(const track& t, const mask& in, int e, const weights& mu, int cap = 10000);
// tighten, then split the now single branch in direction d
tightened induced_step(const track& t, const mask& in, int e, dir d, const weights& mu, int cap = 10000);

bool complete_after(const track& t, int e, dir d);
// only one split direction at e keeps the surrogate; read off the collision
bool rigid(const track& t, int e);
std::optional<dir> rigid_direction(const track& t, int e);

struct normalized {
    track t;
    sequence seq;
    bool finished = false;
};
normalized normalize_rigid(const track& t, int cap);

}  // namespace tt
