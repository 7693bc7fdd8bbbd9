#pragma once

#include <vector>

#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

// the dual bigon track restricted to one side of a complementary region of the source
struct side_fan {
    int region = -1;
    int side = -1;
    std::vector<int> darts;  // source darts of the side
    int fan = -1;            // dual switch where the dual arcs of the side meet
    int connector = -1;      // dual branch from fan to end, -1 for a single-branch side
    int end = -1;            // dual switch the arcs inside the region leave from
};

// dual branch b is the arc crossing source branch b; the rest lie inside source regions
struct duality {
    track source;
    track dual;
    face_map regions;
    std::vector<side_fan> sides;
    std::vector<int> region_of;        // dual branch -> source region, -1 for crossing arcs
    std::vector<std::vector<int>> central;  // per source region: branches bounding its central region
    int crossing() const { return source.nbr; }
    bool inner(int b) const { return b >= source.nbr; }
};

duality dual_track(const track& t);

struct census {
    int trigons = 0, monogons = 0, bigons = 0, other = 0;
    bool operator==(const census&) const = default;
};
census region_census(const track& t);

// mu(b) on the crossing arcs, zero inside regions
weights induced_tangential(const duality& d, const weights& mu);

struct sneak_result {
    weights mu_star;
    weights base;      // the transverse measure whose curves were pulled; 2 mu when mu alone leaves an arc empty
    int pulled = 0;    // arcs pulled into regions
    rat predicted = 0; // total weight by counting crossings gained and lost
};
sneak_result sneak_up(const duality& d, const weights& mu);

// weight of each side of every region of t
std::vector<std::vector<rat>> side_weights(const track& t, const weights& nu);

}  // namespace tt
