#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tt/moves.hpp"
#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

struct connector {
    int large;
    int small;
    bool operator==(const connector&) const = default;
};

// embedded twist connectors: a large branch and a small branch forming a circle through two switches
std::vector<connector> find_twist_connectors(const track& t);
// direction of the split at the large branch whose winners are the small branch's halves
std::optional<dir> connector_split_dir(const track& t, const connector& c);

// every component of the surface cut along the connectors is a pair of pants
bool pants_check(const track& t, const std::vector<connector>& cs);

std::optional<track> random_pants_track(const surface& S, std::mt19937_64& rng);

weights integral_guide(const track& t);
std::optional<weights> random_guide(const track& t, std::mt19937_64& rng, int lo, int hi, int tries = 20000);
// a positive integral measure with large, unrelated weights so guided splitting rarely ties
weights generic_guide(const track& t, std::mt19937_64& rng);
weights pants_guide(const track& t, const std::vector<connector>& cs);

struct catalog_entry {
    std::string name;
    surface S;
    track t;
    weights guide;
    std::vector<connector> connectors;
};

std::string catalog_dir();
catalog_entry load_entry(const std::string& name);
std::vector<catalog_entry> load_catalog();
surface surface_for(const std::string& name);

}  // namespace tt
