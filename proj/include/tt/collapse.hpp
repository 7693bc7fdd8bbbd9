#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tt/dual.hpp"
#include "tt/measures.hpp"
#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

struct collapse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the boundary of a bigon: both sides run from cusp P to cusp Q, the bigon left of E and right of F
struct bigon_boundary {
    int region = -1;
    std::vector<int> E, F;
    int P = -1, Q = -1;
    std::vector<int> selfint;   // branches met more than once
    std::vector<int> isolated;  // switches passed twice through disjoint branches
    std::vector<int> repeated;  // switches passed more than once, cusps included
    bool embedded = false;
};
bigon_boundary boundary_of(const track& t, const face_map& fm, int region);

struct bigon_collapse {
    track t;
    weights nu, lambda;
    std::vector<int> bij;  // old branch -> new branch, -1 on the bigon's boundary
};
// identify the two sides of an embedded bigon by comparing prefix sums of nu
bigon_collapse collapse_bigon(const track& t, const weights& nu, const weights& lambda, int region);

// a positive tangential measure with strict trigons agreeing with guess where fixed, if any exists
std::optional<weights> fit_tangential(const track& t, const weights& guess, const std::vector<bool>& fixed);

struct quadruple {
    track eta;
    weights lambda;  // positive transverse measure standing in for the carried lamination
    weights nu;      // positive tangential measure, strict on trigons
};
quadruple dual_quadruple(const duality& d, const weights& mu, std::mt19937_64& rng);

struct collapse_step {
    std::string action;
    int bigons = 0;
    int selfint = 0;
};

struct collapse_run {
    track t;
    weights lambda, nu;
    std::vector<collapse_step> steps;
    std::vector<std::pair<int, int>> bigon_events;  // bigon counts around each bigon collapse
    int budget = 0;
    int refits = 0;  // moves whose tangential measure had to be solved for afresh
    surrogate_report report;
    bool carries = false;  // lambda positive and satisfying every switch
};

// runs the bigon elimination, then combs to a generic track; budget < 0 means 4 x branch count
collapse_run lambda_collapse(const quadruple& q, int budget = -1);

std::string trace_line(int k, const collapse_step& s);

}  // namespace tt
