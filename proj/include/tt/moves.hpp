#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

enum class dir { right, left, collision };

char dir_char(dir d);
dir parse_dir(const std::string& s);
inline dir opposite(dir d) { return d == dir::right ? dir::left : d == dir::left ? dir::right : d; }

struct split_record {
    int slot;
    dir d;
    bool operator==(const split_record&) const = default;
};

struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// corner halves of a large branch e running from s1 (end 0) to s2 (end 1);
// a, b sit at s1 and c, d at s2, with a, c the winners of a right split
struct corners {
    int s1, s2;
    int a, b, c, d;
};
corners split_corners(const track& t, int e);

// branch ids are kept: e becomes the diagonal
track split(const track& t, int e, dir d);

struct collapse_result {
    track t;
    dir d;  // split(t, f, d) gives back the input
};
std::optional<collapse_result> collapse(const track& t, int f);

track shift(const track& t, int b);

struct move_result {
    track t;
    std::vector<int> bij;  // old branch -> new branch, -1 when removed
};

// split then drop the diagonal; with smooth set the two bivalent switches are dissolved
move_result collide(const track& t, int e, bool smooth = true);
move_result dissolve_bivalent(const track& t, int s);
move_result smooth_bivalent(const track& t);

weights apply_bijection(const weights& w, const std::vector<int>& bij, int nbr);
std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second);

rat switch_residual(const track& t, const weights& mu, int s);
bool satisfies_switches(const track& t, const weights& mu);

dir mu_direction(const track& t, const weights& mu, int e);
weights transport_split(const track& t, const weights& mu, int e, dir d);
weights transport_collide(const track& t, const weights& mu, int e);

struct comb_result {
    track t;
    weights nu;
    std::optional<weights> lam;
    rat q;
    rat lo, hi;  // open admissible interval, both equal q when forced
    int new_switch;
    int new_branch;
};

struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the combinatorial part of a comb: the two outer halves of the larger side move to a new switch
struct comb_shape {
    track t;
    int new_switch;
    int new_branch;
    std::array<int, 2> outer;  // branches whose ends moved
};
comb_shape comb_track(const track& t, int s);

// one step of combing at a switch of valence at least 4
comb_result comb_step(const track& t, int s, const weights& nu, const weights* lam = nullptr);
std::optional<int> first_comb_switch(const track& t);

}  // namespace tt
