#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tt/catalog.hpp"
#include "tt/strips.hpp"

namespace tt {

// a trainpath as the darts it runs along; for a circle the first branch is not repeated
struct trainpath {
    std::vector<int> darts;
    bool circle = false;

    int length() const { return (int)darts.size(); }
    std::vector<int> branches() const;
    bool operator==(const trainpath&) const = default;
};

// the darts realizing a branch sequence, starting along first_dart
std::optional<trainpath> realize(const track& t, const std::vector<int>& branches, int first_dart, bool circle);
bool is_trainpath(const track& t, const trainpath& p);
bool embedded(const track& t, const trainpath& p);

enum class turn { left, right, none };
// side of the neighbour at the switch between darts i-1 and i
turn switch_turn(const track& t, const trainpath& p, int i);

// the split at p's i-th branch with both path neighbours as winners
std::optional<dir> rho_direction(const track& t, const trainpath& p, int i);

struct multi_split {
    track t;
    sequence seq;
    trainpath image;
};
// one rho-split at every branch, each once large; nothing when p is not symmetric.
// a length-one path needs the direction of its only split
std::optional<multi_split> level_one(const track& t, const trainpath& p, std::optional<dir> single = {});
bool symmetric_large(const track& t, const trainpath& p);
bool symmetric_circle(const track& t, const trainpath& p);

// longest symmetric large subpath of p; ties beyond the first are counted
struct residual_path {
    std::optional<trainpath> path;
    int ties = 0;
};
residual_path longest_symmetric_subpath(const track& t, const trainpath& p);

struct full_multi_split {
    track t;
    sequence seq;
    std::vector<int> lengths;  // symmetric path length at each level
};
full_multi_split rho_multi_split(const track& t, const trainpath& p, std::optional<dir> single = {});

struct circle_result {
    track t;
    sequence seq;  // all splits up to the recurrence
    int k = 0;     // rounds of m-1 splits until the canonical form recurs, 0 when it never did
    std::vector<int> lengths;  // circle length after each round
    int first_recurrence = 0;  // single splits until the canonical form first recurs
};
circle_result circle_multi_split(const track& t, const trainpath& c, int max_rounds = 8);

// maximal symmetric large trainpaths and symmetric circles, up to reversal and rotation
std::vector<trainpath> find_symmetric_paths(const track& t, int max_length = -1);

struct configuration {
    bool splittable = false;
    trainpath path;
    std::vector<int> branch_set() const;
};
// residual leads from t to the target
configuration level_one_config(const track& t, const sequence& residual, int e);
std::vector<configuration> level_one_configs(const track& t, const sequence& residual);

// the full multi-split at a splittable configuration; length-one levels take the target's direction
sequence config_multi_split(const track& t, const sequence& residual, const configuration& c);

struct move_step {
    track t;
    sequence seq;
    std::vector<configuration> configs;  // splittable configurations acted on
};
move_step sigma_move(const track& t, const sequence& residual);

struct tight_sequence {
    std::vector<track> stations;
    std::vector<sequence> steps;
    sequence total;
};
tight_sequence tight_multi_sequence(const track& t, const sequence& residual, int cap = 10000);

// stations of the combing line between two vertices of a strip, through their meet
std::vector<int> combing_line(const flat_strip& s, int x, int y);

struct fellow_report {
    rat L = 0;
    int pairs = 0;
};
// weight-L constant of the tight multi-sequences from the base to pairs of strip vertices;
// adjacent_only restricts to pairs joined by an edge
fellow_report fellow_travellers(const flat_strip& s, bool adjacent_only);

track mirror(const track& t);
int twist_sign(const track& t, const connector& c);
trainpath connector_circle(const track& t, const connector& c);

// split transport extended linearly, negative weights allowed
weights linear_transport(const track& t, const weights& mu, int e, dir d);

std::string path_string(const trainpath& p);

}  // namespace tt
