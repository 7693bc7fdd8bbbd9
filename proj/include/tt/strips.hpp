#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tt/moves.hpp"
#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

using sequence = std::vector<split_record>;

track replay(const track& t, const sequence& seq);
std::vector<int> phi_of(int nbr, const sequence& seq);
int length(const std::vector<int>& phi);

// direction of the first record at e when it can be moved to the front of the residual
std::optional<dir> front_loadable(const track& t, const sequence& residual, int e);
sequence drop_first(const sequence& residual, int e);

// the residual left after walking w from t, or nothing when w leaves the residual's strip
std::optional<sequence> consume(const track& t, sequence residual, const sequence& w);

struct meet_result {
    track t;
    sequence seq;
};
// longest common prefix of two sequences from t, up to reordering
meet_result meet(const track& t, const sequence& a, const sequence& b);

// lexicographically least reordering, slots compared by id, right before left
sequence canonical_sequence(const track& t, const sequence& seq);

struct strip_vertex {
    track t;
    std::vector<int> phi;
    sequence path;      // from the base
    sequence residual;  // to the target, empty for guided strips
    weights mu;         // transported guide, empty for sequence targets
    int depth = 0;
};

struct strip_edge {
    int from, to;
    int slot;
    dir d;
};

struct flat_strip {
    track base;
    bool guided = false;
    sequence target;
    weights guide;
    int radius = -1;
    bool truncated = false;
    int path_conflicts = 0;  // distinct tracks reached with equal phi
    std::vector<strip_vertex> vertices;
    std::vector<strip_edge> edges;
    std::map<std::vector<int>, int> by_phi;

    std::optional<int> find(const std::vector<int>& phi) const;
    std::vector<std::vector<int>> adjacency() const;
};

// radius < 0 means no cap
flat_strip enumerate_strip(const track& t, const sequence& target, int radius = -1);
flat_strip enumerate_guided_strip(const track& t, const weights& mu, int radius);

int project_meet(const flat_strip& e, const sequence& zeta);
std::optional<int> join_theta(const flat_strip& e, int x, int y);

// "e3R e5L", commas or spaces between records
std::string print_sequence(const sequence& seq);
sequence parse_sequence(const std::string& text);

// a shortest splitting sequence from a to a track labeled exactly like b
std::optional<sequence> find_sequence(const track& a, const track& b, int max_depth);

std::vector<int> bfs_distances(const flat_strip& e, int from);
std::string export_strip(const flat_strip& e);

}  // namespace tt
