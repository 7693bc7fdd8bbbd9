#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tt/rational.hpp"
#include "tt/strips.hpp"

namespace tt {

struct cube {
    int base;
    std::vector<int> dirs;  // sorted coordinates
    auto operator<=>(const cube&) const = default;
};

struct grid_edge {
    int from, to, coord;
};

struct cubical_complex {
    std::vector<std::vector<int>> points;
    std::vector<int> depth;
    int horizon = -1;  // points deeper than this are unknown, -1 when everything is known
    std::vector<std::set<cube>> cubes;  // by dimension
    std::vector<std::map<int, int>> up, down;  // coordinate -> neighbour

    int dimension() const { return (int)cubes.size() - 1; }
    bool has(const cube& c) const;
    bool known(int d) const { return horizon < 0 || d <= horizon; }
    int count() const;
};

// inductive skeleton: a k-cube is present iff its 2^k points and all its faces are
cubical_complex build_complex(std::vector<std::vector<int>> points, std::vector<int> depth,
                              const std::vector<grid_edge>& edges, int horizon = -1);
cubical_complex build_complex(const flat_strip& s, bool accept_truncated = false);

struct link_vertex {
    int coord;
    bool up;
    auto operator<=>(const link_vertex&) const = default;
};

struct link_complex {
    int v;
    std::vector<link_vertex> verts;
    std::vector<std::vector<bool>> adj;
    std::vector<std::vector<int>> simplices;  // index sets, singletons included
    std::vector<std::vector<int>> missing;    // cliques of the 1-skeleton without a simplex
    int undetermined = 0;                     // cliques whose cube would leave the known region
};

link_complex link(const cubical_complex& c, int v);
bool is_flag(const link_complex& l);

struct qi_result {
    rat upper_sq, lower_sq;  // squared ratios graph distance / euclidean distance
    double upper = 0, lower = 0;
    int pairs = 0;
};
qi_result qi_constants(const cubical_complex& c);
qi_result qi_constants(const flat_strip& s);

// number of halfspaces {x_i >= s} or {x_i < s} that are disconnected in the 1-skeleton
int disconnected_halfspaces(const cubical_complex& c);

std::string export_complex(const cubical_complex& c);

}  // namespace tt
