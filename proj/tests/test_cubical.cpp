#include <random>

#include "doctest.h"
#include "walks.hpp"
#include "tt/catalog.hpp"
#include "tt/cubical.hpp"

using namespace tt;

namespace {

// every point of {0,1}^3 except the ones listed, with all unit edges
cubical_complex unit_cube_without(const std::vector<std::vector<int>>& drop) {
    std::vector<std::vector<int>> pts;
    std::vector<int> depth;
    for (int m = 0; m < 8; ++m) {
        std::vector<int> p{m & 1, (m >> 1) & 1, (m >> 2) & 1};
        if (std::find(drop.begin(), drop.end(), p) != drop.end()) continue;
        pts.push_back(p);
        depth.push_back(p[0] + p[1] + p[2]);
    }
    std::vector<grid_edge> edges;
    for (size_t a = 0; a < pts.size(); ++a)
        for (size_t b = 0; b < pts.size(); ++b)
            for (int i = 0; i < 3; ++i) {
                auto q = pts[a];
                q[i]++;
                if (q == pts[b]) edges.push_back({(int)a, (int)b, i});
            }
    return build_complex(pts, depth, edges);
}

// a k-cube is there iff all its points are and every unit pair among them is an edge
size_t brute_cubes(const flat_strip& s, const cubical_complex& c, int k) {
    std::set<std::pair<int, int>> edge;
    for (auto& e : s.edges) edge.insert({e.from, e.to});
    size_t n = 0;
    int q = s.base.nbr;
    for (size_t v = 0; v < s.vertices.size(); ++v) {
        if (c.horizon >= 0 && s.vertices[v].depth + k > c.horizon) continue;
        std::vector<int> dirs;
        std::function<void(int)> pick = [&](int from) {
            if ((int)dirs.size() == k) {
                std::vector<int> ids(1 << k, -1);
                for (int m = 0; m < (1 << k); ++m) {
                    auto p = s.vertices[v].phi;
                    for (int i = 0; i < k; ++i)
                        if (m >> i & 1) p[dirs[i]]++;
                    auto f = s.find(p);
                    if (!f) return;
                    ids[m] = *f;
                }
                for (int m = 0; m < (1 << k); ++m)
                    for (int i = 0; i < k; ++i)
                        if (!(m >> i & 1) && !edge.count({ids[m], ids[m | 1 << i]})) return;
                ++n;
                return;
            }
            for (int j = from; j < q; ++j) {
                dirs.push_back(j);
                pick(j + 1);
                dirs.pop_back();
            }
        };
        pick(0);
    }
    return n;
}

void check_faces(const cubical_complex& c) {
    for (size_t k = 1; k < c.cubes.size(); ++k)
        for (auto& q : c.cubes[k])
            for (int i : q.dirs) {
                std::vector<int> rest;
                for (int j : q.dirs)
                    if (j != i) rest.push_back(j);
                CHECK(c.has({q.base, rest}));
                REQUIRE(c.up[q.base].count(i));
                CHECK(c.has({c.up[q.base].at(i), rest}));
            }
}

}  // namespace

TEST_CASE("trivial complexes") {
    auto c = load_catalog()[0];
    auto one = build_complex(enumerate_strip(c.t, {}));
    CHECK(one.dimension() == 0);
    CHECK(one.count() == 1);
    auto l = link(one, 0);
    CHECK(l.verts.empty());
    CHECK(is_flag(l));
    auto q1 = qi_constants(one);
    CHECK(q1.pairs == 0);

    auto L = large_branches(c.t);
    auto edge = build_complex(enumerate_strip(c.t, {{L[0], dir::right}}));
    CHECK(edge.dimension() == 1);
    auto qe = qi_constants(edge);
    CHECK(qe.upper_sq == 1);
    CHECK(qe.lower_sq == 1);
}

TEST_CASE("square strip is one square") {
    auto c = load_catalog()[0];
    auto L = large_branches(c.t);
    auto s = enumerate_strip(c.t, {{L[0], dir::right}, {L[1], dir::left}});
    auto cx = build_complex(s);
    CHECK(cx.dimension() == 2);
    CHECK(cx.cubes[2].size() == 1);
    CHECK(cx.cubes[1].size() == 4);
    for (int v = 0; v < 4; ++v) {
        auto l = link(cx, v);
        CHECK(l.verts.size() == 2);
        CHECK(l.adj[0][1]);
        CHECK(is_flag(l));
    }
    auto q = qi_constants(cx);
    CHECK(q.upper_sq == 2);
    CHECK(q.lower_sq == 1);
    CHECK(export_complex(cx).find("cube 2 0 ") != std::string::npos);
}

TEST_CASE("planted non-flag control") {
    auto hollow = unit_cube_without({{1, 1, 1}});
    CHECK(hollow.dimension() == 2);
    auto l = link(hollow, 0);
    CHECK(l.verts.size() == 3);
    CHECK(!is_flag(l));
    REQUIRE(l.missing.size() == 1);
    CHECK(l.missing[0].size() == 3);

    auto full = unit_cube_without({});
    CHECK(full.dimension() == 3);
    auto lf = link(full, 0);
    CHECK(is_flag(lf));
    bool triangle = false;
    for (auto& s : lf.simplices) triangle = triangle || s.size() == 3;
    CHECK(triangle);
    // the far corner sees the same triangle through down edges
    auto top = link(full, 7);
    CHECK(is_flag(top));
    CHECK(top.simplices.size() == 7);
    CHECK(disconnected_halfspaces(full) == 0);
    CHECK(disconnected_halfspaces(hollow) == 0);
}

TEST_CASE("truncated strips need consent") {
    auto c = load_catalog()[0];
    auto s = enumerate_guided_strip(c.t, c.guide, 2);
    REQUIRE(s.truncated);
    CHECK_THROWS_AS(build_complex(s), precondition_error);
    auto cx = build_complex(s, true);
    CHECK(cx.horizon == 2);
}

TEST_CASE("complexes of sequence strips") {
    std::mt19937_64 rng(83);
    for (auto& c : load_catalog()) {
        auto w = walks::guided(c.t, c.guide, 8, rng);
        auto s = enumerate_strip(c.t, w.seq);
        auto cx = build_complex(s);
        CHECK(cx.cubes[1].size() == s.edges.size());
        for (int k = 2; k <= std::min(cx.dimension() + 1, 4); ++k) CHECK(brute_cubes(s, cx, k) == (k < (int)cx.cubes.size() ? cx.cubes[k].size() : 0));
        check_faces(cx);
        for (size_t v = 0; v < s.vertices.size(); ++v) {
            auto l = link(cx, (int)v);
            CHECK(is_flag(l));
            CHECK(l.undetermined == 0);
        }
        CHECK(disconnected_halfspaces(cx) == 0);
        // graph distance is the l1 distance of phi
        for (size_t a = 0; a < s.vertices.size(); ++a) {
            auto d = bfs_distances(s, (int)a);
            for (size_t b = 0; b < s.vertices.size(); ++b) {
                int l1 = 0;
                for (int i = 0; i < c.t.nbr; ++i) l1 += std::abs(s.vertices[a].phi[i] - s.vertices[b].phi[i]);
                CHECK(d[b] == l1);
            }
        }
        auto q = qi_constants(cx);
        CHECK(q.lower_sq == 1);
        CHECK(q.upper_sq >= 1);
    }
}

TEST_CASE("complexes of guided strips") {
    for (auto& c : load_catalog()) {
        auto s = enumerate_guided_strip(c.t, c.guide, 4);
        auto cx = build_complex(s, true);
        CHECK(cx.cubes[1].size() == s.edges.size());
        for (int k = 2; k <= std::min(cx.dimension() + 1, 3); ++k) CHECK(brute_cubes(s, cx, k) == (k < (int)cx.cubes.size() ? cx.cubes[k].size() : 0));
        check_faces(cx);
        int missing = 0;
        for (size_t v = 0; v < s.vertices.size(); ++v) missing += (int)link(cx, (int)v).missing.size();
        CHECK(missing == 0);
        CHECK(disconnected_halfspaces(cx) == 0);
    }
}

TEST_CASE("pants guided strips reach the expected dimension") {
    auto c = load_entry("s05-a");
    auto s = enumerate_guided_strip(c.t, pants_guide(c.t, c.connectors), 3);
    auto cx = build_complex(s, true);
    CHECK(cx.dimension() == c.S.xi());
}
