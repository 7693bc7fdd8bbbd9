#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "walks.hpp"
#include "tt/canonical.hpp"
#include "tt/catalog.hpp"
#include "tt/measures.hpp"
#include "tt/strips.hpp"
#include "tt/subtrack.hpp"

using namespace tt;

namespace {

// reachability along split edges
std::vector<bool> descendants(const flat_strip& s, int v) {
    std::vector<std::vector<int>> out(s.vertices.size());
    for (auto& e : s.edges) out[e.from].push_back(e.to);
    std::vector<bool> seen(s.vertices.size(), false);
    std::vector<int> st{v};
    seen[v] = true;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : out[x])
            if (!seen[y]) seen[y] = true, st.push_back(y);
    }
    return seen;
}

std::vector<int> componentwise(const std::vector<int>& a, const std::vector<int>& b, bool upper) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = upper ? std::max(a[i], b[i]) : std::min(a[i], b[i]);
    return r;
}

}  // namespace

TEST_CASE("front loading agrees with the permutation oracle") {
    std::mt19937_64 rng(61);
    int checked = 0, yes = 0, no = 0;
    for (auto& c : load_catalog())
        for (int i = 0; i < 6; ++i) {
            int len = 3 + (int)(rng() % 4);
            if (i == 0) len = 8;
            auto w = walks::guided(c.t, c.guide, len, rng);
            for (int e : large_branches(c.t))
                for (dir d : {dir::right, dir::left}) {
                    auto f = front_loadable(c.t, w.seq, e);
                    bool mine = f && *f == d;
                    CHECK(mine == oracle::permutation_front(c.t, w.seq, e, d));
                    ++checked;
                    (mine ? yes : no)++;
                }
            for (int b = 0; b < c.t.nbr; ++b)
                if (classify_branch(c.t, b) != branch_kind::large) CHECK_THROWS_AS(front_loadable(c.t, w.seq, b), precondition_error);
        }
    CHECK(yes > 0);
    CHECK(no > 0);
    CHECK(checked > 100);
}

TEST_CASE("trivial and square strips") {
    auto c = load_catalog()[0];
    flat_strip one = enumerate_strip(c.t, {});
    CHECK(one.vertices.size() == 1);
    CHECK(length(one.vertices[0].phi) == 0);

    auto L = large_branches(c.t);
    REQUIRE(L.size() >= 2);
    sequence two{{L[0], dir::right}, {L[1], dir::left}};
    flat_strip sq = enumerate_strip(c.t, two);
    CHECK(sq.vertices.size() == 4);
    CHECK(sq.edges.size() == 4);
    CHECK(!sq.truncated);
    CHECK(sq.path_conflicts == 0);
    auto far = sq.find({});
    CHECK(!far);
    std::vector<int> top(c.t.nbr, 0);
    top[L[0]] = top[L[1]] = 1;
    REQUIRE(sq.find(top));
    std::vector<int> m0(c.t.nbr, 0), m1(c.t.nbr, 0);
    m0[L[0]] = 1;
    m1[L[1]] = 1;
    auto j = join_theta(sq, *sq.find(m0), *sq.find(m1));
    REQUIRE(j);
    CHECK(*j == *sq.find(top));
    CHECK(join_theta(sq, 0, 0) == 0);
}

TEST_CASE("strip residuals replay to the target and phi is injective") {
    std::mt19937_64 rng(67);
    for (auto& c : load_catalog()) {
        auto w = walks::guided(c.t, c.guide, 9, rng);
        flat_strip s = enumerate_strip(c.t, w.seq);
        CHECK(!s.truncated);
        CHECK(s.path_conflicts == 0);
        CHECK(s.by_phi.size() == s.vertices.size());
        std::string target = canonical_code(w.t);
        for (auto& v : s.vertices) {
            CHECK(canonical_code(replay(v.t, v.residual)) == target);
            CHECK(same_labeled(replay(s.base, v.path), v.t));
            CHECK((int)v.residual.size() + length(v.phi) == (int)w.seq.size());
        }
        // meet and join closure
        for (size_t x = 0; x < s.vertices.size(); ++x)
            for (size_t y = x; y < s.vertices.size(); ++y) {
                auto lo = componentwise(s.vertices[x].phi, s.vertices[y].phi, false);
                auto hi = componentwise(s.vertices[x].phi, s.vertices[y].phi, true);
                CHECK(s.find(lo));
                CHECK(s.find(hi));
            }
        flat_strip cut = enumerate_strip(c.t, w.seq, 3);
        CHECK(cut.truncated == (w.seq.size() > 3));
    }
}

TEST_CASE("guided strips are consistent") {
    for (auto& c : load_catalog()) {
        flat_strip s = enumerate_guided_strip(c.t, c.guide, 4);
        CHECK(s.path_conflicts == 0);
        CHECK(s.truncated);
        for (auto& v : s.vertices) {
            CHECK(satisfies_switches(v.t, v.mu));
            CHECK(v.depth == length(v.phi));
        }
        flat_strip p = enumerate_guided_strip(c.t, pants_guide(c.t, c.connectors), 3);
        CHECK(p.path_conflicts == 0);
    }
}

TEST_CASE("projection to a strip is the deepest common ancestor") {
    std::mt19937_64 rng(71);
    int runs = 0;
    for (auto& c : load_catalog()) {
        if (c.S.xi() > 2) continue;
        for (int i = 0; i < 3; ++i) {
            auto pre = walks::guided(c.t, c.guide, (int)(rng() % 3), rng);
            auto g = generic_guide(pre.t, rng);
            auto a = walks::guided(pre.t, pre.mu, 4, rng);
            auto b = walks::guided(pre.t, g, 4, rng);
            sequence eta = pre.seq, zeta = pre.seq;
            eta.insert(eta.end(), a.seq.begin(), a.seq.end());
            zeta.insert(zeta.end(), b.seq.begin(), b.seq.end());

            flat_strip E = enumerate_strip(c.t, eta);
            flat_strip Z = enumerate_strip(c.t, zeta);
            int best = -1, best_depth = -1, ties = 0;
            for (size_t v = 0; v < E.vertices.size(); ++v) {
                auto z = Z.find(E.vertices[v].phi);
                if (!z || !same_labeled(Z.vertices[*z].t, E.vertices[v].t)) continue;
                if (E.vertices[v].depth > best_depth) best = (int)v, best_depth = E.vertices[v].depth, ties = 0;
                else if (E.vertices[v].depth == best_depth) ++ties;
            }
            CHECK(ties == 0);
            int p = project_meet(E, zeta);
            CHECK(p == best);
            CHECK(E.vertices[p].phi == Z.vertices[project_meet(Z, eta)].phi);
            CHECK(E.vertices[project_meet(E, eta)].phi == phi_of(c.t.nbr, eta));
            CHECK(project_meet(E, {}) == 0);
            CHECK(E.vertices[project_meet(E, pre.seq)].phi == phi_of(c.t.nbr, pre.seq));
            ++runs;
        }
    }
    CHECK(runs > 0);
}

TEST_CASE("join is the least common descendant with additive phi") {
    std::mt19937_64 rng(73);
    auto c = load_entry("s05-a");
    auto w = walks::guided(c.t, c.guide, 7, rng);
    flat_strip s = enumerate_strip(c.t, w.seq);
    REQUIRE(s.vertices.size() > 4);
    std::vector<std::vector<bool>> below;
    for (size_t v = 0; v < s.vertices.size(); ++v) below.push_back(descendants(s, (int)v));
    for (size_t x = 0; x < s.vertices.size(); ++x)
        for (size_t y = 0; y < s.vertices.size(); ++y) {
            auto j = join_theta(s, (int)x, (int)y);
            REQUIRE(j);
            auto m = s.find(componentwise(s.vertices[x].phi, s.vertices[y].phi, false));
            REQUIRE(m);
            for (int i = 0; i < c.t.nbr; ++i)
                CHECK(s.vertices[*j].phi[i] - s.vertices[*m].phi[i] ==
                      (s.vertices[x].phi[i] - s.vertices[*m].phi[i]) + (s.vertices[y].phi[i] - s.vertices[*m].phi[i]));
            CHECK(below[x][*j]);
            CHECK(below[y][*j]);
            for (size_t v = 0; v < s.vertices.size(); ++v)
                if (below[x][v] && below[y][v]) CHECK(s.vertices[v].depth >= s.vertices[*j].depth);
        }
}

TEST_CASE("canonical sequences") {
    std::mt19937_64 rng(79);
    auto c = load_entry("s12-a");
    auto L = large_branches(c.t);
    REQUIRE(L.size() >= 2);
    sequence one{{L[1], dir::left}};
    CHECK(canonical_sequence(c.t, one) == one);
    sequence swapped{{L[1], dir::right}, {L[0], dir::left}};
    CHECK(canonical_sequence(c.t, swapped) == sequence{{L[0], dir::left}, {L[1], dir::right}});

    for (int i = 0; i < 4; ++i) {
        auto w = walks::guided(c.t, c.guide, 6, rng);
        sequence canon = canonical_sequence(c.t, w.seq);
        CHECK(canonical_sequence(c.t, canon) == canon);
        CHECK(same_labeled(replay(c.t, canon), w.t));
        std::vector<int> idx(w.seq.size());
        std::iota(idx.begin(), idx.end(), 0);
        int witnesses = 0;
        do {
            sequence p;
            for (int k : idx) p.push_back(w.seq[k]);
            track cur = c.t;
            bool ok = true;
            for (auto& r : p) {
                if (classify_branch(cur, r.slot) != branch_kind::large) {
                    ok = false;
                    break;
                }
                cur = split(cur, r.slot, r.d);
            }
            if (!ok || !same_labeled(cur, w.t)) continue;
            ++witnesses;
            CHECK(canonical_sequence(c.t, p) == canon);
        } while (std::next_permutation(idx.begin(), idx.end()));
        CHECK(witnesses >= 1);
    }
}

namespace {

struct planted {
    track t;
    mask in;
    weights mu;
    int e;
};

// union of supports of a few vertex measures, with a subtrack branch made of several branches
std::optional<planted> plant_subtrack(const catalog_entry& c, std::mt19937_64& rng) {
    for (int tries = 0; tries < 200; ++tries) {
        weights sum(c.t.nbr, rat(0));
        int k = 2 + (int)(rng() % 2);
        for (int j = 0; j < k; ++j) {
            lp_problem p;
            p.nvars = c.t.nbr;
            for (int s = 0; s < c.t.nsw(); ++s) {
                lp_row r;
                std::vector<rat> co(c.t.nbr, rat(0));
                for (int h : c.t.sw[s][0]) co[branch_of(h)] += 1;
                for (int h : c.t.sw[s][1]) co[branch_of(h)] -= 1;
                for (int b = 0; b < c.t.nbr; ++b)
                    if (co[b] != 0) r.coef.emplace_back(b, co[b]);
                if (!r.coef.empty()) p.rows.push_back(r);
            }
            lp_row norm;
            for (int b = 0; b < c.t.nbr; ++b) norm.coef.emplace_back(b, rat(1));
            norm.rhs = 1;
            p.rows.push_back(norm);
            p.obj.resize(c.t.nbr);
            for (auto& o : p.obj) o = (int)(rng() % 21) - 10;
            auto r = lp_solve(p);
            if (r.status != lp_status::optimal) continue;
            for (int b = 0; b < c.t.nbr; ++b) sum[b] += r.x[b];
        }
        std::vector<int> supp;
        for (int b = 0; b < c.t.nbr; ++b)
            if (sum[b] > 0) supp.push_back(b);
        if ((int)supp.size() == c.t.nbr || supp.empty() || !is_subtrack(c.t, supp)) continue;
        mask in = to_mask(c.t.nbr, supp);
        for (int b : supp) {
            if (sigma_branch(c.t, in, b).size() < 2 || !sigma_large(c.t, in, b)) continue;
            weights mu = c.guide;
            rat big = 0;
            for (auto& x : c.guide) big += x;
            for (int i = 0; i < c.t.nbr; ++i) mu[i] += 1000 * big * sum[i];
            return planted{c.t, in, mu, b};
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("tightening a subtrack branch") {
    std::mt19937_64 rng(83);
    int runs = 0;
    for (auto& c : load_catalog()) {
        auto p = plant_subtrack(c, rng);
        if (!p) continue;
        REQUIRE(satisfies_switches(p->t, p->mu));
        std::vector<int> keep;
        for (int b = 0; b < p->t.nbr; ++b)
            if (p->in[b]) keep.push_back(b);
        std::string sigma = canonical_code(extract_subtrack(p->t, keep).t);
        tightened r = tighten(p->t, p->in, p->e, p->mu);
        CHECK(sigma_branch(r.t, r.in, r.e).size() == 1);
        CHECK(classify_branch(r.t, r.e) == branch_kind::large);
        CHECK(!r.seq.empty());
        for (size_t i = 1; i < r.complexity.size(); ++i) CHECK(r.complexity[i] <= r.complexity[i - 1]);
        std::vector<int> keep2;
        for (int b = 0; b < r.t.nbr; ++b)
            if (r.in[b]) keep2.push_back(b);
        CHECK(is_subtrack(r.t, keep2));
        CHECK(canonical_code(extract_subtrack(r.t, keep2).t) == sigma);
        CHECK(satisfies_switches(r.t, r.mu));

        // already tight
        tightened again = tighten(r.t, r.in, r.e, r.mu);
        CHECK(again.seq.empty());

        // the induced split splits the subtrack
        dir d = mu_direction(r.t, r.mu, r.e);
        if (d != dir::collision) {
            tightened s = induced_step(r.t, r.in, r.e, d, r.mu);
            extracted before = extract_subtrack(r.t, keep2);
            std::vector<int> keep3;
            for (int b = 0; b < s.t.nbr; ++b)
                if (s.in[b]) keep3.push_back(b);
            CHECK(canonical_code(extract_subtrack(s.t, keep3).t) == canonical_code(split(before.t, before.bij[r.e], d)));
        }
        ++runs;
    }
    CHECK(runs >= 3);
}

TEST_CASE("full subtrack: the induced step is the single split") {
    auto c = load_entry("s05-b");
    mask all(c.t.nbr, true);
    int e = large_branches(c.t)[0];
    dir d = mu_direction(c.t, c.guide, e);
    REQUIRE(d != dir::collision);
    tightened s = induced_step(c.t, all, e, d, c.guide);
    CHECK(s.seq == sequence{{e, d}});
}

TEST_CASE("rigid branches and their normalization") {
    std::mt19937_64 rng(89);
    int instances = 0, rigid_count = 0;
    for (auto& c : load_catalog())
        for (int i = 0; i < 3; ++i) {
            track t = walks::guided(c.t, c.guide, 3 * i, rng).t;
            for (int e : large_branches(t)) {
                bool r = complete_after(t, e, dir::right), l = complete_after(t, e, dir::left);
                CHECK(rigid(t, e) == (r != l));
                ++instances;
                rigid_count += rigid(t, e);
            }
            normalized n = normalize_rigid(t, 100);
            CHECK(n.finished);
            for (int e : large_branches(n.t)) CHECK(!rigid(n.t, e));
        }
    CHECK(instances >= 20);
    MESSAGE("rigid large branches: " << rigid_count << " of " << instances);
}
