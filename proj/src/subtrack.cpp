#include "tt/subtrack.hpp"

#include <stdexcept>

#include "tt/measures.hpp"

namespace tt {

mask to_mask(int nbr, const std::vector<int>& branches) {
    mask m(nbr, false);
    for (int b : branches) m.at(b) = true;
    return m;
}

int sigma_complexity(const mask& in) {
    int n = 0;
    for (bool x : in) n += x;
    return n;
}

namespace {

// halves of the subtrack at switch s, per side
std::array<std::vector<int>, 2> sigma_halves(const track& t, const mask& in, int s) {
    std::array<std::vector<int>, 2> out;
    for (int k = 0; k < 2; ++k)
        for (int h : t.sw[s][k])
            if (in[branch_of(h)]) out[k].push_back(h);
    return out;
}

// follow the subtrack through bivalent points starting by arriving at half h; returns the branches passed
std::vector<int> walk(const track& t, const mask& in, int h, int stop) {
    std::vector<int> out;
    for (;;) {
        const slot& L = t.at[h];
        auto hs = sigma_halves(t, in, L.sw);
        if (hs[0].size() != 1 || hs[1].size() != 1) return out;
        int nx = hs[1 - L.side][0];
        if (branch_of(nx) == stop) return out;
        out.push_back(branch_of(nx));
        h = nx ^ 1;
    }
}

}  // namespace

std::vector<int> sigma_branch(const track& t, const mask& in, int b) {
    if (!in.at(b)) throw precondition_error("branch " + std::to_string(b) + " is not in the subtrack");
    auto fwd = walk(t, in, 2 * b + 1, b);
    auto bwd = walk(t, in, 2 * b, b);
    std::vector<int> path(bwd.rbegin(), bwd.rend());
    path.push_back(b);
    path.insert(path.end(), fwd.begin(), fwd.end());
    return path;
}

bool sigma_large(const track& t, const mask& in, int b) {
    auto path = sigma_branch(t, in, b);
    // end halves of the path
    auto end_half = [&](int from_half) {
        int h = from_half;
        for (;;) {
            const slot& L = t.at[h];
            auto hs = sigma_halves(t, in, L.sw);
            if (hs[0].size() != 1 || hs[1].size() != 1) return h;
            int nx = hs[1 - L.side][0];
            if (branch_of(nx) == b) return -1;
            h = nx ^ 1;
        }
    };
    int h0 = end_half(2 * b), h1 = end_half(2 * b + 1);
    if (h0 < 0 || h1 < 0) return false;
    for (int h : {h0, h1}) {
        auto hs = sigma_halves(t, in, t.at[h].sw);
        if (hs[t.at[h].side].size() != 1) return false;
    }
    return true;
}

std::optional<mask> sigma_image(const track& t, const mask& in, int h, dir d) {
    if (!in.at(h)) return in;
    corners k = split_corners(t, h);
    bool a = in[branch_of(k.a)], b = in[branch_of(k.b)], c = in[branch_of(k.c)], dd = in[branch_of(k.d)];
    mask out = in;
    if (d == dir::right) {
        if (b && dd) return std::nullopt;
        out[h] = a && c;
    } else {
        if (a && c) return std::nullopt;
        out[h] = b && dd;
    }
    track s = split(t, h, d);
    std::vector<int> keep;
    for (int i = 0; i < s.nbr; ++i)
        if (out[i]) keep.push_back(i);
    if (!is_subtrack(s, keep)) return std::nullopt;
    return out;
}

tightened tighten(const track& t, const mask& in, int e, const weights& mu, int cap) {
    tightened r{t, in, mu, {}, e, {}};
    for (int step = 0;; ++step) {
        auto path = sigma_branch(r.t, r.in, r.e);
        r.complexity.push_back(sigma_complexity(r.in));
        if (path.size() == 1) return r;
        if (step >= cap) throw std::runtime_error("tightening exceeded its step cap");
        int h = -1;
        for (int x : path)
            if (classify_branch(r.t, x) == branch_kind::large) {
                h = x;
                break;
            }
        if (h < 0) throw precondition_error("no large proper subbranch to split");
        if (r.mu[h] <= 0) throw precondition_error("guide vanishes on a proper subbranch");
        dir d = mu_direction(r.t, r.mu, h);
        if (d == dir::collision) throw precondition_error("guide ties at a proper subbranch");
        auto img = sigma_image(r.t, r.in, h, d);
        if (!img) throw precondition_error("guide split at branch " + std::to_string(h) + " breaks the subtrack");
        r.mu = transport_split(r.t, r.mu, h, d);
        r.t = split(r.t, h, d);
        r.in = *img;
        r.seq.push_back({h, d});
        r.e = path[0] != h ? path[0] : path[1];
    }
}

tightened induced_step(const track& t, const mask& in, int e, dir d, const weights& mu, int cap) {
    tightened r = tighten(t, in, e, mu, cap);
    if (classify_branch(r.t, r.e) != branch_kind::large) throw std::logic_error("tight branch is not large");
    if (mu_direction(r.t, r.mu, r.e) != d) throw precondition_error("guide does not carry the subtrack split");
    r.mu = transport_split(r.t, r.mu, r.e, d);
    r.t = split(r.t, r.e, d);
    r.seq.push_back({r.e, d});
    r.complexity.push_back(sigma_complexity(r.in));
    return r;
}

bool complete_after(const track& t, int e, dir d) { return completeness_surrogate(split(t, e, d)).all(); }

bool rigid(const track& t, int e) {
    if (classify_branch(t, e) != branch_kind::large) throw precondition_error("branch " + std::to_string(e) + " is not large");
    return !positive_transverse(collide(t, e, true).t).has_value();
}

std::optional<dir> rigid_direction(const track& t, int e) {
    bool r = complete_after(t, e, dir::right), l = complete_after(t, e, dir::left);
    if (r == l) return std::nullopt;
    return r ? dir::right : dir::left;
}

normalized normalize_rigid(const track& t, int cap) {
    normalized n{t, {}, false};
    for (int step = 0; step <= cap; ++step) {
        std::optional<split_record> next;
        for (int e : large_branches(n.t))
            if (rigid(n.t, e)) {
                auto d = rigid_direction(n.t, e);
                if (!d) throw std::logic_error("rigid branch without a unique complete split");
                next = split_record{e, *d};
                break;
            }
        if (!next) {
            n.finished = true;
            return n;
        }
        n.t = split(n.t, next->slot, next->d);
        n.seq.push_back(*next);
    }
    return n;
}

}  // namespace tt
