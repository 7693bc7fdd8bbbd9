#include "tt/bicombing.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "tt/canonical.hpp"

namespace tt {

std::vector<int> trainpath::branches() const {
    std::vector<int> b;
    for (int x : darts) b.push_back(branch_of(x));
    return b;
}

namespace {

bool passes(const track& t, int from_dart, int to_dart) {
    const slot& p = t.at[from_dart ^ 1];
    const slot& q = t.at[to_dart];
    return p.sw == q.sw && p.side != q.side;
}

trainpath reversed(const trainpath& p) {
    trainpath r{{}, p.circle};
    for (auto it = p.darts.rbegin(); it != p.darts.rend(); ++it) r.darts.push_back(*it ^ 1);
    return r;
}

trainpath sub(const trainpath& p, int from, int len) {
    return {std::vector<int>(p.darts.begin() + from, p.darts.begin() + from + len), false};
}

// least rotation of either orientation, so equal circles compare equal
trainpath normal_circle(const trainpath& c) {
    trainpath best = c;
    for (const trainpath& o : {c, reversed(c)})
        for (size_t r = 0; r < o.darts.size(); ++r) {
            trainpath x = o;
            std::rotate(x.darts.begin(), x.darts.begin() + r, x.darts.end());
            if (x.darts < best.darts) best = x;
        }
    return best;
}

trainpath normal_path(const trainpath& p) {
    trainpath r = reversed(p);
    return r.darts < p.darts ? r : p;
}

bool contains(const trainpath& big, const trainpath& small) {
    for (const trainpath& o : {small, reversed(small)})
        if (std::search(big.darts.begin(), big.darts.end(), o.darts.begin(), o.darts.end()) != big.darts.end()) return true;
    return false;
}

}  // namespace

std::optional<trainpath> realize(const track& t, const std::vector<int>& branches, int first_dart, bool circle) {
    trainpath p{{}, circle};
    if (branches.empty()) return p;
    if (branch_of(first_dart) != branches[0]) return std::nullopt;
    p.darts.push_back(first_dart);
    std::function<bool(size_t)> go = [&](size_t i) {
        if (i == branches.size()) return !circle || passes(t, p.darts.back(), p.darts[0]);
        for (int h : {2 * branches[i], 2 * branches[i] + 1}) {
            if (!passes(t, p.darts.back(), h)) continue;
            p.darts.push_back(h);
            if (go(i + 1)) return true;
            p.darts.pop_back();
        }
        return false;
    };
    if (!go(1)) return std::nullopt;
    return p;
}

bool is_trainpath(const track& t, const trainpath& p) {
    for (size_t i = 1; i < p.darts.size(); ++i)
        if (!passes(t, p.darts[i - 1], p.darts[i])) return false;
    return !p.circle || p.darts.empty() || passes(t, p.darts.back(), p.darts[0]);
}

bool embedded(const track& t, const trainpath& p) {
    std::set<int> br, sw;
    for (int x : p.darts) {
        if (!br.insert(branch_of(x)).second) return false;
        if (!sw.insert(t.at[x].sw).second) return false;
    }
    if (!p.circle && !p.darts.empty() && !sw.insert(t.at[p.darts.back() ^ 1].sw).second) return false;
    return true;
}

turn switch_turn(const track& t, const trainpath& p, int i) {
    int m = p.length();
    if (!p.circle && (i <= 0 || i >= m)) return turn::none;
    int arr = p.darts[(i - 1 + m) % m] ^ 1, dep = p.darts[i % m];
    int s = t.at[dep].sw;
    if (t.valence(s) != 3) return turn::none;
    int n = -1;
    for (int k = 0; k < 2; ++k)
        for (int h : t.sw[s][k])
            if (h != arr && h != dep) n = h;
    auto index_in = [&](int side, int h) {
        auto A = away(t, s, side);
        return std::find(A.begin(), A.end(), h) - A.begin();
    };
    int sd = t.at[dep].side;
    if (t.at[n].side == sd) return index_in(sd, n) < index_in(sd, dep) ? turn::left : turn::right;
    int sa = t.at[arr].side;
    return index_in(sa, n) > index_in(sa, arr) ? turn::left : turn::right;
}

std::optional<dir> rho_direction(const track& t, const trainpath& p, int i) {
    int m = p.length(), x = p.darts[i], e = branch_of(x);
    if (classify_branch(t, e) != branch_kind::large) return std::nullopt;
    corners k = split_corners(t, e);
    // halves at the start and at the end of the traversal, each as (right winner, left winner)
    int sr = x == 2 * e ? k.a : k.c, sl = x == 2 * e ? k.b : k.d;
    int er = x == 2 * e ? k.c : k.a, el = x == 2 * e ? k.d : k.b;
    std::optional<dir> from_prev, from_next;
    if (p.circle || i > 0) {
        int y = p.darts[(i - 1 + m) % m] ^ 1;
        if (y == sr) from_prev = dir::right;
        else if (y == sl) from_prev = dir::left;
        else return std::nullopt;
    }
    if (p.circle || i + 1 < m) {
        int z = p.darts[(i + 1) % m];
        if (z == er) from_next = dir::right;
        else if (z == el) from_next = dir::left;
        else return std::nullopt;
    }
    if (from_prev && from_next && *from_prev != *from_next) return std::nullopt;
    return from_prev ? from_prev : from_next;
}

std::optional<multi_split> level_one(const track& t, const trainpath& p, std::optional<dir> single) {
    if (p.darts.empty() || !is_trainpath(t, p) || !embedded(t, p)) return std::nullopt;
    auto br = p.branches();
    int m = p.length();
    multi_split r{t, {}, p};
    std::vector<bool> done(m, false);
    for (int n = 0; n < m; ++n) {
        auto cur = realize(r.t, br, p.darts[0], p.circle);
        if (!cur) return std::nullopt;
        r.image = *cur;
        int pick = -1;
        for (int i = 0; i < m && pick < 0; ++i)
            if (!done[i] && classify_branch(r.t, br[i]) == branch_kind::large) pick = i;
        if (pick < 0) return std::nullopt;
        std::optional<dir> d = (m == 1 && !p.circle) ? single : rho_direction(r.t, r.image, pick);
        if (!d) return std::nullopt;
        r.t = split(r.t, br[pick], *d);
        r.seq.push_back({br[pick], *d});
        done[pick] = true;
    }
    auto cur = realize(r.t, br, p.darts[0], p.circle);
    if (!cur) return std::nullopt;
    r.image = *cur;
    return r;
}

bool symmetric_large(const track& t, const trainpath& p) { return !p.circle && level_one(t, p, dir::right).has_value(); }

bool symmetric_circle(const track& t, const trainpath& p) { return p.circle && level_one(t, p).has_value(); }

residual_path longest_symmetric_subpath(const track& t, const trainpath& p) {
    residual_path r;
    for (int len = p.length(); len >= 1 && !r.path; --len)
        for (int from = 0; from + len <= p.length(); ++from) {
            trainpath q = sub(p, from, len);
            if (!symmetric_large(t, q)) continue;
            if (r.path) r.ties++;
            else r.path = q;
        }
    return r;
}

namespace {

// rho multi-split with length-one levels resolved by a chooser; it may stop there
full_multi_split multi_split_with(const track& t, const trainpath& p,
                                  const std::function<std::optional<dir>(const track&, int)>& choose) {
    full_multi_split f{t, {}, {p.length()}};
    trainpath cur = p;
    for (;;) {
        std::optional<dir> single;
        if (cur.length() == 1) {
            single = choose(f.t, branch_of(cur.darts[0]));
            if (!single) return f;
        }
        auto r = level_one(f.t, cur, single);
        if (!r) throw precondition_error("trainpath is not symmetric large: " + path_string(cur));
        for (auto& s : r->seq) f.seq.push_back(s);
        f.t = r->t;
        auto next = longest_symmetric_subpath(f.t, r->image);
        if (!next.path) return f;
        if (next.path->length() > cur.length() - 2 && cur.length() > 1)
            throw std::logic_error("multi-split level did not shorten the symmetric path");
        if (cur.length() == 1) throw std::logic_error("length-one level left a symmetric path");
        cur = *next.path;
        f.lengths.push_back(cur.length());
    }
}

}  // namespace

full_multi_split rho_multi_split(const track& t, const trainpath& p, std::optional<dir> single) {
    if (p.circle) throw precondition_error("rho multi-split of a circle");
    bool first = true;
    return multi_split_with(t, p, [&](const track&, int) -> std::optional<dir> {
        // only the first level may be fixed by the caller
        if (first && p.length() == 1) {
            first = false;
            return single;
        }
        return single ? single : std::optional<dir>(dir::right);
    });
}

circle_result circle_multi_split(const track& t, const trainpath& c, int max_rounds) {
    if (!c.circle) throw precondition_error("not a circle");
    circle_result r{t, {}, 0, {}};
    std::string code = canonical_code(t);
    trainpath cur = c;
    for (int round = 1; round <= max_rounds; ++round) {
        auto s = level_one(r.t, cur);
        if (!s) throw precondition_error("trainpath is not a symmetric circle: " + path_string(cur));
        for (auto& x : s->seq) r.seq.push_back(x);
        r.t = s->t;
        cur = s->image;
        r.lengths.push_back(cur.length());
        if (!r.first_recurrence) {
            track step = t;
            for (size_t i = 0; i < r.seq.size() && !r.first_recurrence; ++i) {
                step = split(step, r.seq[i].slot, r.seq[i].d);
                if (canonical_code(step) == code) r.first_recurrence = (int)i + 1;
            }
        }
        if (canonical_code(r.t) == code) {
            r.k = round;
            return r;
        }
    }
    return r;
}

std::vector<trainpath> find_symmetric_paths(const track& t, int max_length) {
    if (max_length < 0) max_length = t.nbr;
    std::vector<trainpath> paths, circles;
    std::set<std::vector<int>> seen;
    trainpath p;
    std::set<int> br, sw;
    std::function<void()> grow = [&]() {
        int end_half = p.darts.back() ^ 1;
        int s = t.at[end_half].sw;
        // closing up at the first switch
        if (s == t.at[p.darts[0]].sw && passes(t, p.darts.back(), p.darts[0])) {
            trainpath c{p.darts, true};
            c = normal_circle(c);
            if (seen.insert(c.darts).second && symmetric_circle(t, c)) circles.push_back(c);
        }
        if (sw.count(s)) return;
        if (t.large_half(end_half)) {
            trainpath q = normal_path(p);
            if (seen.insert(q.darts).second && symmetric_large(t, q)) paths.push_back(q);
        }
        if (p.length() >= max_length) return;
        sw.insert(s);
        for (int h : t.sw[s][1 - t.at[end_half].side]) {
            if (br.count(branch_of(h))) continue;
            p.darts.push_back(h);
            br.insert(branch_of(h));
            grow();
            br.erase(branch_of(h));
            p.darts.pop_back();
        }
        sw.erase(s);
    };
    for (int x = 0; x < 2 * t.nbr; ++x) {
        if (!t.large_half(x)) continue;
        p.darts = {x};
        br = {branch_of(x)};
        sw = {t.at[x].sw};
        grow();
    }
    std::vector<trainpath> out;
    for (auto& q : paths) {
        bool maximal = true;
        for (auto& o : paths)
            if (o.length() > q.length() && contains(o, q)) maximal = false;
        if (maximal) out.push_back(q);
    }
    std::sort(out.begin(), out.end(), [](const trainpath& a, const trainpath& b) { return a.darts < b.darts; });
    std::sort(circles.begin(), circles.end(), [](const trainpath& a, const trainpath& b) { return a.darts < b.darts; });
    out.insert(out.end(), circles.begin(), circles.end());
    return out;
}

std::vector<int> configuration::branch_set() const {
    auto b = path.branches();
    std::sort(b.begin(), b.end());
    return b;
}

namespace {

bool consumable(const track& t, const sequence& residual, const trainpath& p, std::optional<dir> single) {
    auto r = level_one(t, p, single);
    return r && consume(t, residual, r->seq).has_value();
}

// embedded continuations of p beyond its last dart, shortest first; closing ones become circles
std::vector<trainpath> continuations(const track& t, const trainpath& p, int max_extra) {
    std::vector<trainpath> out;
    std::set<int> br, sw;
    for (int x : p.darts) {
        br.insert(branch_of(x));
        sw.insert(t.at[x].sw);
    }
    trainpath q = p;
    std::function<void(int)> grow = [&](int extra) {
        int end_half = q.darts.back() ^ 1;
        int s = t.at[end_half].sw;
        if (extra > 0) {
            if (s == t.at[q.darts[0]].sw && passes(t, q.darts.back(), q.darts[0])) out.push_back({q.darts, true});
            if (!sw.count(s) && t.large_half(end_half)) out.push_back(q);
        }
        if (sw.count(s) || extra >= max_extra) return;
        sw.insert(s);
        for (int h : t.sw[s][1 - t.at[end_half].side]) {
            if (br.count(branch_of(h))) continue;
            q.darts.push_back(h);
            br.insert(branch_of(h));
            grow(extra + 1);
            br.erase(branch_of(h));
            q.darts.pop_back();
        }
        sw.erase(s);
    };
    grow(0);
    std::stable_sort(out.begin(), out.end(), [](const trainpath& a, const trainpath& b) { return a.length() < b.length(); });
    return out;
}

}  // namespace

configuration level_one_config(const track& t, const sequence& residual, int e) {
    if (classify_branch(t, e) != branch_kind::large) throw precondition_error("branch " + std::to_string(e) + " is not large");
    configuration c{false, {{2 * e}, false}};
    auto d = front_loadable(t, residual, e);
    if (!d) return c;
    c.splittable = true;
    if (!consumable(t, residual, c.path, d)) throw std::logic_error("front-loadable split is not consumable");
    for (;;) {
        // shortest valid continuation at either end, the forward end first on ties
        std::vector<std::pair<trainpath, bool>> cands;
        for (bool back : {false, true}) {
            trainpath base = back ? reversed(c.path) : c.path;
            for (auto& q : continuations(t, base, t.nbr - c.path.length())) cands.push_back({q, back});
        }
        std::stable_sort(cands.begin(), cands.end(), [](auto& x, auto& y) { return x.first.length() < y.first.length(); });
        bool grown = false;
        for (auto& [q, back] : cands) {
            trainpath cand = back ? reversed(q) : q;
            if (cand.circle) cand = normal_circle(cand);
            if (!consumable(t, residual, cand, d)) continue;
            c.path = cand;
            grown = true;
            break;
        }
        if (!grown || c.path.circle) break;
    }
    if (!c.path.circle) c.path = normal_path(c.path);
    return c;
}

std::vector<configuration> level_one_configs(const track& t, const sequence& residual) {
    std::vector<configuration> out;
    std::vector<bool> covered(t.nbr, false);
    for (int e : large_branches(t)) {
        if (covered[e]) continue;
        auto c = level_one_config(t, residual, e);
        for (int b : c.path.branches()) covered[b] = true;
        out.push_back(c);
    }
    return out;
}

sequence config_multi_split(const track& t, const sequence& residual, const configuration& c) {
    if (!c.splittable) throw precondition_error("configuration is not splittable");
    auto here = realize(t, c.path.branches(), c.path.darts[0], c.path.circle);
    if (!here) throw precondition_error("configuration is not a trainpath of the track");
    if (here->circle) return circle_multi_split(t, *here).seq;
    // length-one levels follow the target while the multi-split stays inside its strip
    sequence full;
    std::optional<sequence> left = residual;
    track probe = t;
    trainpath cur = *here;
    for (;;) {
        std::optional<dir> single;
        if (cur.length() == 1) {
            if (!left) break;
            single = front_loadable(probe, *left, branch_of(cur.darts[0]));
            if (!single) break;
        }
        auto r = level_one(probe, cur, single);
        if (!r) throw precondition_error("configuration is not symmetric large");
        for (auto& s : r->seq) full.push_back(s);
        if (left) left = consume(probe, *left, r->seq);
        probe = r->t;
        auto next = longest_symmetric_subpath(probe, r->image);
        if (!next.path || cur.length() == 1) break;
        cur = *next.path;
    }
    return full;
}

move_step sigma_move(const track& t, const sequence& residual) {
    move_step m{t, {}, {}};
    sequence res = residual;
    for (auto& c : level_one_configs(t, residual)) {
        if (!c.splittable) continue;
        m.configs.push_back(c);
        meet_result mt = meet(m.t, config_multi_split(m.t, res, c), res);
        auto rest = consume(m.t, res, mt.seq);
        if (!rest) throw std::logic_error("meet is not consumable");
        res = *rest;
        for (auto& s : mt.seq) m.seq.push_back(s);
        m.t = mt.t;
    }
    return m;
}

tight_sequence tight_multi_sequence(const track& t, const sequence& residual, int cap) {
    replay(t, residual);
    tight_sequence r;
    r.stations.push_back(t);
    track cur = t;
    sequence res = residual;
    for (int step = 0; !res.empty(); ++step) {
        if (step >= cap) throw std::runtime_error("tight multi-sequence exceeded its step cap");
        auto m = sigma_move(cur, res);
        if (m.seq.empty()) throw std::logic_error("sigma-move made no progress");
        auto rest = consume(cur, res, m.seq);
        if (!rest) throw std::logic_error("sigma-move left the strip");
        res = *rest;
        cur = m.t;
        r.stations.push_back(cur);
        r.steps.push_back(m.seq);
        for (auto& s : m.seq) r.total.push_back(s);
    }
    return r;
}

namespace {

std::vector<int> station_ids(const flat_strip& s, const sequence& prefix, const tight_sequence& g) {
    std::vector<int> ids;
    auto phi = phi_of(s.base.nbr, prefix);
    auto at = s.find(phi);
    if (!at) throw std::logic_error("station outside the strip");
    ids.push_back(*at);
    for (auto& step : g.steps) {
        for (auto& r : step) phi[r.slot]++;
        auto v = s.find(phi);
        if (!v) throw std::logic_error("station outside the strip");
        ids.push_back(*v);
    }
    return ids;
}

std::vector<int> tight_ids(const flat_strip& s, const sequence& from, int to) {
    auto rest = consume(s.base, s.vertices.at(to).path, from);
    if (!rest) throw precondition_error("vertex does not lie above the start");
    track start = replay(s.base, from);
    return station_ids(s, from, tight_multi_sequence(start, *rest));
}

int l1(const flat_strip& s, int x, int y) {
    int d = 0;
    for (size_t i = 0; i < s.vertices[x].phi.size(); ++i) d += std::abs(s.vertices[x].phi[i] - s.vertices[y].phi[i]);
    return d;
}

}  // namespace

std::vector<int> combing_line(const flat_strip& s, int x, int y) {
    if (s.guided) throw precondition_error("combing needs a strip with a sequence target");
    meet_result z = meet(s.base, s.vertices.at(x).path, s.vertices.at(y).path);
    auto gx = tight_ids(s, z.seq, x), gy = tight_ids(s, z.seq, y);
    std::vector<int> line(gx.rbegin(), gx.rend());
    line.insert(line.end(), gy.begin() + 1, gy.end());
    return line;
}

fellow_report fellow_travellers(const flat_strip& s, bool adjacent_only) {
    if (s.guided) throw precondition_error("fellow travellers need a strip with a sequence target");
    int n = (int)s.vertices.size();
    std::vector<std::vector<int>> g(n);
    for (int v = 0; v < n; ++v) g[v] = tight_ids(s, {}, v);
    fellow_report r;
    auto measure = [&](int x, int y) {
        const auto* c1 = &g[x];
        const auto* c2 = &g[y];
        if (c1->size() > c2->size()) std::swap(c1, c2);
        int a1 = (int)c1->size() - 1, a2 = (int)c2->size() - 1;
        int den = l1(s, (*c1)[a1], (*c2)[a2]);
        if (den == 0) return;
        for (int t = 0; t <= a1; ++t) r.L = std::max(r.L, rat(l1(s, (*c1)[t], (*c2)[t]), den));
        for (int t = a1; t <= a2; ++t) r.L = std::max(r.L, rat(l1(s, (*c1)[a1], (*c2)[t]), den));
        r.pairs++;
    };
    if (adjacent_only) {
        for (auto& e : s.edges) measure(e.from, e.to);
    } else {
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) measure(x, y);
    }
    r.L.canonicalize();
    return r;
}

track mirror(const track& t) {
    track m = t;
    for (auto& s : m.sw)
        for (auto& side : s) std::reverse(side.begin(), side.end());
    // the region left of a dart lies left of the opposite dart once orientation is reversed
    for (auto& p : m.punct) p ^= 1;
    m.index();
    return m;
}

int twist_sign(const track& t, const connector& c) {
    auto cs = find_twist_connectors(t);
    if (std::find(cs.begin(), cs.end(), c) == cs.end()) throw precondition_error("not a twist connector");
    auto d = connector_split_dir(t, c);
    if (!d) throw precondition_error("connector split has no direction");
    return *d == dir::right ? 1 : -1;
}

trainpath connector_circle(const track& t, const connector& c) {
    for (int x : {2 * c.large, 2 * c.large + 1}) {
        auto p = realize(t, {c.large, c.small}, x, true);
        if (p) return *p;
    }
    throw precondition_error("connector is not a closed trainpath");
}

weights linear_transport(const track& t, const weights& mu, int e, dir d) {
    corners k = split_corners(t, e);
    weights out = mu;
    rat a = mu[branch_of(k.a)], dd = mu[branch_of(k.d)];
    if (d == dir::right) out[e] = a - dd;
    else if (d == dir::left) out[e] = dd - a;
    else throw precondition_error("linear transport of a collision");
    return out;
}

std::string path_string(const trainpath& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.darts.size(); ++i) os << (i ? " " : "") << branch_of(p.darts[i]) << (p.darts[i] & 1 ? "-" : "+");
    if (p.circle) os << " o";
    return os.str();
}

}  // namespace tt
