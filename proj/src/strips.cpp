#include "tt/strips.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "tt/serialize.hpp"

namespace tt {

track replay(const track& t, const sequence& seq) {
    track cur = t;
    for (auto& r : seq) {
        if (r.d == dir::collision) throw precondition_error("collision record in a splitting sequence");
        cur = split(cur, r.slot, r.d);
    }
    return cur;
}

std::vector<int> phi_of(int nbr, const sequence& seq) {
    std::vector<int> phi(nbr, 0);
    for (auto& r : seq) phi[r.slot]++;
    return phi;
}

int length(const std::vector<int>& phi) {
    int n = 0;
    for (int x : phi) n += x;
    return n;
}

// two distinct large branches of a generic track never share a switch, so a large branch stays
// large and untouched until the first record at it is reached
std::optional<dir> front_loadable(const track& t, const sequence& residual, int e) {
    if (classify_branch(t, e) != branch_kind::large) throw precondition_error("branch " + std::to_string(e) + " is not large");
    for (auto& r : residual)
        if (r.slot == e) return r.d;
    return std::nullopt;
}

sequence drop_first(const sequence& residual, int e) {
    sequence out = residual;
    for (size_t i = 0; i < out.size(); ++i)
        if (out[i].slot == e) {
            out.erase(out.begin() + i);
            return out;
        }
    throw precondition_error("no record at branch " + std::to_string(e));
}

std::optional<sequence> consume(const track& t, sequence residual, const sequence& w) {
    track cur = t;
    for (auto& r : w) {
        auto d = front_loadable(cur, residual, r.slot);
        if (!d || *d != r.d) return std::nullopt;
        residual = drop_first(residual, r.slot);
        cur = split(cur, r.slot, r.d);
    }
    return residual;
}

meet_result meet(const track& t, const sequence& a, const sequence& b) {
    meet_result m{t, {}};
    sequence ra = a, rb = b;
    for (;;) {
        bool moved = false;
        for (int e : large_branches(m.t)) {
            auto da = front_loadable(m.t, ra, e), db = front_loadable(m.t, rb, e);
            if (da && db && *da == *db) {
                ra = drop_first(ra, e);
                rb = drop_first(rb, e);
                m.t = split(m.t, e, *da);
                m.seq.push_back({e, *da});
                moved = true;
                break;
            }
        }
        if (!moved) return m;
    }
}

sequence canonical_sequence(const track& t, const sequence& seq) {
    replay(t, seq);
    track cur = t;
    sequence rest = seq, out;
    while (!rest.empty()) {
        std::optional<split_record> best;
        for (int e : large_branches(cur)) {
            auto d = front_loadable(cur, rest, e);
            if (d) {
                best = split_record{e, *d};
                break;
            }
        }
        if (!best) throw precondition_error("sequence does not replay from the given track");
        rest = drop_first(rest, best->slot);
        cur = split(cur, best->slot, best->d);
        out.push_back(*best);
    }
    return out;
}

std::optional<int> flat_strip::find(const std::vector<int>& phi) const {
    auto it = by_phi.find(phi);
    if (it == by_phi.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<int>> flat_strip::adjacency() const {
    std::vector<std::vector<int>> adj(vertices.size());
    for (auto& e : edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    return adj;
}

namespace {

struct child {
    int slot;
    dir d;
};

template <class Children>
void grow(flat_strip& s, Children children) {
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        auto kids = children(s.vertices[v]);
        if (s.radius >= 0 && s.vertices[v].depth >= s.radius) {
            if (!kids.empty()) s.truncated = true;
            continue;
        }
        for (auto& k : kids) {
            strip_vertex w;
            const strip_vertex& p = s.vertices[v];
            w.phi = p.phi;
            w.phi[k.slot]++;
            auto found = s.find(w.phi);
            if (found) {
                s.edges.push_back({v, *found, k.slot, k.d});
                continue;
            }
            w.t = split(p.t, k.slot, k.d);
            w.path = p.path;
            w.path.push_back({k.slot, k.d});
            w.depth = p.depth + 1;
            if (!s.guided) w.residual = drop_first(p.residual, k.slot);
            else w.mu = transport_split(p.t, p.mu, k.slot, k.d);
            int id = (int)s.vertices.size();
            s.by_phi[w.phi] = id;
            s.vertices.push_back(std::move(w));
            s.edges.push_back({v, id, k.slot, k.d});
            queue.push_back(id);
        }
    }
    // equal phi along different paths must give the same track
    for (auto& e : s.edges) {
        const strip_vertex& a = s.vertices[e.from];
        const strip_vertex& b = s.vertices[e.to];
        if (b.depth != a.depth + 1) continue;
        if (!same_labeled(split(a.t, e.slot, e.d), b.t)) s.path_conflicts++;
    }
    std::sort(s.edges.begin(), s.edges.end(), [](const strip_edge& x, const strip_edge& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
}

}  // namespace

flat_strip enumerate_strip(const track& t, const sequence& target, int radius) {
    replay(t, target);
    flat_strip s;
    s.base = t;
    s.target = target;
    s.radius = radius;
    strip_vertex root;
    root.t = t;
    root.phi.assign(t.nbr, 0);
    root.residual = target;
    s.by_phi[root.phi] = 0;
    s.vertices.push_back(root);
    grow(s, [](const strip_vertex& v) {
        std::vector<child> out;
        for (int e : large_branches(v.t))
            if (auto d = front_loadable(v.t, v.residual, e)) out.push_back({e, *d});
        return out;
    });
    return s;
}

flat_strip enumerate_guided_strip(const track& t, const weights& mu, int radius) {
    if (radius < 0) throw precondition_error("guided strips need a radius");
    if (!satisfies_switches(t, mu)) throw precondition_error("guide violates a switch condition");
    flat_strip s;
    s.base = t;
    s.guided = true;
    s.guide = mu;
    s.radius = radius;
    strip_vertex root;
    root.t = t;
    root.phi.assign(t.nbr, 0);
    root.mu = mu;
    s.by_phi[root.phi] = 0;
    s.vertices.push_back(root);
    grow(s, [](const strip_vertex& v) {
        std::vector<child> out;
        for (int e : large_branches(v.t)) {
            if (v.mu[e] <= 0) continue;
            dir d = mu_direction(v.t, v.mu, e);
            if (d != dir::collision) out.push_back({e, d});
        }
        return out;
    });
    return s;
}

int project_meet(const flat_strip& e, const sequence& zeta) {
    if (e.guided) throw precondition_error("projection needs a strip with a sequence target");
    replay(e.base, zeta);
    meet_result m = meet(e.base, e.target, zeta);
    auto v = e.find(phi_of(e.base.nbr, m.seq));
    if (!v) throw precondition_error("meet lies beyond the enumerated radius");
    return *v;
}

std::optional<int> join_theta(const flat_strip& e, int x, int y) {
    const auto& a = e.vertices.at(x).phi;
    const auto& b = e.vertices.at(y).phi;
    std::vector<int> j(a.size());
    for (size_t i = 0; i < a.size(); ++i) j[i] = std::max(a[i], b[i]);
    return e.find(j);
}

std::vector<int> bfs_distances(const flat_strip& e, int from) {
    auto adj = e.adjacency();
    std::vector<int> dist(e.vertices.size(), -1);
    std::deque<int> q{from};
    dist[from] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

std::string export_strip(const flat_strip& e) {
    std::ostringstream os;
    for (size_t i = 0; i < e.vertices.size(); ++i) {
        os << "v " << i << " phi:";
        for (size_t k = 0; k < e.vertices[i].phi.size(); ++k) os << (k ? "," : "") << e.vertices[i].phi[k];
        os << "\n";
    }
    for (auto& ed : e.edges) os << "e " << ed.from << " " << ed.to << " " << ed.slot << " " << dir_char(ed.d) << "\n";
    if (e.truncated) os << "truncated\n";
    return os.str();
}

std::string print_sequence(const sequence& seq) {
    std::string out;
    for (auto& r : seq) out += (out.empty() ? "" : " ") + slot_name(r.slot) + dir_char(r.d);
    return out;
}

sequence parse_sequence(const std::string& text) {
    sequence seq;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        if (tok.size() < 2) throw std::invalid_argument("bad split record '" + tok + "'");
        seq.push_back({parse_slot(tok.substr(0, tok.size() - 1)), parse_dir(tok.substr(tok.size() - 1))});
        tok.clear();
    };
    for (char c : text) {
        if (c == ',' || isspace((unsigned char)c)) flush();
        else tok += c;
    }
    flush();
    return seq;
}

std::optional<sequence> find_sequence(const track& a, const track& b, int max_depth) {
    if (a.nbr != b.nbr) return std::nullopt;
    std::vector<std::pair<track, sequence>> layer{{a, {}}};
    std::set<std::string> seen{print_track(a)};
    for (int depth = 0; depth <= max_depth; ++depth) {
        std::vector<std::pair<track, sequence>> next;
        for (auto& [t, seq] : layer) {
            if (same_labeled(t, b)) return seq;
            if (depth == max_depth) continue;
            for (int e : large_branches(t))
                for (dir d : {dir::right, dir::left}) {
                    track u = split(t, e, d);
                    if (!seen.insert(print_track(u)).second) continue;
                    auto s2 = seq;
                    s2.push_back({e, d});
                    next.push_back({std::move(u), std::move(s2)});
                }
        }
        layer = std::move(next);
    }
    return std::nullopt;
}

}  // namespace tt
