#include "tt/cubical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>

namespace tt {

bool cubical_complex::has(const cube& c) const {
    size_t k = c.dirs.size();
    return k < cubes.size() && cubes[k].count(c);
}

int cubical_complex::count() const {
    int n = 0;
    for (auto& s : cubes) n += (int)s.size();
    return n;
}

namespace {

int step_up(const cubical_complex& c, int v, int coord) {
    auto it = c.up[v].find(coord);
    return it == c.up[v].end() ? -1 : it->second;
}

std::vector<int> without(const std::vector<int>& d, int x) {
    std::vector<int> r;
    for (int y : d)
        if (y != x) r.push_back(y);
    return r;
}

std::vector<int> with(std::vector<int> d, int x) {
    d.insert(std::upper_bound(d.begin(), d.end(), x), x);
    return d;
}

}  // namespace

cubical_complex build_complex(std::vector<std::vector<int>> points, std::vector<int> depth,
                              const std::vector<grid_edge>& edges, int horizon) {
    cubical_complex c;
    int n = (int)points.size();
    c.points = std::move(points);
    c.depth = std::move(depth);
    c.horizon = horizon;
    c.up.resize(n);
    c.down.resize(n);
    c.cubes.emplace_back();
    for (int v = 0; v < n; ++v) c.cubes[0].insert({v, {}});
    if (!edges.empty()) c.cubes.emplace_back();
    for (auto& e : edges) {
        if (c.points[e.to][e.coord] != c.points[e.from][e.coord] + 1)
            throw precondition_error("edge does not step one unit along its coordinate");
        c.up[e.from][e.coord] = e.to;
        c.down[e.to][e.coord] = e.from;
        c.cubes[1].insert({e.from, {e.coord}});
    }
    for (size_t k = 2; c.cubes.size() == k; ++k) {
        std::set<cube> next;
        for (auto& f : c.cubes[k - 1])
            for (auto [j, top] : c.up[f.base]) {
                if (j <= f.dirs.back()) continue;
                if (!c.has({top, f.dirs})) continue;
                bool ok = true;
                for (int i : f.dirs) {
                    auto g = with(without(f.dirs, i), j);
                    int bi = step_up(c, f.base, i);
                    if (!c.has({f.base, g}) || bi < 0 || !c.has({bi, g})) {
                        ok = false;
                        break;
                    }
                }
                if (ok) next.insert({f.base, with(f.dirs, j)});
            }
        if (next.empty()) break;
        c.cubes.push_back(std::move(next));
    }
    return c;
}

cubical_complex build_complex(const flat_strip& s, bool accept_truncated) {
    if (s.truncated && !accept_truncated) throw precondition_error("strip is truncated");
    std::vector<std::vector<int>> pts;
    std::vector<int> depth;
    for (auto& v : s.vertices) {
        pts.push_back(v.phi);
        depth.push_back(v.depth);
    }
    std::vector<grid_edge> edges;
    for (auto& e : s.edges) edges.push_back({e.from, e.to, e.slot});
    return build_complex(std::move(pts), std::move(depth), edges, s.truncated ? s.radius : -1);
}

link_complex link(const cubical_complex& c, int v) {
    link_complex l;
    l.v = v;
    for (auto [i, w] : c.down[v]) l.verts.push_back({i, false});
    for (auto [i, w] : c.up[v]) l.verts.push_back({i, true});
    std::sort(l.verts.begin(), l.verts.end());
    int n = (int)l.verts.size();

    // the cube spanned at v by a set of link vertices, and whether all its points are known
    auto spanned = [&](const std::vector<int>& ids, cube& out) {
        int base = v, ups = 0;
        std::vector<int> dirs;
        for (int x : ids) {
            dirs.push_back(l.verts[x].coord);
            if (l.verts[x].up) ++ups;
        }
        for (int x : ids)
            if (!l.verts[x].up && base >= 0) {
                auto it = c.down[base].find(l.verts[x].coord);
                base = it == c.down[base].end() ? -1 : it->second;
            }
        std::sort(dirs.begin(), dirs.end());
        out = {base, dirs};
        return c.known(c.depth[v] + ups);
    };

    l.adj.assign(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            if (l.verts[x].coord == l.verts[y].coord) continue;
            cube q;
            spanned({x, y}, q);
            if (q.base >= 0 && c.has(q)) l.adj[x][y] = l.adj[y][x] = true;
        }

    // every clique, grown in increasing index order
    std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cl) {
        if (!cl.empty()) {
            cube q;
            bool known = spanned(cl, q);
            if (q.base >= 0 && c.has(q)) l.simplices.push_back(cl);
            else if (known) l.missing.push_back(cl);
            else l.undetermined++;
        }
        int from = cl.empty() ? 0 : cl.back() + 1;
        for (int y = from; y < n; ++y) {
            bool ok = true;
            for (int x : cl) ok = ok && l.adj[x][y];
            if (!ok) continue;
            cl.push_back(y);
            grow(cl);
            cl.pop_back();
        }
    };
    std::vector<int> cl;
    grow(cl);
    return l;
}

bool is_flag(const link_complex& l) { return l.missing.empty(); }

qi_result qi_constants(const cubical_complex& c) {
    qi_result r;
    int n = (int)c.points.size();
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        for (auto [i, w] : c.up[v]) {
            adj[v].push_back(w);
            adj[w].push_back(v);
        }
    bool first = true;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        std::deque<int> q{s};
        dist[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (dist[w] < 0) dist[w] = dist[v] + 1, q.push_back(w);
        }
        for (int t = s + 1; t < n; ++t) {
            if (dist[t] < 0) throw precondition_error("complex is disconnected");
            long n2 = 0;
            for (size_t i = 0; i < c.points[s].size(); ++i) {
                long d = c.points[s][i] - c.points[t][i];
                n2 += d * d;
            }
            rat ratio(dist[t] * dist[t], n2);
            ratio.canonicalize();
            if (first || ratio > r.upper_sq) r.upper_sq = ratio;
            if (first || ratio < r.lower_sq) r.lower_sq = ratio;
            first = false;
            r.pairs++;
        }
    }
    if (first) r.upper_sq = r.lower_sq = 1;
    r.upper = std::sqrt(r.upper_sq.get_d());
    r.lower = std::sqrt(r.lower_sq.get_d());
    return r;
}

qi_result qi_constants(const flat_strip& s) { return qi_constants(build_complex(s, true)); }

int disconnected_halfspaces(const cubical_complex& c) {
    int n = (int)c.points.size();
    if (n == 0) return 0;
    int q = (int)c.points[0].size(), bad = 0;
    auto connected = [&](const std::function<bool(int)>& in) {
        int start = -1, total = 0;
        for (int v = 0; v < n; ++v)
            if (in(v)) {
                total++;
                if (start < 0) start = v;
            }
        if (total == 0) return true;
        std::vector<bool> seen(n, false);
        std::vector<int> st{start};
        seen[start] = true;
        int reached = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            auto visit = [&](int w) {
                if (!seen[w] && in(w)) seen[w] = true, reached++, st.push_back(w);
            };
            for (auto [i, w] : c.up[v]) visit(w);
            for (auto [i, w] : c.down[v]) visit(w);
        }
        return reached == total;
    };
    for (int i = 0; i < q; ++i) {
        int hi = 0;
        for (auto& p : c.points) hi = std::max(hi, p[i]);
        for (int s = 1; s <= hi; ++s) {
            if (!connected([&](int v) { return c.points[v][i] >= s; })) bad++;
            if (!connected([&](int v) { return c.points[v][i] < s; })) bad++;
        }
    }
    return bad;
}

std::string export_complex(const cubical_complex& c) {
    std::ostringstream os;
    for (size_t k = 0; k < c.cubes.size(); ++k)
        for (auto& q : c.cubes[k]) {
            os << "cube " << k << " " << q.base << " ";
            if (q.dirs.empty()) os << "-";
            for (size_t i = 0; i < q.dirs.size(); ++i) os << (i ? "," : "") << q.dirs[i];
            os << "\n";
        }
    return os.str();
}

}  // namespace tt
