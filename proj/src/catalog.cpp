#include "tt/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>

#include "tt/canonical.hpp"
#include "tt/lp.hpp"
#include "tt/measures.hpp"
#include "tt/serialize.hpp"

namespace tt {

std::vector<connector> find_twist_connectors(const track& t) {
    std::vector<connector> out;
    for (int l : large_branches(t)) {
        int p = t.at[2 * l].sw, q = t.at[2 * l + 1].sw;
        if (p == q) continue;
        const auto& Y = t.sw[p][1 - t.at[2 * l].side];
        const auto& Z = t.sw[q][1 - t.at[2 * l + 1].side];
        for (int hy : Y)
            for (int hz : Z)
                if (branch_of(hy) == branch_of(hz) && hy != hz && branch_of(hy) != l &&
                    classify_branch(t, branch_of(hy)) == branch_kind::small)
                    out.push_back({l, branch_of(hy)});
    }
    return out;
}

std::optional<dir> connector_split_dir(const track& t, const connector& c) {
    corners k = split_corners(t, c.large);
    bool a = branch_of(k.a) == c.small, b = branch_of(k.b) == c.small;
    bool cc = branch_of(k.c) == c.small, d = branch_of(k.d) == c.small;
    if (a && cc) return dir::right;
    if (b && d) return dir::left;
    return std::nullopt;
}

namespace {

struct dsu {
    std::vector<int> p;
    explicit dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

bool pants_check(const track& t, const std::vector<connector>& cs) {
    face_map fm = trace_regions(t);
    int F = (int)fm.regions.size();
    std::vector<bool> on_circle_b(t.nbr, false), on_circle_s(t.nsw(), false);
    for (auto& c : cs) {
        on_circle_b[c.large] = on_circle_b[c.small] = true;
        on_circle_s[t.at[2 * c.large].sw] = on_circle_s[t.at[2 * c.large + 1].sw] = true;
    }
    // elements: regions, then branches, then switches
    dsu u(F + t.nbr + t.nsw());
    for (int b = 0; b < t.nbr; ++b) {
        if (on_circle_b[b]) continue;
        u.unite(F + b, fm.of_dart[2 * b]);
        u.unite(F + b, fm.of_dart[2 * b + 1]);
        for (int e = 0; e < 2; ++e) {
            int s = t.at[2 * b + e].sw;
            if (!on_circle_s[s]) u.unite(F + b, F + t.nbr + s);
        }
    }
    std::vector<int> chi(F + t.nbr + t.nsw(), 0), bnd(F + t.nbr + t.nsw(), 0);
    for (int r = 0; r < F; ++r) chi[u.find(r)] += 1 - fm.regions[r].punctures, bnd[u.find(r)] += fm.regions[r].punctures;
    for (int b = 0; b < t.nbr; ++b)
        if (!on_circle_b[b]) chi[u.find(F + b)] -= 1;
    for (int s = 0; s < t.nsw(); ++s)
        if (!on_circle_s[s]) chi[u.find(F + t.nbr + s)] += 1;
    for (auto& c : cs) {
        // the two sides of the circle are the regions left of the large branch in either direction
        bnd[u.find(fm.of_dart[2 * c.large])] += 1;
        bnd[u.find(fm.of_dart[2 * c.large + 1])] += 1;
    }
    std::set<int> roots;
    for (int r = 0; r < F; ++r) roots.insert(u.find(r));
    for (int b = 0; b < t.nbr; ++b)
        if (!on_circle_b[b]) roots.insert(u.find(F + b));
    for (int s = 0; s < t.nsw(); ++s)
        if (!on_circle_s[s]) roots.insert(u.find(F + t.nbr + s));
    for (int r : roots)
        if (chi[r] != -1 || bnd[r] != 3) return false;
    return true;
}

std::optional<track> random_pants_track(const surface& S, std::mt19937_64& rng) {
    int xi = S.xi();
    int V = 4 * xi;
    track t;
    t.sw.resize(V);
    // connector j: large 2j, small 2j+1, switches 2j (p) and 2j+1 (q)
    std::vector<std::pair<int, int>> stubs;  // (switch, side) placeholders in order of creation
    std::vector<std::pair<int, int>> where;  // switch, side, position via index in side
    auto coin = [&] { return (rng() & 1) != 0; };
    int nb = 2 * xi;
    struct stub {
        int s, side, pos;
    };
    std::vector<stub> st;
    for (int j = 0; j < xi; ++j) {
        int p = 2 * j, q = 2 * j + 1, l = 2 * j, s = 2 * j + 1;
        t.sw[p][0] = {2 * l};
        t.sw[q][0] = {2 * l + 1};
        if (coin()) {
            t.sw[p][1] = {2 * s, -1};
            st.push_back({p, 1, 1});
        } else {
            t.sw[p][1] = {-1, 2 * s};
            st.push_back({p, 1, 0});
        }
        if (coin()) {
            t.sw[q][1] = {2 * s + 1, -1};
            st.push_back({q, 1, 1});
        } else {
            t.sw[q][1] = {-1, 2 * s + 1};
            st.push_back({q, 1, 0});
        }
    }
    for (int k = 0; k < 2 * xi; ++k) {
        int s = 2 * xi + k;
        t.sw[s][0] = {-1};
        t.sw[s][1] = {-1, -1};
        st.push_back({s, 0, 0});
        st.push_back({s, 1, 0});
        st.push_back({s, 1, 1});
    }
    std::shuffle(st.begin(), st.end(), rng);
    for (size_t i = 0; i + 1 < st.size(); i += 2) {
        int b = nb++;
        t.sw[st[i].s][st[i].side][st[i].pos] = 2 * b;
        t.sw[st[i + 1].s][st[i + 1].side][st[i + 1].pos] = 2 * b + 1;
    }
    t.nbr = nb;
    t.index();
    if (!connected(t)) return std::nullopt;
    face_map fm = trace_regions(t);
    int mono = 0;
    for (auto& r : fm.regions) {
        if (r.cusps == 1) ++mono;
        else if (r.cusps != 3) return std::nullopt;
    }
    if (mono != S.punctures) return std::nullopt;
    for (auto& r : fm.regions)
        if (r.cusps == 1) t.punct.push_back(r.sides[0][0]);
    if (!validate(t, S).ok()) return std::nullopt;
    return t;
}

weights integral_guide(const track& t) {
    auto w = positive_transverse(t);
    if (!w) throw std::invalid_argument("track is not recurrent");
    mpz_class l = 1;
    for (auto& q : *w) l = lcm(l, mpz_class(q.get_den()));
    weights g = *w;
    for (auto& q : g) q *= 4 * l;
    return g;
}

std::optional<weights> random_guide(const track& t, std::mt19937_64& rng, int lo, int hi, int tries) {
    int n = t.nbr;
    // switch equations with lo <= w <= hi; coordinates are fixed one at a time, each drawn
    // uniformly from the range the relaxation still allows
    lp_problem base;
    base.nvars = n;
    for (int s = 0; s < t.nsw(); ++s) {
        lp_row row;
        std::vector<rat> c(n, rat(0));
        for (int h : t.sw[s][0]) c[branch_of(h)] += 1;
        for (int h : t.sw[s][1]) c[branch_of(h)] -= 1;
        for (int b = 0; b < n; ++b)
            if (c[b] != 0) row.coef.emplace_back(b, c[b]);
        if (!row.coef.empty()) base.rows.push_back(row);
    }
    for (int b = 0; b < n; ++b) {
        base.rows.push_back({{{b, rat(1)}}, sense::ge, rat(lo)});
        base.rows.push_back({{{b, rat(1)}}, sense::le, rat(hi)});
    }
    base.obj.assign(n, rat(0));
    if (lp_solve(base).status != lp_status::optimal) return std::nullopt;
    std::vector<int> order(n);
    for (int b = 0; b < n; ++b) order[b] = b;
    for (int k = 0; k < tries; ++k) {
        std::shuffle(order.begin(), order.end(), rng);
        lp_problem p = base;
        weights w(n, rat(0));
        bool ok = true;
        for (int b : order) {
            rat range[2];
            for (int sgn : {0, 1}) {
                p.obj.assign(n, rat(0));
                p.obj[b] = sgn ? 1 : -1;
                auto r = lp_solve(p);
                if (r.status != lp_status::optimal) {
                    ok = false;
                    break;
                }
                range[sgn] = r.x[b];
            }
            if (!ok) break;
            mpz_class a, z;
            mpz_cdiv_q(a.get_mpz_t(), range[0].get_num_mpz_t(), range[0].get_den_mpz_t());
            mpz_fdiv_q(z.get_mpz_t(), range[1].get_num_mpz_t(), range[1].get_den_mpz_t());
            if (a > z) {
                ok = false;
                break;
            }
            std::uniform_int_distribution<long> U(a.get_si(), z.get_si());
            w[b] = U(rng);
            p.rows.push_back({{{b, rat(1)}}, sense::eq, w[b]});
        }
        if (ok && satisfies_switches(t, w)) return w;
    }
    return std::nullopt;
}

weights generic_guide(const track& t, std::mt19937_64& rng) {
    auto w = positive_transverse(t);
    if (!w) throw std::invalid_argument("track is not recurrent");
    lp_problem p = transverse_system(t);
    // same equations without the shift to positive weights
    for (auto& r : p.rows) r.rhs = 0;
    lp_row norm;
    for (int b = 0; b < t.nbr; ++b) norm.coef.emplace_back(b, rat(1));
    norm.rhs = 1;
    p.rows.push_back(norm);
    std::uniform_int_distribution<int> coef(1, 1000000), obj(-50, 50);
    weights g(t.nbr, rat(0));
    rat c0 = coef(rng);
    for (int b = 0; b < t.nbr; ++b) g[b] = (*w)[b] * c0;
    for (int k = 0; k < t.nbr; ++k) {
        for (auto& o : p.obj) o = obj(rng);
        lp_result r = lp_solve(p);
        if (r.status != lp_status::optimal) continue;
        rat c = coef(rng);
        for (int b = 0; b < t.nbr; ++b) g[b] += c * r.x[b];
    }
    mpz_class l = 1;
    for (auto& q : g) l = lcm(l, mpz_class(q.get_den()));
    rat lo = 0;
    for (auto& q : g) {
        q *= l;
        if (lo == 0 || q < lo) lo = q;
    }
    rat f = 1;
    while (lo * f < 4) f += 1;
    for (auto& q : g) q *= f;
    return g;
}

weights pants_guide(const track& t, const std::vector<connector>& cs) {
    weights w(t.nbr, rat(0));
    for (auto& c : cs) w[c.large] = w[c.small] = 1;
    return w;
}

std::string catalog_dir() { return TT_CATALOG_DIR; }

surface surface_for(const std::string& name) {
    if (name.rfind("s05", 0) == 0) return {0, 5};
    if (name.rfind("s12", 0) == 0) return {1, 2};
    if (name.rfind("s20", 0) == 0) return {2, 0};
    throw std::invalid_argument("unknown catalog surface for " + name);
}

catalog_entry load_entry(const std::string& name) {
    catalog_entry e;
    e.name = name;
    e.S = surface_for(name);
    e.t = parse_track(read_file(catalog_dir() + "/" + name + ".trk"));
    e.guide = parse_weights(read_file(catalog_dir() + "/" + name + ".gm"), e.t.nbr);
    e.connectors = find_twist_connectors(e.t);
    return e;
}

std::vector<catalog_entry> load_catalog() {
    std::vector<std::string> names;
    for (auto& f : std::filesystem::directory_iterator(catalog_dir()))
        if (f.path().extension() == ".trk") names.push_back(f.path().stem().string());
    std::sort(names.begin(), names.end());
    std::vector<catalog_entry> out;
    for (auto& n : names) out.push_back(load_entry(n));
    return out;
}

}  // namespace tt
