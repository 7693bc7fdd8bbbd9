#include "tt/track.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tt {

void track::index() {
    at.assign(2 * nbr, slot{});
    for (int s = 0; s < nsw(); ++s)
        for (int k = 0; k < 2; ++k)
            for (int p = 0; p < (int)sw[s][k].size(); ++p) {
                int h = sw[s][k][p];
                if (h < 0 || h >= 2 * nbr) throw structural_error("switch " + std::to_string(s) + " refers to missing half " + std::to_string(h));
                if (at[h].sw >= 0) throw structural_error("half " + std::to_string(h) + " occupies two slots");
                at[h] = slot{s, k, p};
            }
    for (int h = 0; h < 2 * nbr; ++h)
        if (at[h].sw < 0) throw structural_error("branch " + std::to_string(h / 2) + " end " + std::to_string(h & 1) + " is dangling");
}

std::vector<int> away(const track& t, int s, int side) {
    std::vector<int> v = t.sw[s][side];
    if (side == 1) std::reverse(v.begin(), v.end());
    return v;
}

void set_away(track& t, int s, int side, const std::vector<int>& halves) {
    t.sw[s][side] = halves;
    if (side == 1) std::reverse(t.sw[s][side].begin(), t.sw[s][side].end());
}

branch_kind classify_branch(const track& t, int b) {
    bool l0 = t.large_half(2 * b), l1 = t.large_half(2 * b + 1);
    if (l0 && l1) return branch_kind::large;
    if (!l0 && !l1) return branch_kind::small;
    return branch_kind::mixed;
}

std::vector<int> large_branches(const track& t) {
    std::vector<int> out;
    for (int b = 0; b < t.nbr; ++b)
        if (classify_branch(t, b) == branch_kind::large) out.push_back(b);
    return out;
}

bool is_generic(const track& t) {
    for (int s = 0; s < t.nsw(); ++s)
        if (t.valence(s) != 3) return false;
    return true;
}

int excess_valence(const track& t) {
    int v = 0;
    for (int s = 0; s < t.nsw(); ++s) v += std::max(0, t.valence(s) - 3);
    return v;
}

corner cw_next(const track& t, int h) {
    const slot& L = t.at[h];
    const auto& A = t.sw[L.sw][0];
    const auto& B = t.sw[L.sw][1];
    if (L.side == 0) {
        if (L.pos + 1 < (int)A.size()) return {A[L.pos + 1], true};
        return {B.back(), false};
    }
    if (L.pos > 0) return {B[L.pos - 1], true};
    return {A.front(), false};
}

int next_dart(const track& t, int d) { return cw_next(t, d ^ 1).half; }

std::vector<int> region::darts() const {
    std::vector<int> v;
    for (auto& s : sides) v.insert(v.end(), s.begin(), s.end());
    return v;
}

face_map trace_regions(const track& t) {
    face_map fm;
    int D = 2 * t.nbr;
    fm.of_dart.assign(D, -1);
    std::vector<std::pair<std::vector<int>, std::vector<bool>>> cycles;
    std::vector<int> seen(D, 0);
    for (int d = 0; d < D; ++d) {
        if (seen[d]) continue;
        std::vector<int> ds;
        std::vector<bool> cusp_after;
        int x = d;
        do {
            seen[x] = 1;
            ds.push_back(x);
            corner c = cw_next(t, x ^ 1);
            cusp_after.push_back(c.cusp);
            x = c.half;
        } while (x != d);
        cycles.emplace_back(ds, cusp_after);
    }
    // cycles come out ordered by their minimal dart already
    for (auto& [ds, ca] : cycles) {
        region r;
        int n = (int)ds.size();
        std::vector<int> starts;
        for (int i = 0; i < n; ++i)
            if (ca[(i + n - 1) % n]) starts.push_back(i);
        r.cusps = (int)starts.size();
        if (starts.empty()) {
            int i0 = (int)(std::min_element(ds.begin(), ds.end()) - ds.begin());
            std::vector<int> side;
            for (int k = 0; k < n; ++k) side.push_back(ds[(i0 + k) % n]);
            r.sides.push_back(side);
        } else {
            int best = 0;
            for (int j = 1; j < (int)starts.size(); ++j)
                if (ds[starts[j]] < ds[starts[best]]) best = j;
            int k0 = starts[best];
            std::vector<int> side;
            for (int k = 0; k < n; ++k) {
                int i = (k0 + k) % n;
                side.push_back(ds[i]);
                if (ca[i]) {
                    r.sides.push_back(side);
                    side.clear();
                }
            }
        }
        int idx = (int)fm.regions.size();
        for (int x : ds) fm.of_dart[x] = idx;
        fm.regions.push_back(std::move(r));
    }
    for (int d : t.punct)
        if (d >= 0 && d < D) fm.regions[fm.of_dart[d]].punctures++;
    return fm;
}

void check_structure(const track& t) {
    if (t.nbr <= 0) throw structural_error("track has no branches");
    for (int s = 0; s < t.nsw(); ++s)
        for (int k = 0; k < 2; ++k)
            if (t.sw[s][k].empty()) throw structural_error("switch " + std::to_string(s) + " has an empty side");
    track c = t;
    c.index();
    for (int d : t.punct)
        if (d < 0 || d >= 2 * t.nbr) throw structural_error("puncture mark on missing dart " + std::to_string(d));
    for (int b : t.marks)
        if (b < 0 || b >= t.nbr) throw structural_error("marked point on missing branch " + std::to_string(b));
}

static std::vector<int> components(const track& t, int& count) {
    std::vector<int> comp(t.nsw(), -1);
    count = 0;
    for (int s0 = 0; s0 < t.nsw(); ++s0) {
        if (comp[s0] >= 0) continue;
        std::vector<int> st{s0};
        comp[s0] = count;
        while (!st.empty()) {
            int s = st.back();
            st.pop_back();
            for (int k = 0; k < 2; ++k)
                for (int h : t.sw[s][k]) {
                    int o = t.at[h ^ 1].sw;
                    if (comp[o] < 0) {
                        comp[o] = count;
                        st.push_back(o);
                    }
                }
        }
        ++count;
    }
    return comp;
}

bool connected(const track& t) {
    int n = 0;
    components(t, n);
    return n <= 1;
}

validation_report validate(const track& t0, const surface& S) {
    validation_report rep;
    try {
        check_structure(t0);
    } catch (const structural_error& e) {
        rep.structural.push_back(e.what());
        return rep;
    }
    track t = t0;
    t.index();
    int ncomp = 0;
    auto comp = components(t, ncomp);
    if (ncomp > 1) rep.violations.push_back("disconnected: " + std::to_string(ncomp) + " components");
    std::vector<int> all_bivalent(ncomp, 1);
    for (int s = 0; s < t.nsw(); ++s)
        if (t.valence(s) != 2) all_bivalent[comp[s]] = 0;
    for (int s = 0; s < t.nsw(); ++s)
        if (t.valence(s) == 2 && !all_bivalent[comp[s]])
            rep.violations.push_back("bivalent switch " + std::to_string(s) + " off a closed curve");
    face_map fm = trace_regions(t);
    int chi2 = 0, punct = 0;
    for (int i = 0; i < (int)fm.regions.size(); ++i) {
        const region& r = fm.regions[i];
        chi2 += r.chi2();
        punct += r.punctures;
        if (r.punctures > 1) rep.violations.push_back("region " + std::to_string(i) + " holds " + std::to_string(r.punctures) + " punctures");
        bool ok = r.chi2() < 0 || (t.bigons && r.bigon());
        if (!ok)
            rep.violations.push_back("forbidden region " + std::to_string(i) + " (cusps=" + std::to_string(r.cusps) +
                                     " punctured=" + std::to_string(r.punctures) + ")");
    }
    if (chi2 != 2 * S.euler())
        rep.violations.push_back("euler mismatch: regions sum to " + std::to_string(chi2) + "/2, surface has " + std::to_string(S.euler()));
    if (punct != S.punctures)
        rep.violations.push_back("puncture count " + std::to_string(punct) + " differs from " + std::to_string(S.punctures));
    return rep;
}

surface infer_surface(const track& t0) {
    track t = t0;
    t.index();
    face_map fm = trace_regions(t);
    int chi2 = 0, punct = 0;
    for (auto& r : fm.regions) {
        chi2 += r.chi2();
        punct += r.punctures;
    }
    // 2 - 2g - m = chi
    int twice_g = 2 - chi2 / 2 - punct;
    return surface{twice_g / 2, punct};
}

bool is_maximal(const track& t) {
    face_map fm = trace_regions(t);
    for (auto& r : fm.regions) {
        if (r.trigon() || r.punctured_monogon()) continue;
        if (t.bigons && r.bigon()) continue;
        return false;
    }
    return true;
}

std::vector<region_signature> signatures(const track& t) {
    face_map fm = trace_regions(t);
    std::vector<region_signature> v;
    for (auto& r : fm.regions) v.push_back({r.cusps, r.punctures});
    std::sort(v.begin(), v.end());
    return v;
}

bool same_labeled(const track& x, const track& y) {
    if (x.nbr != y.nbr || x.nsw() != y.nsw()) return false;
    for (int s = 0; s < x.nsw(); ++s) {
        if (x.sw[s] == y.sw[s]) continue;
        auto A = y.sw[s][1], B = y.sw[s][0];
        std::reverse(A.begin(), A.end());
        std::reverse(B.begin(), B.end());
        if (x.sw[s][0] != A || x.sw[s][1] != B) return false;
    }
    return true;
}

void reanchor_marks(track& t, const std::vector<int>& avoid) {
    if (t.punct.empty()) return;
    std::set<int> bad(avoid.begin(), avoid.end());
    bool need = false;
    for (int d : t.punct)
        if (bad.count(branch_of(d))) need = true;
    if (!need) return;
    face_map fm = trace_regions(t);
    for (int& d : t.punct) {
        if (!bad.count(branch_of(d))) continue;
        int best = -1;
        for (int x : fm.regions[fm.of_dart[d]].darts())
            if (!bad.count(branch_of(x)) && (best < 0 || x < best)) best = x;
        if (best < 0) throw std::logic_error("punctured region has no boundary dart to keep its mark");
        d = best;
    }
}

track relabel(const track& t, const std::vector<int>& bmap, const std::vector<int>& smap,
              const std::vector<bool>& flip, const std::vector<bool>& swap) {
    auto half = [&](int h) {
        int b = branch_of(h), e = h & 1;
        if (!swap.empty() && swap[b]) e ^= 1;
        return 2 * bmap[b] + e;
    };
    track r;
    r.nbr = t.nbr;
    r.bigons = t.bigons;
    r.sw.resize(t.sw.size());
    for (int s = 0; s < t.nsw(); ++s) {
        std::array<std::vector<int>, 2> sides;
        for (int k = 0; k < 2; ++k)
            for (int h : t.sw[s][k]) sides[k].push_back(half(h));
        if (!flip.empty() && flip[s]) {
            std::reverse(sides[0].begin(), sides[0].end());
            std::reverse(sides[1].begin(), sides[1].end());
            std::swap(sides[0], sides[1]);
        }
        r.sw[smap[s]] = sides;
    }
    for (int d : t.punct) r.punct.push_back(half(d));
    for (int b : t.marks) r.marks.push_back(bmap[b]);
    std::sort(r.punct.begin(), r.punct.end());
    std::sort(r.marks.begin(), r.marks.end());
    r.index();
    return r;
}

}  // namespace tt
