#include "tt/canonical.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tt {

namespace {

struct labeling {
    std::vector<int> slab, blab, bfirst;
    std::vector<bool> sflip;
};

std::vector<int> encode(const track& t, const face_map& fm, int h0, labeling& L) {
    L.slab.assign(t.nsw(), -1);
    L.sflip.assign(t.nsw(), false);
    L.blab.assign(t.nbr, -1);
    L.bfirst.assign(t.nbr, -1);
    std::vector<int> enc;
    std::vector<int> order;
    int ns = 0, nb = 0;
    int s0 = t.at[h0].sw;
    L.slab[s0] = ns++;
    L.sflip[s0] = t.at[h0].side == 1;
    order.push_back(s0);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int s = order[qi];
        std::vector<int> A = t.sw[s][0], B = t.sw[s][1];
        if (L.sflip[s]) {
            std::reverse(A.begin(), A.end());
            std::reverse(B.begin(), B.end());
            std::swap(A, B);
        }
        enc.push_back((int)A.size());
        enc.push_back((int)B.size());
        for (const auto* side : {&A, &B})
            for (int h : *side) {
                int b = branch_of(h);
                if (L.blab[b] < 0) {
                    L.blab[b] = nb++;
                    L.bfirst[b] = h;
                    int o = h ^ 1;
                    int s2 = t.at[o].sw;
                    if (L.slab[s2] < 0) {
                        L.slab[s2] = ns++;
                        L.sflip[s2] = t.at[o].side == 1;
                        order.push_back(s2);
                    }
                }
                enc.push_back(2 * L.blab[b] + (h == L.bfirst[b] ? 0 : 1));
            }
    }
    auto cdart = [&](int d) { return 2 * L.blab[branch_of(d)] + (d == L.bfirst[branch_of(d)] ? 0 : 1); };
    std::vector<int> pk;
    for (int d : t.punct) {
        if (L.blab[branch_of(d)] < 0) continue;
        int m = 1 << 30;
        for (int x : fm.regions[fm.of_dart[d]].darts()) m = std::min(m, cdart(x));
        pk.push_back(m);
    }
    std::sort(pk.begin(), pk.end());
    enc.push_back(-1);
    enc.insert(enc.end(), pk.begin(), pk.end());
    std::vector<int> mk;
    for (int b : t.marks)
        if (L.blab[b] >= 0) mk.push_back(L.blab[b]);
    std::sort(mk.begin(), mk.end());
    enc.push_back(-2);
    enc.insert(enc.end(), mk.begin(), mk.end());
    return enc;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<std::vector<int>> component_halves(const track& t) {
    std::vector<int> comp(t.nsw(), -1);
    std::vector<std::vector<int>> out;
    for (int s0 = 0; s0 < t.nsw(); ++s0) {
        if (comp[s0] >= 0) continue;
        int c = (int)out.size();
        out.emplace_back();
        std::vector<int> st{s0};
        comp[s0] = c;
        while (!st.empty()) {
            int s = st.back();
            st.pop_back();
            for (int k = 0; k < 2; ++k)
                for (int h : t.sw[s][k]) {
                    out[c].push_back(h);
                    int o = t.at[h ^ 1].sw;
                    if (comp[o] < 0) {
                        comp[o] = c;
                        st.push_back(o);
                    }
                }
        }
        std::sort(out[c].begin(), out[c].end());
    }
    return out;
}

}  // namespace

canonical_form canonical(const track& t0) {
    track t = t0;
    t.index();
    face_map fm = trace_regions(t);
    auto comps = component_halves(t);
    struct best_t {
        std::vector<int> enc;
        labeling lab;
    };
    std::vector<best_t> best(comps.size());
    for (size_t c = 0; c < comps.size(); ++c) {
        bool have = false;
        for (int h0 : comps[c]) {
            labeling L;
            auto enc = encode(t, fm, h0, L);
            if (!have || enc < best[c].enc) {
                best[c] = {enc, L};
                have = true;
            }
        }
    }
    std::vector<int> ord(comps.size());
    for (size_t i = 0; i < ord.size(); ++i) ord[i] = (int)i;
    std::stable_sort(ord.begin(), ord.end(), [&](int x, int y) { return best[x].enc < best[y].enc; });
    canonical_form cf;
    cf.bmap.assign(t.nbr, -1);
    cf.swap.assign(t.nbr, false);
    cf.smap.assign(t.nsw(), -1);
    cf.flip.assign(t.nsw(), false);
    cf.code = t.bigons ? "B" : "T";
    int boff = 0, soff = 0;
    for (int c : ord) {
        const labeling& L = best[c].lab;
        int nb = 0, ns = 0;
        for (int b = 0; b < t.nbr; ++b)
            if (L.blab[b] >= 0) {
                cf.bmap[b] = boff + L.blab[b];
                cf.swap[b] = (L.bfirst[b] & 1) != 0;
                ++nb;
            }
        for (int s = 0; s < t.nsw(); ++s)
            if (L.slab[s] >= 0) {
                cf.smap[s] = soff + L.slab[s];
                cf.flip[s] = L.sflip[s];
                ++ns;
            }
        boff += nb;
        soff += ns;
        cf.code += "|" + join(best[c].enc);
    }
    cf.form = relabel(t, cf.bmap, cf.smap, cf.flip, cf.swap);
    return cf;
}

std::string canonical_code(const track& t) { return canonical(t).code; }

std::vector<isomorphism> isomorphisms(const track& a0, const track& b0) {
    track a = a0, b = b0;
    a.index();
    b.index();
    std::vector<isomorphism> out;
    if (a.nbr != b.nbr || a.nsw() != b.nsw() || a.bigons != b.bigons) return out;
    if (!connected(a) || !connected(b)) throw std::invalid_argument("isomorphisms: tracks must be connected");
    face_map fa = trace_regions(a), fb = trace_regions(b);
    labeling La;
    auto ea = encode(a, fa, 0, La);
    std::set<std::vector<int>> seen;
    for (int h0 = 0; h0 < 2 * b.nbr; ++h0) {
        labeling Lb;
        auto eb = encode(b, fb, h0, Lb);
        if (eb != ea) continue;
        isomorphism iso;
        std::vector<int> inv_b(b.nbr), inv_s(b.nsw());
        for (int x = 0; x < b.nbr; ++x) inv_b[Lb.blab[x]] = x;
        for (int s = 0; s < b.nsw(); ++s) inv_s[Lb.slab[s]] = s;
        iso.bmap.resize(a.nbr);
        iso.swap.resize(a.nbr);
        for (int x = 0; x < a.nbr; ++x) {
            int y = inv_b[La.blab[x]];
            iso.bmap[x] = y;
            iso.swap[x] = (La.bfirst[x] & 1) != (Lb.bfirst[y] & 1);
        }
        iso.smap.resize(a.nsw());
        iso.flip.resize(a.nsw());
        for (int s = 0; s < a.nsw(); ++s) {
            int y = inv_s[La.slab[s]];
            iso.smap[s] = y;
            iso.flip[s] = La.sflip[s] != Lb.sflip[y];
        }
        std::vector<int> key = iso.bmap;
        for (bool f : iso.swap) key.push_back(f);
        if (seen.insert(key).second) out.push_back(iso);
    }
    return out;
}

}  // namespace tt
