#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tt {

struct surface {
    int genus = 0;
    int punctures = 0;
    int xi() const { return 3 * genus - 3 + punctures; }
    int euler() const { return 2 - 2 * genus - punctures; }
    bool operator==(const surface&) const = default;
};

// half ids: branch b owns halves 2b (end 0) and 2b+1 (end 1).
// a dart is named by the half it departs from, so dart d runs from half d to half d^1
// with its region on the left.
inline int branch_of(int h) { return h >> 1; }

struct slot {
    int sw = -1;
    int side = 0;
    int pos = 0;
};

enum class branch_kind { large, small, mixed };

struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct track {
    // sw[s][0] is side a, sw[s][1] side b, both listed left to right facing the
    // direction in which side a leaves the switch
    std::vector<std::array<std::vector<int>, 2>> sw;
    int nbr = 0;
    bool bigons = false;
    std::vector<int> punct;  // one dart per puncture, on the boundary of the punctured region
    std::vector<int> marks;  // branches carrying a marked point
    std::vector<slot> at;    // by half id, rebuilt by index()

    void index();
    int nsw() const { return (int)sw.size(); }
    const slot& loc(int h) const { return at[h]; }
    const std::vector<int>& side_of(int h) const { return sw[at[h].sw][at[h].side]; }
    bool large_half(int h) const { return side_of(h).size() == 1; }
    int valence(int s) const { return (int)(sw[s][0].size() + sw[s][1].size()); }
};

// halves on a side in left-to-right order facing the direction they leave
std::vector<int> away(const track& t, int s, int side);
void set_away(track& t, int s, int side, const std::vector<int>& halves);

branch_kind classify_branch(const track& t, int b);
std::vector<int> large_branches(const track& t);
bool is_generic(const track& t);
int excess_valence(const track& t);

struct corner {
    int half;
    bool cusp;
};
corner cw_next(const track& t, int h);
int next_dart(const track& t, int d);

struct region {
    std::vector<std::vector<int>> sides;  // darts; cusps sit between consecutive sides
    int cusps = 0;
    int punctures = 0;
    // twice the cusped euler characteristic of the region
    int chi2() const { return 2 - 2 * punctures - cusps; }
    bool trigon() const { return cusps == 3 && punctures == 0; }
    bool bigon() const { return cusps == 2 && punctures == 0; }
    bool punctured_monogon() const { return cusps == 1 && punctures == 1; }
    std::vector<int> darts() const;
};

struct face_map {
    std::vector<region> regions;
    std::vector<int> of_dart;
};

face_map trace_regions(const track& t);

struct validation_report {
    std::vector<std::string> structural;
    std::vector<std::string> violations;
    bool ok() const { return structural.empty() && violations.empty(); }
};

void check_structure(const track& t);
validation_report validate(const track& t, const surface& s);
surface infer_surface(const track& t);
bool is_maximal(const track& t);
bool connected(const track& t);

struct region_signature {
    int cusps;
    int punctures;
    auto operator<=>(const region_signature&) const = default;
};
std::vector<region_signature> signatures(const track& t);

// same switches and branches, each switch possibly presented from its other side
bool same_labeled(const track& x, const track& y);

// moves a puncture mark off the listed branches to another dart of the same region
void reanchor_marks(track& t, const std::vector<int>& avoid);

// relabel: branch b -> bmap[b], switch s -> smap[s]; flip[s] swaps and reverses the sides,
// swap[b] exchanges the two ends of b
track relabel(const track& t, const std::vector<int>& bmap, const std::vector<int>& smap,
              const std::vector<bool>& flip = {}, const std::vector<bool>& swap = {});

}  // namespace tt
