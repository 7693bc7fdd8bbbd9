#pragma once

#include <optional>
#include <vector>

#include "tt/lp.hpp"
#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

// variables y_b = x_b - 1 >= 0
lp_problem transverse_system(const track& t);
// variables y_b = x_b - 1 >= 0, plus the shared slack as last variable when strict
lp_problem tangential_system(const track& t, bool strict);

std::optional<weights> positive_transverse(const track& t);
std::optional<weights> positive_tangential(const track& t, bool strict);

bool satisfies_tangential(const track& t, const weights& nu, bool strict);

struct surrogate_report {
    bool maximal = false, generic = false, recurrent = false, transversely_recurrent = false;
    bool all() const { return maximal && generic && recurrent && transversely_recurrent; }
};
surrogate_report completeness_surrogate(const track& t);

bool is_subtrack(const track& t, const std::vector<int>& branches);
std::vector<int> positive_subtrack(const track& t, const weights& mu);

struct extracted {
    track t;                  // the subtrack with bivalent switches smoothed away
    std::vector<int> bij;     // branch of the ambient track -> branch of t, -1 outside
};
extracted extract_subtrack(const track& t, const std::vector<int>& branches);

}  // namespace tt
