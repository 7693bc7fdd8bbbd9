#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tt {

using rat = mpq_class;
using weights = std::vector<rat>;

std::string to_string(const rat& q);
rat parse_rat(const std::string& s);
// fixed-point rendering with the given number of fractional digits
std::string decimal(const rat& q, int digits = 6);
rat rat_sqrt_floor(const rat& q, int digits);

}  // namespace tt
