#pragma once

#include <utility>
#include <vector>

#include "tt/rational.hpp"

namespace tt {

enum class sense { le, eq, ge };

struct lp_row {
    std::vector<std::pair<int, rat>> coef;
    sense s = sense::eq;
    rat rhs = 0;
};

// maximize obj . x subject to rows, x >= 0
struct lp_problem {
    int nvars = 0;
    std::vector<lp_row> rows;
    std::vector<rat> obj;
};

enum class lp_status { optimal, infeasible, unbounded };

struct lp_result {
    lp_status status = lp_status::infeasible;
    std::vector<rat> x;
    rat value = 0;
};

lp_result lp_solve(const lp_problem& p);

}  // namespace tt
