#ifndef CHARMOD_LININEQ_HPP
#define CHARMOD_LININEQ_HPP

#include <optional>
#include <vector>

#include "charmod/linalg.hpp"

namespace charmod {

// Exact linear feasibility via Fourier-Motzkin elimination. Constraint is
// <a, x> rel b. Strict constraints are supported so that relative interiors
// and implicit equalities can be decided exactly. Desk scale only: the
// elimination is worst-case exponential.

struct LinCon {
    enum Rel { LE, LT, EQ };
    QVec a;
    Rat b;
    Rel rel = LE;
};

bool feasible(const std::vector<LinCon>& cons, int nvars);

// A point satisfying all constraints, if one exists. Deterministic.
std::optional<QVec> find_point(const std::vector<LinCon>& cons, int nvars);

} // namespace charmod

#endif
