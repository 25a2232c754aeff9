#pragma once

#include "isoproj/scalar.hpp"

namespace isoproj {

template <class T>
struct LpResult {
  bool feasible = false;
  Vec<T> solution;        // a witness when feasible
  double residual = 0.0;  // phase-1 optimum (sum of artificials), 0 when exactly feasible
  bool rechecked = false;
};

/// Feasibility of { x >= 0 : A x = b } by phase-1 dense simplex with
/// Bland's rule. Exact in exact mode; float mode uses the thread tolerance.
template <class T>
LpResult<T> nonnegative_solution(const Mat<T>& a, const Vec<T>& b);

/// Float decision with an exact recheck on the dyadic image of the data when
/// the phase-1 residual sits in the ambiguous band (tau, sqrt(tau)).
LpResult<double> nonnegative_solution_rechecked(const Mat<double>& a, const Vec<double>& b);

}  // namespace isoproj
