#include "isoproj/lp.hpp"

#include <vector>

namespace isoproj {

template <class T>
LpResult<T> nonnegative_solution(const Mat<T>& a_in, const Vec<T>& b_in) {
  const Eigen::Index m = a_in.rows();
  const Eigen::Index n = a_in.cols();
  LpResult<T> res;
  res.solution = Vec<T>::Zero(n);
  if (m == 0) {
    res.feasible = true;
    return res;
  }
  // Tableau rows: constraints; columns: n originals, m artificials, rhs.
  const Eigen::Index cols = n + m + 1;
  Mat<T> tab = Mat<T>::Zero(m + 1, cols);
  for (Eigen::Index i = 0; i < m; ++i) {
    T scale(1);
    if constexpr (!is_exact_v<T>) {
      double s = std::fabs(b_in(i));
      for (Eigen::Index j = 0; j < n; ++j) s = std::max(s, std::fabs(a_in(i, j)));
      scale = s > 0 ? 1.0 / s : 1.0;
    }
    bool flip = b_in(i) < 0;
    for (Eigen::Index j = 0; j < n; ++j) tab(i, j) = (flip ? T(-a_in(i, j)) : a_in(i, j)) * scale;
    tab(i, n + i) = T(1);
    tab(i, cols - 1) = (flip ? T(-b_in(i)) : b_in(i)) * scale;
  }
  // Objective row holds reduced costs of "minimize sum of artificials".
  for (Eigen::Index j = 0; j < n; ++j) {
    T s(0);
    for (Eigen::Index i = 0; i < m; ++i) s -= tab(i, j);
    tab(m, j) = s;
  }
  {
    T s(0);
    for (Eigen::Index i = 0; i < m; ++i) s -= tab(i, cols - 1);
    tab(m, cols - 1) = s;
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  const double eps = is_exact_v<T> ? 0.0 : tolerance();
  auto negative = [&](const T& x) {
    if constexpr (is_exact_v<T>) return x < 0;
    else return x < -eps;
  };
  auto positive = [&](const T& x) {
    if constexpr (is_exact_v<T>) return x > 0;
    else return x > eps;
  };

  const long max_iter = 50L * (m + n + 10);
  for (long iter = 0; iter < max_iter; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j)
      if (negative(tab(m, j))) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    T best_ratio(0);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!positive(tab(i, enter))) continue;
      T ratio = tab(i, cols - 1) / tab(i, enter);
      bool better = leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)]);
      if constexpr (!is_exact_v<T>) {
        if (leave >= 0 && std::fabs(ratio - best_ratio) <= eps)
          better = basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)];
      }
      if (better) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1
    T inv = T(1) / tab(leave, enter);
    for (Eigen::Index j = 0; j < cols; ++j)
      if (tab(leave, j) != 0) tab(leave, j) *= inv;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      T f = tab(i, enter);
      if (f == 0) continue;
      for (Eigen::Index j = 0; j < cols; ++j)
        if (tab(leave, j) != 0) tab(i, j) -= f * tab(leave, j);
      if constexpr (!is_exact_v<T>) tab(i, enter) = 0;
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  T objective = -tab(m, cols - 1);
  res.residual = std::fabs(to_double(objective));
  if constexpr (is_exact_v<T>) {
    res.feasible = objective == 0;
  } else {
    res.feasible = objective <= eps * 10.0;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index v = basis[static_cast<std::size_t>(i)];
    if (v < n) res.solution(v) = tab(i, cols - 1);
  }
  return res;
}

LpResult<double> nonnegative_solution_rechecked(const Mat<double>& a, const Vec<double>& b) {
  LpResult<double> r = nonnegative_solution<double>(a, b);
  const double tau = tolerance();
  if (r.residual > 0.1 * tau && r.residual < std::sqrt(tau)) {
    Mat<Rational> ax(a.rows(), a.cols());
    Vec<Rational> bx(b.size());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) ax(i, j) = Rational(a(i, j));
      bx(i) = Rational(b(i));
    }
    LpResult<Rational> ex = nonnegative_solution<Rational>(ax, bx);
    r.feasible = ex.feasible;
    r.rechecked = true;
    if (ex.feasible) r.solution = to_double_vec(ex.solution);
  }
  return r;
}

template LpResult<double> nonnegative_solution<double>(const Mat<double>&, const Vec<double>&);
template LpResult<Rational> nonnegative_solution<Rational>(const Mat<Rational>&, const Vec<Rational>&);

}  // namespace isoproj
