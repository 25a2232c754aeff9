#pragma once

// Dense elimination routines shared by both backends. Exact mode never
// rounds; float mode treats entries below tau * max|A| as zero.

#include "isoproj/scalar.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace isoproj {

template <class T>
struct Echelon {
  Mat<T> reduced;           // reduced row echelon form
  std::vector<int> pivots;  // pivot column per nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

template <class T>
Echelon<T> row_reduce(Mat<T> a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  const double scale = is_exact_v<T> ? 1.0 : max_abs(a);
  Echelon<T> out;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    if constexpr (is_exact_v<T>) {
      for (Eigen::Index i = r; i < rows; ++i)
        if (a(i, c) != 0) {
          piv = i;
          break;
        }
    } else {
      double best = 0.0;
      for (Eigen::Index i = r; i < rows; ++i) {
        double v = std::fabs(a(i, c));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv >= 0 && is_zero(a(piv, c), scale)) piv = -1;
    }
    if (piv < 0) {
      if constexpr (!is_exact_v<T>)
        for (Eigen::Index i = r; i < rows; ++i) a(i, c) = 0;
      continue;
    }
    if (piv != r) a.row(piv).swap(a.row(r));
    T inv = T(1) / a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      T f = a(i, c);
      if (f == 0) continue;
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      if constexpr (!is_exact_v<T>) a(i, c) = 0;
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

template <class T>
int rank(const Mat<T>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  // Eliminating along the longer side is cheaper for wide generator matrices.
  if (a.cols() > a.rows()) return row_reduce<T>(a.transpose()).rank();
  return row_reduce<T>(a).rank();
}

template <class T>
T determinant(Mat<T> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const double scale = is_exact_v<T> ? 1.0 : max_abs(a);
  T det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    if constexpr (is_exact_v<T>) {
      for (Eigen::Index i = c; i < n; ++i)
        if (a(i, c) != 0) {
          piv = i;
          break;
        }
    } else {
      double best = 0.0;
      for (Eigen::Index i = c; i < n; ++i)
        if (std::fabs(a(i, c)) > best) {
          best = std::fabs(a(i, c));
          piv = i;
        }
      if (piv >= 0 && is_zero(a(piv, c), scale)) piv = -1;
    }
    if (piv < 0) return T(0);
    if (piv != c) {
      a.row(piv).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      T f = a(i, c) / a(c, c);
      for (Eigen::Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Solves a square nonsingular system; nullopt when singular.
template <class T>
std::optional<Mat<T>> solve(const Mat<T>& a, const Mat<T>& b) {
  const Eigen::Index n = a.rows();
  Mat<T> aug(n, n + b.cols());
  aug.leftCols(n) = a;
  aug.rightCols(b.cols()) = b;
  Echelon<T> e = row_reduce<T>(std::move(aug));
  if (e.rank() < n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (e.pivots[static_cast<std::size_t>(i)] != i) return std::nullopt;
  return Mat<T>(e.reduced.rightCols(b.cols()));
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a) {
  return solve<T>(a, Mat<T>::Identity(a.rows(), a.rows()));
}

/// Basis of {x : A x = 0} as columns.
template <class T>
Mat<T> nullspace(const Mat<T>& a) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Mat<T>::Identity(cols, cols);
  Echelon<T> e = row_reduce<T>(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Mat<T> basis = Mat<T>::Zero(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], static_cast<Eigen::Index>(k)) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], static_cast<Eigen::Index>(k)) = -e.reduced(static_cast<Eigen::Index>(r), free[k]);
  }
  return basis;
}

/// Exact mode: scale to a primitive integer vector. Float mode: unit length.
inline void normalize_direction(Vec<Rational>& v) {
  Integer den_lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) den_lcm = boost::multiprecision::lcm(den_lcm, Integer(boost::multiprecision::denominator(v(i))));
  Integer num_gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) {
      Integer num = boost::multiprecision::numerator(v(i)) * (den_lcm / boost::multiprecision::denominator(v(i)));
      num_gcd = boost::multiprecision::gcd(num_gcd, num);
    }
  if (num_gcd == 0) return;
  if (num_gcd < 0) num_gcd = -num_gcd;
  Rational f(den_lcm, num_gcd);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= f;
}

inline void normalize_direction(Vec<double>& v) {
  double n = v.norm();
  if (n > 0) v /= n;
}

/// Scale by the largest magnitude entry (keeps exact values small without gcds).
template <class T>
void normalize_max(Vec<T>& v) {
  if constexpr (is_exact_v<T>) {
    normalize_direction(v);
  } else {
    double m = v.cwiseAbs().maxCoeff();
    if (m > 0) v /= m;
  }
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  T s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

template <class T>
T squared_norm(const Vec<T>& a) {
  return dot(a, a);
}

template <class T>
bool vec_equal(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) return false;
  if constexpr (is_exact_v<T>) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a(i) != b(i)) return false;
    return true;
  } else {
    double s = std::max({1.0, max_abs(a), max_abs(b)});
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (!approx_equal(a(i), b(i), s)) return false;
    return true;
  }
}

}  // namespace isoproj
