#include "isoproj/subspace.hpp"

#include "isoproj/errors.hpp"

#include <cmath>
#include <limits>

namespace isoproj {

template <class T>
Subspace<T> Subspace<T>::span_of(const Mat<T>& columns) {
  const int n = static_cast<int>(columns.rows());
  const Eigen::Index m = columns.cols();
  std::vector<Vec<T>> residual;
  std::vector<double> original_norm;
  residual.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    residual.emplace_back(columns.col(j));
    original_norm.push_back(std::sqrt(to_double(squared_norm<T>(residual.back()))));
  }
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  std::vector<Vec<T>> chosen;
  for (;;) {
    int best = -1;
    T best_norm(0);
    for (Eigen::Index j = 0; j < m; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      T s = squared_norm<T>(residual[static_cast<std::size_t>(j)]);
      bool nonzero;
      if constexpr (is_exact_v<T>) {
        nonzero = s != 0;
      } else {
        double ref = original_norm[static_cast<std::size_t>(j)];
        nonzero = std::sqrt(s) > tolerance() * std::max(1.0, ref) * 10.0;
      }
      if (!nonzero) {
        used[static_cast<std::size_t>(j)] = true;
        continue;
      }
      if (best < 0 || s > best_norm) {
        best = static_cast<int>(j);
        best_norm = s;
      }
    }
    if (best < 0) break;
    used[static_cast<std::size_t>(best)] = true;
    Vec<T> b = residual[static_cast<std::size_t>(best)];
    normalize_direction(b);
    T bb = squared_norm<T>(b);
    for (Eigen::Index j = 0; j < m; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      auto& r = residual[static_cast<std::size_t>(j)];
      T f = dot<T>(r, b) / bb;
      if (f != 0) r -= f * b;
    }
    chosen.push_back(std::move(b));
  }
  Subspace s;
  s.ambient_dim_ = n;
  s.basis_ = Mat<T>(n, static_cast<Eigen::Index>(chosen.size()));
  s.sq_norms_ = Vec<T>(static_cast<Eigen::Index>(chosen.size()));
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    s.basis_.col(static_cast<Eigen::Index>(i)) = chosen[i];
    s.sq_norms_(static_cast<Eigen::Index>(i)) = squared_norm<T>(chosen[i]);
  }
  return s;
}

template <class T>
Subspace<T> Subspace<T>::from_orthogonal_basis(const Mat<T>& columns) {
  const Eigen::Index m = columns.cols();
  std::vector<Vec<T>> cols;
  for (Eigen::Index j = 0; j < m; ++j) {
    Vec<T> c = columns.col(j);
    if constexpr (is_exact_v<T>) {
      normalize_direction(c);
    } else {
      // Leave unit columns untouched so repeated parsing is stable.
      const double nn = c.norm();
      if (std::fabs(nn - 1.0) > 4 * std::numeric_limits<double>::epsilon()) normalize_direction(c);
    }
    cols.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (max_abs<T>(cols[i]) == 0) return span_of(columns);
    for (std::size_t j = 0; j < i; ++j) {
      T g = dot<T>(cols[i], cols[j]);
      if constexpr (is_exact_v<T>) {
        if (g != 0) return span_of(columns);
      } else if (std::fabs(g) > tolerance()) {
        return span_of(columns);
      }
    }
  }
  Subspace s;
  s.ambient_dim_ = static_cast<int>(columns.rows());
  s.basis_ = Mat<T>(columns.rows(), m);
  s.sq_norms_ = Vec<T>(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    s.basis_.col(j) = cols[static_cast<std::size_t>(j)];
    s.sq_norms_(j) = squared_norm<T>(cols[static_cast<std::size_t>(j)]);
  }
  return s;
}

template <class T>
Subspace<T> Subspace<T>::coordinate(int ambient_dim, const std::vector<int>& axes) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Mat<T>::Zero(ambient_dim, static_cast<Eigen::Index>(axes.size()));
  s.sq_norms_ = Vec<T>::Constant(static_cast<Eigen::Index>(axes.size()), T(1));
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] < 0 || axes[i] >= ambient_dim)
      throw GeometryError(ErrorCode::DimensionMismatch, "coordinate axis out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (axes[j] == axes[i]) throw GeometryError(ErrorCode::RankDeficient, "repeated coordinate axis");
    s.basis_(axes[i], static_cast<Eigen::Index>(i)) = T(1);
  }
  return s;
}

template <class T>
Subspace<T> Subspace<T>::whole(int ambient_dim) {
  std::vector<int> axes(static_cast<std::size_t>(ambient_dim));
  for (int i = 0; i < ambient_dim; ++i) axes[static_cast<std::size_t>(i)] = i;
  return coordinate(ambient_dim, axes);
}

template <class T>
Subspace<T> Subspace<T>::zero(int ambient_dim) {
  Subspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = Mat<T>(ambient_dim, 0);
  s.sq_norms_ = Vec<T>(0);
  return s;
}

template <class T>
Vec<T> Subspace<T>::coords(const Vec<T>& x) const {
  Vec<T> c(basis_.cols());
  for (Eigen::Index i = 0; i < basis_.cols(); ++i) {
    T s(0);
    for (Eigen::Index k = 0; k < basis_.rows(); ++k)
      if (basis_(k, i) != 0) s += basis_(k, i) * x(k);
    c(i) = s / sq_norms_(i);
  }
  return c;
}

template <class T>
Vec<T> Subspace<T>::lift(const Vec<T>& c) const {
  Vec<T> x = Vec<T>::Zero(ambient_dim_);
  for (Eigen::Index i = 0; i < basis_.cols(); ++i)
    if (c(i) != 0) x += c(i) * basis_.col(i);
  return x;
}

template <class T>
Vec<T> Subspace<T>::project(const Vec<T>& x) const {
  return lift(coords(x));
}

template <class T>
Mat<T> Subspace<T>::projector() const {
  Mat<T> p = Mat<T>::Zero(ambient_dim_, ambient_dim_);
  for (Eigen::Index i = 0; i < basis_.cols(); ++i) {
    Vec<T> b = basis_.col(i);
    p += (b * b.transpose()) / sq_norms_(i);
  }
  return p;
}

template <class T>
T Subspace<T>::gram_determinant() const {
  T g(1);
  for (Eigen::Index i = 0; i < sq_norms_.size(); ++i) g *= sq_norms_(i);
  return g;
}

template <class T>
bool Subspace<T>::contains(const Vec<T>& x) const {
  Vec<T> r = x - project(x);
  if constexpr (is_exact_v<T>) {
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (r(i) != 0) return false;
    return true;
  } else {
    return max_abs<T>(r) <= tolerance() * std::max(1.0, max_abs<T>(x)) * 10.0;
  }
}

template <class T>
bool Subspace<T>::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(Vec<T>(other.basis_.col(i)))) return false;
  return true;
}

template <class T>
Subspace<T> Subspace<T>::orthogonal_complement() const {
  return complement_within(whole(ambient_dim_));
}

template <class T>
Subspace<T> Subspace<T>::complement_within(const Subspace& outer) const {
  Mat<T> cols(ambient_dim_, outer.dim());
  for (int i = 0; i < outer.dim(); ++i) {
    Vec<T> b = outer.basis_.col(i);
    cols.col(i) = b - project(b);
  }
  return span_of(cols);
}

template <class T>
template <class U>
Subspace<U> Subspace<T>::convert() const {
  Mat<U> cols(basis_.rows(), basis_.cols());
  for (Eigen::Index i = 0; i < basis_.rows(); ++i)
    for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
      if constexpr (std::is_same_v<U, T>)
        cols(i, j) = basis_(i, j);
      else
        cols(i, j) = from_double<U>(to_double(basis_(i, j)));
    }
  Subspace<U> s = Subspace<U>::span_of(cols);
  s.ambient_dim_ = ambient_dim_;
  return s;
}

template class Subspace<double>;
template class Subspace<Rational>;
template Subspace<double> Subspace<Rational>::convert<double>() const;
template Subspace<Rational> Subspace<double>::convert<Rational>() const;
template Subspace<double> Subspace<double>::convert<double>() const;
template Subspace<Rational> Subspace<Rational>::convert<Rational>() const;

}  // namespace isoproj
