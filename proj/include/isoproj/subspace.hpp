#pragma once

#include "isoproj/linalg.hpp"

#include <vector>

namespace isoproj {

/// Linear subspace of R^n given by mutually orthogonal basis columns.
/// Float mode keeps the columns unit length; exact mode keeps them as
/// primitive integer vectors, so projections and coordinates stay rational.
template <class T>
class Subspace {
 public:
  Subspace() = default;

  /// Orthogonalizes the span of the given columns (Gram-Schmidt with
  /// largest-residual pivoting, deterministic for a fixed backend).
  static Subspace span_of(const Mat<T>& columns);
  /// Keeps the given column order when the columns are already pairwise
  /// orthogonal and nonzero; otherwise falls back to span_of.
  static Subspace from_orthogonal_basis(const Mat<T>& columns);
  static Subspace coordinate(int ambient_dim, const std::vector<int>& axes);
  static Subspace whole(int ambient_dim);
  static Subspace zero(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat<T>& basis() const { return basis_; }
  Vec<T> basis_vector(int i) const { return basis_.col(i); }
  const Vec<T>& squared_norms() const { return sq_norms_; }

  /// Coefficients c with P x = sum c_i b_i.
  Vec<T> coords(const Vec<T>& x) const;
  Vec<T> lift(const Vec<T>& c) const;
  Vec<T> project(const Vec<T>& x) const;
  Mat<T> projector() const;

  /// det(B^T B): the squared volume of the coordinate unit cube.
  T gram_determinant() const;

  bool contains(const Vec<T>& x) const;
  bool contains(const Subspace& other) const;

  Subspace orthogonal_complement() const;
  /// Orthogonal complement of *this inside `outer` (requires *this inside outer).
  Subspace complement_within(const Subspace& outer) const;

  template <class U>
  Subspace<U> convert() const;

 private:
  friend class Subspace<double>;
  friend class Subspace<Rational>;
  int ambient_dim_ = 0;
  Mat<T> basis_;
  Vec<T> sq_norms_;
};

/// Affine chart x = origin + B c of an affine subspace.
template <class T>
struct AffineChart {
  Vec<T> origin;
  Subspace<T> directions;

  Vec<T> coords(const Vec<T>& x) const { return directions.coords(x - origin); }
  Vec<T> lift(const Vec<T>& c) const { return origin + directions.lift(c); }
};

}  // namespace isoproj
