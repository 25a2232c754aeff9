#pragma once

#include "isoproj/polytope.hpp"

namespace isoproj {

/// Inertia data of a polytope, computed inside its affine hull.
///
/// The covariance is (1/Vol) int (c - c0)(c - c0)^T over chart coordinates c.
/// The isotropy constant is affine invariant, so any chart gives the same
/// L^{2k} = det(cov) / vol^2 (chart volume). In exact mode this is rational.
template <class T>
struct InertiaReport {
  int dim = 0;
  AffineChart<T> chart;
  Measure<T> volume;
  Vec<T> barycenter;    // ambient coordinates
  Mat<T> covariance;    // chart coordinates, about the barycenter
  T l_power{0};         // L^{2k}
  double L = 0.0;
  // y = iso_linear * x + iso_offset maps P into R^k in isotropic position.
  Eigen::MatrixXd iso_linear;
  Eigen::VectorXd iso_offset;
};

template <class T>
InertiaReport<T> inertia(const Polytope<T>& p);

/// Same report from chart moments (mass, first, second) of a k-dimensional body.
template <class T>
InertiaReport<T> inertia_from_moments(const Moments<T>& m, const AffineChart<T>& chart);

template <class T>
double isotropy_constant(const Polytope<T>& p);

/// Image of P under its isotropic map. Exact mode rounds the image vertices to
/// a 2^-bits dyadic grid, so the result is isotropic up to that rounding.
template <class T>
Polytope<T> isotropic_copy(const Polytope<T>& p, int bits = 40);

template <class T>
struct Radii {
  T r_squared{0};
  T R_squared{0};
  double r = 0.0;
  double R = 0.0;
};

/// Inradius about the origin (distance to the nearest facet hyperplane) and
/// circumradius (largest vertex norm). Requires 0 in the relative interior.
template <class T>
Radii<T> radii(const Polytope<T>& p);

/// Linear or affine identification x -> map * x + offset of a projection with K.
template <class T>
struct Embedding {
  Subspace<T> subspace;   // E in R^n (or inside H in R^{n+1})
  Mat<T> map;             // d x n
  Vec<T> offset;          // length d
  std::vector<Vec<T>> generators;

  Vec<T> apply(const Vec<T>& x) const { return map * x + offset; }
};

/// K = conv{+-v_1..+-v_n} as the image of P_E B_1^n: T e_i = v_i, E = row space of T.
template <class T>
Embedding<T> embed_as_b1_projection(const std::vector<Vec<T>>& v);
/// Symmetric polytope overload; one generator per antipodal vertex pair.
template <class T>
Embedding<T> embed_as_b1_projection(const Polytope<T>& k);

/// K = conv{v_0..v_n} as the image of P_E Delta_n, with E inside H = (1,..,1)-perp.
template <class T>
Embedding<T> embed_as_simplex_projection(const std::vector<Vec<T>>& v);
template <class T>
Embedding<T> embed_as_simplex_projection(const Polytope<T>& k);

/// K - K = conv{v_i - v_j}.
template <class T>
Polytope<T> minkowski_difference_body(const Polytope<T>& p);

/// Vertex set closed under x -> -x.
template <class T>
bool is_origin_symmetric(const Polytope<T>& p);

/// L_K * sqrt(d / n) for a d-dimensional K with n vertices.
template <class T>
double deterministic_bound_check(const Polytope<T>& k);

}  // namespace isoproj
