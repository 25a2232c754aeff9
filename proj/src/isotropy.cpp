#include "isoproj/isotropy.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace isoproj {

namespace {

template <class T>
bool same_point(const Vec<T>& a, const Vec<T>& b) {
  if constexpr (is_exact_v<T>) return a == b;
  else return (a - b).cwiseAbs().maxCoeff() <= tolerance() * std::max(1.0, a.cwiseAbs().maxCoeff());
}

// First nonzero coordinate positive.
template <class T>
bool lex_positive(const Vec<T>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    int s = sign(v(i));
    if (s != 0) return s > 0;
  }
  return false;
}

// Chart coordinate map c = C (x - origin) as a double matrix.
template <class T>
Eigen::MatrixXd chart_coordinate_map(const AffineChart<T>& chart) {
  const auto& b = chart.directions;
  Eigen::MatrixXd c = to_double_mat(b.basis()).transpose();
  for (int i = 0; i < b.dim(); ++i) c.row(i) /= to_double(b.squared_norms()(i));
  return c;
}

}  // namespace

template <class T>
InertiaReport<T> inertia_from_moments(const Moments<T>& m, const AffineChart<T>& chart) {
  const int k = chart.directions.dim();
  if (k == 0) throw GeometryError(ErrorCode::DegeneratePolytope, "point has no covariance");
  if (m.mass == T(0)) throw GeometryError(ErrorCode::DegeneratePolytope, "zero volume");
  InertiaReport<T> rep;
  rep.dim = k;
  rep.chart = chart;
  rep.volume = Measure<T>{m.mass, chart.directions.gram_determinant()};
  const Vec<T> mean = m.first / m.mass;
  rep.barycenter = chart.lift(mean);
  rep.covariance = m.second / m.mass - mean * mean.transpose();
  rep.l_power = determinant<T>(rep.covariance) / (m.mass * m.mass);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_double_mat(rep.covariance));
  Eigen::VectorXd lam = es.eigenvalues();
  // The float test is relative: L^{2k} itself can be far below tau in high dimension.
  bool degenerate = false;
  if constexpr (is_exact_v<T>) degenerate = rep.l_power <= T(0);
  else degenerate = !(rep.l_power > 0.0) || lam.minCoeff() <= tolerance() * lam.maxCoeff();
  if (degenerate) throw GeometryError(ErrorCode::DegeneratePolytope, "covariance is not positive definite");
  rep.L = std::pow(to_double(rep.l_power), 1.0 / (2.0 * k));

  // Whitening: y = L cov^{-1/2} (c - mean), eigenvalues floored at tau^2.
  const double floor = tolerance() * tolerance();
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = 1.0 / std::sqrt(std::max(lam(i), floor));
  Eigen::MatrixXd whiten = rep.L * es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  Eigen::MatrixXd cmap = chart_coordinate_map(chart);
  rep.iso_linear = whiten * cmap;
  rep.iso_offset = -whiten * (cmap * to_double_vec(chart.origin) + to_double_vec(mean));
  return rep;
}

template <class T>
InertiaReport<T> inertia(const Polytope<T>& p) {
  if (p.dim() == 0) throw GeometryError(ErrorCode::DegeneratePolytope, "point has no covariance");
  return inertia_from_moments(polytope_moments(p), p.chart());
}

template <class T>
double isotropy_constant(const Polytope<T>& p) {
  return inertia(p).L;
}

template <class T>
Polytope<T> isotropic_copy(const Polytope<T>& p, int bits) {
  const InertiaReport<T> rep = inertia(p);
  std::vector<Vec<T>> pts;
  pts.reserve(p.num_vertices());
  for (const auto& v : p.vertices()) {
    Eigen::VectorXd y = rep.iso_linear * to_double_vec(v) + rep.iso_offset;
    Vec<T> out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if constexpr (is_exact_v<T>) out(i) = dyadic_round(y(i), bits);
      else out(i) = y(i);
    }
    pts.push_back(out);
  }
  return Polytope<T>::hull(pts);
}

template <class T>
Radii<T> radii(const Polytope<T>& p) {
  const Vec<T> zero = Vec<T>::Zero(p.ambient_dim());
  Radii<T> out;
  for (const auto& v : p.vertices()) {
    T s = squared_norm<T>(v);
    if (s > out.R_squared) out.R_squared = s;
  }
  if (!p.in_affine_hull(zero)) throw GeometryError(ErrorCode::OriginOutside, "origin is not in the affine hull");
  bool first = true;
  for (const auto& f : p.facets()) {
    if (sign(f.offset, std::max(1.0, max_abs(f.normal))) <= 0)
      throw GeometryError(ErrorCode::OriginOutside, "origin is not in the interior");
    T r2 = f.offset * f.offset / squared_norm<T>(f.normal);
    if (first || r2 < out.r_squared) out.r_squared = r2;
    first = false;
  }
  if (first) throw GeometryError(ErrorCode::DegeneratePolytope, "polytope has no facets");
  out.r = std::sqrt(to_double(out.r_squared));
  out.R = std::sqrt(to_double(out.R_squared));
  return out;
}

template <class T>
Embedding<T> embed_as_b1_projection(const std::vector<Vec<T>>& v) {
  if (v.empty()) throw GeometryError(ErrorCode::EmptyInput, "no generators");
  const int d = static_cast<int>(v.front().size());
  const int n = static_cast<int>(v.size());
  Embedding<T> out;
  out.generators = v;
  out.map = Mat<T>(d, n);
  for (int i = 0; i < n; ++i) {
    if (v[static_cast<std::size_t>(i)].size() != d) throw GeometryError(ErrorCode::DimensionMismatch, "generator lengths differ");
    out.map.col(i) = v[static_cast<std::size_t>(i)];
  }
  if (rank<T>(out.map) < d) throw GeometryError(ErrorCode::RankDeficient, "generators do not span the ambient space");
  out.offset = Vec<T>::Zero(d);
  out.subspace = Subspace<T>::span_of(Mat<T>(out.map.transpose()));
  return out;
}

template <class T>
bool is_origin_symmetric(const Polytope<T>& p) {
  for (const auto& v : p.vertices()) {
    bool has_negative = false;
    for (const auto& w : p.vertices()) has_negative |= same_point<T>(Vec<T>(-v), w);
    if (!has_negative) return false;
  }
  return true;
}

template <class T>
Embedding<T> embed_as_b1_projection(const Polytope<T>& k) {
  if (!is_origin_symmetric(k)) throw GeometryError(ErrorCode::NotSymmetric, "vertex set is not closed under negation");
  std::vector<Vec<T>> reps;
  for (const auto& v : k.vertices())
    if (lex_positive(v)) reps.push_back(v);
  return embed_as_b1_projection(reps);
}

template <class T>
Embedding<T> embed_as_simplex_projection(const std::vector<Vec<T>>& v) {
  if (v.size() < 2) throw GeometryError(ErrorCode::EmptyInput, "need at least two points");
  const int d = static_cast<int>(v.front().size());
  const int m = static_cast<int>(v.size());
  Embedding<T> out;
  out.generators = v;
  out.map = Mat<T>(d, m);
  for (int i = 0; i < m; ++i) {
    if (v[static_cast<std::size_t>(i)].size() != d) throw GeometryError(ErrorCode::DimensionMismatch, "point lengths differ");
    out.map.col(i) = v[static_cast<std::size_t>(i)];
  }
  // E = P_H (row space of T); rows centered.
  Mat<T> rows = out.map.transpose();
  for (int c = 0; c < d; ++c) {
    T mean = rows.col(c).sum() / T(m);
    for (int r = 0; r < m; ++r) rows(r, c) -= mean;
  }
  if (rank<T>(rows) < d) throw GeometryError(ErrorCode::RankDeficient, "points are not affinely spanning");
  out.subspace = Subspace<T>::span_of(rows);
  // T(P_E e_0) is sent back to v_0.
  Vec<T> e0 = Vec<T>::Zero(m);
  e0(0) = T(1);
  out.offset = v.front() - out.map * out.subspace.project(e0);
  return out;
}

template <class T>
Embedding<T> embed_as_simplex_projection(const Polytope<T>& k) {
  return embed_as_simplex_projection(k.vertices());
}

template <class T>
Polytope<T> minkowski_difference_body(const Polytope<T>& p) {
  std::vector<Vec<T>> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : p.vertices()) pts.push_back(a - b);
  return Polytope<T>::hull(pts);
}

template <class T>
double deterministic_bound_check(const Polytope<T>& k) {
  return isotropy_constant(k) * std::sqrt(static_cast<double>(k.dim()) / static_cast<double>(k.num_vertices()));
}

#define ISOPROJ_INSTANTIATE(T)                                                                     \
  template InertiaReport<T> inertia<T>(const Polytope<T>&);                                        \
  template InertiaReport<T> inertia_from_moments<T>(const Moments<T>&, const AffineChart<T>&);     \
  template double isotropy_constant<T>(const Polytope<T>&);                                        \
  template Polytope<T> isotropic_copy<T>(const Polytope<T>&, int);                                 \
  template Radii<T> radii<T>(const Polytope<T>&);                                                  \
  template Embedding<T> embed_as_b1_projection<T>(const std::vector<Vec<T>>&);                     \
  template Embedding<T> embed_as_b1_projection<T>(const Polytope<T>&);                             \
  template Embedding<T> embed_as_simplex_projection<T>(const std::vector<Vec<T>>&);                \
  template Embedding<T> embed_as_simplex_projection<T>(const Polytope<T>&);                        \
  template Polytope<T> minkowski_difference_body<T>(const Polytope<T>&);                           \
  template bool is_origin_symmetric<T>(const Polytope<T>&);                                        \
  template double deterministic_bound_check<T>(const Polytope<T>&);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

}  // namespace isoproj
