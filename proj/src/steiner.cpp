#include "isoproj/steiner.hpp"

#include "isoproj/double_description.hpp"
#include "isoproj/errors.hpp"
#include "isoproj/linalg.hpp"

#include <cmath>
#include <random>

namespace isoproj {

namespace {

template <class T>
bool same_point(const Vec<T>& a, const Vec<T>& b) {
  if constexpr (is_exact_v<T>) return a == b;
  else return (a - b).cwiseAbs().maxCoeff() <= 1e3 * tolerance() * std::max(1.0, a.cwiseAbs().maxCoeff());
}

template <class T>
bool same_vertex_set(const std::vector<Vec<T>>& a, const std::vector<Vec<T>>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& v : a) {
    bool found = false;
    for (const auto& w : b) found |= same_point<T>(v, w);
    if (!found) return false;
  }
  return true;
}

template <class T>
bool close(const T& a, const T& b, double rel) {
  if constexpr (is_exact_v<T>) return a == b;
  else return std::fabs(a - b) <= rel * std::max(1.0, std::fabs(b));
}

// Raw second moment int x x^T of a full-dimensional polytope.
template <class T>
Mat<T> second_moment(const Polytope<T>& p) {
  return polytope_moments(p).second;
}

template <class T>
Vec<T> along_hyperplane(const Vec<T>& x, const Vec<T>& nu, const T& nn) {
  return x - (dot<T>(x, nu) / nn) * nu;
}

}  // namespace

template <class T>
Polytope<T> hyperplane_section(const Polytope<T>& p, const AffineHyperplane<T>& h) {
  const int n = p.ambient_dim();
  if (h.normal.size() != n) throw GeometryError(ErrorCode::DimensionMismatch, "hyperplane dimension differs from polytope");
  const T nn = squared_norm<T>(h.normal);
  if (is_zero(nn)) throw GeometryError(ErrorCode::PreconditionViolated, "hyperplane normal is zero");
  Mat<T> line(n, 1);
  line.col(0) = h.normal;
  AffineChart<T> chart{Vec<T>(h.normal * (h.offset / nn)), Subspace<T>::span_of(line).orthogonal_complement()};
  return affine_section(p, chart);
}

template <class T>
SteinerResult<T> steiner_symmetrize(const Polytope<T>& p, const Vec<T>& nu) {
  const int n = p.ambient_dim();
  if (n > 4) throw GeometryError(ErrorCode::DimensionUnsupported, "Steiner symmetrization is limited to ambient dimension 4");
  if (nu.size() != n) throw GeometryError(ErrorCode::DimensionMismatch, "direction dimension differs from polytope");
  if (p.dim() < n) throw GeometryError(ErrorCode::DegenerateBody, "body is not full-dimensional");
  const T nn = squared_norm<T>(nu);
  if (is_zero(nn)) throw GeometryError(ErrorCode::PreconditionViolated, "direction is zero");

  // x = y + s nu; facet <a, x> <= b reads <abar, y> + c s <= b.
  struct Piece {
    Vec<T> abar;
    T b;
    T c;
  };
  std::vector<Piece> upper, lower, vertical;
  for (const auto& f : p.facets()) {
    T c = dot<T>(f.normal, nu);
    Piece piece{Vec<T>(f.normal - (c / nn) * nu), f.offset, c};
    int s = sign(c, std::max(1.0, max_abs(f.normal)) * std::max(1.0, max_abs(nu)));
    if (s > 0) upper.push_back(piece);
    else if (s < 0) lower.push_back(piece);
    else vertical.push_back(piece);
  }
  if (upper.empty() || lower.empty()) throw GeometryError(ErrorCode::DegenerateBody, "body is unbounded along the direction");

  // s <= U_i(y) = (b_i - <abar_i, x>) / c_i and s >= L_j(y); |s| <= (U_i - L_j) / 2.
  const std::size_t rows = vertical.size() + 2 * upper.size() * lower.size();
  Mat<T> a(static_cast<Eigen::Index>(rows), n);
  Vec<T> rhs(static_cast<Eigen::Index>(rows));
  Eigen::Index r = 0;
  for (const auto& v : vertical) {
    a.row(r) = v.abar.transpose();
    rhs(r++) = v.b;
  }
  const Vec<T> s_row = nu * (T(2) / nn);
  for (const auto& u : upper)
    for (const auto& l : lower) {
      Vec<T> base = u.abar / u.c - l.abar / l.c;
      T b = u.b / u.c - l.b / l.c;
      a.row(r) = (base + s_row).transpose();
      rhs(r++) = b;
      a.row(r) = (base - s_row).transpose();
      rhs(r++) = b;
    }

  SteinerResult<T> res;
  res.input = p;
  res.direction = nu;
  res.output = Polytope<T>::hull(polytope_vertices<T>(a, rhs));
  const Mat<T> mk = second_moment(p);
  const Mat<T> ms = second_moment(res.output);
  res.sigma_squared = dot<T>(nu, Vec<T>(ms * nu)) / dot<T>(nu, Vec<T>(mk * nu));
  res.sigma = std::sqrt(to_double(res.sigma_squared));
  auto in = inertia(p);
  auto out = inertia(res.output);
  res.l_power_in = in.l_power;
  res.l_power_out = out.l_power;
  res.L_in = in.L;
  res.L_out = out.L;
  return res;
}

template <class T>
SteinerReport steiner_inertia_checks(const SteinerResult<T>& res, int samples, std::uint64_t seed) {
  const Polytope<T>& k = res.input;
  const Polytope<T>& s = res.output;
  const int n = k.ambient_dim();
  const double tau = tolerance();
  auto rep_in = inertia(k);
  const double l2 = rep_in.L * rep_in.L;
  {
    const Eigen::MatrixXd cov = to_double_mat(rep_in.covariance);
    const double cov_err = (cov - l2 * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() / l2;
    const double vol_err = std::fabs(rep_in.volume.value() - 1.0);
    const double bary_err = max_abs(rep_in.barycenter);
    if (cov_err > 10 * tau || vol_err > 10 * tau || bary_err > 10 * tau)
      throw GeometryError(ErrorCode::NotIsotropicInput, "input is not in isotropic position");
  }
  const Vec<T>& nu = res.direction;
  const T nn = squared_norm<T>(nu);
  const Mat<T> mk = second_moment(k);
  const Mat<T> ms = second_moment(s);

  Mat<T> line(n, 1);
  line.col(0) = nu;
  const Subspace<T> h = Subspace<T>::span_of(line).orthogonal_complement();
  std::vector<Vec<T>> thetas;
  for (int i = 0; i < h.dim(); ++i) thetas.push_back(h.basis_vector(i));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  while (static_cast<int>(thetas.size()) < samples) {
    Vec<T> c(h.dim());
    for (int i = 0; i < h.dim(); ++i) {
      if constexpr (is_exact_v<T>) c(i) = dyadic_round(gauss(rng), 12);
      else c(i) = gauss(rng);
    }
    if (max_abs(c) > 0) thetas.push_back(h.lift(c));
  }

  SteinerReport out;
  out.theta_exact = is_exact_v<T>;
  const double nu_norm = std::sqrt(to_double(nn));
  for (const auto& t : thetas) {
    const T tt = squared_norm<T>(t);
    const T qs = dot<T>(t, Vec<T>(ms * t));
    const T qk = dot<T>(t, Vec<T>(mk * t));
    out.theta_residual = std::max(out.theta_residual, std::fabs(to_double(T(qs / tt)) - l2) / l2);
    if (!(qs == qk)) out.theta_exact = false;
    const double mixed = std::fabs(to_double(dot<T>(t, Vec<T>(ms * nu)))) / (std::sqrt(to_double(tt)) * nu_norm);
    out.mixed_residual = std::max(out.mixed_residual, mixed / l2);
  }
  out.sigma_squared = to_double(res.sigma_squared);
  out.identity_residual = std::fabs(res.L_out - std::pow(res.sigma, 1.0 / n) * res.L_in) / res.L_in;
  if constexpr (is_exact_v<T>) out.monotone = res.l_power_out <= res.l_power_in;
  else out.monotone = res.L_out <= res.L_in * (1 + tau);
  out.relative_drop = 1.0 - res.L_out / res.L_in;
  out.volume_preserved = close<T>(volume(s).coeff, volume(k).coeff, tau);

  // Reflection x -> x - 2 s(x) nu permutes the vertices of S(K).
  std::vector<Vec<T>> reflected;
  for (const auto& v : s.vertices()) reflected.push_back(v - (T(2) * dot<T>(v, nu) / nn) * nu);
  out.reflection_symmetric = same_vertex_set<T>(reflected, s.vertices());

  std::vector<Vec<T>> pk, ps;
  for (const auto& v : k.vertices()) pk.push_back(along_hyperplane<T>(v, nu, nn));
  for (const auto& v : s.vertices()) ps.push_back(along_hyperplane<T>(v, nu, nn));
  auto proj_k = Polytope<T>::hull(pk);
  auto proj_s = Polytope<T>::hull(ps);
  auto section = hyperplane_section(s, AffineHyperplane<T>{nu, T(0)});
  out.projection_matches_section =
      same_vertex_set<T>(proj_k.vertices(), proj_s.vertices()) && same_vertex_set<T>(proj_s.vertices(), section.vertices());
  return out;
}

template <class T>
double hensley_ratio(const Polytope<T>& p, const Vec<T>& theta) {
  auto rep = inertia(p);
  const double tau = tolerance();
  if (rep.dim != p.ambient_dim() || std::fabs(rep.volume.value() - 1.0) > tau || max_abs(rep.barycenter) > tau)
    throw GeometryError(ErrorCode::PreconditionViolated, "Hensley ratio needs a centered body of volume 1");
  const T tt = squared_norm<T>(theta);
  if (is_zero(tt)) throw GeometryError(ErrorCode::PreconditionViolated, "direction is zero");
  const double section = volume(hyperplane_section(p, AffineHyperplane<T>{theta, T(0)})).value();
  const double moment = to_double(T(dot<T>(theta, Vec<T>(second_moment(p) * theta)) / tt));
  return section * std::sqrt(moment);
}

template <class T>
ProjectionSectionReport projection_section_comparison(const Polytope<T>& p, const Vec<T>& nu) {
  const int n = p.ambient_dim();
  if (p.dim() < n) throw GeometryError(ErrorCode::DegenerateBody, "body is not full-dimensional");
  const T nn = squared_norm<T>(nu);
  if (is_zero(nn)) throw GeometryError(ErrorCode::PreconditionViolated, "direction is zero");
  const double nu_norm = std::sqrt(to_double(nn));
  ProjectionSectionReport rep;
  rep.L_body = isotropy_constant(p);
  rep.volume = volume(p).value();
  rep.symmetric = is_origin_symmetric(p);

  Mat<T> line(n, 1);
  line.col(0) = nu;
  const Subspace<T> h = Subspace<T>::span_of(line).orthogonal_complement();
  std::vector<Vec<T>> hc;
  for (const auto& v : p.vertices()) hc.push_back(h.coords(v));
  auto proj = Polytope<T>::hull(hc);
  rep.L_projection = isotropy_constant(proj);
  rep.hyperplane_projection = to_double(volume(proj).coeff) * std::sqrt(to_double(h.gram_determinant()));
  rep.ratio = rep.L_projection / rep.L_body;

  auto section = hyperplane_section(p, AffineHyperplane<T>{nu, T(0)});
  rep.L_section = isotropy_constant(section);
  rep.hyperplane_section = volume(section).value();

  T lo = dot<T>(p.vertex(0), nu), hi = lo;
  for (const auto& v : p.vertices()) {
    T t = dot<T>(v, nu);
    if (t < lo) lo = t;
    if (t > hi) hi = t;
  }
  rep.line_projection = to_double(T(hi - lo)) / nu_norm;

  // Chord {t nu} cap P from the facet inequalities c t <= b.
  bool has_hi = false, has_lo = false;
  T tmax{0}, tmin{0};
  for (const auto& f : p.facets()) {
    T c = dot<T>(f.normal, nu);
    int sg = sign(c, std::max(1.0, max_abs(f.normal)) * std::max(1.0, max_abs(nu)));
    if (sg > 0) {
      T t = f.offset / c;
      if (!has_hi || t < tmax) tmax = t;
      has_hi = true;
    } else if (sg < 0) {
      T t = f.offset / c;
      if (!has_lo || t > tmin) tmin = t;
      has_lo = true;
    } else if (sign(f.offset) < 0) {
      has_hi = has_lo = false;
      break;
    }
  }
  rep.line_section = has_hi && has_lo && tmax > tmin ? to_double(T(tmax - tmin)) * nu_norm : 0.0;
  rep.lower_product = rep.line_projection * rep.hyperplane_section;
  rep.upper_product = rep.hyperplane_projection * rep.line_section / n;
  return rep;
}

#define ISOPROJ_INSTANTIATE(T)                                                                                    \
  template Polytope<T> hyperplane_section<T>(const Polytope<T>&, const AffineHyperplane<T>&);                     \
  template SteinerResult<T> steiner_symmetrize<T>(const Polytope<T>&, const Vec<T>&);                              \
  template SteinerReport steiner_inertia_checks<T>(const SteinerResult<T>&, int, std::uint64_t);                  \
  template double hensley_ratio<T>(const Polytope<T>&, const Vec<T>&);                                             \
  template ProjectionSectionReport projection_section_comparison<T>(const Polytope<T>&, const Vec<T>&);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

}  // namespace isoproj
