#include "isoproj/shadow.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/lp.hpp"

#include <algorithm>
#include <random>

namespace isoproj {

namespace {

template <class T>
bool feasible(const Mat<T>& a, const Vec<T>& b) {
  if constexpr (is_exact_v<T>) return nonnegative_solution<T>(a, b).feasible;
  else return nonnegative_solution_rechecked(a, b).feasible;
}

template <class T>
bool nonnegative(const T& x) {
  if constexpr (is_exact_v<T>) return x >= 0;
  else return x >= -tolerance();
}

// u in cone(columns of a) for a cone of full dimension in W.
template <class T>
bool in_projected_cone(const Mat<T>& a, const Vec<T>& uc) {
  if (a.cols() == a.rows()) {
    auto sol = solve<T>(a, Mat<T>(uc));
    if (!sol) return false;
    for (Eigen::Index i = 0; i < sol->rows(); ++i)
      if (!nonnegative((*sol)(i, 0))) return false;
    return true;
  }
  return feasible<T>(a, uc);
}

// Strictly positive weights on both point sets reaching a common point.
template <class T>
bool relints_meet(const std::vector<Vec<T>>& a, const std::vector<Vec<T>>& b) {
  const Eigen::Index n = a.front().size();
  const Eigen::Index ka = static_cast<Eigen::Index>(a.size());
  const Eigen::Index kb = static_cast<Eigen::Index>(b.size());
  Mat<T> m = Mat<T>::Zero(n + 2, ka + kb + 1);
  Vec<T> rhs = Vec<T>::Zero(n + 2);
  for (Eigen::Index i = 0; i < ka; ++i) {
    m.col(i).head(n) = a[static_cast<std::size_t>(i)];
    rhs.head(n) -= a[static_cast<std::size_t>(i)];
    m(n, i) = T(1);
  }
  for (Eigen::Index j = 0; j < kb; ++j) {
    m.col(ka + j).head(n) = -b[static_cast<std::size_t>(j)];
    rhs.head(n) += b[static_cast<std::size_t>(j)];
    m(n + 1, ka + j) = T(1);
  }
  m(n, ka + kb) = T(-1);
  m(n + 1, ka + kb) = T(-1);
  rhs(n) = T(-static_cast<int>(ka));
  rhs(n + 1) = T(-static_cast<int>(kb));
  return feasible<T>(m, rhs);
}

template <class T>
Moments<T> zero_moments(int k) {
  Moments<T> m;
  m.mass = T(0);
  m.first = Vec<T>::Zero(k);
  m.second = Mat<T>::Zero(k, k);
  return m;
}

template <class T>
std::vector<Vec<T>> coords_of(const Polytope<T>& p, const Subspace<T>& e) {
  std::vector<Vec<T>> out;
  out.reserve(p.num_vertices());
  for (const auto& v : p.vertices()) out.push_back(e.coords(v));
  return out;
}

template <class T>
void check_subspace(const Polytope<T>& p, const Subspace<T>& e) {
  if (e.ambient_dim() != p.ambient_dim()) throw GeometryError(ErrorCode::DimensionMismatch, "subspace dimension differs from polytope");
  if (!p.chart().directions.contains(e))
    throw GeometryError(ErrorCode::PreconditionViolated, "subspace is not parallel to the affine hull of the polytope");
}

// u in P_W N(F) for the lattice face (j, i).
template <class T>
bool face_selected(const Polytope<T>& p, const Mat<T>& fc, const Vec<T>& uc, int j, int i) {
  const auto ids = p.lattice().faces[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].facets.indices();
  if (ids.empty()) return false;
  Mat<T> a(fc.cols(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t c = 0; c < ids.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = fc.row(ids[c]).transpose();
  return in_projected_cone<T>(a, uc);
}

// Exact test through vertex images y_v = (E^T v, <u, v>): u is in P_W N(F) iff
// some c = u + E b has <c, v - v0> = 0 on F and <= 0 on every vertex. When P_E
// is injective on F the equalities fix b. Returns nullopt otherwise.
template <class T>
std::optional<bool> face_selected_by_vertices(const Mat<T>& y, const IndexSet& face) {
  const Eigen::Index d = y.rows() - 1;
  const auto ids = face.indices();
  Mat<T> sys(static_cast<Eigen::Index>(ids.size()) - 1, d + 1);
  for (std::size_t k = 1; k < ids.size(); ++k) {
    Vec<T> diff = y.col(ids[k]) - y.col(ids[0]);
    sys.row(static_cast<Eigen::Index>(k) - 1).head(d) = diff.head(d).transpose();
    sys(static_cast<Eigen::Index>(k) - 1, d) = -diff(d);
  }
  const auto ech = row_reduce<T>(sys);
  if (ech.rank() != d || (!ech.pivots.empty() && ech.pivots.back() >= d)) return std::nullopt;
  Vec<T> b = Vec<T>::Zero(d);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) b(ech.pivots[r]) = ech.reduced(static_cast<Eigen::Index>(r), d);
  for (Eigen::Index v = 0; v < y.cols(); ++v) {
    Vec<T> diff = y.col(v) - y.col(ids[0]);
    if (diff(d) + dot<T>(Vec<T>(diff.head(d)), b) > 0) return false;
  }
  return true;
}

}  // namespace

template <class T>
Moments<T> ShadowDecomposition<T>::moments() const {
  Moments<T> m = zero_moments<T>(subspace.dim());
  for (const auto& f : faces) m += f.projected_moments;
  return m;
}

template <class T>
Measure<T> ShadowDecomposition<T>::projected_volume() const {
  Measure<T> out;
  out.coeff = moments().mass;
  out.radicand = subspace.gram_determinant();
  return out;
}

template <class T>
ShadowDecomposition<T> shadow_faces(const Polytope<T>& p, const Subspace<T>& e, const GenericDirection<T>& u) {
  check_subspace(p, e);
  const int d = e.dim();
  if (d == 0 || d >= p.dim()) throw GeometryError(ErrorCode::PreconditionViolated, "subspace must have dimension between 1 and dim P - 1");
  const Mat<T> frame = u.frame.cols() > 0 ? u.frame : complement_frame(e, p.chart().directions);
  if (frame.cols() != p.dim() - d) throw GeometryError(ErrorCode::NonGenericDirection, "direction space does not complement E");
  if (u.certificate.empty() && !certify_direction(p, e, frame, u.u, nullptr))
    throw GeometryError(ErrorCode::NonGenericDirection, "direction lies in a deficient projected normal cone");

  const std::vector<Vec<T>> ec = coords_of(p, e);
  {
    Mat<T> diffs(d, static_cast<Eigen::Index>(ec.size()) - 1);
    for (std::size_t i = 1; i < ec.size(); ++i) diffs.col(static_cast<Eigen::Index>(i) - 1) = ec[i] - ec[0];
    if (rank<T>(diffs) < d) throw GeometryError(ErrorCode::DegenerateProjection, "projection has dimension below dim E");
  }

  ShadowDecomposition<T> dec;
  dec.polytope = p;
  dec.subspace = e;
  dec.direction = u;
  dec.direction.frame = frame;
  const Mat<T> fc = facet_coordinates(p, frame);
  const Vec<T> uc = frame.transpose() * u.u;
  const auto& level = p.lattice().faces[static_cast<std::size_t>(d)];
  Mat<T> y;
  if constexpr (is_exact_v<T>) {
    y.resize(d + 1, static_cast<Eigen::Index>(p.num_vertices()));
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
      y.col(static_cast<Eigen::Index>(v)).head(d) = ec[v];
      y(d, static_cast<Eigen::Index>(v)) = dot<T>(u.u, p.vertices()[v]);
    }
  }
  for (std::size_t i = 0; i < level.size(); ++i) {
    std::optional<bool> quick;
    if constexpr (is_exact_v<T>) quick = face_selected_by_vertices(y, level[i].vertices);
    if (quick ? !*quick : !face_selected(p, fc, uc, d, static_cast<int>(i))) continue;
    ShadowFace<T> sf;
    sf.index = static_cast<int>(i);
    sf.vertices = level[i].vertices;
    const auto ids = sf.vertices.indices();

    Mat<T> edges(p.ambient_dim(), static_cast<Eigen::Index>(ids.size()) - 1);
    Mat<T> pedges(d, static_cast<Eigen::Index>(ids.size()) - 1);
    for (std::size_t k = 1; k < ids.size(); ++k) {
      edges.col(static_cast<Eigen::Index>(k) - 1) = p.vertex(ids[k]) - p.vertex(ids[0]);
      pedges.col(static_cast<Eigen::Index>(k) - 1) = ec[static_cast<std::size_t>(ids[k])] - ec[static_cast<std::size_t>(ids[0])];
    }
    sf.rank = rank<T>(pedges);
    sf.face_chart = AffineChart<T>{p.vertex(ids[0]), Subspace<T>::span_of(edges)};

    sf.projected_moments = zero_moments<T>(d);
    sf.face_moments = zero_moments<T>(d);
    for (const auto& simplex : triangulate_face(p, d, static_cast<int>(i))) {
      std::vector<Vec<T>> pc, fcs;
      for (int v : simplex) {
        pc.push_back(ec[static_cast<std::size_t>(v)]);
        fcs.push_back(sf.face_chart.coords(p.vertex(v)));
      }
      sf.projected_moments += simplex_moments<T>(pc);
      sf.face_moments += simplex_moments<T>(fcs);
    }
    sf.projected_volume = Measure<T>{sf.projected_moments.mass, e.gram_determinant()};
    sf.face_volume = Measure<T>{sf.face_moments.mass, sf.face_chart.directions.gram_determinant()};
    dec.faces.push_back(std::move(sf));
  }
  return dec;
}

template <class T>
ShadowDecomposition<T> shadow_faces(const Polytope<T>& p, const Subspace<T>& e, std::uint64_t seed) {
  return shadow_faces(p, e, generic_direction(p, e, seed));
}

template <class T>
TilingReport verify_tiling(const ShadowDecomposition<T>& dec, const TilingOptions& opts) {
  TilingReport rep;
  const auto& p = dec.polytope;
  const auto& e = dec.subspace;
  const std::vector<Vec<T>> ec = coords_of(p, e);
  auto face_pts = [&](const ShadowFace<T>& f) {
    std::vector<Vec<T>> pts;
    for (int v : f.vertices.indices()) pts.push_back(ec[static_cast<std::size_t>(v)]);
    return pts;
  };
  const std::size_t nf = dec.faces.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (nf <= opts.all_pairs_limit) {
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = a + 1; b < nf; ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, nf - 1);
    while (pairs.size() < opts.sampled_pairs) {
      std::size_t a = pick(rng), b = pick(rng);
      if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  for (const auto& [a, b] : pairs) {
    ++rep.pairs_checked;
    if (relints_meet<T>(face_pts(dec.faces[a]), face_pts(dec.faces[b]))) ++rep.overlapping_pairs;
  }

  Measure<T> sum = dec.projected_volume();
  Polytope<T> oracle = projected_hull(p, e);
  Measure<T> ov = volume(oracle);
  rep.volume_sum = sum.value();
  rep.oracle_volume = ov.coeff == T(0) ? 0.0 : to_double(ov.coeff) * std::sqrt(to_double(sum.radicand));
  rep.residual = std::fabs(rep.volume_sum - rep.oracle_volume);
  if constexpr (is_exact_v<T>) {
    rep.exact_match = sum.coeff == ov.coeff;
    if (rep.exact_match) rep.residual = 0.0;
  }

  const int d = e.dim();
  for (const auto& f : dec.faces) {
    rep.ranks.push_back(f.rank);
    if (f.rank != d) rep.injective = false;
  }

  if (opts.enumerate_all) {
    rep.enumerated_all = true;
    const Mat<T> fc = facet_coordinates(p, dec.direction.frame);
    const Vec<T> uc = dec.direction.frame.transpose() * dec.direction.u;
    for (int j = 0; j <= p.dim(); ++j)
      for (std::size_t i = 0; i < p.lattice().faces[static_cast<std::size_t>(j)].size(); ++i) {
        const auto ids = p.lattice().faces[static_cast<std::size_t>(j)][i].facets.indices();
        if (ids.empty()) continue;
        Mat<T> a(fc.cols(), static_cast<Eigen::Index>(ids.size()));
        for (std::size_t c = 0; c < ids.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = fc.row(ids[c]).transpose();
        if (feasible<T>(a, uc)) {
          ++rep.family_size;
          rep.max_family_dim = std::max(rep.max_family_dim, j);
        }
      }
  }
  return rep;
}

template <class T>
Measure<T> integrate_over_projection(const ShadowDecomposition<T>& dec, const QuadraticForm<T>& f) {
  if (f.linear.size() != dec.polytope.ambient_dim())
    throw GeometryError(ErrorCode::DimensionMismatch, "quadratic form dimension differs from polytope");
  AffineChart<T> chart{Vec<T>::Zero(dec.polytope.ambient_dim()), dec.subspace};
  return integrate_with_moments<T>(dec.moments(), chart, f);
}

template <class T>
Measure<T> integrate_over_projection(const Polytope<T>& p, const Subspace<T>& e, const GenericDirection<T>& u,
                                     const QuadraticForm<T>& f) {
  return integrate_over_projection(shadow_faces(p, e, u), f);
}

template <class T>
MomentBound<T> projection_moment_bound(const ShadowDecomposition<T>& dec) {
  const int n = dec.polytope.ambient_dim();
  auto norm2 = QuadraticForm<T>::squared_norm(n);
  Moments<T> m = dec.moments();
  if (m.mass == T(0)) throw GeometryError(ErrorCode::DegenerateProjection, "projection has zero volume");
  MomentBound<T> out;
  out.lhs = integrate_over_projection(dec, norm2).coeff / m.mass;
  bool first = true;
  for (const auto& f : dec.faces) {
    T mean = integrate_with_moments<T>(f.face_moments, f.face_chart, norm2).coeff / f.face_moments.mass;
    if (first || mean > out.rhs) out.rhs = mean;
    first = false;
  }
  return out;
}

template <class T>
Polytope<T> projected_hull(const Polytope<T>& p, const Subspace<T>& e) {
  return Polytope<T>::hull(coords_of(p, e));
}

template <class T>
QuadraticForm<T> restrict_to_subspace(const QuadraticForm<T>& f, const Subspace<T>& e) {
  const Mat<T>& b = e.basis();
  QuadraticForm<T> out;
  out.constant = f.constant;
  out.linear = b.transpose() * f.linear;
  out.quadratic = b.transpose() * f.quadratic * b;
  return out;
}

#define ISOPROJ_INSTANTIATE(T)                                                                                   \
  template struct ShadowDecomposition<T>;                                                                        \
  template ShadowDecomposition<T> shadow_faces<T>(const Polytope<T>&, const Subspace<T>&, const GenericDirection<T>&); \
  template ShadowDecomposition<T> shadow_faces<T>(const Polytope<T>&, const Subspace<T>&, std::uint64_t);         \
  template TilingReport verify_tiling<T>(const ShadowDecomposition<T>&, const TilingOptions&);                   \
  template Measure<T> integrate_over_projection<T>(const ShadowDecomposition<T>&, const QuadraticForm<T>&);       \
  template Measure<T> integrate_over_projection<T>(const Polytope<T>&, const Subspace<T>&, const GenericDirection<T>&, \
                                                   const QuadraticForm<T>&);                                     \
  template MomentBound<T> projection_moment_bound<T>(const ShadowDecomposition<T>&);                             \
  template Polytope<T> projected_hull<T>(const Polytope<T>&, const Subspace<T>&);                                \
  template QuadraticForm<T> restrict_to_subspace<T>(const QuadraticForm<T>&, const Subspace<T>&);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

}  // namespace isoproj
