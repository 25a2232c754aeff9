#include "isoproj/cones.hpp"

#include "isoproj/double_description.hpp"
#include "isoproj/errors.hpp"
#include "isoproj/lp.hpp"
#include "isoproj/rng.hpp"

namespace isoproj {

namespace {

template <class T>
bool is_zero_vec(const Vec<T>& v) {
  if constexpr (is_exact_v<T>) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v(i) != 0) return false;
    return true;
  } else {
    return max_abs<T>(v) <= tolerance();
  }
}

template <class T>
bool feasible(const Mat<T>& a, const Vec<T>& b) {
  if constexpr (is_exact_v<T>) return nonnegative_solution<T>(a, b).feasible;
  else return nonnegative_solution_rechecked(a, b).feasible;
}

template <class T>
Cone<T> cone_from_facets(const Polytope<T>& p, const IndexSet& facets) {
  Cone<T> c;
  c.ambient_dim = p.ambient_dim();
  for (int f : facets.indices()) c.generators.push_back(p.facets()[static_cast<std::size_t>(f)].normal);
  return c;
}

}  // namespace

template <class T>
Cone<T> normal_cone(const Polytope<T>& p, const IndexSet& face) {
  auto loc = p.lattice().find(face);
  if (loc.first < 0) throw GeometryError(ErrorCode::FaceNotInPolytope, "vertex set is not a face of the polytope");
  return normal_cone(p, loc.first, loc.second);
}

template <class T>
Cone<T> normal_cone(const Polytope<T>& p, int dim, int index) {
  if (dim < 0 || dim > p.dim() || index < 0 ||
      static_cast<std::size_t>(index) >= p.lattice().faces[static_cast<std::size_t>(dim)].size())
    throw GeometryError(ErrorCode::FaceNotInPolytope, "face index out of range");
  return cone_from_facets(p, p.lattice().faces[static_cast<std::size_t>(dim)][static_cast<std::size_t>(index)].facets);
}

template <class T>
Cone<T> normal_cone_at(const Polytope<T>& p, const Vec<T>& x) {
  return normal_cone(p, p.minimal_face(x));
}

template <class T>
Cone<T> relative_normal_cone(const Polytope<T>& p, const Vec<T>& x, const Subspace<T>& within) {
  Cone<T> c = normal_cone_at(p, x);
  Subspace<T> extra = p.chart().directions.complement_within(within);
  for (int i = 0; i < extra.dim(); ++i) {
    c.generators.push_back(extra.basis_vector(i));
    c.generators.push_back(-extra.basis_vector(i));
  }
  return c;
}

template <class T>
Cone<T> support_cone(const Polytope<T>& p, const Vec<T>& x) {
  if (!p.contains(x)) throw GeometryError(ErrorCode::PointNotInPolytope, "support cone at a point outside the polytope");
  Cone<T> c;
  c.ambient_dim = p.ambient_dim();
  for (const auto& v : p.vertices()) {
    Vec<T> d = v - x;
    if (!is_zero_vec<T>(d)) c.generators.push_back(d);
  }
  return c;
}

template <class T>
Cone<T> cone_polar(const Cone<T>& c, const Subspace<T>& within) {
  const int k = within.dim();
  Cone<T> out;
  out.ambient_dim = within.ambient_dim();
  if (k == 0) return out;
  Mat<T> a(static_cast<Eigen::Index>(c.generators.size()), k);
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    for (int j = 0; j < k; ++j) a(static_cast<Eigen::Index>(i), j) = dot<T>(c.generators[i], within.basis_vector(j));
  ConeGenerators<T> g = cone_generators<T>(a);
  for (const auto& r : g.rays) {
    Vec<T> v = within.lift(r);
    normalize_direction(v);
    out.generators.push_back(v);
  }
  for (const auto& l : g.lineality) {
    Vec<T> v = within.lift(l);
    normalize_direction(v);
    out.generators.push_back(v);
    out.generators.push_back(-v);
  }
  return out;
}

template <class T>
Cone<T> cone_polar(const Cone<T>& c) {
  return cone_polar(c, Subspace<T>::whole(c.ambient_dim));
}

template <class T>
bool cone_contains(const Cone<T>& c, const Vec<T>& w) {
  if (w.size() != c.ambient_dim) throw GeometryError(ErrorCode::DimensionMismatch, "vector dimension differs from cone");
  if (is_zero_vec<T>(w)) return true;
  if (c.generators.empty()) return false;
  Mat<T> a(c.ambient_dim, static_cast<Eigen::Index>(c.generators.size()));
  for (std::size_t i = 0; i < c.generators.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = c.generators[i];
  return feasible<T>(a, w);
}

template <class T>
bool cones_equal(const Cone<T>& a, const Cone<T>& b) {
  for (const auto& g : a.generators)
    if (!cone_contains(b, g)) return false;
  for (const auto& g : b.generators)
    if (!cone_contains(a, g)) return false;
  return true;
}

template <class T>
Cone<T> cone_intersection(const Cone<T>& a, const Cone<T>& b, const Subspace<T>& within) {
  Cone<T> sum = cone_polar(a, within);
  Cone<T> pb = cone_polar(b, within);
  sum.generators.insert(sum.generators.end(), pb.generators.begin(), pb.generators.end());
  return cone_polar(sum, within);
}

template <class T>
Cone<T> project_cone(const Cone<T>& c, const Subspace<T>& w) {
  Cone<T> out;
  out.ambient_dim = c.ambient_dim;
  for (const auto& g : c.generators) {
    Vec<T> p = w.project(g);
    if (!is_zero_vec<T>(p)) out.generators.push_back(p);
  }
  return out;
}

template <class T>
bool projected_cone_contains(const Cone<T>& c, const Subspace<T>& w, const Vec<T>& u) {
  Vec<T> uc = w.coords(u);
  if (is_zero_vec<T>(uc)) return true;
  if (c.generators.empty() || w.dim() == 0) return false;
  Mat<T> a(w.dim(), static_cast<Eigen::Index>(c.generators.size()));
  for (std::size_t i = 0; i < c.generators.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = w.coords(c.generators[i]);
  return feasible<T>(a, uc);
}

template <class T>
int projected_cone_dim(const Cone<T>& c, const Subspace<T>& w) {
  if (c.generators.empty() || w.dim() == 0) return 0;
  Mat<T> a(w.dim(), static_cast<Eigen::Index>(c.generators.size()));
  for (std::size_t i = 0; i < c.generators.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = w.coords(c.generators[i]);
  return rank<T>(a);
}

template <class T>
int cone_dim(const Cone<T>& c) {
  if (c.generators.empty()) return 0;
  Mat<T> a(c.ambient_dim, static_cast<Eigen::Index>(c.generators.size()));
  for (std::size_t i = 0; i < c.generators.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = c.generators[i];
  return rank<T>(a);
}

template <class T>
Mat<T> complement_frame(const Subspace<T>& e, const Subspace<T>& lin) {
  if constexpr (!is_exact_v<T>) {
    return e.complement_within(lin).basis();
  } else {
    Subspace<T> normals = lin.orthogonal_complement();
    Mat<T> rows(e.dim() + normals.dim(), e.ambient_dim());
    for (int i = 0; i < e.dim(); ++i) rows.row(i) = e.basis_vector(i).transpose();
    for (int i = 0; i < normals.dim(); ++i) rows.row(e.dim() + i) = normals.basis_vector(i).transpose();
    Mat<T> z = nullspace<T>(rows);
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      Vec<T> col = z.col(j);
      normalize_direction(col);
      z.col(j) = col;
    }
    return z;
  }
}

template <class T>
Mat<T> facet_coordinates(const Polytope<T>& p, const Mat<T>& frame) {
  Mat<T> out(static_cast<Eigen::Index>(p.facets().size()), frame.cols());
  for (std::size_t f = 0; f < p.facets().size(); ++f)
    out.row(static_cast<Eigen::Index>(f)) = (frame.transpose() * p.facets()[f].normal).transpose();
  return out;
}

template <class T>
bool certify_direction(const Polytope<T>& p, const Subspace<T>& e, const Mat<T>& frame, const Vec<T>& u,
                       std::vector<CertificateEntry>* out) {
  const int dw = static_cast<int>(frame.cols());
  const int d = e.dim();
  const Vec<T> uc = frame.transpose() * u;
  if (is_zero_vec<T>(uc)) return false;
  // Vertex images under x -> (E^T x, <u, x>).
  Mat<T> y(d + 1, static_cast<Eigen::Index>(p.num_vertices()));
  for (std::size_t v = 0; v < p.num_vertices(); ++v) {
    y.col(static_cast<Eigen::Index>(v)).head(d) = e.basis().transpose() * p.vertex(static_cast<int>(v));
    y(d, static_cast<Eigen::Index>(v)) = dot<T>(u, p.vertex(static_cast<int>(v)));
  }
  Mat<T> fc;
  const auto& lat = p.lattice();
  for (int j = 1; j <= p.dim(); ++j) {
    const auto& level = lat.faces[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto vids = level[i].vertices.indices();
      CertificateEntry ce;
      ce.face_dim = j;
      ce.face_index = static_cast<int>(i);
      if (level[i].facets.empty()) {
        ce.projected_dim = 0;
        ce.method = "zero";
        if (out) out->push_back(ce);
        continue;
      }
      // span P_W N(F) = (lin F cap W)-perp inside W, and lin F cap W is cut
      // from lin F by E^T, so dim = dw - (j - rank E^T D) for edges D.
      const Eigen::Index m = static_cast<Eigen::Index>(vids.size()) - 1;
      Mat<T> a(d + 1, m);
      for (Eigen::Index k = 0; k < m; ++k) a.col(k) = y.col(vids[static_cast<std::size_t>(k) + 1]) - y.col(vids[0]);
      const int re = rank<T>(Mat<T>(a.topRows(d)));
      const int pdim = dw - (j - re);
      if (pdim >= dw) continue;
      ce.projected_dim = pdim;
      if (rank<T>(a) > re) {
        ce.method = "span";
      } else {
        if (fc.size() == 0) fc = facet_coordinates(p, frame);
        const auto ids = level[i].facets.indices();
        Mat<T> g(dw, static_cast<Eigen::Index>(ids.size()));
        for (std::size_t c = 0; c < ids.size(); ++c) g.col(static_cast<Eigen::Index>(c)) = fc.row(ids[c]).transpose();
        if (feasible<T>(g, uc)) return false;
        ce.method = "lp";
      }
      if (out) out->push_back(ce);
    }
  }
  return true;
}

template <class T>
GenericDirection<T> generic_direction(const Polytope<T>& p, const Subspace<T>& e, std::uint64_t seed, int max_retries) {
  const Subspace<T>& lin = p.chart().directions;
  if (e.ambient_dim() != p.ambient_dim()) throw GeometryError(ErrorCode::DimensionMismatch, "subspace dimension differs from polytope");
  if (!lin.contains(e)) throw GeometryError(ErrorCode::PreconditionViolated, "subspace is not parallel to the affine hull of the polytope");
  GenericDirection<T> out;
  out.seed = seed;
  out.w = e.complement_within(lin);
  out.frame = complement_frame(e, lin);
  const int dw = out.w.dim();
  if (dw == 0 || e.dim() == 0) throw GeometryError(ErrorCode::PreconditionViolated, "subspace must have dimension between 1 and dim P - 1");
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> gauss;
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    Vec<T> c(dw);
    for (int i = 0; i < dw; ++i) {
      double z = gauss(rng);
      if constexpr (is_exact_v<T>) c(i) = dyadic_round(z, 12);
      else c(i) = z;
    }
    Vec<T> u = out.frame * c;
    if (is_zero_vec<T>(u)) continue;
    if constexpr (is_exact_v<T>) normalize_direction(u);
    else u /= u.norm();
    std::vector<CertificateEntry> cert;
    if (certify_direction(p, e, out.frame, u, &cert)) {
      out.u = u;
      out.certificate = std::move(cert);
      out.attempts = attempt;
      return out;
    }
  }
  throw GeometryError(ErrorCode::RetriesExhausted, "no generic direction found within the retry budget");
}

#define ISOPROJ_INSTANTIATE(T)                                                                                         \
  template Cone<T> normal_cone<T>(const Polytope<T>&, const IndexSet&);                                                \
  template Cone<T> normal_cone<T>(const Polytope<T>&, int, int);                                                       \
  template Cone<T> normal_cone_at<T>(const Polytope<T>&, const Vec<T>&);                                               \
  template Cone<T> relative_normal_cone<T>(const Polytope<T>&, const Vec<T>&, const Subspace<T>&);                    \
  template Cone<T> support_cone<T>(const Polytope<T>&, const Vec<T>&);                                                 \
  template Cone<T> cone_polar<T>(const Cone<T>&, const Subspace<T>&);                                                  \
  template Cone<T> cone_polar<T>(const Cone<T>&);                                                                      \
  template bool cone_contains<T>(const Cone<T>&, const Vec<T>&);                                                       \
  template bool cones_equal<T>(const Cone<T>&, const Cone<T>&);                                                        \
  template Cone<T> cone_intersection<T>(const Cone<T>&, const Cone<T>&, const Subspace<T>&);                           \
  template Cone<T> project_cone<T>(const Cone<T>&, const Subspace<T>&);                                                \
  template bool projected_cone_contains<T>(const Cone<T>&, const Subspace<T>&, const Vec<T>&);                         \
  template int projected_cone_dim<T>(const Cone<T>&, const Subspace<T>&);                                              \
  template int cone_dim<T>(const Cone<T>&);                                                                            \
  template Mat<T> complement_frame<T>(const Subspace<T>&, const Subspace<T>&);                                         \
  template Mat<T> facet_coordinates<T>(const Polytope<T>&, const Mat<T>&);                                             \
  template bool certify_direction<T>(const Polytope<T>&, const Subspace<T>&, const Mat<T>&, const Vec<T>&,            \
                                      std::vector<CertificateEntry>*);                                                 \
  template GenericDirection<T> generic_direction<T>(const Polytope<T>&, const Subspace<T>&, std::uint64_t, int);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

}  // namespace isoproj
