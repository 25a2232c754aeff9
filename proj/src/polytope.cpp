#include "isoproj/polytope.hpp"

#include "isoproj/double_description.hpp"
#include "isoproj/errors.hpp"
#include "isoproj/lp.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace isoproj {

std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> f;
  for (int j = 0; j < dim(); ++j) f.push_back(faces[static_cast<std::size_t>(j)].size());
  return f;
}

std::pair<int, int> FaceLattice::find(const IndexSet& vertices) const {
  for (std::size_t j = 0; j < faces.size(); ++j)
    for (std::size_t i = 0; i < faces[j].size(); ++i)
      if (faces[j][i].vertices == vertices) return {static_cast<int>(j), static_cast<int>(i)};
  return {-1, -1};
}

bool FaceLattice::satisfies_euler() const {
  long s = 0;
  const int k = dim();
  for (int j = 0; j < k; ++j) s += (j % 2 == 0 ? 1L : -1L) * static_cast<long>(faces[static_cast<std::size_t>(j)].size());
  return s == 1 - (k % 2 == 0 ? 1 : -1);
}

FaceLattice lattice_from_incidence(std::size_t num_vertices, int dim, const std::vector<IndexSet>& facets) {
  FaceLattice lat;
  lat.faces.resize(static_cast<std::size_t>(dim + 1));
  std::vector<IndexSet> vertex_facets(num_vertices, IndexSet(facets.size()));
  for (std::size_t f = 0; f < facets.size(); ++f)
    for (int v : facets[f].indices()) vertex_facets[static_cast<std::size_t>(v)].set(f);

  Face top;
  top.vertices = IndexSet::full(num_vertices);
  top.dim = dim;
  lat.faces[static_cast<std::size_t>(dim)].push_back(top);
  for (int j = dim; j >= 0; --j) {
    auto& level = lat.faces[static_cast<std::size_t>(j)];
    std::unordered_map<IndexSet, int, IndexSetHash> seen;
    for (std::size_t fi = 0; fi < level.size(); ++fi) {
      auto& face = level[fi];
      IndexSet tight = IndexSet::full(facets.size());
      IndexSet touching(facets.size());
      for (int v : face.vertices.indices()) {
        tight &= vertex_facets[static_cast<std::size_t>(v)];
        touching |= vertex_facets[static_cast<std::size_t>(v)];
      }
      face.facets = j == dim ? IndexSet(facets.size()) : tight;
      if (j == 0) continue;
      const std::size_t fc = face.vertices.count();
      std::vector<IndexSet> cand;
      for (int g : touching.indices()) {
        if (j < dim && tight.test(static_cast<std::size_t>(g))) continue;
        const auto& f = facets[static_cast<std::size_t>(g)];
        std::size_t c = face.vertices.intersection_count(f);
        // A (j-1)-face has at least j vertices.
        if (c < static_cast<std::size_t>(j) || c == fc) continue;
        IndexSet z = face.vertices & f;
        if (std::find(cand.begin(), cand.end(), z) == cand.end()) cand.push_back(std::move(z));
      }
      std::vector<int> children;
      auto& below = lat.faces[static_cast<std::size_t>(j - 1)];
      for (std::size_t a = 0; a < cand.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < cand.size() && maximal; ++b)
          if (a != b && cand[a].is_subset_of(cand[b])) maximal = false;
        if (!maximal) continue;
        auto it = seen.find(cand[a]);
        int idx;
        if (it == seen.end()) {
          idx = static_cast<int>(below.size());
          Face sub;
          sub.vertices = cand[a];
          sub.dim = j - 1;
          below.push_back(std::move(sub));
          seen.emplace(cand[a], idx);
        } else {
          idx = it->second;
        }
        children.push_back(idx);
      }
      std::sort(children.begin(), children.end());
      level[fi].children = std::move(children);
    }
  }
  return lat;
}

template <class T>
QuadraticForm<T> QuadraticForm<T>::one(int n) {
  QuadraticForm q;
  q.constant = T(1);
  q.linear = Vec<T>::Zero(n);
  q.quadratic = Mat<T>::Zero(n, n);
  return q;
}

template <class T>
QuadraticForm<T> QuadraticForm<T>::squared_norm(int n) {
  QuadraticForm q;
  q.constant = T(0);
  q.linear = Vec<T>::Zero(n);
  q.quadratic = Mat<T>::Identity(n, n);
  return q;
}

template <class T>
T QuadraticForm<T>::operator()(const Vec<T>& x) const {
  T s = constant;
  s += dot<T>(linear, x);
  Vec<T> ax = quadratic * x;
  s += dot<T>(x, ax);
  return s;
}

template <class T>
Moments<T>& Moments<T>::operator+=(const Moments& o) {
  if (first.size() == 0) {
    *this = o;
    return *this;
  }
  mass += o.mass;
  first += o.first;
  second += o.second;
  return *this;
}

namespace {

template <class T>
bool points_equal(const Vec<T>& a, const Vec<T>& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    double scale = std::max({1.0, max_abs<T>(a), max_abs<T>(b)});
    return max_abs<T>(Vec<T>(a - b)) <= tolerance() * scale;
  }
}

// Rescales (normal, offset) so the normal is primitive integer (exact) or unit (float).
template <class T>
void normalize_facet(Vec<T>& normal, T& offset) {
  Vec<T> n = normal;
  normalize_direction(n);
  Eigen::Index j = 0;
  while (j < n.size() && normal(j) == 0) ++j;
  if constexpr (is_exact_v<T>) {
    T f = n(j) / normal(j);
    offset *= f;
  } else {
    double len = std::sqrt(to_double(squared_norm<T>(normal)));
    offset /= len;
  }
  normal = n;
}

}  // namespace

template <class T>
Polytope<T> Polytope<T>::hull(const std::vector<Vec<T>>& points) {
  if (points.empty()) throw GeometryError(ErrorCode::EmptyInput, "hull of an empty point set");
  const Eigen::Index n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw GeometryError(ErrorCode::DimensionMismatch, "points of differing dimension");

  std::vector<Vec<T>> pts;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : pts)
      if (points_equal<T>(p, q)) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }

  auto data = std::make_shared<Data>();
  data->ambient_dim = static_cast<int>(n);

  Mat<T> diffs(n, static_cast<Eigen::Index>(pts.size()) - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.col(static_cast<Eigen::Index>(i) - 1) = pts[i] - pts[0];
  Subspace<T> dir = Subspace<T>::span_of(diffs);
  const int k = dir.dim();
  data->dim = k;
  if (k == n) {
    data->chart = AffineChart<T>{Vec<T>::Zero(n), Subspace<T>::whole(static_cast<int>(n))};
  } else {
    data->chart = AffineChart<T>{pts[0], dir};
  }

  if (k == 0) {
    data->vertices = {pts[0]};
    data->lattice.faces.resize(1);
    Face f;
    f.vertices = IndexSet::full(1);
    f.dim = 0;
    f.facets = IndexSet(0);
    data->lattice.faces[0].push_back(f);
    Polytope out;
    out.data_ = std::move(data);
    return out;
  }

  const std::size_t m = pts.size();
  std::vector<Vec<T>> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = data->chart.coords(pts[i]);
  Mat<T> rows(static_cast<Eigen::Index>(m), k + 1);
  for (std::size_t i = 0; i < m; ++i) {
    rows.row(static_cast<Eigen::Index>(i)).head(k) = c[i].transpose();
    rows(static_cast<Eigen::Index>(i), k) = T(-1);
  }
  ConeGenerators<T> g = cone_generators<T>(rows);
  if (!g.lineality.empty()) throw std::logic_error("hull: valid-inequality cone not pointed");

  std::vector<Vec<T>> fa;
  std::vector<T> fb;
  std::vector<IndexSet> finc;
  for (std::size_t r = 0; r < g.rays.size(); ++r) {
    Vec<T> a = g.rays[r].head(k);
    bool trivial;
    if constexpr (is_exact_v<T>) trivial = std::all_of(a.data(), a.data() + a.size(), [](const T& x) { return x == 0; });
    else trivial = max_abs<T>(a) <= tolerance() * std::max(1.0, std::fabs(g.rays[r](k)));
    if (trivial || g.incidence[r].count() < static_cast<std::size_t>(k)) continue;
    fa.push_back(a);
    fb.push_back(g.rays[r](k));
    finc.push_back(g.incidence[r]);
  }

  // A point is extreme iff the facets through it meet only in that point.
  std::vector<int> remap(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    IndexSet meet = IndexSet::full(m);
    for (const auto& s : finc)
      if (s.test(i)) meet &= s;
    if (meet.count() == 1) {
      remap[i] = static_cast<int>(data->vertices.size());
      data->vertices.push_back(pts[i]);
    }
  }
  const std::size_t nv = data->vertices.size();

  const auto& basis = data->chart.directions.basis();
  const auto& sq = data->chart.directions.squared_norms();
  std::vector<IndexSet> vinc;
  for (std::size_t f = 0; f < fa.size(); ++f) {
    Vec<T> normal = Vec<T>::Zero(n);
    for (int i = 0; i < k; ++i) normal += (fa[f](i) / sq(i)) * basis.col(i);
    T offset = fb[f] + dot<T>(normal, data->chart.origin);
    normalize_facet<T>(normal, offset);
    IndexSet s(nv);
    for (int idx : finc[f].indices())
      if (remap[static_cast<std::size_t>(idx)] >= 0) s.set(static_cast<std::size_t>(remap[static_cast<std::size_t>(idx)]));
    data->facets.push_back(Facet<T>{normal, offset, s});
    vinc.push_back(std::move(s));
  }
  data->lattice = lattice_from_incidence(nv, k, vinc);
  Polytope out;
  out.data_ = std::move(data);
  return out;
}

template <class T>
bool Polytope<T>::in_affine_hull(const Vec<T>& x) const {
  if (full_dimensional()) return true;
  return chart().directions.contains(Vec<T>(x - chart().origin));
}

template <class T>
bool Polytope<T>::contains(const Vec<T>& x) const {
  if (x.size() != ambient_dim()) throw GeometryError(ErrorCode::DimensionMismatch, "point dimension differs from polytope");
  if (!in_affine_hull(x)) return false;
  if (dim() == 0) return true;
  for (const auto& f : facets()) {
    T s = dot<T>(f.normal, x) - f.offset;
    double scale = is_exact_v<T> ? 1.0 : std::max(max_abs<T>(x), std::fabs(to_double(f.offset)));
    if (sign<T>(s, scale) > 0) return false;
  }
  return true;
}

template <class T>
IndexSet Polytope<T>::tight_facets(const Vec<T>& x) const {
  IndexSet out(facets().size());
  for (std::size_t i = 0; i < facets().size(); ++i) {
    const auto& f = facets()[i];
    T s = dot<T>(f.normal, x) - f.offset;
    double scale = is_exact_v<T> ? 1.0 : std::max(max_abs<T>(x), std::fabs(to_double(f.offset)));
    if (sign<T>(s, scale) == 0) out.set(i);
  }
  return out;
}

template <class T>
IndexSet Polytope<T>::minimal_face(const Vec<T>& x) const {
  if (!contains(x)) throw GeometryError(ErrorCode::PointNotInPolytope, "point outside polytope");
  IndexSet face = IndexSet::full(num_vertices());
  IndexSet tight = tight_facets(x);
  for (int i : tight.indices()) face &= facets()[static_cast<std::size_t>(i)].vertices;
  return face;
}

template <class T>
std::vector<Vec<T>> Polytope<T>::face_points(const IndexSet& face) const {
  std::vector<Vec<T>> out;
  for (int i : face.indices()) out.push_back(vertex(i));
  return out;
}

template <class T>
template <class U>
Polytope<U> Polytope<T>::convert() const {
  std::vector<Vec<U>> pts;
  for (const auto& v : vertices()) {
    Vec<U> w(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if constexpr (std::is_same_v<U, double>) w(i) = to_double(v(i));
      else w(i) = U(v(i));
    }
    pts.push_back(std::move(w));
  }
  return Polytope<U>::hull(pts);
}

namespace {

using SimplexList = std::vector<std::vector<int>>;

SimplexList triangulate_rec(const FaceLattice& lat, int dim, int index, std::map<std::pair<int, int>, SimplexList>& memo) {
  auto key = std::make_pair(dim, index);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  const Face& face = lat.faces[static_cast<std::size_t>(dim)][static_cast<std::size_t>(index)];
  SimplexList out;
  if (dim == 0) {
    out.push_back({face.vertices.first()});
  } else {
    const int apex = face.vertices.first();
    for (int child : face.children) {
      const Face& cf = lat.faces[static_cast<std::size_t>(dim - 1)][static_cast<std::size_t>(child)];
      if (cf.vertices.test(static_cast<std::size_t>(apex))) continue;
      for (auto s : triangulate_rec(lat, dim - 1, child, memo)) {
        s.insert(s.begin(), apex);
        out.push_back(std::move(s));
      }
    }
  }
  memo.emplace(key, out);
  return out;
}

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T factorial(int k) {
  T f(1);
  for (int i = 2; i <= k; ++i) f *= T(i);
  return f;
}

}  // namespace

template <class T>
std::vector<std::vector<int>> triangulate_face(const Polytope<T>& p, int dim, int index) {
  std::map<std::pair<int, int>, SimplexList> memo;
  return triangulate_rec(p.lattice(), dim, index, memo);
}

template <class T>
std::vector<std::vector<int>> triangulate(const Polytope<T>& p) {
  return triangulate_face(p, p.dim(), 0);
}

template <class T>
Moments<T> simplex_moments(const std::vector<Vec<T>>& coords) {
  const int k = static_cast<int>(coords.size()) - 1;
  const Eigen::Index dim = coords.front().size();
  Moments<T> m;
  Mat<T> edges(dim, k);
  for (int i = 0; i < k; ++i) edges.col(i) = coords[static_cast<std::size_t>(i) + 1] - coords[0];
  T vol;
  if (k == dim) {
    vol = abs_value(determinant<T>(edges)) / factorial<T>(k);
  } else {
    throw std::invalid_argument("simplex_moments expects a full-dimensional simplex in its chart");
  }
  Vec<T> s = Vec<T>::Zero(dim);
  Mat<T> q = Mat<T>::Zero(dim, dim);
  for (const auto& v : coords) {
    s += v;
    q += v * v.transpose();
  }
  m.mass = vol;
  m.first = s * (vol / T(k + 1));
  m.second = (q + s * s.transpose()) * (vol / T((k + 1) * (k + 2)));
  return m;
}

template <class T>
SimplexMoment<T> simplex_second_moment(const std::vector<Vec<T>>& vertices) {
  if (vertices.empty()) throw GeometryError(ErrorCode::EmptyInput, "simplex with no vertices");
  const int k = static_cast<int>(vertices.size()) - 1;
  const Eigen::Index n = vertices.front().size();
  Mat<T> edges(n, k);
  for (int i = 0; i < k; ++i) edges.col(i) = vertices[static_cast<std::size_t>(i) + 1] - vertices[0];
  if (rank<T>(edges) < k) throw GeometryError(ErrorCode::DegenerateSimplex, "simplex vertices are affinely dependent");
  Vec<T> s = Vec<T>::Zero(n);
  Mat<T> q = Mat<T>::Zero(n, n);
  for (const auto& v : vertices) {
    s += v;
    q += v * v.transpose();
  }
  SimplexMoment<T> out;
  out.barycenter = s / T(k + 1);
  out.second = (q + s * s.transpose()) / T((k + 1) * (k + 2));
  return out;
}

template <class T>
Moments<T> polytope_moments(const Polytope<T>& p) {
  const int k = p.dim();
  Moments<T> total;
  total.mass = T(0);
  total.first = Vec<T>::Zero(k);
  total.second = Mat<T>::Zero(k, k);
  if (k == 0) {
    total.mass = T(1);
    return total;
  }
  std::vector<Vec<T>> c(p.num_vertices());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.chart().coords(p.vertices()[i]);
  for (const auto& s : triangulate(p)) {
    std::vector<Vec<T>> pts;
    for (int v : s) pts.push_back(c[static_cast<std::size_t>(v)]);
    total += simplex_moments<T>(pts);
  }
  return total;
}

template <class T>
Measure<T> volume(const Polytope<T>& p) {
  Measure<T> out;
  const int k = p.dim();
  out.radicand = p.chart().directions.gram_determinant();
  if (k == 0) {
    out.coeff = T(1);
    out.radicand = T(1);
    return out;
  }
  std::vector<Vec<T>> c(p.num_vertices());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.chart().coords(p.vertices()[i]);
  T total(0);
  for (const auto& s : triangulate(p)) {
    Mat<T> edges(k, k);
    for (int i = 0; i < k; ++i)
      edges.col(i) = c[static_cast<std::size_t>(s[static_cast<std::size_t>(i) + 1])] - c[static_cast<std::size_t>(s[0])];
    total += abs_value(determinant<T>(edges));
  }
  out.coeff = total / factorial<T>(k);
  return out;
}

template <class T>
Measure<T> integrate_with_moments(const Moments<T>& m, const AffineChart<T>& chart, const QuadraticForm<T>& f) {
  const Mat<T>& b = chart.directions.basis();
  const Vec<T>& o = chart.origin;
  Mat<T> a = (f.quadratic + f.quadratic.transpose()) / T(2);
  Mat<T> a_chart = b.transpose() * a * b;
  Vec<T> lin = b.transpose() * (f.linear + T(2) * (a * o));
  T c0 = f(o);
  T total = c0 * m.mass;
  if (m.first.size() > 0) {
    total += dot<T>(lin, m.first);
    for (Eigen::Index i = 0; i < a_chart.rows(); ++i)
      for (Eigen::Index j = 0; j < a_chart.cols(); ++j) total += a_chart(i, j) * m.second(j, i);
  }
  Measure<T> out;
  out.coeff = total;
  out.radicand = chart.directions.gram_determinant();
  return out;
}

template <class T>
Measure<T> integrate_quadratic(const Polytope<T>& p, const QuadraticForm<T>& f) {
  if (f.linear.size() != p.ambient_dim()) throw GeometryError(ErrorCode::DimensionMismatch, "quadratic form dimension differs from polytope");
  if (p.dim() == 0) {
    Measure<T> out;
    out.coeff = f(p.vertex(0));
    return out;
  }
  return integrate_with_moments<T>(polytope_moments(p), p.chart(), f);
}

template <class T>
Polytope<T> affine_section(const Polytope<T>& p, const AffineChart<T>& g) {
  const Subspace<T>& b = g.directions;
  const int k = b.dim();
  if (k == 0) {
    if (!p.contains(g.origin)) throw GeometryError(ErrorCode::EmptySection, "affine subspace misses the polytope");
    return Polytope<T>::hull({g.origin});
  }
  Subspace<T> normal_space = p.chart().directions.orthogonal_complement();
  const Eigen::Index rows = static_cast<Eigen::Index>(p.facets().size()) + 2 * normal_space.dim();
  Mat<T> a(rows, k);
  Vec<T> rhs(rows);
  Eigen::Index r = 0;
  auto add = [&](const Vec<T>& nrm, const T& beta) {
    for (int j = 0; j < k; ++j) a(r, j) = dot<T>(nrm, b.basis_vector(j));
    rhs(r) = beta - dot<T>(nrm, g.origin);
    ++r;
  };
  for (const auto& f : p.facets()) add(f.normal, f.offset);
  for (int i = 0; i < normal_space.dim(); ++i) {
    Vec<T> z = normal_space.basis_vector(i);
    T off = dot<T>(z, p.chart().origin);
    add(z, off);
    add(Vec<T>(-z), T(-off));
  }
  std::vector<Vec<T>> pts;
  if (p.dim() == 0) {
    if (b.contains(Vec<T>(p.vertex(0) - g.origin))) pts.push_back(p.vertex(0));
  } else {
    for (const auto& c : polytope_vertices<T>(a, rhs)) pts.push_back(g.lift(c));
  }
  if (pts.empty()) throw GeometryError(ErrorCode::EmptySection, "affine subspace misses the polytope");
  return Polytope<T>::hull(pts);
}

template <class T>
bool in_relative_interior(const std::vector<Vec<T>>& points, const Vec<T>& x) {
  // Weights (1 + s_i) / t with s, t >= 0 give strictly positive convex weights.
  const Eigen::Index n = x.size();
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Mat<T> a(n + 1, m + 1);
  Vec<T> b(n + 1);
  Vec<T> sum = Vec<T>::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    a.col(i).head(n) = points[static_cast<std::size_t>(i)];
    a(n, i) = T(1);
    sum += points[static_cast<std::size_t>(i)];
  }
  a.col(m).head(n) = -x;
  a(n, m) = T(-1);
  b.head(n) = -sum;
  b(n) = T(-m);
  if constexpr (is_exact_v<T>) return nonnegative_solution<T>(a, b).feasible;
  else return nonnegative_solution_rechecked(a, b).feasible;
}

template <class T>
bool is_face(const Polytope<T>& p, const IndexSet& face) {
  // Not a face iff some combination with unit weight outside the face equals
  // a nonnegative combination of face vertices of the same total weight.
  const Eigen::Index n = p.ambient_dim();
  const auto inside = face.indices();
  const Eigen::Index nv = static_cast<Eigen::Index>(p.num_vertices());
  const Eigen::Index ni = static_cast<Eigen::Index>(inside.size());
  if (static_cast<Eigen::Index>(face.count()) == nv) return true;
  if (face.empty()) return true;
  Mat<T> a = Mat<T>::Zero(n + 2, nv + ni);
  Vec<T> b = Vec<T>::Zero(n + 2);
  for (Eigen::Index i = 0; i < nv; ++i) {
    a.col(i).head(n) = p.vertex(static_cast<int>(i));
    a(n, i) = T(1);
    if (!face.test(static_cast<std::size_t>(i))) a(n + 1, i) = T(1);
  }
  for (Eigen::Index j = 0; j < ni; ++j) {
    a.col(nv + j).head(n) = -p.vertex(inside[static_cast<std::size_t>(j)]);
    a(n, nv + j) = T(-1);
  }
  b(n + 1) = T(1);
  bool bad;
  if constexpr (is_exact_v<T>) bad = nonnegative_solution<T>(a, b).feasible;
  else bad = nonnegative_solution_rechecked(a, b).feasible;
  return !bad;
}

template <class T>
std::vector<IndexSet> brute_force_facets(const std::vector<Vec<T>>& points) {
  const std::size_t m = points.size();
  const Eigen::Index n = points.front().size();
  Mat<T> diffs(n, static_cast<Eigen::Index>(m) - 1);
  for (std::size_t i = 1; i < m; ++i) diffs.col(static_cast<Eigen::Index>(i) - 1) = points[i] - points[0];
  Subspace<T> dir = Subspace<T>::span_of(diffs);
  const int k = dir.dim();
  std::vector<IndexSet> out;
  if (k == 0) return out;
  std::vector<Vec<T>> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = dir.coords(Vec<T>(points[i] - points[0]));

  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  auto advance = [&]() {
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(m) - k + i) --i;
    if (i < 0) return false;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
    return true;
  };
  if (static_cast<std::size_t>(k) > m) return out;
  do {
    Mat<T> e(k - 1, k);
    for (int i = 1; i < k; ++i)
      e.row(i - 1) = (c[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] - c[static_cast<std::size_t>(pick[0])]).transpose();
    Mat<T> ns = nullspace<T>(k > 1 ? e : Mat<T>(0, k));
    if (ns.cols() != 1) continue;
    Vec<T> a = ns.col(0);
    T beta = dot<T>(a, c[static_cast<std::size_t>(pick[0])]);
    int above = 0, below = 0;
    IndexSet on(m);
    for (std::size_t i = 0; i < m; ++i) {
      int s = sign<T>(T(dot<T>(a, c[i]) - beta), is_exact_v<T> ? 1.0 : std::max(1.0, max_abs<T>(c[i])));
      if (s > 0) ++above;
      else if (s < 0) ++below;
      else on.set(i);
    }
    if (above > 0 && below > 0) continue;
    if (std::find(out.begin(), out.end(), on) == out.end()) out.push_back(on);
  } while (advance());
  std::sort(out.begin(), out.end());
  return out;
}

template <class T>
Polytope<T> cross_polytope(int n) {
  std::vector<Vec<T>> pts;
  for (int i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      Vec<T> v = Vec<T>::Zero(n);
      v(i) = T(s);
      pts.push_back(v);
    }
  return Polytope<T>::hull(pts);
}

// conv{e_1..e_{n+1}} in R^{n+1}.
template <class T>
Polytope<T> standard_simplex(int n) {
  std::vector<Vec<T>> pts;
  for (int i = 0; i <= n; ++i) {
    Vec<T> v = Vec<T>::Zero(n + 1);
    v(i) = T(1);
    pts.push_back(v);
  }
  return Polytope<T>::hull(pts);
}

#define ISOPROJ_INSTANTIATE(T)                                                                                      \
  template struct QuadraticForm<T>;                                                                                 \
  template struct Moments<T>;                                                                                       \
  template class Polytope<T>;                                                                                       \
  template Polytope<T> cross_polytope<T>(int);                                                                      \
  template Polytope<T> standard_simplex<T>(int);                                                                    \
  template std::vector<std::vector<int>> triangulate<T>(const Polytope<T>&);                                        \
  template std::vector<std::vector<int>> triangulate_face<T>(const Polytope<T>&, int, int);                         \
  template Measure<T> volume<T>(const Polytope<T>&);                                                                \
  template SimplexMoment<T> simplex_second_moment<T>(const std::vector<Vec<T>>&);                                   \
  template Moments<T> simplex_moments<T>(const std::vector<Vec<T>>&);                                               \
  template Moments<T> polytope_moments<T>(const Polytope<T>&);                                                      \
  template Measure<T> integrate_with_moments<T>(const Moments<T>&, const AffineChart<T>&, const QuadraticForm<T>&); \
  template Measure<T> integrate_quadratic<T>(const Polytope<T>&, const QuadraticForm<T>&);                          \
  template Polytope<T> affine_section<T>(const Polytope<T>&, const AffineChart<T>&);                                \
  template bool in_relative_interior<T>(const std::vector<Vec<T>>&, const Vec<T>&);                                 \
  template bool is_face<T>(const Polytope<T>&, const IndexSet&);                                                    \
  template std::vector<IndexSet> brute_force_facets<T>(const std::vector<Vec<T>>&);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

template Polytope<double> Polytope<Rational>::convert<double>() const;
template Polytope<Rational> Polytope<double>::convert<Rational>() const;
template Polytope<double> Polytope<double>::convert<double>() const;
template Polytope<Rational> Polytope<Rational>::convert<Rational>() const;

}  // namespace isoproj
