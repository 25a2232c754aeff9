#include "isoproj/double_description.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/linalg.hpp"

namespace isoproj {

namespace {

template <class T>
double l1_norm(const Vec<T>& v) {
  double s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::fabs(to_double(v(i)));
  return s;
}

template <class T>
int value_sign(const T& v, const Vec<T>& ray, double row_scale) {
  if constexpr (is_exact_v<T>) {
    return sign(v);
  } else {
    return sign(v, row_scale * l1_norm(ray) * 4.0);
  }
}

}  // namespace

template <class T>
ConeGenerators<T> cone_generators(const Mat<T>& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index dim = a.cols();
  ConeGenerators<T> out;
  if (dim == 0) return out;

  Mat<T> lin = nullspace<T>(m > 0 ? a : Mat<T>(0, dim));
  for (Eigen::Index j = 0; j < lin.cols(); ++j) {
    Vec<T> l = lin.col(j);
    normalize_max(l);
    out.lineality.push_back(l);
  }
  const Eigen::Index lrows = 2 * static_cast<Eigen::Index>(out.lineality.size());
  Mat<T> w(m + lrows, dim);
  if (m > 0) w.topRows(m) = a;
  for (std::size_t j = 0; j < out.lineality.size(); ++j) {
    w.row(m + 2 * static_cast<Eigen::Index>(j)) = out.lineality[j].transpose();
    w.row(m + 2 * static_cast<Eigen::Index>(j) + 1) = -out.lineality[j].transpose();
  }
  const Eigen::Index rows = w.rows();
  std::vector<double> row_scale(static_cast<std::size_t>(rows), 1.0);
  if constexpr (!is_exact_v<T>)
    for (Eigen::Index i = 0; i < rows; ++i) row_scale[static_cast<std::size_t>(i)] = std::max(1e-300, max_abs<T>(Vec<T>(w.row(i).transpose())));

  // Initial simplicial cone from a maximal independent row set.
  Echelon<T> ech = row_reduce<T>(w.transpose());
  if (ech.rank() < dim) throw std::logic_error("double description: augmented system lost rank");
  std::vector<Eigen::Index> basis_rows(ech.pivots.begin(), ech.pivots.end());
  Mat<T> bmat(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) bmat.row(k) = w.row(basis_rows[static_cast<std::size_t>(k)]);
  auto inv = solve<T>(bmat, Mat<T>(-Mat<T>::Identity(dim, dim)));
  if (!inv) throw std::logic_error("double description: singular initial basis");

  std::vector<Vec<T>> rays;
  std::vector<IndexSet> inc;
  IndexSet processed(static_cast<std::size_t>(rows));
  for (auto r : basis_rows) processed.set(static_cast<std::size_t>(r));
  for (Eigen::Index k = 0; k < dim; ++k) {
    Vec<T> r = inv->col(k);
    normalize_max(r);
    IndexSet z(static_cast<std::size_t>(rows));
    for (Eigen::Index k2 = 0; k2 < dim; ++k2)
      if (k2 != k) z.set(static_cast<std::size_t>(basis_rows[static_cast<std::size_t>(k2)]));
    rays.push_back(std::move(r));
    inc.push_back(std::move(z));
  }

  const std::size_t need = dim >= 2 ? static_cast<std::size_t>(dim - 2) : 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (processed.test(static_cast<std::size_t>(i))) continue;
    processed.set(static_cast<std::size_t>(i));
    std::vector<int> sgn(rays.size());
    std::vector<T> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      T s(0);
      for (Eigen::Index j = 0; j < dim; ++j)
        if (w(i, j) != 0 && rays[r](j) != 0) s += w(i, j) * rays[r](j);
      val[r] = s;
      sgn[r] = value_sign<T>(s, rays[r], row_scale[static_cast<std::size_t>(i)]);
    }
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn[r] > 0) pos.push_back(r);
      else if (sgn[r] < 0) neg.push_back(r);
    }
    if (pos.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (sgn[r] == 0) inc[r].set(static_cast<std::size_t>(i));
      continue;
    }
    std::vector<Vec<T>> next_rays;
    std::vector<IndexSet> next_inc;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        IndexSet z = inc[p] & inc[q];
        if (z.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (z.is_subset_of(inc[r])) adjacent = false;
        }
        if (!adjacent) continue;
        Vec<T> nr = val[p] * rays[q] - val[q] * rays[p];
        normalize_max(nr);
        z.set(static_cast<std::size_t>(i));
        next_rays.push_back(std::move(nr));
        next_inc.push_back(std::move(z));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sgn[r] > 0) continue;
      if (sgn[r] == 0) inc[r].set(static_cast<std::size_t>(i));
      next_rays.push_back(std::move(rays[r]));
      next_inc.push_back(std::move(inc[r]));
    }
    rays = std::move(next_rays);
    inc = std::move(next_inc);
  }

  for (std::size_t r = 0; r < rays.size(); ++r) {
    IndexSet orig(static_cast<std::size_t>(m));
    for (int idx : inc[r].indices())
      if (idx < m) orig.set(static_cast<std::size_t>(idx));
    out.rays.push_back(std::move(rays[r]));
    out.incidence.push_back(std::move(orig));
  }
  return out;
}

template <class T>
std::vector<Vec<T>> polytope_vertices(const Mat<T>& a, const Vec<T>& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Mat<T> h(m + 1, n + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    h.row(i).head(n) = a.row(i);
    h(i, n) = -b(i);
  }
  h.row(m).setZero();
  h(m, n) = T(-1);
  ConeGenerators<T> g = cone_generators<T>(h);
  if (!g.lineality.empty()) throw GeometryError(ErrorCode::Unbounded, "halfspace system has a lineality space");
  std::vector<Vec<T>> verts;
  for (const auto& r : g.rays) {
    int s = sign(r(n), is_exact_v<T> ? 1.0 : l1_norm(r));
    if (s == 0) throw GeometryError(ErrorCode::Unbounded, "halfspace system has a recession direction");
    Vec<T> x = r.head(n) / r(n);
    verts.push_back(std::move(x));
  }
  return verts;
}

template ConeGenerators<double> cone_generators<double>(const Mat<double>&);
template ConeGenerators<Rational> cone_generators<Rational>(const Mat<Rational>&);
template std::vector<Vec<double>> polytope_vertices<double>(const Mat<double>&, const Vec<double>&);
template std::vector<Vec<Rational>> polytope_vertices<Rational>(const Mat<Rational>&, const Vec<Rational>&);

}  // namespace isoproj
