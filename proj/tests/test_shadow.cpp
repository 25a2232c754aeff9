#include "doctest.h"
#include "support.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/shadow.hpp"

#include <algorithm>

using namespace isoproj;
using namespace testing_support;

namespace {

template <class T>
GenericDirection<T> fixed_direction(const Vec<T>& u, const Subspace<T>& e, const Polytope<T>& p) {
  GenericDirection<T> g;
  g.w = e.complement_within(p.chart().directions);
  g.u = u;
  return g;
}

template <class T>
Subspace<T> integer_subspace(int n, int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  while (true) {
    Mat<T> cols(n, d);
    for (int i = 0; i < n * d; ++i) cols.data()[i] = T(c(rng));
    auto s = Subspace<T>::span_of(cols);
    if (s.dim() == d) return s;
  }
}

template <class T>
Measure<T> hull_then_integrate(const Polytope<T>& p, const Subspace<T>& e, const QuadraticForm<T>& f) {
  Measure<T> m = integrate_quadratic(projected_hull(p, e), restrict_to_subspace(f, e));
  m.radicand = e.gram_determinant();
  return m;
}

}  // namespace

TEST_CASE("cross-polytope shadow on the coordinate plane") {
  auto p = Polytope<Rational>::hull(cross_points<Rational>(3));
  auto e = Subspace<Rational>::coordinate(3, {0, 1});
  auto dec = shadow_faces(p, e, fixed_direction<Rational>(unit<Rational>(3, 2), e, p));
  REQUIRE(dec.faces.size() == 4);
  for (const auto& f : dec.faces) {
    bool has_top = false;
    for (int v : f.vertices.indices()) has_top |= p.vertex(v) == unit<Rational>(3, 2);
    CHECK(has_top);
    CHECK(f.rank == 2);
  }
  CHECK(dec.projected_volume().coeff == 2);
  auto rep = verify_tiling(dec);
  CHECK(rep.exact_match);
  CHECK(rep.overlapping_pairs == 0);
  CHECK(rep.pairs_checked == 6);
}

TEST_CASE("cube and prism shadows use a single face") {
  auto cube = Polytope<Rational>::hull(cube_points<Rational>(3));
  auto e = Subspace<Rational>::coordinate(3, {0, 1});
  auto dec = shadow_faces(cube, e, fixed_direction<Rational>(unit<Rational>(3, 2), e, cube));
  REQUIRE(dec.faces.size() == 1);
  for (int v : dec.faces[0].vertices.indices()) CHECK(cube.vertex(v)(2) == 1);
  CHECK(dec.projected_volume().coeff == 1);
  auto rep = verify_tiling(dec);
  CHECK(rep.exact_match);
  CHECK(rep.residual == 0.0);

  std::vector<Vec<Rational>> prism;
  for (int h = 0; h < 2; ++h) {
    prism.push_back(vec<Rational>({0, 0, static_cast<double>(h)}));
    prism.push_back(vec<Rational>({1, 0, static_cast<double>(h)}));
    prism.push_back(vec<Rational>({0, 1, static_cast<double>(h)}));
  }
  auto pp = Polytope<Rational>::hull(prism);
  auto dp = shadow_faces(pp, e, fixed_direction<Rational>(unit<Rational>(3, 2, -1), e, pp));
  REQUIRE(dp.faces.size() == 1);
  CHECK(dp.faces[0].projected_volume.coeff == dp.faces[0].face_volume.coeff);
  CHECK(dp.projected_volume().coeff == Rational(1, 2));
}

TEST_CASE("shadow errors") {
  auto cube = Polytope<Rational>::hull(cube_points<Rational>(3));
  auto e = Subspace<Rational>::coordinate(3, {0, 1});
  // u along an edge normal projection: the vertical edge normals project onto a ray.
  auto bad = fixed_direction<Rational>(unit<Rational>(3, 2), e, cube);
  bad.u = Vec<Rational>::Zero(3);
  try {
    shadow_faces(cube, e, bad);
    FAIL("expected failure");
  } catch (const GeometryError& err) {
    CHECK(err.code() == ErrorCode::NonGenericDirection);
  }
  auto flat = Polytope<Rational>::hull({vec<Rational>({0, 0, 0}), vec<Rational>({0, 0, 1}), vec<Rational>({1, 0, 0}), vec<Rational>({1, 0, 1})});
  auto e3 = Subspace<Rational>::coordinate(3, {1});
  CHECK_THROWS_AS(shadow_faces(flat, e3, std::uint64_t{1}), GeometryError);
}

TEST_CASE("integration over coordinate projections of cross-polytopes") {
  for (int n = 3; n <= 5; ++n)
    for (int d = 1; d < n; ++d) {
      std::vector<int> axes;
      for (int i = 0; i < d; ++i) axes.push_back(i);
      auto p = Polytope<Rational>::hull(cross_points<Rational>(n));
      auto e = Subspace<Rational>::coordinate(n, axes);
      auto dec = shadow_faces(p, e, std::uint64_t{static_cast<std::uint64_t>(n * 10 + d)});
      Rational vol = Rational(1 << d, static_cast<long>(fact(d)));
      CHECK(integrate_over_projection(dec, QuadraticForm<Rational>::one(n)).coeff == vol);
      CHECK(integrate_over_projection(dec, QuadraticForm<Rational>::squared_norm(n)).coeff == vol * Rational(2 * d, (d + 1) * (d + 2)));
    }
}

TEST_CASE("property: face formula matches hull-then-integrate") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 5, d = 2 + trial % 2;
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(n, 10, rng, 5));
    if (p.dim() < n) continue;
    auto e = integer_subspace<Rational>(n, d, rng);
    auto f = QuadraticForm<Rational>::squared_norm(n);
    auto dec = shadow_faces(p, e, static_cast<std::uint64_t>(trial));
    auto lhs = integrate_over_projection(dec, f);
    auto rhs = hull_then_integrate(p, e, f);
    CHECK(lhs.radicand == rhs.radicand);
    CHECK(lhs.coeff == rhs.coeff);
    auto rep = verify_tiling(dec, TilingOptions{20, 60, true, 1});
    CHECK(rep.exact_match);
    CHECK(rep.overlapping_pairs == 0);
    CHECK(rep.injective);
    CHECK(rep.max_family_dim <= d);
    // A second generic direction gives the same integral.
    auto dec2 = shadow_faces(p, e, static_cast<std::uint64_t>(trial + 1000));
    CHECK(integrate_over_projection(dec2, f).coeff == lhs.coeff);

    std::vector<Vec<double>> fp;
    for (const auto& v : p.vertices()) fp.push_back(to_double_vec(v));
    auto pf = Polytope<double>::hull(fp);
    auto ef = Subspace<double>::span_of(to_double_mat(e.basis()));
    auto decf = shadow_faces(pf, ef, static_cast<std::uint64_t>(trial));
    auto repf = verify_tiling(decf);
    CHECK(repf.residual <= 1e-9 * repf.oracle_volume);
    double lf = integrate_over_projection(decf, QuadraticForm<double>::squared_norm(n)).value();
    CHECK(lf == doctest::Approx(lhs.value()).epsilon(1e-9));
  }
}

TEST_CASE("property: lower-dimensional simplex projected inside H") {
  std::mt19937_64 rng(8);
  for (int n = 3; n <= 5; ++n)
    for (int d = 1; d < n; ++d) {
      auto p = Polytope<Rational>::hull(simplex_points<Rational>(n));
      // Subspace of H = (1,...,1)-perp from centered integer columns.
      std::uniform_int_distribution<int> c(-3, 3);
      Subspace<Rational> e;
      do {
        Mat<Rational> cols(n + 1, d);
        for (int j = 0; j < d; ++j) {
          Rational mean = 0;
          for (int i = 0; i <= n; ++i) mean += (cols(i, j) = c(rng));
          mean /= (n + 1);
          for (int i = 0; i <= n; ++i) cols(i, j) = (cols(i, j) - mean) * (n + 1);
        }
        e = Subspace<Rational>::span_of(cols);
      } while (e.dim() != d);
      auto dec = shadow_faces(p, e, static_cast<std::uint64_t>(n + d));
      auto rep = verify_tiling(dec);
      CHECK(rep.exact_match);
      CHECK(rep.overlapping_pairs == 0);
      auto f = QuadraticForm<Rational>::squared_norm(n + 1);
      CHECK(integrate_over_projection(dec, f).coeff == hull_then_integrate(p, e, f).coeff);
    }
}

TEST_CASE("moment bound: projected mean never exceeds the best face mean") {
  auto cube = Polytope<Rational>::hull(cube_points<Rational>(3));
  auto e = Subspace<Rational>::coordinate(3, {0, 1});
  auto b = projection_moment_bound(shadow_faces(cube, e, fixed_direction<Rational>(unit<Rational>(3, 2), e, cube)));
  CHECK(b.lhs == Rational(2, 3));
  CHECK(b.rhs == Rational(5, 3));

  auto oct = Polytope<Rational>::hull(cross_points<Rational>(3));
  auto bo = projection_moment_bound(shadow_faces(oct, e, fixed_direction<Rational>(unit<Rational>(3, 2), e, oct)));
  // Upper facets are unit-vertex triangles with pairwise orthogonal vertices.
  CHECK(bo.rhs == Rational(2, 4));
  CHECK(bo.lhs == Rational(1, 3));
  CHECK(bo.lhs <= bo.rhs);

  std::mt19937_64 rng(19);
  int checked = 0;
  while (checked < 50) {
    int n = 3 + checked % 3;
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(n, n + 4, rng, 4));
    if (p.dim() < n) continue;
    auto es = integer_subspace<Rational>(n, 1 + checked % (n - 1), rng);
    auto mb = projection_moment_bound(shadow_faces(p, es, static_cast<std::uint64_t>(checked)));
    CHECK(mb.lhs <= mb.rhs);
    ++checked;
  }
}

TEST_CASE("property: exact and float shadows select the same faces") {
  std::mt19937_64 rng(77);
  int checked = 0;
  while (checked < 30) {
    const int n = 3 + checked % 4;
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(n, n + 5, rng, 5));
    if (p.dim() < n) continue;
    auto e = integer_subspace<Rational>(n, 1 + checked % (n - 1), rng);
    auto dec = shadow_faces(p, e, static_cast<std::uint64_t>(checked));
    std::vector<Vec<double>> fp;
    for (const auto& v : p.vertices()) fp.push_back(to_double_vec(v));
    auto pf = Polytope<double>::hull(fp);
    auto ef = Subspace<double>::span_of(to_double_mat(e.basis()));
    Vec<double> uf = to_double_vec(dec.direction.u);
    auto decf = shadow_faces(pf, ef, fixed_direction<double>(Vec<double>(uf / uf.norm()), ef, pf));
    std::vector<std::vector<int>> a, b;
    for (const auto& f : dec.faces) a.push_back(f.vertices.indices());
    for (const auto& f : decf.faces) {
      std::vector<int> ids;
      for (int i : f.vertices.indices()) {
        for (std::size_t j = 0; j < p.num_vertices(); ++j)
          if ((to_double_vec(p.vertex(static_cast<int>(j))) - pf.vertex(i)).norm() == 0) ids.push_back(static_cast<int>(j));
      }
      std::sort(ids.begin(), ids.end());
      b.push_back(ids);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    ++checked;
  }
}
