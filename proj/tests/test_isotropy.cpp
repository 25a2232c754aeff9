#include "doctest.h"
#include "support.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/isotropy.hpp"
#include "isoproj/shadow.hpp"

#include <cmath>

using namespace isoproj;
using namespace testing_support;

namespace {

Rational rpow(const Rational& x, int k) {
  Rational out = 1;
  for (int i = 0; i < k; ++i) out *= x;
  return out;
}

Rational rfact(int k) {
  Rational out = 1;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// Dirichlet moments of conv{0, e_1..e_d}: cov = ((d+1) I - J) / ((d+1)^2 (d+2)),
// det(cov) = 1 / ((d+1)^{d+1} (d+2)^d), vol = 1/d!.
Rational simplex_l_power(int d) { return rpow(rfact(d), 2) / (rpow(Rational(d + 1), d + 1) * rpow(Rational(d + 2), d)); }

// B_1^d: cov = 2/((d+1)(d+2)) I, vol = 2^d/d!.
Rational cross_l_power(int d) { return rpow(Rational(2, (d + 1) * (d + 2)), d) / rpow(rpow(Rational(2), d) / rfact(d), 2); }

std::vector<Vec<Rational>> corner_simplex(int d) {
  std::vector<Vec<Rational>> pts{Vec<Rational>::Zero(d)};
  for (int i = 0; i < d; ++i) pts.push_back(unit<Rational>(d, i));
  return pts;
}

template <class T>
Mat<T> random_invertible(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  while (true) {
    Mat<T> a(n, n);
    for (int i = 0; i < n * n; ++i) a.data()[i] = T(c(rng));
    if (rank<T>(a) == n) return a;
  }
}

template <class T>
std::vector<Vec<T>> transformed(const Polytope<T>& p, const Mat<T>& a, const Vec<T>& b) {
  std::vector<Vec<T>> out;
  for (const auto& v : p.vertices()) out.push_back(a * v + b);
  return out;
}

bool same_vertex_set(const Polytope<Rational>& a, const Polytope<Rational>& b) {
  if (a.num_vertices() != b.num_vertices()) return false;
  for (const auto& v : a.vertices())
    if (!b.contains(v)) return false;
  for (const auto& v : b.vertices())
    if (!a.contains(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("inertia of the cube, cross-polytope and simplex") {
  for (int d = 1; d <= 4; ++d) {
    auto cube = Polytope<Rational>::hull(cube_points<Rational>(d));
    auto rep = inertia(cube);
    CHECK(rep.volume.coeff == 1);
    CHECK(rep.barycenter == Vec<Rational>::Constant(d, Rational(1, 2)));
    CHECK(rep.covariance == Mat<Rational>(Mat<Rational>::Identity(d, d) / 12));
    CHECK(rep.l_power == rpow(Rational(1, 12), d));
    CHECK(rep.L == doctest::Approx(1 / std::sqrt(12.0)));
  }
  for (int d = 2; d <= 5; ++d) {
    auto rep = inertia(Polytope<Rational>::hull(cross_points<Rational>(d)));
    CHECK(rep.covariance == Mat<Rational>(Mat<Rational>::Identity(d, d) * Rational(2, (d + 1) * (d + 2))));
    CHECK(rep.l_power == cross_l_power(d));
    double closed = std::sqrt(2.0 / ((d + 1) * (d + 2))) / std::pow(std::pow(2.0, d) / fact(d), 1.0 / d);
    CHECK(rep.L == doctest::Approx(closed).epsilon(1e-12));
  }
  CHECK(inertia(Polytope<Rational>::hull(cross_points<Rational>(2))).L == doctest::Approx(1 / std::sqrt(12.0)));
  for (int d = 1; d <= 5; ++d) {
    CHECK(inertia(Polytope<Rational>::hull(corner_simplex(d))).l_power == simplex_l_power(d));
    // Delta_d sits in R^{d+1}; its volume is sqrt(d+1)/d!.
    auto rep = inertia(Polytope<Rational>::hull(simplex_points<Rational>(d)));
    CHECK(rep.dim == d);
    CHECK(rep.l_power == simplex_l_power(d));
    CHECK(rep.volume.coeff * rep.volume.coeff * rep.volume.radicand == Rational(d + 1) / rpow(rfact(d), 2));
  }
  CHECK_THROWS_AS(inertia(Polytope<Rational>::hull({vec<Rational>({1, 2})})), GeometryError);
}

TEST_CASE("isotropy constant is affine invariant") {
  std::mt19937_64 rng(5);
  auto cube = Polytope<Rational>::hull(cube_points<Rational>(3, -1, 1));
  auto seven = Polytope<Rational>::hull(cube_points<Rational>(3, 0, 7));
  CHECK(inertia(seven).l_power == inertia(cube).l_power);
  CHECK(isotropy_constant(cube) == doctest::Approx(1 / std::sqrt(12.0)));

  auto regular = Polytope<Rational>::hull(simplex_points<Rational>(2));
  for (int t = 0; t < 5; ++t) {
    auto tri = Polytope<Rational>::hull(random_integer_points<Rational>(2, 3, rng, 9));
    if (tri.dim() < 2) continue;
    CHECK(inertia(tri).l_power == inertia(regular).l_power);
  }

  std::vector<Polytope<Rational>> bodies{cube, Polytope<Rational>::hull(cross_points<Rational>(3)),
                                         Polytope<Rational>::hull(random_integer_points<Rational>(3, 8, rng, 5))};
  for (const auto& p : bodies) {
    const Rational base = inertia(p).l_power;
    const double basef = isotropy_constant(p.convert<double>());
    for (int t = 0; t < 100; ++t) {
      Mat<Rational> a = random_invertible<Rational>(3, rng);
      Vec<Rational> b = random_integer_points<Rational>(3, 1, rng, 4).front();
      if (t % 10 == 0) CHECK(inertia(Polytope<Rational>::hull(transformed(p, a, b))).l_power == base);
      Mat<double> af = to_double_mat(a);
      Vec<double> bf = to_double_vec(b);
      double lf = isotropy_constant(Polytope<double>::hull(transformed(p.convert<double>(), af, bf)));
      CHECK(std::fabs(lf - basef) <= 1e-9 * basef);
    }
  }
}

TEST_CASE("isotropic position round trip") {
  std::mt19937_64 rng(11);
  std::vector<Polytope<double>> bodies{Polytope<double>::hull(cube_points<double>(3)), Polytope<double>::hull(cross_points<double>(4)),
                                       Polytope<double>::hull(simplex_points<double>(3))};
  for (int t = 0; t < 4; ++t) bodies.push_back(Polytope<double>::hull(random_integer_points<double>(3, 9, rng, 6)));
  for (const auto& p : bodies) {
    auto rep = inertia(p);
    auto iso = isotropic_copy(p);
    auto ri = inertia(iso);
    CHECK(iso.ambient_dim() == p.dim());
    CHECK(ri.volume.value() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ri.barycenter.norm() <= 1e-9);
    const double l2 = rep.L * rep.L;
    CHECK((ri.covariance - l2 * Mat<double>::Identity(p.dim(), p.dim())).cwiseAbs().maxCoeff() <= 1e-9 * l2);
    CHECK(ri.L == doctest::Approx(rep.L).epsilon(1e-9));
  }
  // Exact copies are isotropic up to the dyadic rounding.
  auto ex = isotropic_copy(Polytope<Rational>::hull(random_integer_points<Rational>(3, 7, rng, 5)));
  auto re = inertia(ex);
  CHECK(std::fabs(re.volume.value() - 1.0) <= 1e-9);
  CHECK(max_abs(re.barycenter) <= 1e-9);
}

TEST_CASE("radii") {
  for (int n = 2; n <= 5; ++n) {
    auto r = radii(Polytope<Rational>::hull(cross_points<Rational>(n)));
    CHECK(r.r_squared == Rational(1, n));
    CHECK(r.R_squared == 1);
    auto c = radii(Polytope<Rational>::hull(cube_points<Rational>(n, -1, 1)));
    CHECK(c.r_squared == 1);
    CHECK(c.R_squared == n);
  }
  try {
    radii(Polytope<Rational>::hull(cube_points<Rational>(2)));
    FAIL("expected failure");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::OriginOutside);
  }
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    int n = 2 + t % 3;
    auto p = Polytope<double>::hull(random_integer_points<double>(n, n + 5, rng, 6));
    if (p.dim() < n) continue;
    auto iso = isotropic_copy(p);
    auto r = radii(iso);
    double l = isotropy_constant(iso);
    CHECK(r.r >= l);
    CHECK(r.R <= (n + 1) * l);
  }
}

TEST_CASE("cross-polytope embeddings") {
  auto b = embed_as_b1_projection(Polytope<Rational>::hull(cross_points<Rational>(3)));
  CHECK(b.subspace.dim() == 3);
  CHECK(b.map == Mat<Rational>(Mat<Rational>::Identity(3, 3)));

  // Square from three generators, the third along v1 + v2.
  std::vector<Vec<Rational>> gens{vec<Rational>({1, 1}), vec<Rational>({1, -1}), vec<Rational>({1, 0})};
  auto emb = embed_as_b1_projection(gens);
  CHECK(emb.subspace.dim() == 2);
  auto b13 = Polytope<Rational>::hull(cross_points<Rational>(3));
  std::vector<Vec<Rational>> image;
  for (const auto& v : b13.vertices()) image.push_back(emb.apply(v));
  auto square = Polytope<Rational>::hull({vec<Rational>({1, 1}), vec<Rational>({1, -1}), vec<Rational>({-1, 1}), vec<Rational>({-1, -1})});
  CHECK(same_vertex_set(Polytope<Rational>::hull(image), square));
  CHECK(inertia(projected_hull(b13, emb.subspace)).l_power == inertia(square).l_power);

  std::mt19937_64 rng(21);
  for (int t = 0; t < 6; ++t) {
    std::vector<Vec<Rational>> pts;
    for (const auto& v : random_integer_points<Rational>(2, 3, rng, 7)) {
      pts.push_back(v);
      pts.push_back(-v);
    }
    auto hex = Polytope<Rational>::hull(pts);
    if (hex.dim() < 2) continue;
    auto e = embed_as_b1_projection(hex);
    const int n = static_cast<int>(e.generators.size());
    auto cross = Polytope<Rational>::hull(cross_points<Rational>(n));
    CHECK(inertia(projected_hull(cross, e.subspace)).l_power == inertia(hex).l_power);
    // P_E e_i maps to the generators.
    for (int i = 0; i < n; ++i) CHECK(e.apply(e.subspace.project(unit<Rational>(n, i))) == e.generators[static_cast<std::size_t>(i)]);
  }

  auto lopsided = Polytope<Rational>::hull({vec<Rational>({1, 0}), vec<Rational>({-1, 0}), vec<Rational>({0, 1})});
  try {
    embed_as_b1_projection(lopsided);
    FAIL("expected failure");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
  try {
    embed_as_b1_projection(std::vector<Vec<Rational>>{vec<Rational>({1, 2}), vec<Rational>({2, 4})});
    FAIL("expected failure");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}

TEST_CASE("simplex embeddings") {
  auto h3 = Subspace<Rational>::span_of(
      Mat<Rational>((Mat<Rational>(3, 2) << 1, 1, -1, 1, 0, -2).finished()));
  auto tri = embed_as_simplex_projection(std::vector<Vec<Rational>>{vec<Rational>({0, 0}), vec<Rational>({3, 1}), vec<Rational>({1, 4})});
  CHECK(tri.subspace.dim() == 2);
  CHECK(h3.contains(tri.subspace));

  std::mt19937_64 rng(4);
  std::vector<Vec<Rational>> pentagon{vec<Rational>({2, 0}), vec<Rational>({1, 2}), vec<Rational>({-1, 2}), vec<Rational>({-2, 0}), vec<Rational>({0, -2})};
  for (const auto& pts : {pentagon, random_integer_points<Rational>(2, 4, rng, 8), random_integer_points<Rational>(3, 6, rng, 5)}) {
    auto k = Polytope<Rational>::hull(pts);
    if (k.dim() < k.ambient_dim()) continue;
    auto e = embed_as_simplex_projection(pts);
    const int m = static_cast<int>(pts.size());
    for (int i = 0; i < e.subspace.dim(); ++i) CHECK(e.subspace.basis_vector(i).sum() == 0);
    auto delta = Polytope<Rational>::hull(simplex_points<Rational>(m - 1));
    CHECK(inertia(projected_hull(delta, e.subspace)).l_power == inertia(k).l_power);
    std::vector<Vec<Rational>> image;
    for (int i = 0; i < m; ++i) {
      Vec<Rational> img = e.apply(e.subspace.project(unit<Rational>(m, i)));
      CHECK(img == pts[static_cast<std::size_t>(i)]);
      image.push_back(img);
    }
    CHECK(same_vertex_set(Polytope<Rational>::hull(image), k));
  }
  CHECK_THROWS_AS(embed_as_simplex_projection(std::vector<Vec<Rational>>{vec<Rational>({0, 0}), vec<Rational>({1, 1}), vec<Rational>({2, 2})}),
                  GeometryError);
}

TEST_CASE("difference bodies") {
  auto seg = minkowski_difference_body(Polytope<Rational>::hull({vec<Rational>({0}), vec<Rational>({1})}));
  CHECK(seg.num_vertices() == 2);
  CHECK(volume(seg).coeff == 2);

  auto tri = Polytope<Rational>::hull(corner_simplex(2));
  auto hex = minkowski_difference_body(tri);
  CHECK(hex.num_vertices() == 6);
  CHECK(volume(hex).coeff / volume(tri).coeff == 6);
  auto tet = Polytope<Rational>::hull(corner_simplex(3));
  CHECK(volume(minkowski_difference_body(tet)).coeff / volume(tet).coeff == 20);

  auto cube = Polytope<Rational>::hull(cube_points<Rational>(3, -1, 1));
  CHECK(volume(minkowski_difference_body(cube)).coeff / volume(cube).coeff == 8);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    int d = 2 + t % 2;
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(d, d + 4, rng, 5));
    if (p.dim() < d) continue;
    auto diff = minkowski_difference_body(p);
    CHECK(volume(diff).coeff / volume(p).coeff <= Rational(static_cast<long>(binom(2 * d, d))));
    Vec<Rational> c = inertia(p).barycenter;
    for (const auto& v : p.vertices()) {
      CHECK(diff.contains(Vec<Rational>(v - c)));
      CHECK(diff.contains(Vec<Rational>(c - v)));
    }
  }
}

TEST_CASE("deterministic bound ratios") {
  for (int d = 2; d <= 4; ++d) {
    double cube = deterministic_bound_check(Polytope<Rational>::hull(cube_points<Rational>(d)));
    CHECK(cube == doctest::Approx(std::sqrt(d / std::pow(2.0, d) / 12.0)));
    double simplex = deterministic_bound_check(Polytope<Rational>::hull(corner_simplex(d)));
    double l = std::pow(to_double(simplex_l_power(d)), 1.0 / (2 * d));
    CHECK(simplex == doctest::Approx(l * std::sqrt(d / (d + 1.0))));
  }
}

TEST_CASE("float inertia in high dimension") {
  // L^{2k} of B_1^9 is about 1e-10, below the default tolerance.
  auto exact = inertia(cross_polytope<Rational>(9));
  CHECK(exact.l_power == cross_l_power(9));
  auto fl = inertia(cross_polytope<double>(9));
  CHECK(fl.L == doctest::Approx(exact.L).epsilon(1e-12));
  CHECK(to_double(fl.l_power) == doctest::Approx(to_double(exact.l_power)).epsilon(1e-10));
}
