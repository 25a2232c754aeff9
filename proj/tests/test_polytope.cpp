#include "doctest.h"
#include "support.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/lp.hpp"

#include <cmath>

using namespace isoproj;
using namespace testing_support;

namespace {

template <class T>
std::vector<std::size_t> fvec(const Polytope<T>& p) {
  return p.lattice().f_vector();
}

// Interiors of two k-simplices in a common k-dimensional space meet iff
// strictly positive barycentric weights reach the same point.
bool interiors_meet(const std::vector<Vec<Rational>>& a, const std::vector<Vec<Rational>>& b) {
  const Eigen::Index n = a.front().size();
  const Eigen::Index ka = static_cast<Eigen::Index>(a.size());
  const Eigen::Index kb = static_cast<Eigen::Index>(b.size());
  Mat<Rational> m = Mat<Rational>::Zero(n + 2, ka + kb + 1);
  Vec<Rational> rhs = Vec<Rational>::Zero(n + 2);
  for (Eigen::Index i = 0; i < ka; ++i) {
    m.col(i).head(n) = a[static_cast<std::size_t>(i)];
    rhs.head(n) -= a[static_cast<std::size_t>(i)];
    m(n, i) = 1;
  }
  for (Eigen::Index j = 0; j < kb; ++j) {
    m.col(ka + j).head(n) = -b[static_cast<std::size_t>(j)];
    rhs.head(n) += b[static_cast<std::size_t>(j)];
    m(n + 1, ka + j) = 1;
  }
  m(n, ka + kb) = -1;
  m(n + 1, ka + kb) = -1;
  rhs(n) = -Rational(ka);
  rhs(n + 1) = -Rational(kb);
  return nonnegative_solution<Rational>(m, rhs).feasible;
}

}  // namespace

TEST_CASE("hull drops interior points of the square") {
  for (int exact = 0; exact < 2; ++exact) {
    auto run = [](auto tag) {
      using T = decltype(tag);
      auto p = Polytope<T>::hull({vec<T>({0, 0}), vec<T>({1, 0}), vec<T>({0, 1}), vec<T>({1, 1}), vec<T>({0.5, 0.5})});
      CHECK(p.num_vertices() == 4);
      CHECK(p.facets().size() == 4);
      CHECK(p.dim() == 2);
    };
    if (exact) run(Rational());
    else run(0.0);
  }
}

TEST_CASE("hull drops boundary non-vertices and duplicates") {
  auto p = Polytope<Rational>::hull({vec<Rational>({0, 0}), vec<Rational>({2, 0}), vec<Rational>({1, 0}), vec<Rational>({0, 2}),
                                     vec<Rational>({0, 0}), vec<Rational>({1, 1})});
  CHECK(p.num_vertices() == 3);
  CHECK(fvec(p) == std::vector<std::size_t>{3, 3});
}

TEST_CASE("octahedron f-vector and Euler relation") {
  auto p = Polytope<Rational>::hull(cross_points<Rational>(3));
  CHECK(fvec(p) == std::vector<std::size_t>{6, 12, 8});
  CHECK(p.lattice().satisfies_euler());
  auto q = Polytope<double>::hull(cross_points<double>(3));
  CHECK(fvec(q) == std::vector<std::size_t>{6, 12, 8});
}

TEST_CASE("standard triangle in R^3 is two-dimensional") {
  auto p = Polytope<Rational>::hull(simplex_points<Rational>(2));
  CHECK(p.dim() == 2);
  CHECK(p.ambient_dim() == 3);
  CHECK(fvec(p) == std::vector<std::size_t>{3, 3});
  for (const auto& f : p.facets()) CHECK(dot<Rational>(f.normal, vec<Rational>({1, 1, 1})) == 0);
}

TEST_CASE("cube and cross-polytope face counts") {
  CHECK(fvec(Polytope<Rational>::hull(cube_points<Rational>(3))) == std::vector<std::size_t>{8, 12, 6});
  auto b14 = Polytope<Rational>::hull(cross_points<Rational>(4));
  auto f = fvec(b14);
  CHECK(f == std::vector<std::size_t>{8, 24, 32, 16});
  for (int j = 0; j < 4; ++j) CHECK(static_cast<double>(f[static_cast<std::size_t>(j)]) == std::pow(2.0, j + 1) * binom(4, j + 1));
  auto facets = brute_force_facets<Rational>(b14.vertices());
  CHECK(facets.size() == 16);
}

TEST_CASE("simplex faces are all vertex subsets") {
  for (int d = 1; d <= 5; ++d) {
    auto p = Polytope<Rational>::hull(simplex_points<Rational>(d));
    REQUIRE(p.dim() == d);
    auto f = fvec(p);
    for (int j = 0; j < d; ++j) CHECK(static_cast<double>(f[static_cast<std::size_t>(j)]) == binom(d + 1, j + 1));
  }
}

TEST_CASE("hull errors") {
  CHECK_THROWS_AS(Polytope<double>::hull({}), GeometryError);
  try {
    Polytope<double>::hull({vec<double>({0, 0}), vec<double>({1, 0, 0})});
    FAIL("expected failure");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("point polytope has unit zero-dimensional measure") {
  auto p = Polytope<Rational>::hull({vec<Rational>({1, 2}), vec<Rational>({1, 2})});
  CHECK(p.dim() == 0);
  CHECK(p.num_vertices() == 1);
  CHECK(volume(p).coeff == 1);
  CHECK(p.lattice().satisfies_euler());
}

TEST_CASE("volumes of small examples") {
  auto seg = Polytope<Rational>::hull({vec<Rational>({0, 0}), vec<Rational>({1, 0})});
  CHECK(volume(seg).value() == doctest::Approx(1.0));
  CHECK(volume(seg).coeff * volume(seg).coeff * volume(seg).radicand == 1);

  auto b13 = Polytope<Rational>::hull(cross_points<Rational>(3));
  CHECK(volume(b13).coeff == Rational(4, 3));
  CHECK(volume(b13).radicand == 1);

  auto tri = Polytope<Rational>::hull(simplex_points<Rational>(2));
  Measure<Rational> v = volume(tri);
  CHECK(v.coeff * v.coeff * v.radicand == Rational(3, 4));
  CHECK(volume(Polytope<double>::hull(simplex_points<double>(2))).value() == doctest::Approx(std::sqrt(3.0) / 2));

  for (int d = 2; d <= 6; ++d) {
    auto b = Polytope<Rational>::hull(cross_points<Rational>(d));
    CHECK(volume(b).value() == doctest::Approx(std::pow(2.0, d) / fact(d)));
  }
}

TEST_CASE("triangulations") {
  auto s = Polytope<Rational>::hull(simplex_points<Rational>(3));
  CHECK(triangulate(s).size() == 1);
  auto sq = Polytope<Rational>::hull(cube_points<Rational>(2));
  CHECK(triangulate(sq).size() == 2);
  CHECK(volume(sq).coeff == 1);
  auto oct = Polytope<Rational>::hull(cross_points<Rational>(3));
  Rational total = 0;
  for (const auto& simplex : triangulate(oct)) {
    std::vector<Vec<Rational>> pts;
    for (int v : simplex) pts.push_back(oct.vertex(v));
    total += volume(Polytope<Rational>::hull(pts)).coeff;
  }
  CHECK(total == Rational(4, 3));
}

TEST_CASE("simplex second moments") {
  for (int d = 1; d <= 6; ++d) {
    auto m = simplex_second_moment<Rational>(simplex_points<Rational>(d));
    CHECK(m.second.trace() == Rational(2, d + 2));
  }
  std::vector<Vec<Rational>> ortho = {unit<Rational>(5, 0), unit<Rational>(5, 2), unit<Rational>(5, 3, -1)};
  CHECK(simplex_second_moment<Rational>(ortho).second.trace() == Rational(2, 4));
  auto seg = simplex_second_moment<Rational>({vec<Rational>({-1}), vec<Rational>({1})});
  CHECK(seg.second(0, 0) == Rational(1, 3));
  CHECK(seg.barycenter(0) == 0);
  try {
    simplex_second_moment<Rational>({vec<Rational>({0, 0}), vec<Rational>({1, 1}), vec<Rational>({2, 2})});
    FAIL("expected failure");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::DegenerateSimplex);
  }
}

TEST_CASE("integrating quadratics") {
  for (int d = 1; d <= 4; ++d) {
    auto cube = Polytope<Rational>::hull(cube_points<Rational>(d));
    CHECK(integrate_quadratic(cube, QuadraticForm<Rational>::squared_norm(d)).coeff == Rational(d, 3));
    CHECK(integrate_quadratic(cube, QuadraticForm<Rational>::one(d)).coeff == volume(cube).coeff);

    auto s = Polytope<Rational>::hull(simplex_points<Rational>(d));
    auto i2 = integrate_quadratic(s, QuadraticForm<Rational>::squared_norm(d + 1));
    auto v = volume(s);
    CHECK(i2.radicand == v.radicand);
    CHECK(i2.coeff == v.coeff * Rational(2, d + 2));
  }
  QuadraticForm<Rational> lin = QuadraticForm<Rational>::one(2);
  lin.constant = 0;
  lin.linear = vec<Rational>({1, 0});
  CHECK(integrate_quadratic(Polytope<Rational>::hull(cube_points<Rational>(2)), lin).coeff == Rational(1, 2));
}

TEST_CASE("property: brute-force facets agree with double description on random hulls") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 3;
    int m = n + 2 + trial % 7;
    auto pts = random_integer_points<Rational>(n, m, rng, 4);
    auto p = Polytope<Rational>::hull(pts);
    if (p.dim() < n) continue;
    auto oracle = brute_force_facets<Rational>(p.vertices());
    std::vector<IndexSet> got;
    for (const auto& f : p.facets()) got.push_back(f.vertices);
    std::sort(got.begin(), got.end());
    CHECK(got == oracle);
    CHECK(p.lattice().satisfies_euler());
    for (std::size_t i = 0; i < p.num_vertices(); ++i) {
      std::vector<Vec<Rational>> others;
      for (std::size_t j = 0; j < p.num_vertices(); ++j)
        if (j != i) others.push_back(p.vertices()[j]);
      CHECK_FALSE(Polytope<Rational>::hull(others).contains(p.vertices()[i]));
    }

    std::vector<Vec<double>> fpts;
    for (const auto& v : pts) fpts.push_back(to_double_vec(v));
    auto q = Polytope<double>::hull(fpts);
    CHECK(q.num_vertices() == p.num_vertices());
    CHECK(q.lattice().f_vector() == p.lattice().f_vector());
    CHECK(volume(q).value() == doctest::Approx(volume(p).value()).epsilon(1e-10));
  }
}

TEST_CASE("property: facet vertex sets span codimension one and lattice faces pass the face test") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(3, 9, rng));
    for (const auto& f : p.facets()) {
      auto pts = p.face_points(f.vertices);
      CHECK(Polytope<Rational>::hull(pts).dim() == p.dim() - 1);
    }
    for (const auto& level : p.lattice().faces)
      for (const auto& face : level) CHECK(is_face(p, face.vertices));
    IndexSet diag(p.num_vertices());
    for (int tries = 0; tries < 20; ++tries) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(p.num_vertices()) - 1);
      IndexSet s(p.num_vertices());
      s.set(static_cast<std::size_t>(pick(rng)));
      s.set(static_cast<std::size_t>(pick(rng)));
      s.set(static_cast<std::size_t>(pick(rng)));
      CHECK(is_face(p, s) == (p.lattice().find(s).first >= 0));
    }
  }
}

TEST_CASE("property: minimal faces partition sampled points") {
  std::mt19937_64 rng(3);
  auto p = Polytope<Rational>::hull(cross_points<Rational>(3));
  std::uniform_int_distribution<int> w(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Vec<Rational> x = Vec<Rational>::Zero(3);
    Rational total = 0;
    for (std::size_t i = 0; i < p.num_vertices(); ++i) {
      int wi = (trial % 3 == 0) ? w(rng) : (w(rng) > 1 ? w(rng) : 0);
      x += Rational(wi) * p.vertices()[i];
      total += wi;
    }
    if (total == 0) continue;
    x /= total;
    IndexSet face = p.minimal_face(x);
    auto loc = p.lattice().find(face);
    REQUIRE(loc.first >= 0);
    CHECK(in_relative_interior<Rational>(p.face_points(face), x));
    for (const auto& level : p.lattice().faces)
      for (const auto& other : level)
        if (other.vertices != face) CHECK_FALSE(in_relative_interior<Rational>(p.face_points(other.vertices), x));
  }
}

TEST_CASE("property: triangulation simplices have disjoint interiors and sum to the volume") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + trial % 2;
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(n, 8, rng));
    if (p.dim() < n) continue;
    auto tri = triangulate(p);
    Rational total = 0;
    std::vector<std::vector<Vec<Rational>>> simplices;
    for (const auto& s : tri) {
      std::vector<Vec<Rational>> pts;
      for (int v : s) pts.push_back(p.vertex(v));
      total += volume(Polytope<Rational>::hull(pts)).coeff;
      simplices.push_back(pts);
    }
    CHECK(total == volume(p).coeff);
    for (std::size_t a = 0; a < simplices.size(); ++a)
      for (std::size_t b = a + 1; b < simplices.size(); ++b) CHECK_FALSE(interiors_meet(simplices[a], simplices[b]));
  }
}

TEST_CASE("property: volume is invariant under signed permutations and translations") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    auto pts = random_integer_points<Rational>(n, 7, rng);
    std::vector<int> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    Vec<Rational> shift = random_integer_points<Rational>(n, 1, rng).front();
    std::vector<Vec<Rational>> moved;
    for (const auto& v : pts) {
      Vec<Rational> w(n);
      for (int i = 0; i < n; ++i) w(i) = (i % 2 ? -1 : 1) * v(perm[static_cast<std::size_t>(i)]);
      moved.push_back(w + shift);
    }
    auto a = volume(Polytope<Rational>::hull(pts));
    auto b = volume(Polytope<Rational>::hull(moved));
    CHECK(a.coeff == b.coeff);
  }
  // Float: random rotation by QR of a Gaussian matrix.
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 16; ++i) a.data()[i] = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    auto pts = cross_points<double>(4);
    std::vector<Vec<double>> moved;
    for (const auto& v : pts) moved.push_back(q * v + Eigen::VectorXd::Constant(4, 0.3));
    CHECK(volume(Polytope<double>::hull(moved)).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("property: integration is linear in f and additive over triangulations") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 8; ++trial) {
    auto p = Polytope<Rational>::hull(random_integer_points<Rational>(3, 8, rng));
    if (p.dim() < 3) continue;
    QuadraticForm<Rational> f = QuadraticForm<Rational>::one(3), h = QuadraticForm<Rational>::squared_norm(3);
    f.linear = vec<Rational>({1, -2, 3});
    h.quadratic(0, 1) = h.quadratic(1, 0) = Rational(1, 2);
    QuadraticForm<Rational> sum;
    sum.constant = f.constant + 3 * h.constant;
    sum.linear = f.linear + 3 * h.linear;
    sum.quadratic = f.quadratic + 3 * h.quadratic;
    auto lhs = integrate_quadratic(p, sum).coeff;
    CHECK(lhs == integrate_quadratic(p, f).coeff + 3 * integrate_quadratic(p, h).coeff);
    Rational pieces = 0;
    for (const auto& s : triangulate(p)) {
      std::vector<Vec<Rational>> pts;
      for (int v : s) pts.push_back(p.vertex(v));
      pieces += integrate_quadratic(Polytope<Rational>::hull(pts), sum).coeff;
    }
    CHECK(pieces == lhs);
  }
}

TEST_CASE("embedded square integrates like the planar one") {
  // Square spanned by (1,1,0)/.. and (0,0,1) scaled lattice vectors, side sqrt(2) by 1.
  std::vector<Vec<Rational>> pts = {vec<Rational>({0, 0, 0}), vec<Rational>({1, 1, 0}), vec<Rational>({0, 0, 1}), vec<Rational>({1, 1, 1})};
  auto p = Polytope<Rational>::hull(pts);
  CHECK(p.dim() == 2);
  auto v = volume(p);
  CHECK(v.coeff * v.coeff * v.radicand == 2);
  auto i2 = integrate_quadratic(p, QuadraticForm<Rational>::squared_norm(3));
  // int over [0,1]^2 of 2s^2 + t^2 with area factor sqrt 2.
  CHECK(i2.coeff * i2.coeff * i2.radicand == 2 * Rational(1, 1));
}

TEST_CASE("Monte Carlo sanity of the simplex trace identity") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::exponential_distribution<double> ex(1.0);
  std::vector<Vec<double>> verts;
  for (int i = 0; i < 4; ++i) {
    Vec<double> v(4);
    for (int j = 0; j < 4; ++j) v(j) = g(rng);
    verts.push_back(v / v.norm());
  }
  double cross = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) cross += verts[static_cast<std::size_t>(i)].dot(verts[static_cast<std::size_t>(j)]);
  const int k = 3;
  double formula = 2.0 / (k + 2) + cross / ((k + 1) * (k + 2));
  CHECK(simplex_second_moment<double>(verts).second.trace() == doctest::Approx(formula).epsilon(1e-12));
  const int samples = 1000000;
  double s = 0, s2 = 0;
  for (int t = 0; t < samples; ++t) {
    double w[4], tot = 0;
    for (double& x : w) tot += (x = ex(rng));
    Vec<double> x = Vec<double>::Zero(4);
    for (int i = 0; i < 4; ++i) x += (w[i] / tot) * verts[static_cast<std::size_t>(i)];
    double q = x.squaredNorm();
    s += q;
    s2 += q * q;
  }
  double mean = s / samples;
  double se = std::sqrt((s2 / samples - mean * mean) / samples);
  CHECK(std::fabs(mean - formula) <= 3 * se);
}
