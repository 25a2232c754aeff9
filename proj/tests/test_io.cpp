#include "doctest.h"
#include "support.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/io.hpp"

#include <cmath>

using namespace isoproj;
using namespace testing_support;

namespace {

template <class T>
bool same_vertices(const Polytope<T>& a, const Polytope<T>& b) {
  if (a.num_vertices() != b.num_vertices()) return false;
  for (const auto& v : a.vertices())
    if (!b.contains(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("scalars") {
  CHECK(scalar_to_json<Rational>(Rational(-3, 7)) == "-3/7");
  CHECK(scalar_from_json<Rational>(Json("-3/7")) == Rational(-3, 7));
  CHECK(scalar_from_json<Rational>(Json("0.1")) == Rational(1, 10));
  CHECK(scalar_from_json<Rational>(Json(5)) == 5);
  CHECK(scalar_from_json<Rational>(Json(0.5)) == Rational(1, 2));
  CHECK(scalar_from_json<double>(Json("1/4")) == 0.25);
  CHECK(scalar_from_json<double>(Json(2.5)) == 2.5);
  CHECK_THROWS_AS(scalar_from_json<Rational>(Json("abc")), InputError);
  CHECK_THROWS_AS(scalar_from_json<Rational>(Json("1/0")), InputError);
  CHECK_THROWS_AS(scalar_from_json<double>(Json::array()), InputError);
}

TEST_CASE("property: polytope documents round-trip") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    auto pts = random_integer_points<Rational>(n, n + 4, rng, 4);
    for (auto& v : pts) v /= Rational(1 + t % 3);
    auto k = Polytope<Rational>::hull(pts);
    Json once = polytope_to_json(k);
    auto back = polytope_from_json<Rational>(Json::parse(once.dump()));
    CHECK(same_vertices(k, back));
    CHECK(polytope_to_json(back).dump() == once.dump());

    auto kf = Polytope<double>::hull(random_integer_points<double>(n, n + 4, rng, 4));
    Json jf = polytope_to_json(kf);
    Json jb = polytope_to_json(polytope_from_json<double>(Json::parse(jf.dump())));
    CHECK(jb["vertices"].dump() == jf["vertices"].dump());
    REQUIRE(jb["facets"].size() == jf["facets"].size());
    for (std::size_t i = 0; i < jf["facets"].size(); ++i) {
      CHECK(jb["facets"][i]["vertices"] == jf["facets"][i]["vertices"]);
      auto a = vector_from_json<double>(jb["facets"][i]["normal"]);
      auto b = vector_from_json<double>(jf["facets"][i]["normal"]);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  // H-representation input.
  Json cube = {{"inequalities", {{"A", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}, {"b", {1, 1, "1/2", "1/2"}}}}};
  auto box = polytope_from_json<Rational>(cube);
  CHECK(box.num_vertices() == 4);
  CHECK(volume(box).coeff == 2);

  CHECK_THROWS_AS(polytope_from_json<Rational>(Json{{"vertices", {{0, 0}, {1}}}}), InputError);
  CHECK_THROWS_AS(polytope_from_json<Rational>(Json{{"shape", "cube"}}), InputError);
  CHECK_THROWS_AS(polytope_from_json<Rational>(Json{{"ambient_dim", 3}, {"vertices", {{0, 0}, {1, 0}}}}), InputError);
}

TEST_CASE("subspaces, forms, hyperplanes and configs round-trip") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    auto e = random_subspace<Rational>(5, 1 + t % 4, rng);
    Json j = subspace_to_json(e);
    auto back = subspace_from_json<Rational>(Json::parse(j.dump()));
    CHECK(back.basis() == e.basis());
    CHECK(subspace_to_json(back) == j);
  }
  auto c = subspace_from_json<Rational>(Json{{"ambient_dim", 4}, {"coords", {0, 2}}});
  CHECK(c.dim() == 2);
  CHECK(c.contains(unit<Rational>(4, 2)));
  CHECK_THROWS_AS(subspace_from_json<Rational>(Json{{"basis", {{1, 0}, {2, 0}}}}), InputError);

  QuadraticForm<Rational> f = QuadraticForm<Rational>::squared_norm(3);
  f.constant = Rational(1, 3);
  f.linear = vec<Rational>({1, -2, 0});
  Json jf = quadratic_form_to_json(f);
  auto fb = quadratic_form_from_json<Rational>(Json::parse(jf.dump()), 3);
  CHECK(fb.constant == f.constant);
  CHECK(fb.linear == f.linear);
  CHECK(fb.quadratic == f.quadratic);
  CHECK(quadratic_form_to_json(fb) == jf);
  CHECK(quadratic_form_from_json<double>(Json{{"c", 2}}, 2).quadratic.isZero());
  CHECK_THROWS_AS(quadratic_form_from_json<double>(Json{{"b", {1, 2, 3}}}, 2), InputError);

  AffineHyperplane<Rational> h{vec<Rational>({1, 1, 0}), Rational(1, 2)};
  auto hb = hyperplane_from_json<Rational>(Json::parse(hyperplane_to_json(h).dump()));
  CHECK(hb.normal == h.normal);
  CHECK(hb.offset == h.offset);

  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SphereProjection;
  cfg.n = 6;
  cfg.d_values = {2, 3, 4};
  cfg.m = 20;
  cfg.trials = 7;
  cfg.seed = 123456789012345ull;
  cfg.backend = Backend::Exact;
  cfg.tolerance = 1e-10;
  cfg.threads = 3;
  Json jc = config_to_json(cfg);
  ExperimentConfig cb = config_from_json(Json::parse(jc.dump()));
  CHECK(config_to_json(cb) == jc);
  CHECK(cb.seed == cfg.seed);
  CHECK(config_from_json(Json{{"d", 3}}).d_values == std::vector<int>{3});
  CHECK_THROWS_AS(config_from_json(Json{{"kind", "cube"}}), InputError);
  CHECK_THROWS_AS(config_from_json(Json{{"n", "six"}}), InputError);
  CHECK_THROWS_AS(parse_backend("double"), InputError);
}

TEST_CASE("report documents") {
  auto cube = Polytope<Rational>::hull(cube_points<Rational>(3, -0.5, 0.5));
  Json ji = inertia_to_json(inertia(cube));
  CHECK(ji["L"].get<double>() == doctest::Approx(1 / std::sqrt(12.0)));
  CHECK(ji["l_power"] == "1/1728");
  CHECK(ji["volume"]["coeff"] == "1");
  CHECK(ji["iso_map"]["A"].size() == 3);

  auto e = Subspace<Rational>::coordinate(3, {0, 1});
  auto dec = shadow_faces(cube, e, generic_direction(cube, e, 1));
  Json js = shadow_to_json(dec);
  CHECK(js["faces"].size() == dec.faces.size());
  CHECK(js["projected_volume"]["value"].get<double>() == doctest::Approx(1.0));

  auto res = steiner_symmetrize(cube, unit<Rational>(3, 2));
  auto checks = steiner_inertia_checks(res);
  Json jst = steiner_to_json(res, &checks);
  CHECK(jst["sigma_squared"] == "1");
  CHECK(jst["residuals"]["volume_preserved"].get<bool>());
  CHECK(same_vertices(polytope_from_json<Rational>(jst["output"]), res.output));

  ExperimentRecord r;
  r.trial = 3;
  r.L = 0.25;
  CHECK(record_to_json(r)["L"].get<double>() == 0.25);
  CHECK_THROWS_AS(read_json_file("/nonexistent/input.json"), InputError);
}
