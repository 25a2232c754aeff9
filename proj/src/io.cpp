#include "isoproj/io.hpp"

#include "isoproj/double_description.hpp"
#include "isoproj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace isoproj {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Rational rational_literal(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    bad("bad scalar \"" + s + "\"");
  }
}

template <class T>
std::vector<Vec<T>> vectors_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of vectors");
  std::vector<Vec<T>> out;
  for (const auto& v : j) out.push_back(vector_from_json<T>(v));
  for (const auto& v : out)
    if (v.size() != out.front().size()) bad("vectors have different lengths");
  return out;
}

template <class T>
Json face_json(const ShadowFace<T>& f) {
  Json j;
  j["index"] = f.index;
  j["vertices"] = f.vertices.indices();
  j["rank"] = f.rank;
  j["face_volume"] = measure_to_json(f.face_volume);
  j["projected_volume"] = measure_to_json(f.projected_volume);
  return j;
}

}  // namespace

template <class T>
Json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) return x.str();
  else return x;
}

template <class T>
T scalar_from_json(const Json& j) {
  Rational r;
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) r = Rational(j.get<std::uint64_t>());
    else r = Rational(j.get<std::int64_t>());
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) bad("non-finite scalar");
    if constexpr (!is_exact_v<T>) return x;
    r = Rational(x);
  } else if (j.is_string()) {
    r = rational_literal(j.get<std::string>());
  } else {
    bad("expected a number or a rational string");
  }
  if constexpr (is_exact_v<T>) return r;
  else return r.convert_to<double>();
}

template <class T>
Json vector_to_json(const Vec<T>& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(scalar_to_json<T>(v(i)));
  return j;
}

template <class T>
Vec<T> vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a vector");
  Vec<T> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from_json<T>(j[i]);
  return v;
}

template <class T>
Json matrix_to_json(const Mat<T>& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) j.push_back(vector_to_json<T>(Vec<T>(m.row(r).transpose())));
  return j;
}

template <class T>
Mat<T> matrix_from_json(const Json& j) {
  auto rows = vectors_from_json<T>(j);
  if (rows.empty()) return Mat<T>();
  Mat<T> m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return m;
}

template <class T>
Json polytope_to_json(const Polytope<T>& p) {
  Json j;
  j["type"] = "polytope";
  j["backend"] = backend_name(ScalarTraits<T>::backend);
  j["ambient_dim"] = p.ambient_dim();
  j["dim"] = p.dim();
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(vector_to_json<T>(v));
  j["vertices"] = verts;
  // Facets sorted by vertex incidence, independent of construction order.
  std::vector<std::pair<std::vector<int>, std::size_t>> order;
  for (std::size_t i = 0; i < p.facets().size(); ++i) order.emplace_back(p.facets()[i].vertices.indices(), i);
  std::sort(order.begin(), order.end());
  Json facets = Json::array();
  for (const auto& [inc, i] : order) {
    const auto& f = p.facets()[i];
    facets.push_back({{"normal", vector_to_json<T>(f.normal)}, {"offset", scalar_to_json<T>(f.offset)}, {"vertices", inc}});
  }
  j["facets"] = facets;
  j["f_vector"] = p.lattice().f_vector();
  return j;
}

template <class T>
Polytope<T> polytope_from_json(const Json& j) {
  if (!j.is_object()) bad("polytope must be a JSON object");
  std::vector<Vec<T>> pts;
  if (j.contains("vertices")) {
    pts = vectors_from_json<T>(j.at("vertices"));
  } else if (j.contains("points")) {
    pts = vectors_from_json<T>(j.at("points"));
  } else if (j.contains("inequalities")) {
    const Json& h = j.at("inequalities");
    Mat<T> a = matrix_from_json<T>(field(h, "A"));
    Vec<T> b = vector_from_json<T>(field(h, "b"));
    if (a.rows() != b.size() || a.rows() == 0) bad("inequalities: A and b disagree");
    pts = polytope_vertices<T>(a, b);
  } else {
    bad("polytope needs \"vertices\", \"points\" or \"inequalities\"");
  }
  if (pts.empty()) bad("polytope has no points");
  if (j.contains("ambient_dim") && j.at("ambient_dim").get<int>() != pts.front().size()) bad("ambient_dim disagrees with the points");
  return Polytope<T>::hull(pts);
}

template <class T>
Json subspace_to_json(const Subspace<T>& s) {
  Json j;
  j["type"] = "subspace";
  j["ambient_dim"] = s.ambient_dim();
  j["dim"] = s.dim();
  Json basis = Json::array();
  for (int i = 0; i < s.dim(); ++i) basis.push_back(vector_to_json<T>(s.basis_vector(i)));
  j["basis"] = basis;
  return j;
}

template <class T>
Subspace<T> subspace_from_json(const Json& j) {
  if (!j.is_object()) bad("subspace must be a JSON object");
  if (j.contains("coords")) {
    const int n = field(j, "ambient_dim").get<int>();
    return Subspace<T>::coordinate(n, j.at("coords").get<std::vector<int>>());
  }
  auto vs = vectors_from_json<T>(field(j, "basis"));
  if (vs.empty()) {
    return Subspace<T>::zero(field(j, "ambient_dim").get<int>());
  }
  const int n = static_cast<int>(vs.front().size());
  if (j.contains("ambient_dim") && j.at("ambient_dim").get<int>() != n) bad("ambient_dim disagrees with the basis");
  Mat<T> cols(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vs[i];
  auto s = Subspace<T>::from_orthogonal_basis(cols);
  if (s.dim() != static_cast<int>(vs.size())) bad("subspace basis is linearly dependent");
  return s;
}

template <class T>
Json quadratic_form_to_json(const QuadraticForm<T>& f) {
  return Json{{"c", scalar_to_json<T>(f.constant)}, {"b", vector_to_json<T>(f.linear)}, {"A", matrix_to_json<T>(f.quadratic)}};
}

template <class T>
QuadraticForm<T> quadratic_form_from_json(const Json& j, int n) {
  if (!j.is_object()) bad("quadratic form must be a JSON object");
  QuadraticForm<T> f;
  f.constant = j.contains("c") ? scalar_from_json<T>(j.at("c")) : T(0);
  f.linear = j.contains("b") ? vector_from_json<T>(j.at("b")) : Vec<T>::Zero(n);
  f.quadratic = j.contains("A") ? matrix_from_json<T>(j.at("A")) : Mat<T>::Zero(n, n);
  if (f.linear.size() != n) bad("quadratic form: b has the wrong length");
  if (f.quadratic.rows() != n || f.quadratic.cols() != n) bad("quadratic form: A has the wrong shape");
  return f;
}

template <class T>
Json hyperplane_to_json(const AffineHyperplane<T>& h) {
  return Json{{"normal", vector_to_json<T>(h.normal)}, {"offset", scalar_to_json<T>(h.offset)}};
}

template <class T>
AffineHyperplane<T> hyperplane_from_json(const Json& j) {
  AffineHyperplane<T> h;
  h.normal = vector_from_json<T>(field(j, "normal"));
  h.offset = j.contains("offset") ? scalar_from_json<T>(j.at("offset")) : T(0);
  if (h.normal.size() == 0) bad("hyperplane normal is empty");
  return h;
}

template <class T>
Json measure_to_json(const Measure<T>& m) {
  return Json{{"coeff", scalar_to_json<T>(m.coeff)}, {"radicand", scalar_to_json<T>(m.radicand)}, {"value", m.value()}};
}

template <class T>
Json inertia_to_json(const InertiaReport<T>& r) {
  Json j;
  j["dim"] = r.dim;
  j["volume"] = measure_to_json(r.volume);
  j["barycenter"] = vector_to_json<T>(r.barycenter);
  j["covariance"] = matrix_to_json<T>(r.covariance);
  j["l_power"] = scalar_to_json<T>(r.l_power);
  j["L"] = r.L;
  j["iso_map"] = {{"A", matrix_to_json<double>(r.iso_linear)}, {"b", vector_to_json<double>(r.iso_offset)}};
  return j;
}

template <class T>
Json steiner_to_json(const SteinerResult<T>& r, const SteinerReport* checks) {
  Json j;
  j["direction"] = vector_to_json<T>(r.direction);
  j["input"] = polytope_to_json(r.input);
  j["output"] = polytope_to_json(r.output);
  j["sigma_squared"] = scalar_to_json<T>(r.sigma_squared);
  j["sigma"] = r.sigma;
  j["l_power_in"] = scalar_to_json<T>(r.l_power_in);
  j["l_power_out"] = scalar_to_json<T>(r.l_power_out);
  j["L_in"] = r.L_in;
  j["L_out"] = r.L_out;
  if (checks) {
    j["residuals"] = {{"theta", checks->theta_residual},
                      {"theta_exact", checks->theta_exact},
                      {"mixed", checks->mixed_residual},
                      {"identity", checks->identity_residual},
                      {"relative_drop", checks->relative_drop},
                      {"monotone", checks->monotone},
                      {"volume_preserved", checks->volume_preserved},
                      {"reflection_symmetric", checks->reflection_symmetric},
                      {"projection_matches_section", checks->projection_matches_section}};
  }
  return j;
}

template <class T>
Json shadow_to_json(const ShadowDecomposition<T>& d) {
  Json j;
  j["subspace"] = subspace_to_json(d.subspace);
  j["u"] = vector_to_json<T>(d.direction.u);
  j["attempts"] = d.direction.attempts;
  j["seed"] = d.direction.seed;
  Json faces = Json::array();
  for (const auto& f : d.faces) faces.push_back(face_json(f));
  j["faces"] = faces;
  j["projected_volume"] = measure_to_json(d.projected_volume());
  return j;
}

const char* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::Exact;
  if (s == "float") return Backend::Float;
  bad("backend must be \"exact\" or \"float\"");
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["type"] = "experiment_config";
  j["kind"] = kind_name(c.kind);
  j["n"] = c.n;
  j["d"] = c.d_values;
  j["m"] = c.m;
  j["symmetric"] = c.symmetric;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["backend"] = backend_name(c.backend);
  j["tol"] = c.tolerance;
  j["threads"] = c.threads;
  j["timing"] = c.timing;
  j["cross_check_every"] = c.cross_check_every;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) bad("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    if (j.contains("kind")) {
      auto k = parse_kind(j.at("kind").get<std::string>());
      if (!k) bad("unknown experiment kind");
      c.kind = *k;
    }
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("d")) {
      if (j.at("d").is_array()) c.d_values = j.at("d").get<std::vector<int>>();
      else c.d_values = {j.at("d").get<int>()};
    }
    if (j.contains("m")) c.m = j.at("m").get<int>();
    if (j.contains("symmetric")) c.symmetric = j.at("symmetric").get<bool>();
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("backend")) c.backend = parse_backend(j.at("backend").get<std::string>());
    if (j.contains("tol")) c.tolerance = j.at("tol").get<double>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
    if (j.contains("cross_check_every")) c.cross_check_every = j.at("cross_check_every").get<int>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("experiment config: ") + e.what());
  }
  return c;
}

Json record_to_json(const ExperimentRecord& r) {
  return Json{{"trial", r.trial}, {"seed", r.seed}, {"n", r.n}, {"d", r.d}, {"m", r.m}, {"L", r.L}, {"ratio", r.ratio},
              {"r", r.r}, {"max_bernstein", r.max_bernstein}, {"ms", r.ms}, {"shadow_faces", r.shadow_faces},
              {"d_faces", r.d_faces}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
  if (!out) bad("write failed for " + path);
}

#define ISOPROJ_INSTANTIATE(T)                                                                 \
  template Json scalar_to_json<T>(const T&);                                                   \
  template T scalar_from_json<T>(const Json&);                                                 \
  template Json vector_to_json<T>(const Vec<T>&);                                              \
  template Vec<T> vector_from_json<T>(const Json&);                                            \
  template Json matrix_to_json<T>(const Mat<T>&);                                              \
  template Mat<T> matrix_from_json<T>(const Json&);                                            \
  template Json polytope_to_json<T>(const Polytope<T>&);                                       \
  template Polytope<T> polytope_from_json<T>(const Json&);                                     \
  template Json subspace_to_json<T>(const Subspace<T>&);                                       \
  template Subspace<T> subspace_from_json<T>(const Json&);                                     \
  template Json quadratic_form_to_json<T>(const QuadraticForm<T>&);                            \
  template QuadraticForm<T> quadratic_form_from_json<T>(const Json&, int);                     \
  template Json hyperplane_to_json<T>(const AffineHyperplane<T>&);                             \
  template AffineHyperplane<T> hyperplane_from_json<T>(const Json&);                           \
  template Json measure_to_json<T>(const Measure<T>&);                                         \
  template Json inertia_to_json<T>(const InertiaReport<T>&);                                   \
  template Json steiner_to_json<T>(const SteinerResult<T>&, const SteinerReport*);             \
  template Json shadow_to_json<T>(const ShadowDecomposition<T>&);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

}  // namespace isoproj
