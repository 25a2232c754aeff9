#include "isoproj/random_lab.hpp"

#include "isoproj/errors.hpp"
#include "isoproj/linalg.hpp"
#include "isoproj/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace isoproj {

namespace {

template <class T>
T gaussian_entry(std::mt19937_64& rng, int bits) {
  std::normal_distribution<double> g;
  if constexpr (is_exact_v<T>) return dyadic_round(g(rng), bits);
  else return g(rng);
}

template <class T>
bool unit_norm(const Vec<T>& v) {
  T s = squared_norm<T>(v);
  if constexpr (is_exact_v<T>) return s == T(1);
  else return std::fabs(s - 1.0) <= 1e3 * tolerance();
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  idx = idx == 0 ? 0 : idx - 1;
  return v[std::min(idx, v.size() - 1)];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

template <class T>
double centered_inradius(const Polytope<T>& k) {
  const Vec<T> c = inertia(k).barycenter;
  std::vector<Vec<T>> pts;
  for (const auto& v : k.vertices()) pts.push_back(v - c);
  return radii(Polytope<T>::hull(pts)).r;
}

template <class T>
double max_face_sum(const Polytope<T>& k, int d) {
  for (const auto& v : k.vertices())
    if (!unit_norm<T>(v)) return 0.0;
  double best = 0.0;
  bool first = true;
  for (const T& s : bernstein_face_sums(k, d)) {
    double x = to_double(s);
    if (first || x > best) best = x;
    first = false;
  }
  return best;
}

// Bodies and per-d quantities shared by all trials of a fixed-body run.
template <class T>
struct SharedBody {
  Polytope<T> body;
  double r = 0.0;
  std::vector<double> max_bernstein;  // indexed like cfg.d_values
};

template <class T>
ExperimentRecord run_trial(const ExperimentConfig& cfg, const SharedBody<T>* shared, int trial, int d_index) {
  const int d = cfg.d_values[static_cast<std::size_t>(d_index)];
  ExperimentRecord rec;
  rec.trial = trial;
  rec.seed = stream_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  rec.n = cfg.n;
  rec.d = d;
  std::mt19937_64 rng(rec.seed);
  const auto start = std::chrono::steady_clock::now();

  Polytope<T> k;
  Subspace<T> e;
  switch (cfg.kind) {
    case ExperimentKind::B1Projection:
      k = shared->body;
      e = random_subspace<T>(cfg.n, d, rng);
      rec.r = shared->r;
      rec.max_bernstein = shared->max_bernstein[static_cast<std::size_t>(d_index)];
      break;
    case ExperimentKind::SimplexProjection:
      k = shared->body;
      e = random_subspace_in_H<T>(cfg.n, d, rng);
      rec.r = shared->r;
      rec.max_bernstein = shared->max_bernstein[static_cast<std::size_t>(d_index)];
      break;
    case ExperimentKind::SphereProjection:
      k = random_sphere_polytope<T>(cfg.n, cfg.m, cfg.symmetric, rng);
      e = random_subspace<T>(cfg.n, d, rng);
      rec.r = centered_inradius(k);
      rec.max_bernstein = max_face_sum(k, d);
      break;
  }
  rec.m = static_cast<int>(k.num_vertices());
  rec.d_faces = k.lattice().faces[static_cast<std::size_t>(d)].size();
  const std::uint64_t direction_seed = rng();
  auto dec = shadow_faces(k, e, generic_direction(k, e, direction_seed));
  rec.shadow_faces = dec.faces.size();
  const auto rep = projection_inertia(dec);
  rec.L = rep.L;
  rec.ratio = rec.L * std::sqrt(static_cast<double>(d) / static_cast<double>(cfg.n));
  if (cfg.cross_check_every > 0 && trial % cfg.cross_check_every == 0) {
    const double lh = inertia(projected_hull(k, e)).L;
    rec.cross_checked = true;
    rec.cross_check_error = std::fabs(rec.L - lh) / lh;
  }
  if (cfg.timing) rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

template <class T>
ExperimentResult run_typed(const ExperimentConfig& cfg) {
  ToleranceScope scope(cfg.tolerance);
  ExperimentResult out;
  out.config = cfg;
  std::optional<SharedBody<T>> shared;
  if (cfg.kind != ExperimentKind::SphereProjection) {
    SharedBody<T> sb;
    sb.body = cfg.kind == ExperimentKind::B1Projection ? cross_polytope<T>(cfg.n) : standard_simplex<T>(cfg.n);
    sb.r = centered_inradius(sb.body);
    for (int d : cfg.d_values) sb.max_bernstein.push_back(max_face_sum(sb.body, d));
    shared = std::move(sb);
  }

  const int per_d = cfg.trials;
  const int total = per_d * static_cast<int>(cfg.d_values.size());
  std::vector<std::optional<ExperimentRecord>> slots(static_cast<std::size_t>(total));
  std::vector<std::string> failures(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    ToleranceScope inner(cfg.tolerance);
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= total) return;
      try {
        slots[static_cast<std::size_t>(t)] = run_trial<T>(cfg, shared ? &*shared : nullptr, t, t / per_d);
      } catch (const std::exception& ex) {
        failures[static_cast<std::size_t>(t)] = ex.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min(cfg.threads, total));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (int t = 0; t < total; ++t) {
    if (slots[static_cast<std::size_t>(t)]) out.records.push_back(*slots[static_cast<std::size_t>(t)]);
    else out.errors.push_back({t, failures[static_cast<std::size_t>(t)]});
  }

  auto& s = out.summary;
  s.records = out.records.size();
  s.errors = out.errors.size();
  std::vector<double> ratios, ls;
  for (const auto& r : out.records) {
    ratios.push_back(r.ratio);
    ls.push_back(r.L);
    if (r.cross_checked) {
      ++s.cross_checks;
      s.max_cross_check_error = std::max(s.max_cross_check_error, r.cross_check_error);
    }
  }
  s.max_ratio = ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
  s.median_ratio = median(ratios);
  s.p90_ratio = quantile(ratios, 0.9);
  s.max_L = ls.empty() ? 0.0 : *std::max_element(ls.begin(), ls.end());
  s.median_L = median(ls);
  s.d_values = cfg.d_values;
  for (int d : cfg.d_values) {
    std::vector<double> rd;
    std::size_t faces = 0;
    int verts = 0;
    for (const auto& r : out.records)
      if (r.d == d) {
        rd.push_back(r.ratio);
        faces = std::max(faces, r.d_faces);
        verts = std::max(verts, r.m);
      }
    s.max_d_faces_by_d.push_back(faces);
    s.union_bound_by_d.push_back(binomial(verts, d + 1));
    s.max_ratio_by_d.push_back(rd.empty() ? 0.0 : *std::max_element(rd.begin(), rd.end()));
    s.median_ratio_by_d.push_back(median(rd));
    s.count_by_d.push_back(rd.size());
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

template <class T>
Subspace<T> random_subspace(int n, int d, std::mt19937_64& rng, int bits) {
  if (d < 1 || d > n - 1) throw GeometryError(ErrorCode::PreconditionViolated, "need 1 <= d <= n - 1");
  while (true) {
    Mat<T> cols(n, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < n; ++i) cols(i, j) = gaussian_entry<T>(rng, bits);
    auto s = Subspace<T>::span_of(cols);
    if (s.dim() == d) return s;
  }
}

template <class T>
Subspace<T> random_subspace_in_H(int n, int d, std::mt19937_64& rng, int bits) {
  if (d < 1 || d > n - 1) throw GeometryError(ErrorCode::PreconditionViolated, "need 1 <= d <= n - 1");
  while (true) {
    Mat<T> cols(n + 1, d);
    for (int j = 0; j < d; ++j) {
      T mean{0};
      for (int i = 0; i <= n; ++i) mean += (cols(i, j) = gaussian_entry<T>(rng, bits));
      mean /= T(n + 1);
      for (int i = 0; i <= n; ++i) cols(i, j) -= mean;
    }
    auto s = Subspace<T>::span_of(cols);
    if (s.dim() == d) return s;
  }
}

template <class T>
Vec<T> random_sphere_point(int n, std::mt19937_64& rng, int bits) {
  if (n < 1) throw GeometryError(ErrorCode::PreconditionViolated, "dimension must be positive");
  std::normal_distribution<double> g;
  Eigen::VectorXd p(n);
  do {
    for (int i = 0; i < n; ++i) p(i) = g(rng);
  } while (p.norm() == 0.0);
  p /= p.norm();
  if constexpr (!is_exact_v<T>) {
    return p;
  } else {
    if (n == 1) return Vec<T>::Constant(1, T(p(0) < 0 ? -1 : 1));
    // Project from the pole opposite to p so that |z| <= 1.
    const double last = p(n - 1);
    const double pole = last > 0 ? -1.0 : 1.0;
    Vec<T> z(n - 1);
    for (int i = 0; i + 1 < n; ++i) z(i) = dyadic_round(p(i) / (1.0 - pole * last), bits);
    const T zz = squared_norm<T>(z);
    Vec<T> x(n);
    x.head(n - 1) = z * (T(2) / (zz + T(1)));
    x(n - 1) = T(pole) * (zz - T(1)) / (zz + T(1));
    return x;
  }
}

template <class T>
Polytope<T> random_sphere_polytope(int n, int m, bool symmetric, std::mt19937_64& rng) {
  if (m < n) throw GeometryError(ErrorCode::PreconditionViolated, "need m >= n points");
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Vec<T>> pts;
    for (int i = 0; i < m; ++i) {
      Vec<T> v = random_sphere_point<T>(n, rng);
      if (symmetric) pts.push_back(-v);
      pts.push_back(v);
    }
    auto k = Polytope<T>::hull(pts);
    if (k.dim() == n) return k;
  }
  throw GeometryError(ErrorCode::DegenerateHull, "random hull stayed lower-dimensional");
}

template <class T>
std::vector<T> bernstein_face_sums(const Polytope<T>& k, int d) {
  for (const auto& v : k.vertices())
    if (!unit_norm<T>(v)) throw GeometryError(ErrorCode::PreconditionViolated, "vertices must lie on the unit sphere");
  if (d < 0 || d > k.dim()) throw GeometryError(ErrorCode::PreconditionViolated, "face dimension out of range");
  std::vector<T> out;
  for (const auto& face : k.lattice().faces[static_cast<std::size_t>(d)]) {
    Vec<T> sum = Vec<T>::Zero(k.ambient_dim());
    T norms{0};
    for (int i : face.vertices.indices()) {
      sum += k.vertex(i);
      norms += squared_norm<T>(k.vertex(i));
    }
    out.push_back(squared_norm<T>(sum) - norms);
  }
  return out;
}

double inradius_threshold(int n, int m) {
  return std::sqrt(std::log(static_cast<double>(m) / n) / n) / (2.0 * std::sqrt(2.0));
}

const char* kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::B1Projection: return "b1-projection";
    case ExperimentKind::SimplexProjection: return "simplex-projection";
    case ExperimentKind::SphereProjection: return "sphere-projection";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(const std::string& name) {
  for (auto k : {ExperimentKind::B1Projection, ExperimentKind::SimplexProjection, ExperimentKind::SphereProjection})
    if (name == kind_name(k)) return k;
  return std::nullopt;
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& what) { throw GeometryError(ErrorCode::PreconditionViolated, what); };
  if (cfg.n < 2) fail("n must be at least 2");
  if (cfg.d_values.empty()) fail("no d values");
  for (int d : cfg.d_values)
    if (d < 1 || d > cfg.n - 1) fail("d must satisfy 1 <= d <= n - 1");
  if (cfg.trials < 1) fail("trials must be positive");
  if (cfg.kind == ExperimentKind::SphereProjection && cfg.m < cfg.n) fail("m must be at least n");
  if (cfg.threads < 1) fail("threads must be positive");
  if (!(cfg.tolerance > 0)) fail("tolerance must be positive");
}

ExperimentResult run_projection_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  return cfg.backend == Backend::Exact ? run_typed<Rational>(cfg) : run_typed<double>(cfg);
}

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "trial,seed,n,d,m,L,ratio,r,max_bernstein,ms\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.d << ',' << r.m << ',' << format_double(r.L) << ','
        << format_double(r.ratio) << ',' << format_double(r.r) << ',' << format_double(r.max_bernstein) << ','
        << format_double(r.ms) << '\n';
  }
  return out.str();
}

std::string summary_json(const ExperimentResult& result) {
  const auto& c = result.config;
  const auto& s = result.summary;
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = {{"kind", kind_name(c.kind)},
                 {"n", c.n},
                 {"d", c.d_values},
                 {"m", c.m},
                 {"symmetric", c.symmetric},
                 {"trials", c.trials},
                 {"seed", c.seed},
                 {"backend", c.backend == Backend::Exact ? "exact" : "float"},
                 {"tol", c.tolerance}};
  j["records"] = s.records;
  j["ratio"] = {{"max", s.max_ratio}, {"median", s.median_ratio}, {"p90", s.p90_ratio}};
  j["L"] = {{"max", s.max_L}, {"median", s.median_L}};
  nlohmann::ordered_json by_d = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.d_values.size(); ++i)
    by_d.push_back({{"d", s.d_values[i]}, {"count", s.count_by_d[i]}, {"max_ratio", s.max_ratio_by_d[i]}, {"median_ratio", s.median_ratio_by_d[i]},
                    {"max_d_faces", s.max_d_faces_by_d[i]}, {"union_bound", s.union_bound_by_d[i]}});
  j["by_d"] = by_d;
  j["cross_check"] = {{"count", s.cross_checks}, {"max_relative_error", s.max_cross_check_error}};
  nlohmann::ordered_json errs = nlohmann::ordered_json::array();
  for (const auto& e : result.errors) errs.push_back({{"trial", e.trial}, {"message", e.message}});
  j["errors"] = errs;
  return j.dump(2) + "\n";
}

template <class T>
InertiaReport<T> projection_inertia(const ShadowDecomposition<T>& dec) {
  const int d = dec.subspace.dim();
  return inertia_from_moments(dec.moments(), AffineChart<T>{Vec<T>::Zero(d), Subspace<T>::whole(d)});
}

#define ISOPROJ_INSTANTIATE(T)                                                                         \
  template Subspace<T> random_subspace<T>(int, int, std::mt19937_64&, int);                            \
  template Subspace<T> random_subspace_in_H<T>(int, int, std::mt19937_64&, int);                       \
  template Vec<T> random_sphere_point<T>(int, std::mt19937_64&, int);                                  \
  template Polytope<T> random_sphere_polytope<T>(int, int, bool, std::mt19937_64&);                    \
  template std::vector<T> bernstein_face_sums<T>(const Polytope<T>&, int);                             \
  template InertiaReport<T> projection_inertia<T>(const ShadowDecomposition<T>&);

ISOPROJ_INSTANTIATE(double)
ISOPROJ_INSTANTIATE(Rational)

}  // namespace isoproj
