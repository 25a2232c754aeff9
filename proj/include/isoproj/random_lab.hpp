#pragma once

#include "isoproj/isotropy.hpp"
#include "isoproj/shadow.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace isoproj {

/// Row space of a d x n standard Gaussian matrix. Exact mode rounds the
/// entries to a 2^-bits dyadic grid first.
template <class T>
Subspace<T> random_subspace(int n, int d, std::mt19937_64& rng, int bits = 12);

/// Row space of a row-centered d x (n+1) Gaussian matrix: a subspace of
/// H = (1,...,1)-perp in R^{n+1}.
template <class T>
Subspace<T> random_subspace_in_H(int n, int d, std::mt19937_64& rng, int bits = 12);

/// Uniform point on S^{n-1}. Exact mode maps rationalized stereographic
/// coordinates back to the sphere, so the norm is exactly 1.
template <class T>
Vec<T> random_sphere_point(int n, std::mt19937_64& rng, int bits = 20);

/// conv{P_1..P_m} or conv{+-P_1..+-P_m} for i.i.d. uniform sphere points.
template <class T>
Polytope<T> random_sphere_polytope(int n, int m, bool symmetric, std::mt19937_64& rng);

/// S_F = sum over ordered pairs i != j of <Q_i, Q_j> for every d-face F.
template <class T>
std::vector<T> bernstein_face_sums(const Polytope<T>& k, int d);

/// (1/(2 sqrt 2)) sqrt(log(m/n)/n).
double inradius_threshold(int n, int m);

enum class ExperimentKind { B1Projection, SimplexProjection, SphereProjection };

const char* kind_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::B1Projection;
  int n = 4;
  std::vector<int> d_values{2};
  int m = 0;                 // sphere kind: number of random points
  bool symmetric = true;     // sphere kind
  int trials = 10;           // per d
  std::uint64_t seed = 0;
  Backend backend = Backend::Float;
  double tolerance = 1e-9;
  int threads = 1;
  bool timing = false;
  int cross_check_every = 10;
};

/// Throws PreconditionViolated on invalid parameters.
void validate(const ExperimentConfig& cfg);

struct ExperimentRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0;
  int d = 0;
  int m = 0;                   // vertex count of K
  double L = 0.0;              // L of P_E K
  double ratio = 0.0;          // L sqrt(d/n)
  double r = 0.0;              // inradius of K about its barycenter
  double max_bernstein = 0.0;  // max_F S_F over d-faces
  double ms = 0.0;
  std::size_t shadow_faces = 0;
  std::size_t d_faces = 0;         // |F_d(K)|
  bool cross_checked = false;
  double cross_check_error = 0.0;  // relative |L_shadow - L_hull|
};

struct TrialError {
  int trial = 0;
  std::string message;
};

struct ExperimentSummary {
  std::size_t records = 0;
  std::size_t errors = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double p90_ratio = 0.0;
  double max_L = 0.0;
  double median_L = 0.0;
  std::size_t cross_checks = 0;
  double max_cross_check_error = 0.0;
  // Per d: max and median ratio, in the order of cfg.d_values.
  std::vector<int> d_values;
  std::vector<double> max_ratio_by_d;
  std::vector<double> median_ratio_by_d;
  std::vector<std::size_t> count_by_d;
  std::vector<std::size_t> max_d_faces_by_d;
  std::vector<double> union_bound_by_d;  // binom(vertex count, d+1) at the largest vertex count
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;  // ordered by trial id
  std::vector<TrialError> errors;
  ExperimentSummary summary;
};

/// Runs every (d, trial) pair on its own RNG stream, so the output does not
/// depend on the thread count.
ExperimentResult run_projection_experiment(const ExperimentConfig& cfg);

/// `trial,seed,n,d,m,L,ratio,r,max_bernstein,ms` with a header line.
std::string records_csv(const std::vector<ExperimentRecord>& records);

/// Summary JSON text (schema_version 1).
std::string summary_json(const ExperimentResult& result);

/// L of P_E K through the shadow moments, in E coordinates.
template <class T>
InertiaReport<T> projection_inertia(const ShadowDecomposition<T>& dec);

}  // namespace isoproj
