#pragma once

#include "isoproj/cones.hpp"

#include <optional>

namespace isoproj {

template <class T>
struct ShadowFace {
  int index = 0;                   // position in lattice level d
  IndexSet vertices;
  Measure<T> face_volume;          // Vol_d(F)
  Measure<T> projected_volume;     // Vol_d(P_E F)
  Moments<T> projected_moments;    // moments of P_E F in E coordinates
  Moments<T> face_moments;         // moments of F in its own chart
  AffineChart<T> face_chart;
  int rank = 0;                    // rank of P_E on the edge space of F
};

/// The d-faces whose projected normal cone contains u; their projections tile P_E K.
template <class T>
struct ShadowDecomposition {
  Polytope<T> polytope;
  Subspace<T> subspace;
  GenericDirection<T> direction;
  std::vector<ShadowFace<T>> faces;

  /// Sum of face moments: the moments of P_E K in E coordinates.
  Moments<T> moments() const;
  /// Sum of Vol_d(P_E F), radicand = Gram of the E basis.
  Measure<T> projected_volume() const;
};

template <class T>
ShadowDecomposition<T> shadow_faces(const Polytope<T>& p, const Subspace<T>& e, const GenericDirection<T>& u);
template <class T>
ShadowDecomposition<T> shadow_faces(const Polytope<T>& p, const Subspace<T>& e, std::uint64_t seed);

struct TilingReport {
  std::size_t pairs_checked = 0;
  std::size_t overlapping_pairs = 0;
  double volume_sum = 0.0;
  double oracle_volume = 0.0;
  double residual = 0.0;        // |sum - oracle|
  bool exact_match = false;     // exact mode: identical rationals
  std::vector<int> ranks;
  bool injective = true;
  // Filled when the full family is enumerated.
  bool enumerated_all = false;
  std::size_t family_size = 0;
  int max_family_dim = -1;
};

struct TilingOptions {
  std::size_t all_pairs_limit = 20;
  std::size_t sampled_pairs = 200;
  bool enumerate_all = false;
  std::uint64_t seed = 0;
};

template <class T>
TilingReport verify_tiling(const ShadowDecomposition<T>& dec, const TilingOptions& opts = {});

/// Integral of f (a quadratic on R^n, evaluated on E) over P_E K.
template <class T>
Measure<T> integrate_over_projection(const ShadowDecomposition<T>& dec, const QuadraticForm<T>& f);
template <class T>
Measure<T> integrate_over_projection(const Polytope<T>& p, const Subspace<T>& e, const GenericDirection<T>& u,
                                     const QuadraticForm<T>& f);

template <class T>
struct MomentBound {
  T lhs;  // mean of |x|^2 over P_E K
  T rhs;  // max over shadow faces of the mean of |y|^2 over F
  double lhs_value() const { return to_double(lhs); }
  double rhs_value() const { return to_double(rhs); }
};

template <class T>
MomentBound<T> projection_moment_bound(const ShadowDecomposition<T>& dec);

/// Oracle: hull of the projected vertices, in E coordinates.
template <class T>
Polytope<T> projected_hull(const Polytope<T>& p, const Subspace<T>& e);
/// f restricted to E, written in E coordinates.
template <class T>
QuadraticForm<T> restrict_to_subspace(const QuadraticForm<T>& f, const Subspace<T>& e);

}  // namespace isoproj
