#pragma once

#include "isoproj/isotropy.hpp"

#include <cstdint>

namespace isoproj {

/// { x : <normal, x> = offset }.
template <class T>
struct AffineHyperplane {
  Vec<T> normal;
  T offset{0};
};

template <class T>
Polytope<T> hyperplane_section(const Polytope<T>& p, const AffineHyperplane<T>& h);

/// Steiner symmetral of K with respect to nu-perp.
///
/// nu need not be a unit vector: points are split as x = y + s nu with y
/// orthogonal to nu, which makes every quantity rational in exact mode.
template <class T>
struct SteinerResult {
  Polytope<T> input;
  Vec<T> direction;
  Polytope<T> output;
  T sigma_squared{0};   // int_S <x,nu>^2 / int_K <x,nu>^2, nu normalized
  double sigma = 0.0;
  T l_power_in{0};      // L^{2n}
  T l_power_out{0};
  double L_in = 0.0;
  double L_out = 0.0;
};

/// Built from the H-representation {vertical facets, +-2s <= U_i(y) - L_j(y)}
/// over upper facets i and lower facets j, then enumerated by double
/// description. Requires a full-dimensional body in ambient dimension <= 4.
template <class T>
SteinerResult<T> steiner_symmetrize(const Polytope<T>& p, const Vec<T>& nu);

struct SteinerReport {
  double theta_residual = 0.0;     // max |int_S <x,t>^2 - L_in^2| / L_in^2 over sampled t perp nu
  bool theta_exact = false;        // int_S <x,t>^2 == int_K <x,t>^2 for every sample (exact mode)
  double mixed_residual = 0.0;     // max |int_S <x,t><x,nu>| / L_in^2
  double sigma_squared = 0.0;
  double identity_residual = 0.0;  // |L_out - sigma^{1/n} L_in| / L_in
  bool monotone = false;           // L_out <= L_in
  bool volume_preserved = false;
  bool reflection_symmetric = false;
  bool projection_matches_section = false;  // P_H S(K) = S(K) cap H = P_H K
  double relative_drop = 0.0;      // 1 - L_out / L_in
};

/// Throws NotIsotropicInput unless the input has volume 1, barycenter 0 and
/// covariance L^2 I within 10 tau.
template <class T>
SteinerReport steiner_inertia_checks(const SteinerResult<T>& res, int samples = 8, std::uint64_t seed = 0);

/// Vol_{n-1}(P cap theta-perp) (int_P <x,theta>^2)^{1/2} for unit theta; P must
/// have volume 1 and barycenter 0.
template <class T>
double hensley_ratio(const Polytope<T>& p, const Vec<T>& theta);

struct ProjectionSectionReport {
  double L_body = 0.0;
  double L_projection = 0.0;     // L of P_H K
  double L_section = 0.0;        // L of K cap H
  double ratio = 0.0;            // L_projection / L_body
  double volume = 0.0;
  double line_projection = 0.0;  // Vol_1(P_E K), E = span(nu)
  double line_section = 0.0;     // Vol_1(K cap E)
  double hyperplane_projection = 0.0;  // Vol_{n-1}(P_H K)
  double hyperplane_section = 0.0;     // Vol_{n-1}(K cap H)
  double lower_product = 0.0;    // Vol_1(P_E K) Vol_{n-1}(K cap H)
  double upper_product = 0.0;    // (1/n) Vol_{n-1}(P_H K) Vol_1(K cap E)
  bool symmetric = false;
};

template <class T>
ProjectionSectionReport projection_section_comparison(const Polytope<T>& p, const Vec<T>& nu);

}  // namespace isoproj
