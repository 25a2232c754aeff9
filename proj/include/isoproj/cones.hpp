#pragma once

#include "isoproj/polytope.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace isoproj {

/// Finitely generated cone { sum l_i g_i : l_i >= 0 }; no generators means {0}.
template <class T>
struct Cone {
  int ambient_dim = 0;
  std::vector<Vec<T>> generators;
};

/// Normal cone of a face given by its vertex set. For lower-dimensional P the
/// cone is taken inside the direction space of aff P.
template <class T>
Cone<T> normal_cone(const Polytope<T>& p, const IndexSet& face);
/// Normal cone of the lattice face (dim, index).
template <class T>
Cone<T> normal_cone(const Polytope<T>& p, int dim, int index);
/// N(P, x) for a point x of P.
template <class T>
Cone<T> normal_cone_at(const Polytope<T>& p, const Vec<T>& x);

/// N_G(P, x) for P inside the affine subspace with direction space `within`:
/// the normal cone of P relative to aff P plus the part of `within` orthogonal
/// to aff P.
template <class T>
Cone<T> relative_normal_cone(const Polytope<T>& p, const Vec<T>& x, const Subspace<T>& within);

template <class T>
Cone<T> support_cone(const Polytope<T>& p, const Vec<T>& x);

/// Polar of C relative to `within`: { y in within : <g, y> <= 0 for all g }.
template <class T>
Cone<T> cone_polar(const Cone<T>& c, const Subspace<T>& within);
template <class T>
Cone<T> cone_polar(const Cone<T>& c);

template <class T>
bool cone_contains(const Cone<T>& c, const Vec<T>& w);
/// Equality by mutual generator containment.
template <class T>
bool cones_equal(const Cone<T>& a, const Cone<T>& b);
/// Intersection of two cones inside `within`, via polars of the polar sum.
template <class T>
Cone<T> cone_intersection(const Cone<T>& a, const Cone<T>& b, const Subspace<T>& within);
/// Generators projected onto W.
template <class T>
Cone<T> project_cone(const Cone<T>& c, const Subspace<T>& w);

template <class T>
bool projected_cone_contains(const Cone<T>& c, const Subspace<T>& w, const Vec<T>& u);
template <class T>
int projected_cone_dim(const Cone<T>& c, const Subspace<T>& w);
/// dim span C.
template <class T>
int cone_dim(const Cone<T>& c);

struct CertificateEntry {
  int face_dim = 0;
  int face_index = 0;
  int projected_dim = 0;
  std::string method;  // "zero", "span" or "lp"
};

template <class T>
struct GenericDirection {
  Vec<T> u;          // in W; unit length in float mode
  Subspace<T> w;     // E-perp inside the direction space of aff P
  Mat<T> frame;      // basis of W used for coordinates (small integers in exact mode)
  std::vector<CertificateEntry> certificate;
  int attempts = 0;
  std::uint64_t seed = 0;
};

/// Samples u in W = E-perp (relative to aff P) avoiding every projected normal
/// cone of deficient dimension, with a per-face certificate.
template <class T>
GenericDirection<T> generic_direction(const Polytope<T>& p, const Subspace<T>& e, std::uint64_t seed, int max_retries = 64);

/// Basis Z of the orthogonal complement of E inside `lin`. For x in W the map
/// x -> Z^T x is injective and Z^T P_W g = Z^T g, so cone membership and
/// dimension questions in W can be asked in these coordinates.
template <class T>
Mat<T> complement_frame(const Subspace<T>& e, const Subspace<T>& lin);

/// Re-runs the certificate for a given u; returns false on the first face whose
/// deficient projected normal cone contains u.
template <class T>
bool certify_direction(const Polytope<T>& p, const Subspace<T>& e, const Mat<T>& frame, const Vec<T>& u,
                       std::vector<CertificateEntry>* out);

/// Frame coordinates Z^T n of the facet normals of P (rows).
template <class T>
Mat<T> facet_coordinates(const Polytope<T>& p, const Mat<T>& frame);

}  // namespace isoproj
