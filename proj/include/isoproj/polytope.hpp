#pragma once

#include "isoproj/index_set.hpp"
#include "isoproj/subspace.hpp"

#include <memory>
#include <vector>

namespace isoproj {

template <class T>
struct Facet {
  Vec<T> normal;      // outer normal, inside the direction space of aff P
  T offset;           // <normal, x> <= offset on P, equality on the facet
  IndexSet vertices;  // incident vertices
};

/// One face of a polytope: its vertex set, dimension and the indices (in the
/// next lower dimension) of its own facets.
struct Face {
  IndexSet vertices;
  int dim = 0;
  std::vector<int> children;
  IndexSet facets;  // facets of the polytope containing this face

  std::vector<int> vertex_ids() const { return vertices.indices(); }
};

/// faces[j] lists the j-dimensional faces; faces[dim] holds the polytope itself.
struct FaceLattice {
  std::vector<std::vector<Face>> faces;

  int dim() const { return static_cast<int>(faces.size()) - 1; }
  std::vector<std::size_t> f_vector() const;  // f_0 .. f_{dim-1}
  /// Locates a face by vertex set; returns {dim, index} or {-1, -1}.
  std::pair<int, int> find(const IndexSet& vertices) const;
  bool satisfies_euler() const;
};

/// Quadratic polynomial f(x) = c + <b, x> + x^T A x on R^n.
template <class T>
struct QuadraticForm {
  T constant{0};
  Vec<T> linear;
  Mat<T> quadratic;

  static QuadraticForm one(int n);
  static QuadraticForm squared_norm(int n);
  T operator()(const Vec<T>& x) const;
};

/// Raw moments of a set in some chart, with respect to the coefficient
/// (Lebesgue in chart coordinates) measure.
template <class T>
struct Moments {
  T mass{0};
  Vec<T> first;
  Mat<T> second;

  Moments& operator+=(const Moments& o);
};

/// A bounded convex polytope in V-representation with cached facets and face
/// lattice. Immutable; copies share the underlying data.
template <class T>
class Polytope {
 public:
  Polytope() = default;

  /// Canonical hull: extreme points of conv(points), in input order.
  static Polytope hull(const std::vector<Vec<T>>& points);

  int ambient_dim() const { return data_->ambient_dim; }
  int dim() const { return data_->dim; }
  std::size_t num_vertices() const { return data_->vertices.size(); }
  const std::vector<Vec<T>>& vertices() const { return data_->vertices; }
  const Vec<T>& vertex(int i) const { return data_->vertices[static_cast<std::size_t>(i)]; }
  const std::vector<Facet<T>>& facets() const { return data_->facets; }
  const FaceLattice& lattice() const { return data_->lattice; }
  /// Chart of aff P. Full-dimensional polytopes use the identity chart.
  const AffineChart<T>& chart() const { return data_->chart; }
  bool full_dimensional() const { return dim() == ambient_dim(); }

  bool in_affine_hull(const Vec<T>& x) const;
  /// Closed membership (aff hull plus all facet inequalities).
  bool contains(const Vec<T>& x) const;
  /// Facets whose hyperplane contains x (x assumed in P).
  IndexSet tight_facets(const Vec<T>& x) const;
  /// Vertex set of the unique face F(P, x) with x in relint F.
  IndexSet minimal_face(const Vec<T>& x) const;

  std::vector<Vec<T>> face_points(const IndexSet& face) const;

  template <class U>
  Polytope<U> convert() const;

 private:
  struct Data {
    int ambient_dim = 0;
    int dim = 0;
    std::vector<Vec<T>> vertices;
    std::vector<Facet<T>> facets;
    FaceLattice lattice;
    AffineChart<T> chart;
  };
  std::shared_ptr<const Data> data_;
};

template <class T>
const FaceLattice& face_lattice(const Polytope<T>& p) {
  return p.lattice();
}

/// Face lattice from vertex-facet incidences (intersections of facets).
FaceLattice lattice_from_incidence(std::size_t num_vertices, int dim, const std::vector<IndexSet>& facets);

/// Simplices (vertex id lists of size dim+1) of a pulling triangulation:
/// fan from the lowest vertex over the triangulated facets not containing it.
template <class T>
std::vector<std::vector<int>> triangulate(const Polytope<T>& p);
/// Triangulates one face of the lattice (given by dimension and index).
template <class T>
std::vector<std::vector<int>> triangulate_face(const Polytope<T>& p, int dim, int index);

template <class T>
Measure<T> volume(const Polytope<T>& p);

/// Barycenter and normalized second moment (1/Vol) int x x^T of a simplex.
template <class T>
struct SimplexMoment {
  Vec<T> barycenter;
  Mat<T> second;
};

template <class T>
SimplexMoment<T> simplex_second_moment(const std::vector<Vec<T>>& vertices);

/// Moments of a simplex given by vertex coordinates in a k-dimensional chart.
template <class T>
Moments<T> simplex_moments(const std::vector<Vec<T>>& coords);

/// Chart moments of P (coordinates of chart()).
template <class T>
Moments<T> polytope_moments(const Polytope<T>& p);

/// Integral of f over the set whose chart moments are given; the result is
/// coeff * sqrt(gram of the chart).
template <class T>
Measure<T> integrate_with_moments(const Moments<T>& m, const AffineChart<T>& chart, const QuadraticForm<T>& f);

template <class T>
Measure<T> integrate_quadratic(const Polytope<T>& p, const QuadraticForm<T>& f);

/// P intersected with the affine subspace origin + span(directions), as a
/// polytope in ambient coordinates. Throws EmptySection when they miss.
template <class T>
Polytope<T> affine_section(const Polytope<T>& p, const AffineChart<T>& g);

/// Relative interior membership of x in conv(points) (LP with strict weights).
template <class T>
bool in_relative_interior(const std::vector<Vec<T>>& points, const Vec<T>& x);

/// Face property test: the vertex set `face` is a face iff no convex
/// combination outside it lands in its relative interior.
template <class T>
bool is_face(const Polytope<T>& p, const IndexSet& face);

/// conv{+-e_1..+-e_n}.
template <class T>
Polytope<T> cross_polytope(int n);
/// conv{e_1..e_{n+1}} in R^{n+1}.
template <class T>
Polytope<T> standard_simplex(int n);

/// Brute-force facet enumeration over vertex subsets; test oracle for hull().
template <class T>
std::vector<IndexSet> brute_force_facets(const std::vector<Vec<T>>& points);

}  // namespace isoproj
