#pragma once

#include "isoproj/index_set.hpp"
#include "isoproj/scalar.hpp"

#include <vector>

namespace isoproj {

/// Generators of the cone { y : A y <= 0 }.
template <class T>
struct ConeGenerators {
  std::vector<Vec<T>> rays;          // extreme rays of the pointed part
  std::vector<IndexSet> incidence;   // rows of A tight at each ray
  std::vector<Vec<T>> lineality;     // basis of the lineality space (both signs generate)
};

/// Double description method with the combinatorial adjacency test.
template <class T>
ConeGenerators<T> cone_generators(const Mat<T>& constraints);

/// Vertices of the bounded polyhedron { x : A x <= b }.
/// Throws Unbounded when a recession ray exists; empty result for empty sets.
template <class T>
std::vector<Vec<T>> polytope_vertices(const Mat<T>& a, const Vec<T>& b);

}  // namespace isoproj
