#pragma once

#include "isoproj/random_lab.hpp"
#include "isoproj/steiner.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace isoproj {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact scalars are written as "p/q" (or "p") strings, floats as numbers.
/// Parsing accepts numbers, rational strings and decimal strings.
template <class T>
Json scalar_to_json(const T& x);
template <class T>
T scalar_from_json(const Json& j);

template <class T>
Json vector_to_json(const Vec<T>& v);
template <class T>
Vec<T> vector_from_json(const Json& j);
/// Row-major nested arrays.
template <class T>
Json matrix_to_json(const Mat<T>& m);
template <class T>
Mat<T> matrix_from_json(const Json& j);

/// {"type":"polytope","backend","ambient_dim","dim","vertices","facets","f_vector"}.
/// Input needs only "vertices" (or "points"), or "inequalities": {"A","b"} for Ax <= b.
template <class T>
Json polytope_to_json(const Polytope<T>& p);
template <class T>
Polytope<T> polytope_from_json(const Json& j);

/// {"type":"subspace","ambient_dim","dim","basis"}; basis is a list of vectors.
/// Input may give "coords" (axis indices) instead of "basis".
template <class T>
Json subspace_to_json(const Subspace<T>& s);
template <class T>
Subspace<T> subspace_from_json(const Json& j);

/// {"c","b","A"}: f(x) = c + <b,x> + x^T A x. Missing parts are zero.
template <class T>
Json quadratic_form_to_json(const QuadraticForm<T>& f);
template <class T>
QuadraticForm<T> quadratic_form_from_json(const Json& j, int n);

/// {"normal","offset"}.
template <class T>
Json hyperplane_to_json(const AffineHyperplane<T>& h);
template <class T>
AffineHyperplane<T> hyperplane_from_json(const Json& j);

/// {"coeff","radicand","value"}: value = coeff sqrt(radicand).
template <class T>
Json measure_to_json(const Measure<T>& m);

/// {"dim","volume","barycenter","covariance","l_power","L","iso_map":{"A","b"}}.
template <class T>
Json inertia_to_json(const InertiaReport<T>& r);

template <class T>
Json steiner_to_json(const SteinerResult<T>& r, const SteinerReport* checks = nullptr);

/// Shadow faces as vertex index sets with volumes, plus u and the total.
template <class T>
Json shadow_to_json(const ShadowDecomposition<T>& d);

Json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);
Json record_to_json(const ExperimentRecord& r);

const char* backend_name(Backend b);
Backend parse_backend(const std::string& s);

/// Throws InputError when the file is missing or not JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace isoproj
