#pragma once

// Scalar backends: exact rationals (GMP) and binary doubles with a
// thread-local comparison tolerance.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace isoproj {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

enum class Backend { Exact, Float };

/// Relative tolerance used by float-mode comparisons on the calling thread.
double tolerance();
void set_tolerance(double tau);

class ToleranceScope {
 public:
  explicit ToleranceScope(double tau) : saved_(tolerance()) { set_tolerance(tau); }
  ~ToleranceScope() { set_tolerance(saved_); }
  ToleranceScope(const ToleranceScope&) = delete;
  ToleranceScope& operator=(const ToleranceScope&) = delete;

 private:
  double saved_;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr Backend backend = Backend::Float;
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static std::string to_string(double x);
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr Backend backend = Backend::Exact;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value in exact conversion");
    return Rational(x);
  }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static std::string to_string(const Rational& x) { return x.str(); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <class T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

template <class T>
T from_double(double x) {
  return ScalarTraits<T>::from_double(x);
}

/// Sign with tolerance: in float mode |x| <= tau * scale counts as zero.
template <class T>
int sign(const T& x, double scale = 1.0) {
  if constexpr (is_exact_v<T>) {
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
  } else {
    const double eps = tolerance() * (scale > 1.0 ? scale : 1.0);
    return x > eps ? 1 : (x < -eps ? -1 : 0);
  }
}

template <class T>
bool is_zero(const T& x, double scale = 1.0) {
  return sign(x, scale) == 0;
}

template <class T>
bool approx_equal(const T& a, const T& b, double scale = 1.0) {
  return is_zero(T(a - b), scale);
}

/// Round to the dyadic grid 2^-bits; used to produce small exact rationals
/// from floating samples.
Rational dyadic_round(double x, int bits);

/// Parse "p/q", "p" or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

/// Magnitude helper used for float-mode tolerance scaling.
template <class T>
double max_abs(const Vec<T>& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::fabs(to_double(v(i))));
  return m;
}

template <class T>
double max_abs(const Mat<T>& a) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(to_double(a(i, j))));
  return m;
}

/// A k-dimensional measure represented as coeff * sqrt(radicand).
/// Exact-mode volumes of lower-dimensional sets are irrational in general;
/// keeping the Gram factor symbolic lets identities be checked exactly.
template <class T>
struct Measure {
  T coeff{0};
  T radicand{1};

  double value() const { return to_double(coeff) * std::sqrt(to_double(radicand)); }
};

template <class T>
Vec<T> to_backend(const Eigen::VectorXd& v) {
  Vec<T> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = from_double<T>(v(i));
  return out;
}

template <class T>
Eigen::VectorXd to_double_vec(const Vec<T>& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

template <class T>
Eigen::MatrixXd to_double_mat(const Mat<T>& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = to_double(a(i, j));
  return out;
}

}  // namespace isoproj
