#pragma once

#include "isoproj/polytope.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testing_support {

using isoproj::Mat;
using isoproj::Rational;
using isoproj::Vec;

template <class T>
Vec<T> vec(std::initializer_list<double> xs) {
  Vec<T> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = isoproj::from_double<T>(x);
  return v;
}

template <class T>
Vec<T> unit(int n, int i, int s = 1) {
  Vec<T> v = Vec<T>::Zero(n);
  v(i) = T(s);
  return v;
}

template <class T>
std::vector<Vec<T>> cube_points(int n, double lo = 0.0, double hi = 1.0) {
  std::vector<Vec<T>> pts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec<T> v(n);
    for (int i = 0; i < n; ++i) v(i) = isoproj::from_double<T>((mask >> i) & 1 ? hi : lo);
    pts.push_back(v);
  }
  return pts;
}

template <class T>
std::vector<Vec<T>> cross_points(int n) {
  std::vector<Vec<T>> pts;
  for (int i = 0; i < n; ++i) {
    pts.push_back(unit<T>(n, i, 1));
    pts.push_back(unit<T>(n, i, -1));
  }
  return pts;
}

template <class T>
std::vector<Vec<T>> simplex_points(int n) {
  std::vector<Vec<T>> pts;
  for (int i = 0; i <= n; ++i) pts.push_back(unit<T>(n + 1, i));
  return pts;
}

/// Small-integer random points; exact-friendly.
template <class T>
std::vector<Vec<T>> random_integer_points(int n, int m, std::mt19937_64& rng, int range = 6) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Vec<T>> pts;
  for (int j = 0; j < m; ++j) {
    Vec<T> v(n);
    for (int i = 0; i < n; ++i) v(i) = T(d(rng));
    pts.push_back(v);
  }
  return pts;
}

inline double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double fact(int k) {
  double r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace testing_support
