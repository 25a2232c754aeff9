#include "isoproj/scalar.hpp"

#include "isoproj/errors.hpp"

#include <cstdio>

namespace isoproj {

namespace {
thread_local double g_tolerance = 1e-9;
}

double tolerance() { return g_tolerance; }
void set_tolerance(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance = tau;
}

std::string ScalarTraits<double>::to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Rational dyadic_round(double x, int bits) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value in dyadic_round");
  double scaled = std::nearbyint(std::ldexp(x, bits));
  Integer num(static_cast<long long>(scaled));
  Integer den = Integer(1) << bits;
  return Rational(num, den);
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Integer p(t.substr(0, slash));
    Integer q(t.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator in " + text);
    return Rational(p, q);
  }
  // decimal with optional exponent
  std::string mant = t;
  long exp10 = 0;
  auto e = t.find_first_of("eE");
  if (e != std::string::npos) {
    mant = t.substr(0, e);
    exp10 = std::stol(t.substr(e + 1));
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  auto dot = mant.find('.');
  std::string digits = mant;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("malformed rational literal: " + text);
  Integer num(digits);
  Integer pow = 1;
  for (long i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) pow *= 10;
  Rational r = exp10 >= 0 ? Rational(num * pow) : Rational(num, pow);
  return neg ? Rational(-r) : r;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::FaceNotInPolytope: return "FaceNotInPolytope";
    case ErrorCode::PointNotInPolytope: return "PointNotInPolytope";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::NonGenericDirection: return "NonGenericDirection";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::OriginOutside: return "OriginOutside";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptySection: return "EmptySection";
    case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::DegenerateBody: return "DegenerateBody";
    case ErrorCode::NotIsotropicInput: return "NotIsotropicInput";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

}  // namespace isoproj
