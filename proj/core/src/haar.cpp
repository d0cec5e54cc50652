#include "mfrac/haar.hpp"

#include <algorithm>
#include <cmath>

#include "mfrac/error.hpp"

namespace mfrac {

namespace detail {

KernelTerm make_kernel_term(int level, double hurst, double multiplier) {
  KernelTerm term{};
  const double a = hurst + 0.5;
  term.exponent = a;
  term.weight = multiplier / (std::exp2(static_cast<double>(level) * hurst) * a);

  // bracket(x) = x^a * sum_{n>=2} C(a,n) (-1)^n (2^n - 2) h^n,  h = 1/(2x)
  double binom = a * (a - 1.0) / 2.0;  // C(a, 2)
  double sign = 1.0;                   // (-1)^n
  double pow2 = 4.0;                   // 2^n
  for (int i = 0; i < kSeriesTerms; ++i) {
    const int n = i + 2;
    term.series[i] = term.weight * binom * sign * (pow2 - 2.0);
    binom *= (a - n) / (n + 1);
    sign = -sign;
    pow2 *= 2.0;
  }
  return term;
}

namespace {

inline double positive_pow(double x, double a) { return x > 0.0 ? std::pow(x, a) : 0.0; }

inline double far_field(const KernelTerm& term, double x) {
  const double h = 0.5 / x;
  double poly = term.series[kSeriesTerms - 1];
  for (int i = kSeriesTerms - 2; i >= 0; --i) poly = poly * h + term.series[i];
  return std::exp(term.exponent * std::log(x)) * (h * h) * poly;
}

inline double near_field(const KernelTerm& term, double x) {
  const double a = term.exponent;
  return term.weight *
         (std::pow(x, a) - 2.0 * positive_pow(x - 0.5, a) + positive_pow(x - 1.0, a));
}

}  // namespace

double eval_kernel_term(const KernelTerm& term, double x) {
  if (!(x > 0.0)) return 0.0;
  if (x < kFarFieldThreshold) return near_field(term, x);
  return far_field(term, x);
}

double sum_level_terms(std::span<const KernelTerm> terms, std::int64_t k_begin, double scale,
                       double t) {
  const double top = scale * t;
  // Only k < 2^j t contribute.
  const double k_limit = std::ceil(top);
  if (k_limit <= static_cast<double>(k_begin)) return 0.0;
  const auto active = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(terms.size()), k_limit - static_cast<double>(k_begin)));

  double sum = 0.0;
  for (std::size_t i = 0; i < active; ++i) {
    const double x = top - static_cast<double>(k_begin + static_cast<std::int64_t>(i));
    sum += eval_kernel_term(terms[i], x);
  }
  return sum;
}

}  // namespace detail

double haar_kernel(int level, std::int64_t translate, double hurst, double t) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("Hurst value must lie in (0, 1)");
  if (level < 0 || level > 62) throw DomainError("level must lie in [0, 62]");
  const std::int64_t count = std::int64_t{1} << level;
  if (translate < 0 || translate >= count) {
    throw DomainError("translate k must lie in [0, 2^j - 1]");
  }
  const detail::KernelTerm term = detail::make_kernel_term(level, hurst, 1.0);
  return detail::eval_kernel_term(term, std::ldexp(t, level) - static_cast<double>(translate));
}

}  // namespace mfrac
