#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace mfrac {

/// Fractional integral of the Haar wavelet h_{j,k} against (t - s)_+^{H - 1/2}:
///
///   [ x_+^{H+1/2} - 2 (x - 1/2)_+^{H+1/2} + (x - 1)_+^{H+1/2} ] / (2^{jH} (H + 1/2)),
///   x = 2^j t - k.
///
/// Exactly zero for t <= k / 2^j. Throws DomainError when H is outside (0, 1),
/// level is negative or above 62, or k is outside [0, 2^j - 1].
double haar_kernel(int level, std::int64_t translate, double hurst, double t);

namespace detail {

/// Beyond this x the bracket is summed as a binomial series in 1/(2x), which
/// needs one exp/log pair instead of three pow calls and avoids cancellation.
inline constexpr double kFarFieldThreshold = 16.0;
/// Series orders n = 2 .. 14; the tail is below 1e-16 relative at the threshold.
inline constexpr int kSeriesTerms = 13;

/// Precomputed per-(j,k) data: exponent a = H + 1/2, the weight
/// multiplier / (2^{jH} a), and the weighted far-field series coefficients.
struct KernelTerm {
  double exponent;
  double weight;
  std::array<double, kSeriesTerms> series;
};

KernelTerm make_kernel_term(int level, double hurst, double multiplier);

/// weight * bracket(x) for x = 2^j t - k.
double eval_kernel_term(const KernelTerm& term, double x);

/// Sum over k in [k_begin, k_begin + terms.size()) of eval_kernel_term at
/// x = scale * t - k, in ascending k. Terms with x <= 0 are skipped.
double sum_level_terms(std::span<const KernelTerm> terms, std::int64_t k_begin, double scale,
                       double t);

}  // namespace detail
}  // namespace mfrac
