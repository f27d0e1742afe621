#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/fourier_series.hpp"
#include "cantor/geometry.hpp"
#include "cantor/weights.hpp"

namespace cantor {

struct AdmissibleParameters {
  double b = 0.0;         // b(1/q)
  double gamma = 0.0;     // (beta + b) / 2
  double delta_lo = 0.0;  // gamma / (1 - gamma)
  double delta_hi = 0.0;  // 1 - log 2 / log q
  double delta = 0.0;     // midpoint
};

/// Throws Domain when beta >= b(1/q) or beta < 0.
AdmissibleParameters admissible_parameters(double beta, int q);

/// Grid samples w_j = w(2 pi j / G) of a nonpositive log-modulus.
struct LogModulusProfile {
  std::vector<double> values;
  double floor = -40.0;
  double delta = 0.0;  // 0 for profiles not built from a set
  int level = 0;       // distance level used, 0 if none

  std::size_t grid() const { return values.size(); }
  bool clamped(std::size_t j) const { return values[j] <= floor; }
};

/// w = max(-d(t, E)^(-delta), floor), d taken as the midpoint of the level-L
/// distance enclosure with L the smallest level where 2 pi xi^L is below the
/// grid spacing.
LogModulusProfile distance_profile_for(const PerfectSymmetricSet& set, double delta,
                                       std::size_t grid, double floor = -40.0);

/// Wraps explicit samples; checks w <= 0 and that G is a power of two.
LogModulusProfile profile_from_samples(std::vector<double> values, double floor = -40.0);

struct OuterDiagnostics {
  double negative_energy = 0.0;  // relative energy of the grid coefficients with k > G/2
  double energy_above_half_m = 0.0;  // relative energy in M/2 < k <= G/2
  double energy_above_m = 0.0;       // relative energy in M < k <= G/2
  double modulus_error = 0.0;    // max over unclamped grid points of ||F_M| - e^w| / max e^w
  std::size_t bound_violations = 0;  // unclamped points with |F_M| > e^w + 1e-6 max e^w
  std::size_t unclamped = 0;
};

/// One-sided Taylor coefficients with f^(0) = 1.
struct OuterApprox {
  std::vector<std::complex<double>> coeffs;  // f^(0..M)
  std::size_t grid = 0;
  double floor = 0.0;
  std::complex<double> scale;  // f^(0) before normalization
  OuterDiagnostics diagnostics;

  std::int64_t truncation() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
  FourierSeries series() const { return FourierSeries::from_taylor(coeffs); }
};

/// f = exp(w + i conj(w)) by a discrete analytic completion on the grid,
/// truncated to degree M and normalized to f^(0) = 1. Needs G >= 4M (else
/// Resolution); throws Resolution when energy_above_half_m > aliasing_tol.
OuterApprox outer_from_modulus(const LogModulusProfile& profile, std::int64_t truncation,
                               double aliasing_tol = 1e-10);

/// sum_k f^(k) z^{q^m k}. Throws Resource when q^m M exceeds `budget`.
FourierSeries dilate(const FourierSeries& f, int q, int m, std::int64_t budget = 1 << 26);

struct WeightTransfer {
  double c = 0.0;
  double ratio_sup = 1.0;   // sup_k omega(k) / omega_beta(k)
  double power_term = 0.0;  // q^{ms}
  double exp_sup = 0.0;     // sup_{k>=0} e^{q^{beta m} k^beta - k^gamma}
  double k_star = 0.0;      // numerical maximizer
  double k_star_closed = 0.0;  // stationary point (q^{beta m} beta / gamma)^{1/(gamma-beta)}
};

/// Constant in ||dilate(f, q, m)||_omega <= C ||f||_{omega_gamma}. With `target`
/// the ratio sup omega / omega_beta is scanned over |k| <= ratio_range.
WeightTransfer weight_transfer(double s, double beta, double gamma, int q, int m,
                               const std::optional<Weight>& target = std::nullopt,
                               std::int64_t ratio_range = 1000);

/// max over the level-`level` endpoints z of E_{1/q} of |sum_k f^(k) z^{k q^m}|,
/// with exact integer reduction of the exponents.
double annihilation_residual(const FourierSeries& f, int q, int m, int level);

struct InversePowerBound {
  double bound = 0.0;         // q^s n^s sum_{k>=1} |f^(k)| (1+k)^s
  double weighted_sum = 0.0;  // sum_{k>=1} |f^(k)| (1+k)^s
  int m = 0;                  // q^m <= n < q^{m+1}
};

/// Needs f^(0) = 1 (Contract). Throws Precision when the weighted sum over the
/// top octave (M/2, M] is at least the sum over [1, M/2].
InversePowerBound inverse_power_bound(const FourierSeries& f, int q, std::int64_t n, double s);

}  // namespace cantor
