#pragma once

// Compressed shift on the model space H^2 minus V H^2, V the singular inner
// function of an atomic stand-in for the Cantor-Lebesgue measure.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cantor/geometry.hpp"

namespace cantor {

/// How the recovery radius r is tied to the truncation M.
struct RadiusPolicy {
  enum class Kind { Amplification, Fixed } kind = Kind::Amplification;
  double value = 1e4;  // r^{-M} for Amplification, r itself for Fixed

  double radius(std::int64_t truncation) const;
  /// "amp=<A>" or "r=<radius>".
  static RadiusPolicy parse(std::string_view text);
};

struct SingularInnerApprox {
  std::vector<std::complex<double>> coeffs;  // V^(0..M)
  double radius = 0.0;
  std::size_t grid = 0;
  double total_mass = 0.0;
  /// Per-coefficient bound on rounding (amplified by r^{-k}) plus aliasing.
  std::vector<double> coeff_error;
  /// Estimate of sum_{k>M} |V^(k)|^2, i.e. 1 - sum_{k<=M} |V^(k)|^2.
  double tail_bound = 0.0;
  double energy = 0.0;  // sum_{k<=M} |V^(k)|^2

  std::int64_t truncation() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
};

/// V = exp((1/2pi) sum_a mass_a (z + e^{it_a}) / (z - e^{it_a})), sampled on
/// |z| = r at G = 4M points; V^(k) from the transform divided by r^k.
/// Throws Parameter when r^G > 1e-14 (aliasing) or r^{-M} > 1e12 (amplification).
SingularInnerApprox inner_from_measure(const DiscreteMeasure& mu, std::int64_t truncation,
                                       const RadiusPolicy& policy = {});

/// Same with an explicit radius.
SingularInnerApprox inner_from_measure(const DiscreteMeasure& mu, std::int64_t truncation,
                                       double radius);

struct ProjectionTable {
  std::vector<double> sigma;      // sum_{l<=k} |V^(l)|^2
  std::vector<double> pnorm2;     // 1 - sigma[k]
  std::vector<double> error;      // bound on |pnorm2[k] - true value| from coefficient errors
  double tail_slack = 0.0;
};

/// Tables for k = 0..K, K <= M.
ProjectionTable projection_norms(const SingularInnerApprox& v, std::int64_t k_max);

struct LowerBound {
  double value = 1.0;
  std::int64_t argmax = 0;
  double tail_slack = 0.0;
};

/// max_{j<=J} sqrt((pnorm2[j] - err_j) / (pnorm2[j+n] + err_{j+n})), a lower bound
/// for ||T^{-n}||. Throws Domain if J + n > K and Precision if pnorm2[J+n] does
/// not exceed the tail slack.
LowerBound inverse_power_lower_bound(const ProjectionTable& table, std::int64_t n,
                                     std::int64_t j_max);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log(value) against log(n). Throws Fit for fewer than five
/// points, nonpositive values or coincident abscissas.
GrowthFit growth_exponent_fit(std::span<const std::pair<double, double>> points);

}  // namespace cantor
