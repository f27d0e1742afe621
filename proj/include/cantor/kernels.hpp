#pragma once

// Hot loops with a serial reference and an OpenMP variant. Both variants do the
// same arithmetic in the same order per output element, and reductions go
// through fixed-size blocks summed in index order, so results are bit-identical
// regardless of the thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cantor/geometry.hpp"

namespace cantor {

enum class Exec { Serial, Parallel };

/// Elements per reduction block.
inline constexpr std::size_t kReduceBlock = 4096;

/// Sum of values[i] in the blocked order described above.
double blocked_sum(std::span<const double> values, Exec exec);

/// Sum of |a[i]| * w[i].
double weighted_abs_sum(std::span<const std::complex<double>> a, std::span<const double> w,
                        Exec exec);

/// Full linear convolution, size a.size() + b.size() - 1.
std::vector<std::complex<double>> convolve(std::span<const std::complex<double>> a,
                                           std::span<const std::complex<double>> b, Exec exec);

/// sum_{n=-M}^{M} c[n+M] e^{i n t} at every angle.
std::vector<std::complex<double>> evaluate_many(std::span<const std::complex<double>> dense,
                                                std::span<const double> angles, Exec exec);

/// (1/2pi) sum_a mass_a (z + e^{i angle_a}) / (z - e^{i angle_a}) at z = r e^{2 pi i j / G},
/// j = 0..G-1.
std::vector<std::complex<double>> herglotz_on_circle(const DiscreteMeasure& mu, double r,
                                                     std::size_t grid, Exec exec);

/// Midpoints of the level-n distance enclosures at the angles 2 pi j / G.
std::vector<double> distance_profile(const PerfectSymmetricSet& set, int level, std::size_t grid,
                                     Exec exec);

/// Counts pairs (n, m), |n|, |m| <= range, with
/// log_w(n + m) > log_w(n) + log_w(m) + tol. `log_w` covers [-2 range, 2 range].
std::uint64_t submultiplicative_violations(std::span<const double> log_w, std::int64_t range,
                                           double tol, Exec exec);

}  // namespace cantor
