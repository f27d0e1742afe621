#pragma once

// Piecewise-polynomial interpolation on the N-th roots of unity.
//
// Delta_{p,eps}(t) = (-1)^p (eps - t)^(p+1) / ((p+1)! eps) on [0, eps], zero on
// [eps, pi], and (-1)^p Delta_{p,eps}(-t) for t < 0. The interpolant of f at
// level N is
//   f_{N,p}(t) = sum_{k<N} Delta_{p,2pi/N}(t - 2 pi k / N) f^(p)(2 pi k / N),
// whose m-th coefficient is N A(m mod N) Delta^(m), with A(r) the sum of the
// coefficients of f^(p) over the residue class r mod N.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cantor/fourier_series.hpp"

namespace cantor {

class DeltaKernel {
 public:
  DeltaKernel(int p, double eps);

  int p() const { return p_; }
  double eps() const { return eps_; }

  /// Pointwise value; 2 pi periodic. At t = 0 the right-hand branch is used.
  double operator()(double t) const;
  /// j-th derivative of the polynomial piece containing t (one-sided at the
  /// break points 0 and +-eps, right-hand side taken).
  double derivative(double t, int j) const;
  /// (1/2pi) int_{-pi}^{pi} Delta(t) e^{-imt} dt, by exact integration of the pieces.
  std::complex<double> fourier(std::int64_t m) const;

 private:
  int p_;
  double eps_;
};

/// Kernel: the literal node sum above. For p >= 1 it is only piecewise smooth
/// (the (p-1)-th derivative jumps at the nodes), so it does not lie in A_s for
/// s >= p.
/// SpectralAntiderivative: coefficients (f^(p))_{N,0}(m) / (im)^p for m != 0,
/// constant term fixed by f_{N,p}(1) = f(1). Its p-th derivative is (f^(p))_{N,0}
/// whenever A(0) = 0. Identical to Kernel for p = 0.
enum class HerzConstruction { Kernel, SpectralAntiderivative };

class Interpolant {
 public:
  /// N >= 1, s >= 0, p = floor(s).
  Interpolant(const FourierSeries& f, std::int64_t n_nodes, double s,
              HerzConstruction construction = HerzConstruction::Kernel);

  std::int64_t nodes() const { return n_; }
  int p() const { return p_; }
  double s() const { return s_; }
  HerzConstruction construction() const { return construction_; }

  /// A(r), r = 0..N-1.
  std::span<const std::complex<double>> aliased() const { return alias_; }
  /// f^(p)(e^{2 pi i k / N}), k = 0..N-1, by direct coefficient summation.
  std::span<const std::complex<double>> node_values() const { return node_values_; }

  /// Exact m-th coefficient.
  std::complex<double> coefficient(std::int64_t m) const;
  /// Coefficients on [-M, M].
  FourierSeries truncated(std::int64_t truncation) const;

  /// Pointwise value of the Kernel construction (local two-node sum).
  std::complex<double> evaluate(double t) const;

  /// Exact ||f_{N,p}||_sigma; the infinite tail is summed in closed form.
  /// Kernel construction with p >= 1 throws Domain (the series diverges).
  double norm(double sigma) const;
  /// Exact ||f - f_{N,p}||_sigma for the trigonometric polynomial f.
  double distance(const FourierSeries& f, double sigma) const;

 private:
  double tail_abs_weighted(std::int64_t r, std::int64_t above, double sigma) const;
  double class_factor(std::int64_t r) const;

  std::int64_t n_;
  int p_;
  double s_;
  HerzConstruction construction_;
  std::vector<std::complex<double>> alias_;
  std::vector<std::complex<double>> node_values_;
  std::complex<double> constant_{};  // spectral m = 0 term
};

Interpolant herz_interpolant(const FourierSeries& f, std::int64_t n_nodes, double s,
                             HerzConstruction construction = HerzConstruction::Kernel);

/// sum_{k>=k0} (1 + a + kN)^s / (a + kN)^e for a > 0, e - s > 1.
double alias_tail(double a, std::int64_t n, double s, double e, std::int64_t k0 = 0);

struct HerzConstants {
  double k1 = 0.0;
  double k2 = 0.0;      // sum of the two partial estimates
  double k2_max = 0.0;  // max of the two partial estimates, for comparison
  double k = 0.0;       // max(k1, k2)
};

/// Constants of the A_s bound for the level-N interpolant, 0 <= s < 1.
HerzConstants herz_constants(double s);

struct HerzBound {
  double norm_fn = 0.0;
  double bound = 0.0;
  HerzConstants constants;
  bool holds = false;
};

/// ||f_{N,0}||_s against K(s) ||f||_s. Throws Domain unless 0 <= s < 1.
HerzBound herz_bound(const FourierSeries& f, std::int64_t n_nodes, double s);

struct ConvergenceRow {
  std::int64_t n = 0;
  double error = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// Log-log slope over rows with N >= 2 deg(f) (needs two such rows).
  std::optional<double> fitted_rate;
  /// Slope over every row.
  std::optional<double> full_rate;
  std::int64_t window_min_n = 0;
};

/// ||f - f_{N,p}||_s for each N. For s >= 1 f must vanish to order floor(s) at
/// z = 1 (Contract error naming the first failing j) and the spectral
/// construction is used.
ConvergenceStudy convergence_study(const FourierSeries& f, double s,
                                   std::span<const std::int64_t> n_list);

struct CoverResidual {
  double max_residual = 0.0;
  /// max over level-n endpoints of |f^(j)|, j = 0..p.
  std::vector<double> endpoint_max;
  double constant = 0.0;  // C = 2 eps^p / (p+1)!
};

/// Samples the Kernel interpolant f_{q^n,p} on the level-n cover of E_{1/q}.
CoverResidual cover_residual(const FourierSeries& f, double s, int q, int level,
                             std::int64_t samples);

/// cover_residual plus the precondition: throws Contract naming j if some
/// |f^(j)| exceeds tol at a level-n endpoint.
CoverResidual vanishing_on_cover(const FourierSeries& f, double s, int q, int level,
                                 std::int64_t samples, double tol);

}  // namespace cantor
