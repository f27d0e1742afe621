#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace cantor {

using Complex = std::complex<double>;

/// Truncated two-sided Fourier series sum_{|n|<=M} c_n e^{int}, stored densely.
/// Indices outside [-M, M] read as zero.
class FourierSeries {
 public:
  FourierSeries() : FourierSeries(0) {}
  explicit FourierSeries(std::int64_t truncation);
  /// `dense` holds c_{-M}..c_{M}; its size must be 2M+1.
  FourierSeries(std::int64_t truncation, std::vector<Complex> dense);

  static FourierSeries monomial(std::int64_t n, Complex c = 1.0);
  static FourierSeries constant(Complex c);
  /// One-sided series sum_{k>=0} taylor[k] z^k.
  static FourierSeries from_taylor(std::span<const Complex> taylor);

  std::int64_t truncation() const { return m_; }
  Complex operator[](std::int64_t n) const;
  void set(std::int64_t n, Complex c);
  std::span<const Complex> dense() const { return c_; }

  /// Largest |n| with a nonzero coefficient, or 0.
  std::int64_t degree() const;
  bool is_zero() const { return degree() == 0 && (*this)[0] == Complex{}; }

  Complex evaluate(double t) const;
  /// j-th derivative in t: c_n -> (in)^j c_n.
  FourierSeries derivative(int j) const;
  /// Same coefficients re-stored with truncation max(M, new_m) or shrunk to new_m
  /// (shrinking requires the dropped coefficients to be zero).
  FourierSeries with_truncation(std::int64_t new_m) const;

  FourierSeries& operator+=(const FourierSeries& g);
  FourierSeries& operator-=(const FourierSeries& g);
  FourierSeries& operator*=(Complex a);

  friend FourierSeries operator+(FourierSeries f, const FourierSeries& g) { return f += g; }
  friend FourierSeries operator-(FourierSeries f, const FourierSeries& g) { return f -= g; }
  friend FourierSeries operator*(Complex a, FourierSeries f) { return f *= a; }

 private:
  std::size_t slot(std::int64_t n) const { return static_cast<std::size_t>(n + m_); }
  std::int64_t m_;
  std::vector<Complex> c_;
};

/// Product by coefficient convolution. The truncation grows to M_f + M_g;
/// coefficients below 1e-15 * max|c| are then zeroed and the truncation trimmed
/// to the surviving support.
FourierSeries multiply(const FourierSeries& f, const FourierSeries& g);

/// Trigonometric polynomial of degree <= `degree` with coefficients uniform in
/// the unit square, drawn from a 64-bit seed. `one_sided` keeps only n >= 0.
FourierSeries random_polynomial(std::uint64_t seed, std::int64_t degree, bool one_sided = false);

/// Relative threshold of the post-product pruning.
inline constexpr double kProductPruneRelative = 1e-15;

}  // namespace cantor
