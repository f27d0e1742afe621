#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cantor/fourier_series.hpp"
#include "cantor/kernels.hpp"

namespace cantor {

/// omega(n) = (1 + |n|)^s.
struct PolynomialWeight {
  double s = 0.0;
};

/// omega(n) = (1 + n)^s for n >= 0 and e^{|n|^beta} for n < 0.
struct OneSidedWeight {
  double s = 0.0;
  double beta = 0.5;
};

/// Explicit values omega(n), n = -R..R; values[n + R]. Undefined outside.
struct TableWeight {
  std::vector<double> values;
};

class Weight {
 public:
  using Kind = std::variant<PolynomialWeight, OneSidedWeight, TableWeight>;

  /// Validates the family parameters (s >= 0, beta in (0,1), table odd-sized with values >= 1).
  explicit Weight(Kind kind);

  static Weight polynomial(double s) { return Weight(PolynomialWeight{s}); }
  static Weight one_sided(double s, double beta) { return Weight(OneSidedWeight{s, beta}); }
  static Weight table(std::vector<double> values) { return Weight(TableWeight{std::move(values)}); }

  const Kind& kind() const { return kind_; }
  std::string describe() const;

  /// log omega(n). Tables throw Domain outside their support.
  double log_value(std::int64_t n) const;
  /// omega(n); may be +inf for one-sided weights far out on the negative side.
  double value(std::int64_t n) const;
  /// Largest |n| at which the weight is defined, or nullopt if unbounded.
  std::optional<std::int64_t> support() const;

 private:
  Kind kind_;
};

/// sum_{|n|<=M} |c_n| omega(n). Throws Range if a term or the sum overflows.
double weighted_norm(const FourierSeries& f, const Weight& w, Exec exec = Exec::Parallel);

/// Polynomial-weight shorthand ||f||_s.
double sobolev_norm(const FourierSeries& f, double s, Exec exec = Exec::Parallel);

struct WeightAxioms {
  bool submultiplicative = false;
  bool regular = false;
  std::uint64_t violations = 0;
  /// Table weights: fitted a in log omega(n) ~ C |n|^a over the tail.
  std::optional<double> tail_exponent;
};

/// Exhaustive pair check of omega(n+m) <= omega(n) omega(m) for |n|, |m| <= range
/// (pairs leaving a table's support are skipped), plus the regularity verdict.
WeightAxioms weight_axioms(const Weight& w, std::int64_t range, Exec exec = Exec::Parallel);

struct SandwichResult {
  double lhs = 0.0;  // ||f^(p)||_{s-p}
  double mid = 0.0;  // ||f||_s
  double rhs = 0.0;
  bool holds = false;
};

/// Two-sided comparison of ||f||_s with ||f^(p)||_{s-p}, p = floor(s) >= 1.
SandwichResult norme_sandwich(const FourierSeries& f, double s);

/// Taylor expansion of ((z - zeta)/(z - zeta (1 + 1/n)))^(floor(s)+1), zeta = e^{i angle}.
/// Without `truncation` the smallest M with a coefficient tail below 1e-12 is
/// used; an explicit M with (1 + 1/n)^(-M) >= 1e-12 throws Precision.
FourierSeries point_regularizer(double angle, double s, std::int64_t n,
                                std::optional<std::int64_t> truncation = std::nullopt);

struct RegularizerRow {
  std::int64_t n = 0;
  std::int64_t truncation = 0;
  double u_norm0 = 0.0;  // ||u_n||_0
  double error = 0.0;    // ||u_n g - g||_s
};

struct RegularizerStudy {
  std::vector<RegularizerRow> rows;
  std::optional<double> fitted_rate;  // log-log slope of error against n
};

/// Empirical decay of ||u_n g - g||_s. g and its first floor(s) derivatives
/// must vanish at e^{i angle} (Domain otherwise).
RegularizerStudy regularizer_study(const FourierSeries& g, double angle, double s,
                                   std::span<const std::int64_t> ns);

/// floor(s) for s >= 0, snapping values within 1e-12 of an integer.
int integer_part(double s);

}  // namespace cantor
