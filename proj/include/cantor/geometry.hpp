#pragma once

// Perfect symmetric (Cantor-type) subsets of the unit circle.
//
// E_xi is the set of angles 2*pi*(1-xi) * sum_{n>=1} eps_n xi^(n-1), eps_n in {0,1}.
// The level-n cover F_n is the union of 2^n closed arcs of length 2*pi*xi^n; the
// arc indexed by the digit string (eps_1..eps_n) starts at
// 2*pi*(1-xi) * sum_{k<=n} eps_k xi^(k-1). Arcs are listed in increasing angle,
// eps_1 being the most significant digit.

#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

namespace cantor {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest level for which covers and measures are materialized (2^n arcs).
inline constexpr int kMaxLevel = 24;

/// Reduces an angle to [0, 2*pi).
double reduce_angle(double t);

/// Arc-length distance between two angles on the circle.
double circle_distance(double a, double b);

struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const { return start + length; }
  bool contains(double t) const { return t >= start && t <= end(); }
};

class PerfectSymmetricSet {
 public:
  /// Any ratio in (0, 1/2).
  static PerfectSymmetricSet from_ratio(double xi);
  /// xi = 1/q with q >= 3; endpoints are then kept as exact rationals of 2*pi.
  static PerfectSymmetricSet from_q(int q);
  /// Accepts "1/q" (exact) or a decimal ratio.
  static PerfectSymmetricSet parse(std::string_view text);

  double xi() const { return xi_; }
  std::optional<int> q() const { return q_; }

  /// b(xi) = (log(1/xi) - log 2) / (2 log(1/xi) - log 2).
  double critical_exponent() const;

  /// True when level-n endpoints can be written as 2*pi*k/q^n with k exactly
  /// representable.
  bool exact_at_level(int n) const;

 private:
  PerfectSymmetricSet(double xi, std::optional<int> q) : xi_(xi), q_(q) {}
  double xi_;
  std::optional<int> q_;
};

/// b(xi) for xi in (0, 1/2]; b(1/2) = 0.
double critical_exponent(double xi);

struct CantorLevel {
  int level = 0;
  std::vector<Arc> arcs;
  /// For exact sets: arc i starts at 2*pi*numerators[i]/denominator.
  std::vector<std::uint64_t> numerators;
  std::uint64_t denominator = 0;
};

/// All 2^n arcs of the level-n cover. Throws Resource above kMaxLevel.
CantorLevel level_cover(const PerfectSymmetricSet& set, int n);

/// Sorted distinct endpoint numerators k of the level-n arcs of E_{1/q}
/// (endpoint angle 2*pi*k/q^n, taken mod q^n so 0 and 2*pi coincide).
std::vector<std::uint64_t> endpoint_numerators(int q, int n);

struct GapAnalysis {
  bool converges = false;
  double threshold = 0.0;                // log 2 / log(1/xi)
  std::optional<double> closed_form_sum; // sum over gaps of |L|^gamma
};

/// Convergence of sum over contiguous arcs of |L_n|^gamma.
GapAnalysis gap_analysis(const PerfectSymmetricSet& set, double gamma);

struct IntegralCriterion {
  bool converges = false;
  double threshold = 0.0;  // 1 - log 2 / log(1/xi)
  /// partial_sums[n-1] = integral of d(t,E)^(-delta) over the gaps of stages 1..n.
  /// Empty when delta >= 1 (each gap integral already diverges).
  std::vector<double> partial_sums;
};

/// Finiteness of the integral of d(e^{it}, E)^(-delta) over the circle, with
/// a probe of stage-wise partial integrals.
IntegralCriterion integral_criterion(const PerfectSymmetricSet& set, double delta,
                                     int probe_levels = 16);

struct GapCensusRow {
  int stage = 0;            // gaps created when passing from level stage-1 to stage
  std::size_t count = 0;
  double length = 0.0;      // observed length (all gaps of a stage agree)
  double expected_length = 0.0;
};

/// Sorts the complementary intervals of level_cover(n) and groups them by
/// stage. Throws Precision if a gap matches no stage.
std::vector<GapCensusRow> gap_census(const PerfectSymmetricSet& set, int n);

enum class DistanceMetric { ArcLength, Chordal };

struct DistanceEnclosure {
  double lower = 0.0;
  double upper = 0.0;
};

/// Encloses d(e^{it}, E): lower is the distance to the level-n cover, upper the
/// distance to the nearest level-n endpoint. If t lies in a gap of stage <= n
/// both bounds equal the exact distance.
DistanceEnclosure distance_to_set(const PerfectSymmetricSet& set, double t, int n,
                                  DistanceMetric metric = DistanceMetric::ArcLength);

/// Smooth minorant of the distance used for log-modulus profiles: inside a gap
/// of length g at offset u from its left end it is u*(g-u)/g <= min(u, g-u).
/// Zero when t is not resolved into a gap of stage <= n.
double gap_parabola_distance(const PerfectSymmetricSet& set, double t, int n);

struct Atom {
  double angle = 0.0;
  double mass = 0.0;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;
  double total_mass = 0.0;
};

enum class AtomPlacement { LeftEndpoint, Midpoint };

/// Level-m atomic approximation of the Cantor-Lebesgue measure: one atom of
/// mass total_mass/2^m per level-m arc.
DiscreteMeasure cantor_measure(const PerfectSymmetricSet& set, int m,
                               AtomPlacement placement = AtomPlacement::LeftEndpoint,
                               double total_mass = kTwoPi);

/// Cumulative mass of the measure on [0, t], t in [0, 2*pi].
double cumulative_mass(const DiscreteMeasure& mu, double t);

/// The Cantor-Lebesgue function scaled to total mass 2*pi, evaluated to depth
/// `depth` digits.
double cantor_lebesgue_function(const PerfectSymmetricSet& set, double t, int depth = 50);

}  // namespace cantor
