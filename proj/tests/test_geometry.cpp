#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"

using namespace cantor;

namespace {

const PerfectSymmetricSet kSets[] = {PerfectSymmetricSet::from_q(3), PerfectSymmetricSet::from_q(4),
                                     PerfectSymmetricSet::from_ratio(0.3)};

double brute_distance(const CantorLevel& lv, double t) {
  double best = 1e300;
  for (const auto& a : lv.arcs) {
    if (a.contains(t) || a.contains(t + kTwoPi)) return 0.0;
    best = std::min({best, circle_distance(t, a.start), circle_distance(t, a.end())});
  }
  return best;
}

}  // namespace

TEST_CASE("critical exponent closed forms") {
  CHECK(PerfectSymmetricSet::from_q(4).critical_exponent() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  const double l3 = std::log(3.0), l2 = std::log(2.0);
  CHECK(PerfectSymmetricSet::from_q(3).critical_exponent() ==
        doctest::Approx((l3 - l2) / (2 * l3 - l2)).epsilon(1e-14));
  CHECK(critical_exponent(0.5) == 0.0);
  CHECK(PerfectSymmetricSet::parse("1/3").q() == 3);
  CHECK_FALSE(PerfectSymmetricSet::parse("0.3").q().has_value());
  CHECK_THROWS_AS(PerfectSymmetricSet::from_ratio(0.5), Error);
  CHECK_THROWS_AS(PerfectSymmetricSet::parse("1/x"), Error);
}

TEST_CASE("level covers: count, length, nesting") {
  for (const auto& set : kSets) {
    for (int n = 0; n <= 10; ++n) {
      const auto lv = level_cover(set, n);
      REQUIRE(lv.arcs.size() == (std::size_t{1} << n));
      for (const auto& a : lv.arcs)
        CHECK(a.length == doctest::Approx(kTwoPi * std::pow(set.xi(), n)).epsilon(1e-13));
      CHECK(std::is_sorted(lv.arcs.begin(), lv.arcs.end(),
                           [](const Arc& a, const Arc& b) { return a.start < b.start; }));
      if (n == 0) continue;
      const auto parent = level_cover(set, n - 1);
      for (std::size_t i = 0; i < lv.arcs.size(); ++i) {
        const auto& p = parent.arcs[i / 2];
        CHECK(lv.arcs[i].start >= p.start - 1e-13);
        CHECK(lv.arcs[i].end() <= p.end() + 1e-13);
      }
    }
  }
}

TEST_CASE("exact endpoints for 1/q") {
  const auto lv = level_cover(PerfectSymmetricSet::from_q(3), 3);
  REQUIRE(lv.denominator == 27);
  std::vector<std::uint64_t> expect = {0, 2, 6, 8, 18, 20, 24, 26};
  CHECK(lv.numerators == expect);
  // endpoints: starts and ends (start + 1), reduced mod 27
  auto ends = endpoint_numerators(3, 2);
  std::vector<std::uint64_t> e2 = {0, 1, 2, 3, 6, 7, 8};
  CHECK(ends == e2);
}

TEST_CASE("gap census matches 2^(k-1) gaps of length 2 pi xi^(k-1) (1 - 2 xi)") {
  for (const auto& set : kSets) {
    const auto census = gap_census(set, 10);
    REQUIRE(census.size() == 10);
    for (const auto& r : census) {
      CHECK(r.count == (std::size_t{1} << (r.stage - 1)));
      const double expect = kTwoPi * std::pow(set.xi(), r.stage - 1) * (1 - 2 * set.xi());
      CHECK(r.length == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("gap series and distance integral thresholds") {
  for (const auto& set : kSets) {
    const double th = std::log(2.0) / std::log(1 / set.xi());
    CHECK(gap_analysis(set, th + 0.05).converges);
    CHECK_FALSE(gap_analysis(set, th - 0.05).converges);
    CHECK(gap_analysis(set, 0.5).threshold == doctest::Approx(th));
    // closed form of the geometric series over stages
    const double g = th + 0.1;
    const auto ga = gap_analysis(set, g);
    REQUIRE(ga.closed_form_sum);
    double brute = 0.0;
    for (int k = 1; k < 400; ++k)
      brute += std::pow(2.0, k - 1) * std::pow(kTwoPi * std::pow(set.xi(), k - 1) * (1 - 2 * set.xi()), g);
    CHECK(*ga.closed_form_sum == doctest::Approx(brute).epsilon(1e-9));

    const double dth = 1 - th;
    CHECK(integral_criterion(set, dth - 0.05).converges);
    CHECK_FALSE(integral_criterion(set, dth + 0.05).converges);
    // each gap of length L contributes 2 (L/2)^(1-d)/(1-d)
    const double d = 0.5 * dth;
    const auto ic = integral_criterion(set, d, 6);
    double s = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const double len = kTwoPi * std::pow(set.xi(), k - 1) * (1 - 2 * set.xi());
      s += std::pow(2.0, k - 1) * 2 * std::pow(len / 2, 1 - d) / (1 - d);
      CHECK(ic.partial_sums[k - 1] == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("distance enclosures bracket the brute-force cover distance") {
  for (const auto& set : kSets) {
    const int n = 7;
    const auto lv = level_cover(set, n);
    for (int i = 0; i < 997; ++i) {
      const double t = kTwoPi * i / 997.0;
      const auto e = distance_to_set(set, t, n);
      CHECK(e.lower == doctest::Approx(brute_distance(lv, t)).epsilon(1e-12));
      CHECK(e.lower <= e.upper + 1e-15);
      CHECK(gap_parabola_distance(set, t, n) <= e.lower + 1e-15);
    }
  }
  const auto ch = distance_to_set(kSets[0], kPi, 4, DistanceMetric::Chordal);
  const auto ar = distance_to_set(kSets[0], kPi, 4);
  CHECK(ch.lower == doctest::Approx(2 * std::sin(ar.lower / 2)));
}

TEST_CASE("atomic measures and the Cantor-Lebesgue function") {
  const auto set = kSets[0];
  const auto mu = cantor_measure(set, 8);
  REQUIRE(mu.atoms.size() == 256);
  double total = 0.0;
  for (const auto& a : mu.atoms) total += a.mass;
  CHECK(total == doctest::Approx(kTwoPi));
  CHECK(cantor_lebesgue_function(set, kPi) == doctest::Approx(kPi));
  // constant across the first gap
  CHECK(cantor_lebesgue_function(set, kTwoPi / 3 + 0.01) ==
        doctest::Approx(cantor_lebesgue_function(set, 2 * kTwoPi / 3 - 0.01)));
  for (int i = 0; i <= 200; ++i) {
    const double t = kTwoPi * i / 200.0;
    CHECK(std::abs(cumulative_mass(mu, t) - cantor_lebesgue_function(set, t)) <=
          kTwoPi / 256 + 1e-12);
  }
  CHECK_THROWS_AS(level_cover(set, kMaxLevel + 1), Error);
}
