#include "cantor/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// Distances this close to zero come from rounding in the endpoint formulas.
constexpr double kSnap = 16.0 * std::numeric_limits<double>::epsilon() * kTwoPi;

constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 53;

double snap(double d) { return d < kSnap ? 0.0 : d; }

double apply_metric(double d, DistanceMetric metric) {
  return metric == DistanceMetric::Chordal ? 2.0 * std::sin(0.5 * d) : d;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Position of t in the level-n cover, found by descending digit by digit.
struct Descent {
  int gap_stage = 0;  // > 0 when t lies in a gap created at this stage
  double gap_left = 0, gap_right = 0;
  double arc_start = 0;  // final arc when gap_stage == 0
  double arc_length = kTwoPi;
};

Descent descend(const PerfectSymmetricSet& set, double t, int n) {
  const double xi = set.xi();
  const bool exact = set.exact_at_level(n);
  const std::uint64_t q = exact ? static_cast<std::uint64_t>(*set.q()) : 0;

  Descent d;
  std::uint64_t k = 0, den = 1;
  for (int j = 1; j <= n; ++j) {
    double left_end, right_start, child;
    if (exact) {
      den *= q;
      const double dd = static_cast<double>(den);
      child = kTwoPi / dd;
      left_end = kTwoPi * static_cast<double>(k * q + 1) / dd;
      right_start = kTwoPi * static_cast<double>(k * q + q - 1) / dd;
    } else {
      child = d.arc_length * xi;
      left_end = d.arc_start + child;
      right_start = d.arc_start + d.arc_length - child;
    }
    if (t <= left_end) {
      k = k * q;
      if (exact) d.arc_start = kTwoPi * static_cast<double>(k) / static_cast<double>(den);
      d.arc_length = child;
      continue;
    }
    if (t >= right_start) {
      k = k * q + q - 1;
      d.arc_start = right_start;
      d.arc_length = child;
      continue;
    }
    d.gap_stage = j;
    d.gap_left = left_end;
    d.gap_right = right_start;
    return d;
  }
  return d;
}

}  // namespace

double reduce_angle(double t) {
  if (!std::isfinite(t)) fail(ErrorKind::Domain, "angle must be finite");
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  const double d = std::abs(reduce_angle(a) - reduce_angle(b));
  return std::min(d, kTwoPi - d);
}

PerfectSymmetricSet PerfectSymmetricSet::from_ratio(double xi) {
  if (!(xi > 0.0 && xi < 0.5)) fail(ErrorKind::Domain, "xi must lie in (0, 1/2)");
  return PerfectSymmetricSet(xi, std::nullopt);
}

PerfectSymmetricSet PerfectSymmetricSet::from_q(int q) {
  if (q < 3) fail(ErrorKind::Domain, "q must be an integer >= 3");
  return PerfectSymmetricSet(1.0 / q, q);
}

PerfectSymmetricSet PerfectSymmetricSet::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    int num = 0, q = 0;
    auto lhs = text.substr(0, slash), rhs = text.substr(slash + 1);
    auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), num);
    auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), q);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != lhs.data() + lhs.size() ||
        r2.ptr != rhs.data() + rhs.size() || num != 1)
      fail(ErrorKind::Usage, "expected xi as 1/q or a decimal, got '" + std::string(text) + "'");
    return from_q(q);
  }
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double xi = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return from_ratio(xi);
  } catch (const std::logic_error&) {
    fail(ErrorKind::Usage, "expected xi as 1/q or a decimal, got '" + std::string(text) + "'");
  }
}

double PerfectSymmetricSet::critical_exponent() const { return cantor::critical_exponent(xi_); }

bool PerfectSymmetricSet::exact_at_level(int n) const {
  if (!q_) return false;
  std::uint64_t den = 1;
  for (int i = 0; i < n; ++i) {
    den *= static_cast<std::uint64_t>(*q_);
    if (den > kExactLimit) return false;
  }
  return true;
}

double critical_exponent(double xi) {
  if (!(xi > 0.0 && xi <= 0.5)) fail(ErrorKind::Domain, "b(xi) needs xi in (0, 1/2]");
  const double l = std::log(1.0 / xi);
  const double l2 = std::numbers::ln2;
  return (l - l2) / (2.0 * l - l2);
}

CantorLevel level_cover(const PerfectSymmetricSet& set, int n) {
  if (n < 0) fail(ErrorKind::Domain, "level must be nonnegative");
  if (n > kMaxLevel)
    fail(ErrorKind::Resource, "level " + std::to_string(n) + " exceeds max level " +
                                  std::to_string(kMaxLevel));
  CantorLevel out;
  out.level = n;
  const std::size_t count = std::size_t{1} << n;
  out.arcs.reserve(count);

  if (set.exact_at_level(n)) {
    const auto q = static_cast<std::uint64_t>(*set.q());
    std::vector<std::uint64_t> ks{0};
    for (int j = 1; j <= n; ++j) {
      std::vector<std::uint64_t> next;
      next.reserve(ks.size() * 2);
      for (auto k : ks) next.push_back(k * q);
      for (auto k : ks) next.push_back(k * q + q - 1);
      // children of consecutive parents interleave: keep increasing order
      std::sort(next.begin(), next.end());
      ks = std::move(next);
    }
    out.denominator = ipow(q, n);
    const double den = static_cast<double>(out.denominator);
    const double length = kTwoPi / den;
    for (auto k : ks) out.arcs.push_back({kTwoPi * static_cast<double>(k) / den, length});
    out.numerators = std::move(ks);
    return out;
  }

  const double xi = set.xi();
  std::vector<double> starts{0.0};
  double len = kTwoPi;
  for (int j = 1; j <= n; ++j) {
    const double shift = len * (1.0 - xi);
    std::vector<double> next;
    next.reserve(starts.size() * 2);
    for (double a : starts) next.push_back(a);
    for (double a : starts) next.push_back(a + shift);
    std::sort(next.begin(), next.end());
    starts = std::move(next);
    len *= xi;
  }
  const double length = kTwoPi * std::pow(xi, n);
  for (double a : starts) out.arcs.push_back({a, length});
  return out;
}

std::vector<std::uint64_t> endpoint_numerators(int q, int n) {
  auto set = PerfectSymmetricSet::from_q(q);
  if (!set.exact_at_level(n))
    fail(ErrorKind::Resource, "q^n too large for exact endpoint indices");
  auto cover = level_cover(set, n);
  const std::uint64_t den = cover.denominator;
  std::vector<std::uint64_t> out;
  out.reserve(2 * cover.numerators.size());
  for (auto k : cover.numerators) {
    out.push_back(k);
    out.push_back((k + 1) % den);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GapAnalysis gap_analysis(const PerfectSymmetricSet& set, double gamma) {
  const double xi = set.xi();
  GapAnalysis out;
  out.threshold = std::numbers::ln2 / std::log(1.0 / xi);
  out.converges = gamma > out.threshold;
  if (out.converges) {
    const double ratio = 2.0 * std::pow(xi, gamma);
    const double lead = std::pow(kTwoPi * (1.0 - 2.0 * xi), gamma) / (2.0 * std::pow(xi, gamma));
    out.closed_form_sum = lead * ratio / (1.0 - ratio);
  }
  return out;
}

IntegralCriterion integral_criterion(const PerfectSymmetricSet& set, double delta,
                                     int probe_levels) {
  const double xi = set.xi();
  IntegralCriterion out;
  out.threshold = 1.0 - std::numbers::ln2 / std::log(1.0 / xi);
  out.converges = delta < out.threshold;
  if (delta >= 1.0) return out;
  // On a gap the distance to E is the distance to the nearer gap end, so the
  // gap contributes 2 * (g/2)^(1-delta) / (1-delta).
  double sum = 0.0;
  for (int j = 1; j <= probe_levels; ++j) {
    const double gap = kTwoPi * std::pow(xi, j - 1) * (1.0 - 2.0 * xi);
    const double per_gap = 2.0 * std::pow(0.5 * gap, 1.0 - delta) / (1.0 - delta);
    sum += std::ldexp(per_gap, j - 1);
    out.partial_sums.push_back(sum);
  }
  return out;
}

std::vector<GapCensusRow> gap_census(const PerfectSymmetricSet& set, int n) {
  const auto cover = level_cover(set, n);
  const double xi = set.xi();
  std::vector<GapCensusRow> rows;
  for (int j = 1; j <= n; ++j)
    rows.push_back({j, 0, 0.0, kTwoPi * std::pow(xi, j - 1) * (1.0 - 2.0 * xi)});

  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < cover.arcs.size(); ++i)
    gaps.push_back(cover.arcs[i + 1].start - cover.arcs[i].end());
  std::sort(gaps.begin(), gaps.end(), std::greater<>());

  for (double g : gaps) {
    auto best = std::min_element(rows.begin(), rows.end(), [g](const auto& a, const auto& b) {
      return std::abs(a.expected_length - g) < std::abs(b.expected_length - g);
    });
    if (best == rows.end() || std::abs(best->expected_length - g) > 1e-9 * best->expected_length)
      fail(ErrorKind::Precision, "gap of length " + std::to_string(g) + " matches no stage");
    best->count++;
    best->length = g;
  }
  return rows;
}

DistanceEnclosure distance_to_set(const PerfectSymmetricSet& set, double t, int n,
                                  DistanceMetric metric) {
  if (n < 1) fail(ErrorKind::Domain, "distance enclosure needs level n >= 1");
  t = reduce_angle(t);
  const Descent d = descend(set, t, n);
  if (d.gap_stage > 0) {
    const double dist = apply_metric(snap(std::min(t - d.gap_left, d.gap_right - t)), metric);
    return {dist, dist};
  }
  const double upper = snap(std::min(t - d.arc_start, d.arc_start + d.arc_length - t));
  return {0.0, apply_metric(upper, metric)};
}

double gap_parabola_distance(const PerfectSymmetricSet& set, double t, int n) {
  t = reduce_angle(t);
  const Descent d = descend(set, t, n);
  if (d.gap_stage == 0) return 0.0;
  const double g = d.gap_right - d.gap_left;
  const double u = std::clamp(t - d.gap_left, 0.0, g);
  return snap(u * (g - u) / g);
}

DiscreteMeasure cantor_measure(const PerfectSymmetricSet& set, int m, AtomPlacement placement,
                               double total_mass) {
  if (!(total_mass > 0.0)) fail(ErrorKind::Domain, "total mass must be positive");
  const auto cover = level_cover(set, m);
  DiscreteMeasure mu;
  mu.total_mass = total_mass;
  const double mass = std::ldexp(total_mass, -m);
  mu.atoms.reserve(cover.arcs.size());
  for (const auto& arc : cover.arcs) {
    const double at = placement == AtomPlacement::Midpoint ? arc.start + 0.5 * arc.length
                                                           : arc.start;
    mu.atoms.push_back({at, mass});
  }
  return mu;
}

double cumulative_mass(const DiscreteMeasure& mu, double t) {
  double s = 0.0;
  for (const auto& a : mu.atoms)
    if (a.angle <= t) s += a.mass;
  return s;
}

double cantor_lebesgue_function(const PerfectSymmetricSet& set, double t, int depth) {
  if (t <= 0.0) return 0.0;
  if (t >= kTwoPi) return kTwoPi;
  const double xi = set.xi();
  double a = 0.0, len = kTwoPi, weight = kTwoPi, value = 0.0;
  for (int j = 0; j < depth; ++j) {
    const double child = len * xi;
    weight *= 0.5;
    if (t <= a + child) {
      len = child;
    } else if (t >= a + len - child) {
      value += weight;
      a += len - child;
      len = child;
    } else {
      return value + weight;
    }
  }
  return value + weight;
}

}  // namespace cantor
