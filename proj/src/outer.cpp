#include "cantor/outer.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "cantor/errors.hpp"
#include "cantor/fft.hpp"
#include "cantor/kernels.hpp"

namespace cantor {

namespace {

using C = std::complex<double>;

bool is_power_of_two(std::size_t g) { return g >= 2 && std::has_single_bit(g); }

std::uint64_t checked_pow(std::uint64_t q, int e, std::uint64_t limit, const char* what) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > limit / q) fail(ErrorKind::Resource, what);
    r *= q;
  }
  return r;
}

}  // namespace

AdmissibleParameters admissible_parameters(double beta, int q) {
  const auto set = PerfectSymmetricSet::from_q(q);
  AdmissibleParameters out;
  out.b = set.critical_exponent();
  if (!(beta >= 0.0)) fail(ErrorKind::Domain, "beta must be >= 0");
  if (beta >= out.b)
    fail(ErrorKind::Domain, "beta = " + std::to_string(beta) + " must be below b(1/q) = " +
                                std::to_string(out.b));
  out.gamma = 0.5 * (beta + out.b);
  out.delta_lo = out.gamma / (1.0 - out.gamma);
  out.delta_hi = 1.0 - std::numbers::ln2 / std::log(static_cast<double>(q));
  out.delta = 0.5 * (out.delta_lo + out.delta_hi);
  if (!(beta < out.gamma && out.gamma < out.b && out.delta_lo < out.delta && out.delta < out.delta_hi))
    fail(ErrorKind::Domain, "no admissible (gamma, delta) for this beta");
  return out;
}

LogModulusProfile distance_profile_for(const PerfectSymmetricSet& set, double delta,
                                       std::size_t grid, double floor) {
  if (!is_power_of_two(grid)) fail(ErrorKind::Domain, "grid size must be a power of two");
  if (!(delta > 0.0)) fail(ErrorKind::Domain, "delta must be positive");
  if (!(floor < 0.0) || !std::isfinite(floor)) fail(ErrorKind::Domain, "clamp floor must be finite and < 0");
  int level = 1;
  while (std::pow(set.xi(), level) >= 1.0 / static_cast<double>(grid)) ++level;

  LogModulusProfile out;
  out.floor = floor;
  out.delta = delta;
  out.level = level;
  const auto d = distance_profile(set, level, grid, Exec::Parallel);
  out.values.resize(grid);
  for (std::size_t j = 0; j < grid; ++j)
    out.values[j] = d[j] > 0.0 ? std::max(-std::pow(d[j], -delta), floor) : floor;
  return out;
}

LogModulusProfile profile_from_samples(std::vector<double> values, double floor) {
  if (!is_power_of_two(values.size())) fail(ErrorKind::Domain, "grid size must be a power of two");
  for (double& v : values) {
    if (!(v <= 0.0)) fail(ErrorKind::Domain, "log-modulus samples must be <= 0");
    v = std::max(v, floor);
  }
  LogModulusProfile out;
  out.values = std::move(values);
  out.floor = floor;
  return out;
}

OuterApprox outer_from_modulus(const LogModulusProfile& profile, std::int64_t truncation,
                               double aliasing_tol) {
  const std::size_t g = profile.grid();
  if (!is_power_of_two(g)) fail(ErrorKind::Domain, "grid size must be a power of two");
  if (truncation < 0) fail(ErrorKind::Domain, "truncation must be >= 0");
  const auto m = static_cast<std::size_t>(truncation);
  if (g < 4 * m)
    fail(ErrorKind::Resolution, "grid " + std::to_string(g) + " is below 4M = " +
                                    std::to_string(4 * m));
  const double gd = static_cast<double>(g);

  std::vector<C> w(profile.values.begin(), profile.values.end());
  auto wk = dft_forward(std::move(w));
  // analytic completion: keep k = 0 and G/2 once, double 0 < k < G/2
  std::vector<C> h(g);
  h[0] = wk[0] / gd;
  for (std::size_t k = 1; k < g / 2; ++k) h[k] = 2.0 * wk[k] / gd;
  h[g / 2] = wk[g / 2] / gd;
  auto logf = dft_backward(std::move(h));
  for (auto& v : logf) v = std::exp(v);
  auto fk = dft_forward(std::move(logf));
  for (auto& v : fk) v /= gd;

  OuterApprox out;
  out.grid = g;
  out.floor = profile.floor;
  auto& dg = out.diagnostics;
  double total = 0.0;
  for (std::size_t k = 0; k < g; ++k) {
    const double e = std::norm(fk[k]);
    total += e;
    if (k > g / 2) dg.negative_energy += e;
    else if (k > m / 2) {
      dg.energy_above_half_m += e;
      if (k > m) dg.energy_above_m += e;
    }
  }
  if (total > 0.0) {
    dg.negative_energy /= total;
    dg.energy_above_half_m /= total;
    dg.energy_above_m /= total;
  }

  // modulus of the degree-M truncation on the grid
  std::vector<C> padded(g);
  std::copy(fk.begin(), fk.begin() + static_cast<std::ptrdiff_t>(m + 1), padded.begin());
  const auto vals = dft_backward(std::move(padded));
  // errors are relative to max |f| on the grid; pointwise ratios at e^{-30} are pure rounding
  double peak = 0.0;
  for (double v : profile.values) peak = std::max(peak, std::exp(v));
  for (std::size_t j = 0; j < g; ++j) {
    if (profile.clamped(j)) continue;
    ++dg.unclamped;
    const double target = std::exp(profile.values[j]);
    const double got = std::abs(vals[j]);
    dg.modulus_error = std::max(dg.modulus_error, std::abs(got - target) / peak);
    if (got > target + 1e-6 * peak) ++dg.bound_violations;
  }

  if (dg.energy_above_half_m > aliasing_tol)
    fail(ErrorKind::Resolution, "relative energy above M/2 is " +
                                    std::to_string(dg.energy_above_half_m) + " > " +
                                    std::to_string(aliasing_tol) + "; raise M and the grid");

  out.scale = fk[0];
  if (std::abs(out.scale) == 0.0) fail(ErrorKind::Precision, "zeroth coefficient underflows");
  out.coeffs.assign(fk.begin(), fk.begin() + static_cast<std::ptrdiff_t>(m + 1));
  for (auto& c : out.coeffs) c /= out.scale;
  out.coeffs[0] = 1.0;
  return out;
}

FourierSeries dilate(const FourierSeries& f, int q, int m, std::int64_t budget) {
  if (q < 2) fail(ErrorKind::Domain, "dilation base q must be >= 2");
  if (m < 0) fail(ErrorKind::Domain, "dilation exponent m must be >= 0");
  const auto step = static_cast<std::int64_t>(
      checked_pow(static_cast<std::uint64_t>(q), m, static_cast<std::uint64_t>(budget),
                  "dilation exceeds the truncation budget"));
  const std::int64_t deg = f.degree();
  if (deg > 0 && step > budget / deg) fail(ErrorKind::Resource, "dilation exceeds the truncation budget");
  FourierSeries out(step * deg);
  for (std::int64_t k = -deg; k <= deg; ++k) out.set(step * k, f[k]);
  return out;
}

WeightTransfer weight_transfer(double s, double beta, double gamma, int q, int m,
                               const std::optional<Weight>& target, std::int64_t ratio_range) {
  if (!(beta > 0.0)) fail(ErrorKind::Domain, "weight transfer needs beta > 0");
  if (!(beta < gamma)) fail(ErrorKind::Domain, "beta must be below gamma (else the sup is infinite)");
  if (!(gamma < 1.0)) fail(ErrorKind::Domain, "gamma must be below 1");
  if (q < 2 || m < 0 || !(s >= 0.0)) fail(ErrorKind::Domain, "need q >= 2, m >= 0, s >= 0");

  WeightTransfer out;
  const double qd = static_cast<double>(q);
  out.power_term = std::pow(qd, m * s);
  const double a = std::pow(qd, beta * m);
  auto phi = [&](double k) { return a * std::pow(k, beta) - std::pow(k, gamma); };

  out.k_star_closed = std::pow(a * beta / gamma, 1.0 / (gamma - beta));
  // phi > 0 exactly on (0, a^{1/(gamma-beta)}), so the maximizer lies inside.
  const double k_max = std::pow(a, 1.0 / (gamma - beta));
  const auto best = boost::math::tools::brent_find_minima(
      [&](double k) { return -phi(k); }, 0.0, k_max, std::numeric_limits<double>::digits / 2);
  out.k_star = best.first;
  out.exp_sup = std::exp(std::max(0.0, -best.second));

  if (target) {
    const Weight omega_beta = Weight::one_sided(s, beta);
    double best_log = 0.0;
    for (std::int64_t k = -ratio_range; k <= ratio_range; ++k)
      best_log = std::max(best_log, target->log_value(k) - omega_beta.log_value(k));
    out.ratio_sup = std::exp(best_log);
  }
  out.c = out.ratio_sup * std::max(out.power_term, out.exp_sup);
  if (!std::isfinite(out.c)) fail(ErrorKind::Range, "weight transfer constant overflows");
  return out;
}

double annihilation_residual(const FourierSeries& f, int q, int m, int level) {
  if (m < 0 || level < 0) fail(ErrorKind::Domain, "m and level must be >= 0");
  constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 26;
  const std::uint64_t qq = static_cast<std::uint64_t>(q);
  const std::uint64_t big_q = checked_pow(qq, level, kTableLimit, "q^level exceeds the root table limit");
  std::uint64_t step = 1 % big_q;
  for (int i = 0; i < m; ++i) step = (step * qq) % big_q;

  std::vector<C> roots(big_q);
  for (std::uint64_t j = 0; j < big_q; ++j)
    roots[j] = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(big_q));

  const auto ends = endpoint_numerators(q, level);
  const std::int64_t deg = f.degree();
  const auto qi = static_cast<std::int64_t>(big_q);
  double worst = 0.0;
  for (auto e : ends) {
    const auto inc = static_cast<std::int64_t>((e * step) % big_q);
    C sum{};
    for (std::int64_t k = -deg; k <= deg; ++k) {
      const std::int64_t km = ((k % qi) + qi) % qi;
      sum += f[k] * roots[static_cast<std::size_t>((km * inc) % qi)];
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

InversePowerBound inverse_power_bound(const FourierSeries& f, int q, std::int64_t n, double s) {
  if (n < 1) fail(ErrorKind::Domain, "n must be >= 1");
  if (q < 2 || !(s >= 0.0)) fail(ErrorKind::Domain, "need q >= 2 and s >= 0");
  if (std::abs(f[0] - Complex(1.0)) > 1e-12)
    fail(ErrorKind::Contract, "inverse power bound needs f^(0) = 1");

  InversePowerBound out;
  std::int64_t p = 1;
  while (p <= n / q) {
    p *= q;
    ++out.m;
  }
  const std::int64_t deg = f.degree();
  double head = 0.0, top = 0.0;
  for (std::int64_t k = 1; k <= deg; ++k) {
    const double term = std::abs(f[k]) * std::pow(1.0 + static_cast<double>(k), s);
    (2 * k > deg ? top : head) += term;
  }
  if (deg >= 4 && top >= head)
    fail(ErrorKind::Precision, "weighted coefficient tail is not summable at this truncation "
                               "(top octave " + std::to_string(top) + " >= head " +
                                   std::to_string(head) + ")");
  out.weighted_sum = head + top;
  out.bound = std::pow(static_cast<double>(q), s) * std::pow(static_cast<double>(n), s) *
              out.weighted_sum;
  if (!std::isfinite(out.bound)) fail(ErrorKind::Range, "inverse power bound overflows");
  return out;
}

}  // namespace cantor
