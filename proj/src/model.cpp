#include "cantor/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cantor/errors.hpp"
#include "cantor/fft.hpp"
#include "cantor/kernels.hpp"

namespace cantor {

namespace {

using C = std::complex<double>;

constexpr double kAliasLimit = 1e-14;
constexpr double kAmplificationLimit = 1e12;
constexpr double kNoiseCut = 1e-10;

}  // namespace

double RadiusPolicy::radius(std::int64_t truncation) const {
  if (truncation < 1) fail(ErrorKind::Domain, "truncation must be >= 1");
  if (kind == Kind::Fixed) return value;
  if (!(value > 1.0)) fail(ErrorKind::Parameter, "amplification must exceed 1");
  return std::pow(value, -1.0 / static_cast<double>(truncation));
}

RadiusPolicy RadiusPolicy::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    fail(ErrorKind::Usage, "radius policy must be amp=<A> or r=<radius>");
  const std::string key(text.substr(0, eq)), val(text.substr(eq + 1));
  RadiusPolicy p;
  try {
    std::size_t used = 0;
    p.value = std::stod(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
  } catch (const std::logic_error&) {
    fail(ErrorKind::Usage, "bad number in radius policy: '" + val + "'");
  }
  if (key == "amp") p.kind = Kind::Amplification;
  else if (key == "r") p.kind = Kind::Fixed;
  else fail(ErrorKind::Usage, "radius policy key must be amp or r, got '" + key + "'");
  return p;
}

SingularInnerApprox inner_from_measure(const DiscreteMeasure& mu, std::int64_t truncation,
                                       const RadiusPolicy& policy) {
  return inner_from_measure(mu, truncation, policy.radius(truncation));
}

SingularInnerApprox inner_from_measure(const DiscreteMeasure& mu, std::int64_t truncation,
                                       double radius) {
  if (truncation < 1) fail(ErrorKind::Domain, "truncation must be >= 1");
  if (!(radius > 0.0 && radius < 1.0)) fail(ErrorKind::Parameter, "radius must lie in (0, 1)");
  for (const auto& a : mu.atoms)
    if (!std::isfinite(a.angle) || !(a.mass > 0.0))
      fail(ErrorKind::Domain, "atoms need finite angles and positive masses");

  const auto m = static_cast<std::size_t>(truncation);
  const std::size_t g = 4 * m;
  const double gd = static_cast<double>(g);
  const double log_r = std::log(radius);
  const double alias = std::exp(gd * log_r);
  if (alias > kAliasLimit)
    fail(ErrorKind::Parameter, "radius too close to 1: r^G = " + std::to_string(alias) +
                                   " exceeds 1e-14");
  const double amplification = std::exp(-static_cast<double>(truncation) * log_r);
  if (amplification > kAmplificationLimit)
    fail(ErrorKind::Parameter, "radius too small: r^{-M} = " + std::to_string(amplification) +
                                   " exceeds 1e12");

  auto values = herglotz_on_circle(mu, radius, g, Exec::Parallel);
  double vmax = 0.0;
  for (auto& v : values) {
    v = std::exp(v);
    vmax = std::max(vmax, std::abs(v));
  }
  const auto x = dft_forward(std::move(values));

  SingularInnerApprox out;
  out.radius = radius;
  out.grid = g;
  out.total_mass = mu.total_mass;
  out.coeffs.resize(m + 1);
  out.coeff_error.resize(m + 1);
  // rounding of the samples and of the transform, then aliasing of |V^| <= 1 terms
  const double eps = std::numeric_limits<double>::epsilon();
  const double base = eps * vmax * (std::log2(gd) + 2.0) + alias / (1.0 - alias);
  double numeric = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    const double amp = std::exp(-static_cast<double>(k) * log_r);
    C c = x[k] / gd * amp;
    double e = base * amp;
    if (e > kNoiseCut) {
      // too noisy to keep; its mass moves into the tail via 1 - energy
      c = 0.0;
      e = 0.0;
    }
    out.coeffs[k] = c;
    out.coeff_error[k] = e;
    out.energy += std::norm(c);
    numeric += 2.0 * std::abs(c) * e + e * e;
  }
  if (out.energy > 1.0 + 1e-10)
    fail(ErrorKind::Precision, "recovered coefficients carry energy " +
                                   std::to_string(out.energy) + " > 1");
  out.tail_bound = std::max(0.0, 1.0 - out.energy) + numeric;
  return out;
}

ProjectionTable projection_norms(const SingularInnerApprox& v, std::int64_t k_max) {
  if (k_max < 0 || k_max > v.truncation()) fail(ErrorKind::Domain, "K must lie in [0, M]");
  ProjectionTable t;
  t.tail_slack = v.tail_bound;
  const auto n = static_cast<std::size_t>(k_max) + 1;
  t.sigma.resize(n);
  t.pnorm2.resize(n);
  t.error.resize(n);
  double s = 0.0, err = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s += std::norm(v.coeffs[k]);
    const double e = v.coeff_error[k];
    err += 2.0 * std::abs(v.coeffs[k]) * e + e * e;
    t.sigma[k] = s;
    t.pnorm2[k] = 1.0 - s;
    t.error[k] = err;
  }
  return t;
}

LowerBound inverse_power_lower_bound(const ProjectionTable& table, std::int64_t n,
                                     std::int64_t j_max) {
  if (n < 0 || j_max < 0) fail(ErrorKind::Domain, "n and J must be >= 0");
  const auto k = static_cast<std::int64_t>(table.pnorm2.size()) - 1;
  if (j_max + n > k) fail(ErrorKind::Domain, "J + n exceeds the table length");
  LowerBound out;
  out.tail_slack = table.tail_slack;
  if (n == 0) return out;
  const auto last = static_cast<std::size_t>(j_max + n);
  if (!(table.pnorm2[last] - table.error[last] > table.tail_slack))
    fail(ErrorKind::Precision, "pnorm2[" + std::to_string(j_max + n) + "] = " +
                                   std::to_string(table.pnorm2[last]) +
                                   " does not exceed the tail slack " +
                                   std::to_string(table.tail_slack) + "; raise M or the level");
  out.value = 0.0;
  for (std::int64_t j = 0; j <= j_max; ++j) {
    const auto a = static_cast<std::size_t>(j), b = static_cast<std::size_t>(j + n);
    const double num = table.pnorm2[a] - table.error[a];
    const double den = table.pnorm2[b] + table.error[b];
    if (num <= 0.0) continue;
    const double r = std::sqrt(num / den);
    if (r > out.value) {
      out.value = r;
      out.argmax = j;
    }
  }
  return out;
}

GrowthFit growth_exponent_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 5) fail(ErrorKind::Fit, "growth fit needs at least 5 points");
  std::vector<double> x, y;
  for (const auto& [n, v] : points) {
    if (!(n > 0.0) || !(v > 0.0)) fail(ErrorKind::Fit, "growth fit needs positive n and values");
    x.push_back(std::log(n));
    y.push_back(std::log(v));
  }
  const double cnt = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= cnt;
  my /= cnt;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 1e-300) fail(ErrorKind::Fit, "abscissas are degenerate");
  GrowthFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

}  // namespace cantor
