#include "cantor/herz.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"
#include "cantor/kernels.hpp"
#include "cantor/weights.hpp"

namespace cantor {

namespace {

using C = std::complex<double>;

double factorial(int k) { return std::tgamma(k + 1.0); }

double hurwitz(double s, double q) {
  gsl_sf_result r;
  const int status = gsl_sf_hzeta_e(s, q, &r);
  if (status != GSL_SUCCESS)
    fail(ErrorKind::Precision, std::string("Hurwitz zeta failed: ") + gsl_strerror(status));
  return r.val;
}

// i^{-p}
C inverse_i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

// Value of the piece on [0, eps] and its derivatives; u in [0, eps].
double piece(int p, double eps, double u, int j = 0) {
  if (j > p + 1) return 0.0;
  const double sign = ((p + j) % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(eps - u, p + 1 - j) / (factorial(p + 1 - j) * eps);
}

// Non-periodic kernel for u in [-eps, eps], zero outside.
double kernel_value(int p, double eps, double u) {
  if (u >= eps || u <= -eps) return 0.0;
  if (u >= 0.0) return piece(p, eps, u);
  return (p % 2 == 0 ? 1.0 : -1.0) * piece(p, eps, -u);
}

// J(x) with int_0^eps P(t) e^{-imt} dt = eps^{p+1} J(m eps).
C j_integral(int p, double x) {
  if (std::abs(x) < 1.0) {
    C term = 1.0 / factorial(p + 2), sum = term;
    const C step(0.0, -x);
    for (int n = 1; n < 60; ++n) {
      term *= step / static_cast<double>(n + p + 2);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return (p % 2 == 0 ? 1.0 : -1.0) * sum;
  }
  const C ix(0.0, x);
  C sum{};
  C ixp = ix;  // (ix)^{j+1}
  for (int j = 0; j <= p + 1; ++j) {
    const double sign = ((p + j) % 2 == 0) ? 1.0 : -1.0;
    sum += sign / (factorial(p + 1 - j) * ixp);
    if (j <= p) ixp *= ix;
  }
  // ixp is now (ix)^{p+2}
  sum += std::polar(1.0, -x) / ixp;
  return sum;
}

// (1/2pi) int_R Delta(u) e^{-imu} du; for eps > pi this is the coefficient of
// the 2pi-periodization.
C kernel_hat(int p, double eps, std::int64_t m) {
  const double x = static_cast<double>(m) * eps;
  if (p == 0) {
    if (m == 0) return eps / kTwoPi;
    const double h = 0.5 * x;
    const double sn = std::sin(h);
    return eps / kTwoPi * (sn * sn) / (h * h);
  }
  const double scale = std::pow(eps, p + 1) / kTwoPi;
  const double parity = p % 2 == 0 ? 1.0 : -1.0;
  return scale * (j_integral(p, x) + parity * j_integral(p, -x));
}

std::int64_t residue(std::int64_t m, std::int64_t n) { return ((m % n) + n) % n; }

// Cache of S(r) = sum over the class r of |N Delta_0^(m)| (1+|m|)^s.
std::mutex s_table_mutex;
std::map<std::tuple<std::int64_t, double>, std::vector<double>> s_tables;

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

DeltaKernel::DeltaKernel(int p, double eps) : p_(p), eps_(eps) {
  if (p < 0) fail(ErrorKind::Domain, "kernel order p must be >= 0");
  if (!(eps > 0.0 && eps <= kPi)) fail(ErrorKind::Domain, "kernel width must lie in (0, pi]");
}

double DeltaKernel::operator()(double t) const {
  double u = reduce_angle(t);
  if (u > kPi) u -= kTwoPi;
  return kernel_value(p_, eps_, u);
}

double DeltaKernel::derivative(double t, int j) const {
  if (j < 0) fail(ErrorKind::Domain, "derivative order must be >= 0");
  double u = reduce_angle(t);
  if (u > kPi) u -= kTwoPi;
  if (u >= eps_ || u < -eps_) return 0.0;
  if (u >= 0.0) return piece(p_, eps_, u, j);
  // d^j/du^j [(-1)^p P(-u)] = (-1)^{p+j} P^(j)(-u)
  return ((p_ + j) % 2 == 0 ? 1.0 : -1.0) * piece(p_, eps_, -u, j);
}

C DeltaKernel::fourier(std::int64_t m) const { return kernel_hat(p_, eps_, m); }

Interpolant::Interpolant(const FourierSeries& f, std::int64_t n_nodes, double s,
                         HerzConstruction construction)
    : n_(n_nodes), p_(integer_part(s)), s_(s), construction_(construction) {
  if (n_nodes < 1) fail(ErrorKind::Domain, "number of nodes N must be >= 1");
  if (n_nodes > (std::int64_t{1} << 26)) fail(ErrorKind::Resource, "too many nodes");
  if (p_ == 0) construction_ = HerzConstruction::Kernel;

  const FourierSeries g = f.derivative(p_);
  alias_.assign(static_cast<std::size_t>(n_), C{});
  for (std::int64_t m = -g.truncation(); m <= g.truncation(); ++m)
    alias_[static_cast<std::size_t>(residue(m, n_))] += g[m];

  std::vector<double> angles(static_cast<std::size_t>(n_));
  for (std::int64_t k = 0; k < n_; ++k)
    angles[static_cast<std::size_t>(k)] = kTwoPi * static_cast<double>(k) / static_cast<double>(n_);
  node_values_ = evaluate_many(g.dense(), angles, Exec::Parallel);

  if (construction_ == HerzConstruction::SpectralAntiderivative) {
    // f_{N,p}(1) = f(1): constant = f(1) - sum_{m != 0} c_m, the class sums
    // sum_{m = r mod N} m^{-(p+2)} done with Hurwitz zeta.
    C f1{};
    for (auto c : f.dense()) f1 += c;
    const double nd = static_cast<double>(n_);
    const double sign = (p_ % 2 == 0) ? 1.0 : -1.0;
    C rest{};
    for (std::int64_t r = 1; r < n_; ++r) {
      const C a = alias_[static_cast<std::size_t>(r)];
      if (a == C{}) continue;
      const double x = static_cast<double>(r) / nd;
      const double cls = std::pow(nd, -(p_ + 2)) * (hurwitz(p_ + 2, x) + sign * hurwitz(p_ + 2, 1.0 - x));
      rest += a * class_factor(r) * cls;
    }
    constant_ = f1 - inverse_i_power(p_) * rest;
  }
}

double Interpolant::class_factor(std::int64_t r) const {
  // N Delta_0^(m) = sin^2(pi r / N) (N / pi)^2 / m^2 for m = r mod N, m != 0
  const double nd = static_cast<double>(n_);
  const double sn = std::sin(kPi * static_cast<double>(r) / nd);
  return sn * sn * (nd / kPi) * (nd / kPi);
}

C Interpolant::coefficient(std::int64_t m) const {
  const std::int64_t r = residue(m, n_);
  const C a = alias_[static_cast<std::size_t>(r)];
  if (construction_ == HerzConstruction::Kernel && p_ > 0)
    return static_cast<double>(n_) * a * kernel_hat(p_, kTwoPi / static_cast<double>(n_), m);
  if (m == 0) return p_ == 0 ? a : constant_;
  if (r == 0 || a == C{}) return {};
  const double md = static_cast<double>(m);
  return a * class_factor(r) / (md * md) * inverse_i_power(p_) / std::pow(md, p_);
}

FourierSeries Interpolant::truncated(std::int64_t truncation) const {
  FourierSeries out(truncation);
  for (std::int64_t m = -truncation; m <= truncation; ++m) out.set(m, coefficient(m));
  return out;
}

C Interpolant::evaluate(double t) const {
  if (construction_ != HerzConstruction::Kernel)
    fail(ErrorKind::Domain, "pointwise evaluation is only available for the kernel construction");
  const double eps = kTwoPi / static_cast<double>(n_);
  const double u = reduce_angle(t);
  const auto k0 = std::min<std::int64_t>(static_cast<std::int64_t>(u / eps), n_ - 1);
  C sum{};
  for (std::int64_t j : {k0, k0 + 1})
    sum += kernel_value(p_, eps, u - static_cast<double>(j) * eps) *
           node_values_[static_cast<std::size_t>(j % n_)];
  return sum;
}

double Interpolant::tail_abs_weighted(std::int64_t r, std::int64_t above, double sigma) const {
  // sum over m = r mod N with |m| > above of |c_m| (1+|m|)^sigma, r != 0
  const C a = alias_[static_cast<std::size_t>(r)];
  if (a == C{}) return 0.0;
  const double e = p_ + 2;
  auto first_k = [&](std::int64_t base) {
    // smallest k >= 0 with base + k N > above
    if (base > above) return std::int64_t{0};
    return (above - base) / n_ + 1;
  };
  const double pos = alias_tail(static_cast<double>(r), n_, sigma, e, first_k(r));
  const double neg = alias_tail(static_cast<double>(n_ - r), n_, sigma, e, first_k(n_ - r));
  return std::abs(a) * class_factor(r) * (pos + neg);
}

double Interpolant::norm(double sigma) const {
  if (construction_ == HerzConstruction::Kernel && p_ > 0)
    fail(ErrorKind::Domain, "the kernel interpolant with p >= 1 is not in A_s");
  if (!(sigma >= 0.0 && sigma < p_ + 1))
    fail(ErrorKind::Domain, "norm of f_{N,p} needs 0 <= s < p + 1");

  const C c0 = coefficient(0);
  if (p_ == 0) {
    std::vector<double> table;
    {
      std::lock_guard lock(s_table_mutex);
      auto it = s_tables.find({n_, sigma});
      if (it != s_tables.end()) table = it->second;
    }
    if (table.empty()) {
      table.assign(static_cast<std::size_t>(n_), 0.0);
      table[0] = 1.0;
      for (std::int64_t r = 1; r < n_; ++r)
        table[static_cast<std::size_t>(r)] =
            class_factor(r) * (alias_tail(static_cast<double>(r), n_, sigma, 2.0) +
                               alias_tail(static_cast<double>(n_ - r), n_, sigma, 2.0));
      std::lock_guard lock(s_table_mutex);
      s_tables.emplace(std::make_tuple(n_, sigma), table);
    }
    double sum = 0.0;
    for (std::int64_t r = 0; r < n_; ++r)
      sum += std::abs(alias_[static_cast<std::size_t>(r)]) * table[static_cast<std::size_t>(r)];
    return sum;
  }
  double sum = std::abs(c0);
  for (std::int64_t r = 1; r < n_; ++r) sum += tail_abs_weighted(r, 0, sigma);
  return sum;
}

double Interpolant::distance(const FourierSeries& f, double sigma) const {
  if (construction_ == HerzConstruction::Kernel && p_ > 0)
    fail(ErrorKind::Domain, "the kernel interpolant with p >= 1 is not in A_s");
  if (!(sigma >= 0.0 && sigma < p_ + 1))
    fail(ErrorKind::Domain, "distance to f_{N,p} needs 0 <= s < p + 1");
  const std::int64_t w = std::max(f.degree(), n_);
  double sum = 0.0;
  for (std::int64_t m = -w; m <= w; ++m) {
    const C d = f[m] - coefficient(m);
    if (d != C{}) sum += std::abs(d) * std::pow(1.0 + std::abs(static_cast<double>(m)), sigma);
  }
  for (std::int64_t r = 1; r < n_; ++r) sum += tail_abs_weighted(r, w, sigma);
  return sum;
}

Interpolant herz_interpolant(const FourierSeries& f, std::int64_t n_nodes, double s,
                             HerzConstruction construction) {
  return Interpolant(f, n_nodes, s, construction);
}

double alias_tail(double a, std::int64_t n, double s, double e, std::int64_t k0) {
  if (!(a > 0.0) || n < 1 || k0 < 0) fail(ErrorKind::Domain, "alias_tail needs a > 0, N >= 1");
  if (!(e - s > 1.0)) fail(ErrorKind::Domain, "alias_tail diverges unless e - s > 1");
  constexpr std::int64_t kDirect = 64;
  const double nd = static_cast<double>(n);
  double direct = 0.0;
  for (std::int64_t k = k0; k < k0 + kDirect; ++k) {
    const double y = a + static_cast<double>(k) * nd;
    direct += std::pow(1.0 + y, s) / std::pow(y, e);
  }
  // k >= K: with y = k + a/N the term is N^{s-e} y^{s-e} (1 + 1/(N y))^s;
  // expand the last factor binomially and sum each power with Hurwitz zeta.
  const double shift = static_cast<double>(k0 + kDirect) + a / nd;
  double tail = 0.0, binom = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double term = binom * std::pow(nd, -i) * hurwitz(e + i - s, shift);
    tail += term;
    if (std::abs(term) <= 1e-17 * std::abs(tail)) break;
    binom *= (s - i) / (i + 1.0);
    if (binom == 0.0) break;
  }
  return direct + std::pow(nd, s - e) * tail;
}

HerzConstants herz_constants(double s) {
  if (!(s >= 0.0 && s < 1.0)) fail(ErrorKind::Domain, "Herz constants need 0 <= s < 1");
  HerzConstants out;
  // sum_{k in Z} (|k|+1/2)^s / (|k|-1/2)^2 = 4 * 2^{-s} + 2 sum_{k>=1} (k+1/2)^s / (k-1/2)^2
  out.k1 = std::pow(2.0, s - 2.0) * (4.0 * std::pow(2.0, -s) + 2.0 * alias_tail(0.5, 1, s, 2.0));
  const double near = std::pow(2.0, 1.0 + s);
  const double far = std::pow(2.0, 2.0 * s + 1.0) / (kPi * kPi) * hurwitz(2.0 - s, 1.0);
  out.k2 = near + far;
  out.k2_max = std::max(near, far);
  out.k = std::max(out.k1, out.k2);
  return out;
}

HerzBound herz_bound(const FourierSeries& f, std::int64_t n_nodes, double s) {
  if (!(s >= 0.0 && s < 1.0)) fail(ErrorKind::Domain, "the A_s bound needs 0 <= s < 1");
  HerzBound out;
  out.constants = herz_constants(s);
  out.norm_fn = Interpolant(f, n_nodes, 0.0).norm(s);
  out.bound = out.constants.k * sobolev_norm(f, s, Exec::Serial);
  out.holds = out.norm_fn <= out.bound * (1.0 + 1e-12);
  return out;
}

ConvergenceStudy convergence_study(const FourierSeries& f, double s,
                                   std::span<const std::int64_t> n_list) {
  const int p = integer_part(s);
  if (p >= 1) {
    for (int j = 0; j <= p; ++j) {
      C v{};
      double scale = 0.0;
      const auto d = f.derivative(j);
      for (auto c : d.dense()) {
        v += c;
        scale += std::abs(c);
      }
      if (std::abs(v) > 1e-12 * std::max(1.0, scale))
        fail(ErrorKind::Contract, "f^(" + std::to_string(j) + ")(1) = " +
                                      std::to_string(std::abs(v)) + " is not zero (j = " +
                                      std::to_string(j) + ")");
    }
  }
  const auto construction =
      p >= 1 ? HerzConstruction::SpectralAntiderivative : HerzConstruction::Kernel;

  ConvergenceStudy out;
  out.window_min_n = 2 * f.degree();
  std::vector<double> lx, ly, wx, wy;
  for (auto n : n_list) {
    const Interpolant fn(f, n, s, construction);
    const double err = fn.distance(f, s);
    out.rows.push_back({n, err});
    if (err > 0.0) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(err));
      if (n >= out.window_min_n) {
        wx.push_back(lx.back());
        wy.push_back(ly.back());
      }
    }
  }
  if (lx.size() >= 2) out.full_rate = slope(lx, ly);
  if (wx.size() >= 2) out.fitted_rate = slope(wx, wy);
  return out;
}

CoverResidual cover_residual(const FourierSeries& f, double s, int q, int level,
                             std::int64_t samples) {
  if (level < 0) fail(ErrorKind::Domain, "level must be >= 0");
  const auto set = PerfectSymmetricSet::from_q(q);
  if (!set.exact_at_level(level)) fail(ErrorKind::Resource, "q^n too large");
  const int p = integer_part(s);
  const auto cover = level_cover(set, level);
  const auto n = static_cast<std::int64_t>(cover.denominator);
  const double nd = static_cast<double>(n);

  CoverResidual out;
  const double eps = kTwoPi / nd;
  out.constant = 2.0 * std::pow(eps, p) / factorial(p + 1);

  std::vector<double> ends;
  for (auto k : endpoint_numerators(q, level)) ends.push_back(kTwoPi * static_cast<double>(k) / nd);
  for (int j = 0; j <= p; ++j) {
    const auto vals = evaluate_many(f.derivative(j).dense(), ends, Exec::Parallel);
    double mx = 0.0;
    for (auto v : vals) mx = std::max(mx, std::abs(v));
    out.endpoint_max.push_back(mx);
  }

  const Interpolant fn(f, n, s, HerzConstruction::Kernel);
  const auto arcs = static_cast<std::int64_t>(cover.numerators.size());
  const std::int64_t per_arc = std::max<std::int64_t>(2, samples / arcs);
  for (auto k : cover.numerators)
    for (std::int64_t i = 0; i < per_arc; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(per_arc - 1);
      const double t = kTwoPi * (static_cast<double>(k) + u) / nd;
      out.max_residual = std::max(out.max_residual, std::abs(fn.evaluate(t)));
    }
  return out;
}

CoverResidual vanishing_on_cover(const FourierSeries& f, double s, int q, int level,
                                 std::int64_t samples, double tol) {
  auto out = cover_residual(f, s, q, level, samples);
  for (std::size_t j = 0; j < out.endpoint_max.size(); ++j)
    if (out.endpoint_max[j] > tol)
      fail(ErrorKind::Contract, "f^(" + std::to_string(j) + ") reaches " +
                                    std::to_string(out.endpoint_max[j]) +
                                    " at a level-" + std::to_string(level) +
                                    " endpoint, above tol " + std::to_string(tol) +
                                    " (j = " + std::to_string(j) + ")");
  return out;
}

}  // namespace cantor
