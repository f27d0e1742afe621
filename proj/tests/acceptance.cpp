// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cantor/cli.hpp"
#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"
#include "cantor/herz.hpp"
#include "cantor/model.hpp"
#include "cantor/outer.hpp"
#include "cantor/weights.hpp"
#include "oracles.hpp"

using namespace cantor;
using oracle::C;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  double limit_seconds = 0.0;
};

class Report {
 public:
  void add(const std::string& msg) {
    if (!detail_.empty()) detail_ += "; ";
    detail_ += msg;
  }
  void require(bool ok, const std::string& msg) {
    if (!ok) pass_ = false;
    add(std::string(ok ? "" : "FAILED ") + msg);
  }
  Outcome done(double limit) const { return {pass_, detail_, limit}; }

 private:
  bool pass_ = true;
  std::string detail_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---- 1 --------------------------------------------------------------------

Outcome geometry() {
  Report r;
  const PerfectSymmetricSet sets[] = {PerfectSymmetricSet::parse("1/3"), PerfectSymmetricSet::parse("1/4"),
                                      PerfectSymmetricSet::parse("0.3")};
  std::size_t nest_bad = 0, census_bad = 0, agree_bad = 0;
  for (const auto& set : sets) {
    for (int n = 1; n <= 10; ++n) {
      const auto lv = level_cover(set, n), parent = level_cover(set, n - 1);
      for (std::size_t i = 0; i < lv.arcs.size(); ++i) {
        const auto& p = parent.arcs[i / 2];
        if (lv.arcs[i].start < p.start - 1e-12 || lv.arcs[i].end() > p.end() + 1e-12) ++nest_bad;
      }
    }
    for (const auto& row : gap_census(set, 10)) {
      const double want = kTwoPi * std::pow(set.xi(), row.stage - 1) * (1 - 2 * set.xi());
      if (row.count != (std::size_t{1} << (row.stage - 1)) || std::abs(row.length - want) > 1e-12)
        ++census_bad;
    }
    // the distance integral converges exactly when the gap series at 1 - delta does
    for (int i = 1; i < 100; ++i) {
      const double delta = i / 100.0;
      const auto ic = integral_criterion(set, delta, 10);
      const auto ga = gap_analysis(set, 1 - delta);
      if (ic.converges != ga.converges) ++agree_bad;
      if (!ic.partial_sums.empty() && ga.closed_form_sum) {
        // each stage contributes 2^{1-(1-delta)} / (1-delta) times its gap series term
        const double factor = std::pow(2.0, delta) / (1 - delta);
        double gsum = 0.0;
        for (int k = 1; k <= 10; ++k)
          gsum += std::pow(2.0, k - 1) * std::pow(kTwoPi * std::pow(set.xi(), k - 1) * (1 - 2 * set.xi()), 1 - delta);
        if (std::abs(ic.partial_sums.back() - factor * gsum) > 1e-10 * ic.partial_sums.back()) ++agree_bad;
      }
    }
  }
  r.require(nest_bad == 0, "nesting violations " + std::to_string(nest_bad));
  r.require(census_bad == 0, "census mismatches " + std::to_string(census_bad));
  r.require(agree_bad == 0, "gap/integral disagreements " + std::to_string(agree_bad));
  const double b4 = PerfectSymmetricSet::from_q(4).critical_exponent();
  r.require(std::abs(b4 - 1.0 / 3.0) <= 1e-12, "|b(1/4) - 1/3| = " + fmt("%.1e", std::abs(b4 - 1.0 / 3.0)));
  return r.done(1.0);
}

// ---- 2 --------------------------------------------------------------------

Outcome herz_kernel() {
  Report r;
  std::mt19937_64 rng(20240602);
  std::uniform_real_distribution<double> eps_dist(1e-3, kPi);
  std::uniform_int_distribution<std::int64_t> m_dist(-500, 500);
  double worst_hat = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eps = eps_dist(rng);
    const std::int64_t m = m_dist(rng);
    const double x = 0.5 * m * eps;
    const double closed = m == 0 ? eps / (2 * kPi) : eps / (2 * kPi) * std::pow(std::sin(x) / x, 2);
    worst_hat = std::max(worst_hat, std::abs(DeltaKernel(0, eps).fourier(m) - closed));
    worst_hat = std::max(worst_hat, std::abs(closed - oracle::delta_hat_quadrature(0, eps, m)));
  }
  r.require(worst_hat <= 1e-10, "closed form vs quadrature, 100 pairs: max " + fmt("%.2e", worst_hat));
  double worst_der = 0.0;
  for (int p = 1; p <= 3; ++p) {
    for (int i = 0; i < 1000; ++i) {
      const double eps = eps_dist(rng);
      const double t = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
      const DeltaKernel k(p, eps);
      // symbolic p-th derivative of the power-basis piece
      const auto poly = oracle::differentiate(oracle::eps_minus_t_power(p, eps), p);
      const double sgn = p % 2 ? -1.0 : 1.0;
      const double u = std::abs(t);
      // for t < 0 the extension sign and the chain rule sign cancel
      const double sym = u < eps ? sgn * oracle::horner(poly, u) / (oracle::factorial(p + 1) * eps) : 0.0;
      const double order0 = oracle::delta_periodic(0, eps, t);
      worst_der = std::max({worst_der, std::abs(k.derivative(t, p) - order0), std::abs(sym - order0)});
    }
  }
  r.require(worst_der <= 1e-10, "p-th derivative vs order-0 kernel, 3000 points: max " + fmt("%.2e", worst_der));
  return r.done(5.0);
}

// ---- 3 --------------------------------------------------------------------

Outcome herz_bound_suite() {
  Report r;
  std::size_t violations = 0, checks = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const auto f = random_polynomial(seed, static_cast<std::int64_t>(seed % 51));
    for (double s : {0.0, 0.25, 0.5, 0.9})
      for (std::int64_t n = 8; n <= 1024; n *= 2) {
        const auto hb = herz_bound(f, n, s);
        ++checks;
        if (!hb.holds) ++violations;
        worst_ratio = std::max(worst_ratio, hb.norm_fn / hb.bound);
      }
  }
  r.require(violations == 0, std::to_string(violations) + "/" + std::to_string(checks) + " violations, max ratio " +
                                 fmt("%.4f", worst_ratio));
  const double k1 = herz_constants(0).k1, want = (4 + kPi * kPi) / 4;
  r.require(std::abs(k1 - want) <= 1e-10, "K1(0) = " + fmt("%.15f", k1));
  return r.done(0.0);
}

// ---- 4 --------------------------------------------------------------------

Outcome convergence() {
  Report r;
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 8; n <= 1024; n *= 2) ns.push_back(n);
  for (std::int64_t n : {1, 3, 7})
    for (double s : {0.0, 0.5}) {
      const auto st = convergence_study(FourierSeries::monomial(n), s, ns);
      const double want = -(2 - s);
      r.require(st.fitted_rate && std::abs(*st.fitted_rate - want) <= 0.1,
                "n=" + std::to_string(n) + " s=" + fmt("%.1f", s) + " rate " + fmt("%.3f", *st.fitted_rate) +
                    " (N>=" + std::to_string(st.window_min_n) + "; all N " + fmt("%.3f", *st.full_rate) + ")");
    }
  // (e^{it} - 1)^2 e^{3it}: value and first derivative vanish at t = 0
  std::vector<C> taylor = {0, 0, 0, 1, -2, 1};
  const auto f = FourierSeries::from_taylor(taylor);
  std::vector<std::int64_t> dyadic;
  for (std::int64_t n = 4; n <= 4096; n *= 2) dyadic.push_back(n);
  const auto st = convergence_study(f, 1.5, dyadic);
  bool decreasing = true;
  for (std::size_t i = 1; i < st.rows.size(); ++i) decreasing = decreasing && st.rows[i].error < st.rows[i - 1].error;
  r.require(decreasing, "s=1.5 errors strictly decrease over N=4..4096 (last " + fmt("%.3e", st.rows.back().error) +
                            ", rate " + fmt("%.3f", st.full_rate.value_or(NAN)) + ")");
  return r.done(0.0);
}

// ---- 5 --------------------------------------------------------------------

Outcome sandwich() {
  Report r;
  std::size_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto f = random_polynomial(1000 + seed, 1 + static_cast<std::int64_t>(seed % 60));
    for (double s : {1.0, 1.5, 2.0, 3.7})
      if (!norme_sandwich(f, s).holds) ++bad;
  }
  r.require(bad == 0, std::to_string(bad) + " failures over 4000 cases");
  auto f = FourierSeries::monomial(1);
  f -= FourierSeries::constant(1.0);
  const auto h = norme_sandwich(f, 1.0);
  const double err = std::max({std::abs(h.lhs - 1), std::abs(h.mid - 3), std::abs(h.rhs - 2 - kPi)});
  r.require(err <= 1e-12, "(e^{it}-1, s=1) -> (" + fmt("%.15g", h.lhs) + ", " + fmt("%.15g", h.mid) + ", " +
                              fmt("%.15g", h.rhs) + ")");
  return r.done(0.0);
}

// ---- 6, 7 -----------------------------------------------------------------

const OuterApprox& constructed_outer() {
  static const OuterApprox f = [] {
    const auto params = admissible_parameters(0.1, 3);
    const auto prof = distance_profile_for(PerfectSymmetricSet::from_q(3), params.delta, 1 << 16);
    return outer_from_modulus(prof, 1 << 12, INFINITY);
  }();
  return f;
}

Outcome outer_function() {
  Report r;
  const auto params = admissible_parameters(0.1, 3);
  r.add("beta=0.1 gamma=" + fmt("%.4f", params.gamma) + " delta=" + fmt("%.4f", params.delta));
  const auto& f = constructed_outer();
  const auto& d = f.diagnostics;
  r.require(d.modulus_error <= 1e-6, "modulus error " + fmt("%.3e", d.modulus_error));
  r.require(d.negative_energy <= 1e-10, "negative-frequency energy " + fmt("%.3e", d.negative_energy));
  const auto series = f.series();
  const double res = annihilation_residual(series, 3, 0, 8);
  r.require(res <= 1e-6, "annihilation residual (level 8) " + fmt("%.3e", res));
  const auto cov = cover_residual(series, 0.0, 3, 8, 1 << 16);
  const double norm = sobolev_norm(series, 0.0);
  r.require(cov.max_residual <= 1e-8 * norm,
            "cover residual " + fmt("%.3e", cov.max_residual) + " vs 1e-8 ||f||_0 = " + fmt("%.3e", 1e-8 * norm));
  return r.done(30.0);
}

Outcome inverse_powers() {
  Report r;
  const auto series = constructed_outer().series();
  for (double s : {0.0, 1.0, 2.5}) {
    try {
      double lo = INFINITY, hi = 0.0;
      for (std::int64_t n = 1; n <= 1024; n *= 2) {
        const auto b = inverse_power_bound(series, 3, n, s);
        if (!std::isfinite(b.bound)) throw Error(ErrorKind::Range, "bound not finite");
        const double q = b.bound / std::pow(static_cast<double>(n), s);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      r.require(hi - lo <= 1e-12 * hi, "s=" + fmt("%.1f", s) + " bound/n^s = " + fmt("%.6e", hi) + " spread " +
                                           fmt("%.1e", (hi - lo) / hi));
    } catch (const Error& e) {
      r.require(false, "s=" + fmt("%.1f", s) + " " + e.what());
    }
  }
  return r.done(0.0);
}

// ---- 8 --------------------------------------------------------------------

struct ModelRun {
  std::vector<double> bounds;
  ProjectionTable table;
  SingularInnerApprox v;
};

ModelRun model_run(int level) {
  const auto mu = cantor_measure(PerfectSymmetricSet::from_q(3), level);
  ModelRun out;
  out.v = inner_from_measure(mu, 1 << 14);
  out.table = projection_norms(out.v, 2048);
  for (std::int64_t n = 1; n <= 1024; n *= 2) out.bounds.push_back(inverse_power_lower_bound(out.table, n, 1024).value);
  return out;
}

Outcome model_operator() {
  Report r;
  const auto a = model_run(12);
  const double v0 = std::abs(a.v.coeffs[0] - std::exp(-1.0));
  r.require(v0 <= 1e-8, "|V(0) - e^-1| = " + fmt("%.1e", v0));
  const double p0 = std::abs(a.table.pnorm2[0] - (1 - std::exp(-2.0)));
  r.require(p0 <= 1e-8, "|pnorm2[0] - (1 - e^-2)| = " + fmt("%.1e", p0));
  bool inc = true;
  for (std::size_t i = 1; i < a.bounds.size(); ++i) inc = inc && a.bounds[i] > a.bounds[i - 1];
  r.require(inc, "lower bounds " + fmt("%.4f", a.bounds.front()) + " .. " + fmt("%.4f", a.bounds.back()) +
                     " strictly increasing");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < a.bounds.size(); ++i) pts.emplace_back(std::pow(2.0, i), a.bounds[i]);
  const auto fit = growth_exponent_fit(pts);
  const double b = PerfectSymmetricSet::from_q(3).critical_exponent();
  r.require(fit.slope <= b + 0.10 && fit.r2 >= 0.9,
            "slope " + fmt("%.4f", fit.slope) + " (b = " + fmt("%.4f", b) + ") r2 " + fmt("%.4f", fit.r2));
  const auto c = model_run(11);
  const double slack = std::max(a.v.tail_bound, c.v.tail_bound);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.table.pnorm2.size(); ++k)
    worst = std::max(worst, std::abs(a.table.pnorm2[k] - c.table.pnorm2[k]));
  double worst_lb = 0.0;
  for (std::size_t i = 0; i < a.bounds.size(); ++i)
    worst_lb = std::max(worst_lb, std::abs(a.bounds[i] - c.bounds[i]) / a.bounds[i]);
  r.require(worst <= slack, "m=11 vs 12: max |d pnorm2| " + fmt("%.3e", worst) + ", max rel d bound " +
                                fmt("%.3e", worst_lb) + ", tail slack " + fmt("%.3e", slack));
  return r.done(120.0);
}

// ---- 9 --------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  Report r;
  const auto dir = std::filesystem::temp_directory_path() / "cantor_acceptance";
  std::filesystem::create_directories(dir);
  const auto art = [&](const char* name) { return (dir / name).string(); };
  const std::vector<std::vector<std::string>> runs = {
      {"cantor", "--xi", "1/3", "--level", "3", "--census-csv", art("census.csv")},
      {"weights", "--kind", "one-sided", "--s", "2", "--random-degree", "40", "--seed", "99", "--sandwich-s", "1.5"},
      {"herz", "--s", "0", "--N", "8..1024", "--random-degree", "12", "--seed", "5", "--report", art("herz.csv")},
      {"outer", "--q", "3", "--beta", "0.1", "--aliasing-tol", "inf", "--series-out", art("outer.json")},
      {"synthcheck", "--input", art("outer.json"), "--n-list", "1..1024", "--s", "1"},
      {"model", "--xi", "1/3", "--measure-level", "12", "--csv", art("model.csv"), "--out", art("model.json")},
  };
  const char* files[] = {"census.csv", "herz.csv", "outer.json", "model.csv", "model.json"};
  std::size_t differing = 0;
  for (const auto& args : runs) {
    std::string first;
    for (int threads : {1, 4}) {
      omp_set_num_threads(threads);
      std::ostringstream out, err;
      const int code = run_cli(args, out, err);
      std::string all = std::to_string(code) + out.str();
      for (auto f : files) all += slurp(dir / f);
      if (threads == 1) first = std::move(all);
      else if (all != first) {
        ++differing;
        r.add(args[0] + " differs");
      }
    }
  }
  r.require(differing == 0, "6 subcommands run twice (1 and 4 threads): " + std::to_string(differing) + " differ");
  return r.done(0.0);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cantor geometry", geometry},        {"kernel transforms", herz_kernel},
      {"A_s interpolation bound", herz_bound_suite}, {"interpolation convergence", convergence},
      {"norm sandwich", sandwich},          {"outer function", outer_function},
      {"inverse power bound", inverse_powers},       {"model operator", model_operator},
      {"cli determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), 0.0};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.limit_seconds > 0 && secs > o.limit_seconds) {
      o.pass = false;
      o.detail += "; FAILED runtime limit " + fmt("%.0f", o.limit_seconds) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s [%.2f s] %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
