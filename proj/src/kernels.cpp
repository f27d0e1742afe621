#include "cantor/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

using C = std::complex<double>;

std::size_t block_count(std::size_t n) { return (n + kReduceBlock - 1) / kReduceBlock; }

template <class F>
double blocked_reduce(std::size_t n, Exec exec, F term) {
  const std::size_t nb = block_count(n);
  std::vector<double> partial(nb, 0.0);
  auto do_block = [&](std::size_t b) {
    const std::size_t lo = b * kReduceBlock, hi = std::min(n, lo + kReduceBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b)
      do_block(static_cast<std::size_t>(b));
  } else {
    for (std::size_t b = 0; b < nb; ++b) do_block(b);
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

C convolve_at(std::span<const C> a, std::span<const C> b, std::size_t k) {
  const std::size_t lo = k >= b.size() ? k - (b.size() - 1) : 0;
  const std::size_t hi = std::min(k, a.size() - 1);
  C s{};
  for (std::size_t i = lo; i <= hi; ++i) s += a[i] * b[k - i];
  return s;
}

C herglotz_at(std::span<const C> e, std::span<const double> mass, C z) {
  C s{};
  for (std::size_t a = 0; a < e.size(); ++a) s += mass[a] * ((z + e[a]) / (z - e[a]));
  return s / kTwoPi;
}

}  // namespace

double blocked_sum(std::span<const double> values, Exec exec) {
  return blocked_reduce(values.size(), exec, [&](std::size_t i) { return values[i]; });
}

double weighted_abs_sum(std::span<const C> a, std::span<const double> w, Exec exec) {
  if (a.size() != w.size()) fail(ErrorKind::Domain, "weighted_abs_sum: size mismatch");
  return blocked_reduce(a.size(), exec, [&](std::size_t i) {
    return a[i] == C{} ? 0.0 : std::abs(a[i]) * w[i];
  });
}

std::vector<C> convolve(std::span<const C> a, std::span<const C> b, Exec exec) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  std::vector<C> out(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k)
      out[static_cast<std::size_t>(k)] = convolve_at(a, b, static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = convolve_at(a, b, k);
  }
  return out;
}

std::vector<C> evaluate_many(std::span<const C> dense, std::span<const double> angles, Exec exec) {
  const auto m = static_cast<std::int64_t>(dense.size() / 2);
  auto eval = [&](double t) {
    const C z = std::polar(1.0, t);
    C acc{};
    for (std::size_t i = dense.size(); i-- > 0;) acc = acc * z + dense[i];
    return acc * std::polar(1.0, -static_cast<double>(m) * t);
  };
  std::vector<C> out(angles.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(angles.size()); ++j)
      out[static_cast<std::size_t>(j)] = eval(angles[static_cast<std::size_t>(j)]);
  } else {
    for (std::size_t j = 0; j < angles.size(); ++j) out[j] = eval(angles[j]);
  }
  return out;
}

std::vector<C> herglotz_on_circle(const DiscreteMeasure& mu, double r, std::size_t grid,
                                  Exec exec) {
  std::vector<C> e;
  std::vector<double> mass;
  e.reserve(mu.atoms.size());
  mass.reserve(mu.atoms.size());
  for (const auto& atom : mu.atoms) {
    e.push_back(std::polar(1.0, atom.angle));
    mass.push_back(atom.mass);
  }
  std::vector<C> out(grid);
  auto at = [&](std::size_t j) {
    const C z = std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
    return herglotz_at(e, mass, z);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(grid); ++j)
      out[static_cast<std::size_t>(j)] = at(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < grid; ++j) out[j] = at(j);
  }
  return out;
}

std::vector<double> distance_profile(const PerfectSymmetricSet& set, int level, std::size_t grid,
                                     Exec exec) {
  std::vector<double> out(grid);
  auto at = [&](std::size_t j) {
    const auto e = distance_to_set(set, kTwoPi * static_cast<double>(j) / static_cast<double>(grid),
                                   level);
    return 0.5 * (e.lower + e.upper);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(grid); ++j)
      out[static_cast<std::size_t>(j)] = at(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < grid; ++j) out[j] = at(j);
  }
  return out;
}

std::uint64_t submultiplicative_violations(std::span<const double> log_w, std::int64_t range,
                                           double tol, Exec exec) {
  if (range < 0 || log_w.size() != static_cast<std::size_t>(4 * range + 1))
    fail(ErrorKind::Domain, "log-weight table must cover [-2 range, 2 range]");
  const std::int64_t off = 2 * range;
  auto lw = [&](std::int64_t n) { return log_w[static_cast<std::size_t>(n + off)]; };
  auto row = [&](std::int64_t n) {
    std::uint64_t bad = 0;
    for (std::int64_t m = -range; m <= range; ++m)
      if (lw(n + m) > lw(n) + lw(m) + tol) ++bad;
    return bad;
  };
  std::uint64_t total = 0;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t n = -range; n <= range; ++n) total += row(n);
  } else {
    for (std::int64_t n = -range; n <= range; ++n) total += row(n);
  }
  return total;
}

}  // namespace cantor
