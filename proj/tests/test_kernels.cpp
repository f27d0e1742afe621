#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <numbers>

#include "cantor/fft.hpp"
#include "cantor/fourier_series.hpp"
#include "cantor/geometry.hpp"
#include "cantor/kernels.hpp"
#include "cantor/weights.hpp"
#include "oracles.hpp"

using namespace cantor;
using oracle::C;

namespace {

struct Threads {
  int saved = omp_get_max_threads();
  explicit Threads(int n) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

template <class V>
bool identical(const V& a, const V& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("serial and parallel kernels are bit-identical") {
  Threads guard(4);
  const auto f = random_polynomial(1, 3000);
  const auto g = random_polynomial(2, 700);
  CHECK(identical(convolve(f.dense(), g.dense(), Exec::Serial), convolve(f.dense(), g.dense(), Exec::Parallel)));

  std::vector<double> angles(5000);
  for (std::size_t i = 0; i < angles.size(); ++i) angles[i] = 0.001 * i;
  CHECK(identical(evaluate_many(f.dense(), angles, Exec::Serial), evaluate_many(f.dense(), angles, Exec::Parallel)));

  std::vector<double> big(100000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = std::sin(1.0 * i);
  CHECK(blocked_sum(big, Exec::Serial) == blocked_sum(big, Exec::Parallel));
  std::vector<double> w(f.dense().size(), 1.5);
  CHECK(weighted_abs_sum(f.dense(), w, Exec::Serial) == weighted_abs_sum(f.dense(), w, Exec::Parallel));
  CHECK(sobolev_norm(f, 1.3, Exec::Serial) == sobolev_norm(f, 1.3, Exec::Parallel));

  const auto set = PerfectSymmetricSet::from_q(3);
  const auto mu = cantor_measure(set, 9);
  CHECK(identical(herglotz_on_circle(mu, 0.99, 2048, Exec::Serial), herglotz_on_circle(mu, 0.99, 2048, Exec::Parallel)));
  CHECK(identical(distance_profile(set, 8, 4096, Exec::Serial), distance_profile(set, 8, 4096, Exec::Parallel)));

  const auto wt = weight_axioms(Weight::one_sided(1, 0.5), 300, Exec::Serial);
  const auto wp = weight_axioms(Weight::one_sided(1, 0.5), 300, Exec::Parallel);
  CHECK(wt.violations == wp.violations);
}

TEST_CASE("kernels against naive references") {
  const auto f = random_polynomial(5, 20);
  const auto g = random_polynomial(6, 7);
  const auto c = convolve(f.dense(), g.dense(), Exec::Parallel);
  for (std::size_t k = 0; k < c.size(); ++k) {
    C s{};
    for (std::size_t i = 0; i < f.dense().size(); ++i)
      if (k >= i && k - i < g.dense().size()) s += f.dense()[i] * g.dense()[k - i];
    CHECK(std::abs(c[k] - s) < 1e-13);
  }

  DiscreteMeasure mu;
  mu.atoms = {{0.3, 1.0}, {2.0, 0.5}};
  mu.total_mass = 1.5;
  const auto h = herglotz_on_circle(mu, 0.8, 16, Exec::Serial);
  for (std::size_t j = 0; j < 16; ++j) {
    const C z = 0.8 * std::exp(C(0, 2 * std::numbers::pi * j / 16));
    C want{};
    for (const auto& a : mu.atoms) {
      const C e = std::exp(C(0, a.angle));
      want += a.mass * (z + e) / (z - e);
    }
    CHECK(std::abs(h[j] - want / (2 * std::numbers::pi)) < 1e-14);
  }

  std::vector<double> logw(9);
  for (int n = -4; n <= 4; ++n) logw[n + 4] = std::log1p(std::abs(n));
  CHECK(submultiplicative_violations(logw, 2, 1e-12, Exec::Serial) == 0);
  logw[4 + 3] = 10.0;
  std::uint64_t brute = 0;
  for (int n = -2; n <= 2; ++n)
    for (int m = -2; m <= 2; ++m)
      if (logw[n + m + 4] > logw[n + 4] + logw[m + 4] + 1e-12) ++brute;
  CHECK(submultiplicative_violations(logw, 2, 1e-12, Exec::Serial) == brute);
}

TEST_CASE("dft round trip and direct sum") {
  std::vector<C> x(12);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = C(std::cos(1.0 * i), 0.5 * i);
  const auto y = dft_forward(x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    C s{};
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * std::exp(C(0, -2 * std::numbers::pi * j * k / 12));
    CHECK(std::abs(y[k] - s) < 1e-12);
  }
  const auto back = dft_backward(y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] / 12.0 - x[i]) < 1e-13);
}
