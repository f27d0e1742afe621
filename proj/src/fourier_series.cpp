#include "cantor/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/kernels.hpp"

namespace cantor {

FourierSeries::FourierSeries(std::int64_t truncation)
    : m_(truncation), c_(static_cast<std::size_t>(2 * std::max<std::int64_t>(truncation, 0) + 1)) {
  if (truncation < 0) fail(ErrorKind::Domain, "truncation must be nonnegative");
}

FourierSeries::FourierSeries(std::int64_t truncation, std::vector<Complex> dense)
    : m_(truncation), c_(std::move(dense)) {
  if (truncation < 0) fail(ErrorKind::Domain, "truncation must be nonnegative");
  if (c_.size() != static_cast<std::size_t>(2 * truncation + 1))
    fail(ErrorKind::Domain, "dense coefficient vector must have size 2M+1");
}

FourierSeries FourierSeries::monomial(std::int64_t n, Complex c) {
  FourierSeries f(n < 0 ? -n : n);
  f.set(n, c);
  return f;
}

FourierSeries FourierSeries::constant(Complex c) { return monomial(0, c); }

FourierSeries FourierSeries::from_taylor(std::span<const Complex> taylor) {
  const auto m = static_cast<std::int64_t>(taylor.empty() ? 0 : taylor.size() - 1);
  FourierSeries f(m);
  for (std::int64_t k = 0; k <= m && !taylor.empty(); ++k) f.set(k, taylor[static_cast<std::size_t>(k)]);
  return f;
}

Complex FourierSeries::operator[](std::int64_t n) const {
  if (n < -m_ || n > m_) return {};
  return c_[slot(n)];
}

void FourierSeries::set(std::int64_t n, Complex c) {
  if (n < -m_ || n > m_) fail(ErrorKind::Domain, "index outside truncation");
  c_[slot(n)] = c;
}

std::int64_t FourierSeries::degree() const {
  for (std::int64_t d = m_; d > 0; --d)
    if (c_[slot(d)] != Complex{} || c_[slot(-d)] != Complex{}) return d;
  return 0;
}

Complex FourierSeries::evaluate(double t) const {
  // Horner in e^{it} from the top, then shift by e^{-iMt}.
  const Complex z = std::polar(1.0, t);
  Complex acc{};
  for (std::int64_t n = m_; n >= -m_; --n) acc = acc * z + c_[slot(n)];
  return acc * std::polar(1.0, -static_cast<double>(m_) * t);
}

FourierSeries FourierSeries::derivative(int j) const {
  if (j < 0) fail(ErrorKind::Domain, "derivative order must be nonnegative");
  FourierSeries out(*this);
  if (j == 0) return out;
  for (std::int64_t n = -m_; n <= m_; ++n) {
    // exact powers of i; complex pow would go through polar form
    const double mag = std::pow(static_cast<double>(n), j);
    Complex factor;
    switch (j % 4) {
      case 0: factor = {mag, 0}; break;
      case 1: factor = {0, mag}; break;
      case 2: factor = {-mag, 0}; break;
      case 3: factor = {0, -mag}; break;
    }
    out.c_[slot(n)] *= factor;
  }
  return out;
}

FourierSeries FourierSeries::with_truncation(std::int64_t new_m) const {
  if (new_m < 0) fail(ErrorKind::Domain, "truncation must be nonnegative");
  if (new_m < m_ && degree() > new_m)
    fail(ErrorKind::Domain, "shrinking truncation would drop nonzero coefficients");
  FourierSeries out(new_m);
  const std::int64_t lim = std::min(new_m, m_);
  for (std::int64_t n = -lim; n <= lim; ++n) out.c_[out.slot(n)] = c_[slot(n)];
  return out;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& g) {
  if (g.m_ > m_) *this = with_truncation(g.m_);
  for (std::int64_t n = -g.m_; n <= g.m_; ++n) c_[slot(n)] += g.c_[g.slot(n)];
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& g) {
  if (g.m_ > m_) *this = with_truncation(g.m_);
  for (std::int64_t n = -g.m_; n <= g.m_; ++n) c_[slot(n)] -= g.c_[g.slot(n)];
  return *this;
}

FourierSeries& FourierSeries::operator*=(Complex a) {
  for (auto& c : c_) c *= a;
  return *this;
}

FourierSeries multiply(const FourierSeries& f, const FourierSeries& g) {
  const std::int64_t m = f.truncation() + g.truncation();
  auto full = convolve(f.dense(), g.dense(), Exec::Parallel);
  FourierSeries out(m, std::move(full));

  double peak = 0.0;
  for (auto c : out.dense()) peak = std::max(peak, std::abs(c));
  const double cut = kProductPruneRelative * peak;
  for (std::int64_t n = -m; n <= m; ++n)
    if (std::abs(out[n]) < cut) out.set(n, 0.0);
  return out.with_truncation(out.degree());
}

FourierSeries random_polynomial(std::uint64_t seed, std::int64_t degree, bool one_sided) {
  if (degree < 0) fail(ErrorKind::Domain, "degree must be nonnegative");
  std::mt19937_64 rng(seed);
  // 53 random bits mapped to [-1, 1); avoids the implementation-defined
  // algorithm of std::uniform_real_distribution so outputs match across libraries.
  auto draw = [&] { return std::ldexp(static_cast<double>(rng() >> 11), -52) - 1.0; };
  FourierSeries f(degree);
  for (std::int64_t n = one_sided ? 0 : -degree; n <= degree; ++n) {
    const double re = draw();
    const double im = draw();
    f.set(n, {re, im});
  }
  return f;
}

}  // namespace cantor
