#include "cantor/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"

namespace cantor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMaxLog = 709.0;  // log of the largest finite double, rounded down

double factorial(int k) { return std::tgamma(k + 1.0); }

double binom(double top, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (top - k + i) / i;
  return r;
}

// Least-squares slope of y against x.
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

int integer_part(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorKind::Domain, "s must be finite and >= 0");
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-12) return static_cast<int>(r);
  return static_cast<int>(std::floor(s));
}

Weight::Weight(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const PolynomialWeight& w) {
                   if (!(w.s >= 0.0)) fail(ErrorKind::Domain, "weight exponent s must be >= 0");
                 },
                 [](const OneSidedWeight& w) {
                   if (!(w.s >= 0.0)) fail(ErrorKind::Domain, "weight exponent s must be >= 0");
                   if (!(w.beta > 0.0 && w.beta < 1.0))
                     fail(ErrorKind::Domain, "one-sided weight needs beta in (0, 1)");
                 },
                 [](const TableWeight& w) {
                   if (w.values.size() % 2 == 0)
                     fail(ErrorKind::Domain, "weight table must list omega(-R..R)");
                   for (double v : w.values)
                     if (!(v >= 1.0)) fail(ErrorKind::Domain, "weight table values must be >= 1");
                 },
             },
             kind_);
}

std::string Weight::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const PolynomialWeight& w) { os << "polynomial(s=" << w.s << ")"; },
                 [&](const OneSidedWeight& w) {
                   os << "one-sided(s=" << w.s << ", beta=" << w.beta << ")";
                 },
                 [&](const TableWeight& w) { os << "table(R=" << w.values.size() / 2 << ")"; },
             },
             kind_);
  return os.str();
}

double Weight::log_value(std::int64_t n) const {
  return std::visit(
      overloaded{
          [n](const PolynomialWeight& w) {
            return w.s * std::log1p(static_cast<double>(n < 0 ? -n : n));
          },
          [n](const OneSidedWeight& w) {
            if (n >= 0) return w.s * std::log1p(static_cast<double>(n));
            return std::pow(static_cast<double>(-n), w.beta);
          },
          [n](const TableWeight& w) {
            const auto r = static_cast<std::int64_t>(w.values.size() / 2);
            if (n < -r || n > r) fail(ErrorKind::Domain, "index outside the weight table");
            return std::log(w.values[static_cast<std::size_t>(n + r)]);
          },
      },
      kind_);
}

double Weight::value(std::int64_t n) const {
  if (const auto* t = std::get_if<TableWeight>(&kind_)) {
    const auto r = static_cast<std::int64_t>(t->values.size() / 2);
    if (n < -r || n > r) fail(ErrorKind::Domain, "index outside the weight table");
    return t->values[static_cast<std::size_t>(n + r)];
  }
  if (const auto* p = std::get_if<PolynomialWeight>(&kind_))
    return std::pow(1.0 + static_cast<double>(n < 0 ? -n : n), p->s);
  return std::exp(log_value(n));
}

std::optional<std::int64_t> Weight::support() const {
  if (const auto* t = std::get_if<TableWeight>(&kind_))
    return static_cast<std::int64_t>(t->values.size() / 2);
  return std::nullopt;
}

double weighted_norm(const FourierSeries& f, const Weight& w, Exec exec) {
  const std::int64_t m = f.truncation();
  std::vector<double> wv(f.dense().size());
  for (std::int64_t n = -m; n <= m; ++n) {
    auto& slot = wv[static_cast<std::size_t>(n + m)];
    if (f[n] == Complex{}) continue;  // zero coefficients never touch the weight
    const double lw = w.log_value(n);
    if (lw > kMaxLog)
      fail(ErrorKind::Range, "weight overflows at n = " + std::to_string(n) + " for " +
                                 w.describe());
    slot = w.value(n);
  }
  const double out = weighted_abs_sum(f.dense(), wv, exec);
  if (!std::isfinite(out)) fail(ErrorKind::Range, "weighted norm overflows");
  return out;
}

double sobolev_norm(const FourierSeries& f, double s, Exec exec) {
  return weighted_norm(f, Weight::polynomial(s), exec);
}

WeightAxioms weight_axioms(const Weight& w, std::int64_t range, Exec exec) {
  if (range < 1) fail(ErrorKind::Domain, "axiom check needs range >= 1");
  WeightAxioms out;
  const auto sup = w.support();
  std::vector<double> log_w(static_cast<std::size_t>(4 * range + 1),
                            std::numeric_limits<double>::quiet_NaN());
  for (std::int64_t n = -2 * range; n <= 2 * range; ++n)
    if (!sup || (n >= -*sup && n <= *sup))
      log_w[static_cast<std::size_t>(n + 2 * range)] = w.log_value(n);
  // NaN entries compare false, so pairs leaving the table are skipped.
  out.violations = submultiplicative_violations(log_w, range, 1e-12, exec);
  out.submultiplicative = out.violations == 0;

  const auto* table = std::get_if<TableWeight>(&w.kind());
  if (!table) {
    // (1+|n|)^s and e^{|n|^beta} with beta < 1 both give sum log w / (1+n^2) < inf.
    out.regular = true;
    return out;
  }
  // log w ~ C |n|^a is summable against 1/n^2 iff a < 1.
  const std::int64_t r = *sup;
  std::vector<double> x, y;
  for (std::int64_t n = r / 2; n <= r; ++n) {
    if (n < 2) continue;
    for (std::int64_t idx : {n, -n}) {
      const double lw = w.log_value(idx);
      if (lw <= 1e-12) continue;
      x.push_back(std::log(static_cast<double>(n)));
      y.push_back(std::log(lw));
    }
  }
  if (x.size() < 4) {
    out.regular = true;  // too short a tail to fit; the finite table sum is finite
    return out;
  }
  out.tail_exponent = slope(x, y);
  out.regular = *out.tail_exponent < 1.0;
  return out;
}

SandwichResult norme_sandwich(const FourierSeries& f, double s) {
  const int p = integer_part(s);
  if (p < 1) fail(ErrorKind::Domain, "sandwich needs floor(s) >= 1");
  SandwichResult out;
  out.lhs = sobolev_norm(f.derivative(p), std::max(0.0, s - p), Exec::Serial);
  out.mid = sobolev_norm(f, s, Exec::Serial);

  double boundary = 0.0;
  for (int j = 0; j < p; ++j) {
    // f^(j)(1) = sum (in)^j c_n
    Complex v{};
    const auto d = f.derivative(j);
    for (auto c : d.dense()) v += c;
    boundary += std::pow(kTwoPi, j) / factorial(j + 1) * std::abs(v);
  }
  out.rhs = (std::pow(2.0, p) + std::pow(kTwoPi, p) / factorial(p + 1)) * out.lhs + boundary;
  const double slack = 1e-12 * std::max(1.0, out.rhs);
  out.holds = out.lhs <= out.mid + slack && out.mid <= out.rhs + slack;
  return out;
}

FourierSeries point_regularizer(double angle, double s, std::int64_t n,
                                std::optional<std::int64_t> truncation) {
  if (n < 1) fail(ErrorKind::Domain, "regularizer index n must be >= 1");
  const int p = integer_part(s);
  const int e = p + 1;
  const double c = 1.0 / static_cast<double>(n + 1);
  const double log_rho = -std::log1p(1.0 / static_cast<double>(n));  // log |1/a|

  // |coefficient k| <= rho^k * sum_j C(e,j) c^j C(k+j-1, j-1)
  auto envelope = [&](double k) {
    double s = 0.0;
    for (int j = 1; j <= e; ++j) s += binom(e, j) * std::pow(c, j) * binom(k + j - 1, j - 1);
    return std::exp(k * log_rho) * s;
  };

  std::int64_t m = 0;
  if (truncation) {
    m = *truncation;
    if (m < 0) fail(ErrorKind::Domain, "truncation must be nonnegative");
    if (static_cast<double>(m) * log_rho >= std::log(1e-12))
      fail(ErrorKind::Precision, "truncation " + std::to_string(m) +
                                     " too short: (1+1/n)^(-M) >= 1e-12");
  } else {
    m = static_cast<std::int64_t>(std::ceil(std::log(1e-12) / log_rho));
    // geometric tail: sum_{k>M} envelope <= envelope(M) / (1 - rho) = (n+1) envelope(M)
    while (envelope(static_cast<double>(m)) * static_cast<double>(n + 1) > 1e-12) {
      m += m / 8 + 1;
      if (m > (std::int64_t{1} << 26)) fail(ErrorKind::Resource, "regularizer truncation too large");
    }
  }

  FourierSeries out(m);
  for (std::int64_t k = 0; k <= m; ++k) {
    const double kd = static_cast<double>(k);
    double sum = k == 0 ? 1.0 : 0.0;
    for (int j = 1; j <= e; ++j)
      sum += binom(e, j) * std::pow(-c, j) * binom(kd + j - 1, j - 1);
    // a^{-k} = conj(zeta)^k (1+1/n)^{-k}
    out.set(k, sum * std::exp(kd * log_rho) * std::polar(1.0, -angle * kd));
  }
  return out;
}

RegularizerStudy regularizer_study(const FourierSeries& g, double angle, double s,
                                   std::span<const std::int64_t> ns) {
  const int p = integer_part(s);
  const double scale = std::max(sobolev_norm(g, 0.0, Exec::Serial), 1.0);
  for (int j = 0; j <= p; ++j)
    if (std::abs(g.derivative(j).evaluate(angle)) > 1e-10 * scale)
      fail(ErrorKind::Domain, "derivative " + std::to_string(j) + " does not vanish at the regularized point");

  RegularizerStudy out;
  std::vector<double> lx, ly;
  for (std::int64_t n : ns) {
    const auto u = point_regularizer(angle, s, n);
    auto diff = multiply(u, g);
    diff -= g;
    RegularizerRow row{n, u.truncation(), sobolev_norm(u, 0.0), sobolev_norm(diff, s)};
    if (row.error > 0.0) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(row.error));
    }
    out.rows.push_back(row);
  }
  if (lx.size() >= 2) {
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx > 0.0) out.fitted_rate = sxy / sxx;
  }
  return out;
}

}  // namespace cantor
