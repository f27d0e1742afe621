#include "cantor/series_io.hpp"

#include <cstdio>
#include <fstream>

#include "cantor/errors.hpp"

namespace cantor {

nlohmann::json series_to_json(const FourierSeries& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  const std::int64_t m = f.truncation();
  for (std::int64_t n = -m; n <= m; ++n) {
    const Complex c = f[n];
    if (c != Complex{}) coeffs.push_back({n, c.real(), c.imag()});
  }
  return {{"M", m}, {"coeffs", std::move(coeffs)}};
}

FourierSeries series_from_json(const nlohmann::json& j) {
  try {
    const auto m = j.at("M").get<std::int64_t>();
    if (m < 0) fail(ErrorKind::Usage, "series JSON: M must be >= 0");
    FourierSeries f(m);
    for (const auto& row : j.at("coeffs")) {
      if (!row.is_array() || row.size() != 3) fail(ErrorKind::Usage, "series JSON: coeff rows are [n, re, im]");
      const auto n = row[0].get<std::int64_t>();
      if (n < -m || n > m) fail(ErrorKind::Usage, "series JSON: index " + std::to_string(n) + " outside [-M, M]");
      f.set(n, {row[1].get<double>(), row[2].get<double>()});
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Usage, std::string("series JSON: ") + e.what());
  }
}

FourierSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Usage, path.string() + ": " + e.what());
  }
  return series_from_json(j);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Resource, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace cantor
