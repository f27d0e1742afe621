#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cantor/fourier_series.hpp"

namespace cantor {

/// Version stamped into every artifact; bumped on breaking layout changes.
inline constexpr int kSchemaVersion = 1;

/// {"M": int, "coeffs": [[n, re, im], ...]}; zero coefficients are omitted.
nlohmann::json series_to_json(const FourierSeries& f);
/// Throws Usage on malformed input.
FourierSeries series_from_json(const nlohmann::json& j);

FourierSeries read_series(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// %.17g rendering, used for CSV cells.
std::string format_double(double x);

}  // namespace cantor
