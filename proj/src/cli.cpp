#include "cantor/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "cantor/errors.hpp"
#include "cantor/geometry.hpp"
#include "cantor/herz.hpp"
#include "cantor/model.hpp"
#include "cantor/outer.hpp"
#include "cantor/series_io.hpp"
#include "cantor/weights.hpp"

namespace cantor {

namespace {

using json = nlohmann::json;

// "8,16,32" or "8..1024" (doubling).
std::vector<std::int64_t> parse_int_list(const std::string& text, const char* flag) {
  auto bad = [&] { fail(ErrorKind::Usage, std::string(flag) + ": cannot parse '" + text + "'"); };
  std::vector<std::int64_t> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      std::size_t u1 = 0, u2 = 0;
      const auto lo = std::stoll(text.substr(0, dots), &u1);
      const auto hi = std::stoll(text.substr(dots + 2), &u2);
      if (u1 != dots || u2 != text.size() - dots - 2 || lo < 1 || hi < lo) bad();
      for (auto v = lo; v <= hi; v *= 2) out.push_back(v);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) bad();
    }
  } catch (const std::logic_error&) {
    bad();
  }
  if (out.empty()) bad();
  return out;
}

json header(const std::string& command, std::uint64_t seed) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"seed", seed}};
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) out << j.dump(2) << '\n';
  else write_json(path, j);
}

std::ofstream open_csv(const std::string& path, std::uint64_t seed) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::Resource, "cannot write " + path);
  f << "# schema=" << kSchemaVersion << " seed=" << seed << '\n';
  return f;
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::Usage, what);
}

struct Common {
  std::uint64_t seed = 20240601;
  std::string out;
};

FourierSeries input_series(const std::string& path, std::int64_t random_degree, std::uint64_t seed) {
  if (!path.empty()) return read_series(path);
  require(random_degree >= 0, "give --input or --random-degree");
  return random_polynomial(seed, random_degree);
}

// ---- cantor ---------------------------------------------------------------

struct CantorArgs {
  std::string xi = "1/3";
  int level = 3;
  std::string metric = "arc";
  std::vector<double> distance_at;
  std::string census_csv;
};

int run_cantor(const CantorArgs& a, const Common& c, std::ostream& out) {
  require(a.level >= 0, "--level must be >= 0");
  const auto set = PerfectSymmetricSet::parse(a.xi);
  const auto metric = a.metric == "chordal" ? DistanceMetric::Chordal : DistanceMetric::ArcLength;
  require(a.metric == "arc" || a.metric == "chordal", "--metric must be arc or chordal");

  const auto cover = level_cover(set, a.level);
  json j = header("cantor", c.seed);
  j["xi"] = set.xi();
  j["q"] = set.q() ? json(*set.q()) : json(nullptr);
  j["level"] = a.level;
  j["b"] = set.critical_exponent();
  const double gap_threshold = std::numbers::ln2 / std::log(1.0 / set.xi());
  j["thresholds"] = {{"gap_gamma", gap_threshold}, {"integral_delta", 1.0 - gap_threshold}};
  json arcs = json::array();
  for (const auto& arc : cover.arcs) arcs.push_back({arc.start, arc.length});
  j["arcs"] = std::move(arcs);

  const auto census = gap_census(set, a.level);
  json rows = json::array();
  for (const auto& r : census)
    rows.push_back({{"stage", r.stage}, {"count", r.count}, {"length", r.length},
                    {"expected_length", r.expected_length}});
  j["gap_census"] = std::move(rows);

  if (!a.distance_at.empty()) {
    require(a.level >= 1, "distances need --level >= 1");
    json d = json::array();
    for (double t : a.distance_at) {
      const auto e = distance_to_set(set, t, a.level, metric);
      d.push_back({{"t", t}, {"lower", e.lower}, {"upper", e.upper}});
    }
    j["distances"] = std::move(d);
    j["metric"] = a.metric;
  }
  if (!a.census_csv.empty()) {
    auto f = open_csv(a.census_csv, c.seed);
    f << "stage,count,length,expected_length\n";
    for (const auto& r : census)
      f << r.stage << ',' << r.count << ',' << format_double(r.length) << ','
        << format_double(r.expected_length) << '\n';
  }
  emit(j, c.out, out);
  return kExitOk;
}

// ---- weights --------------------------------------------------------------

struct WeightsArgs {
  std::string kind = "polynomial";
  double s = 0.0;
  double beta = 0.5;
  std::string table;
  std::int64_t range = 200;
  std::string input;
  std::int64_t random_degree = -1;
  std::optional<double> sandwich_s;
  std::optional<double> regularize_at;
  std::string reg_n = "10..10240";
};

Weight build_weight(const WeightsArgs& a) {
  if (a.kind == "polynomial") return Weight::polynomial(a.s);
  if (a.kind == "one-sided") return Weight::one_sided(a.s, a.beta);
  if (a.kind == "table") {
    require(!a.table.empty(), "--kind table needs --table values.json");
    std::ifstream in(a.table);
    if (!in) fail(ErrorKind::Usage, "cannot open " + a.table);
    try {
      json j;
      in >> j;
      return Weight::table(j.get<std::vector<double>>());
    } catch (const json::exception& e) {
      fail(ErrorKind::Usage, a.table + ": " + e.what());
    }
  }
  fail(ErrorKind::Usage, "--kind must be polynomial, one-sided or table");
}

int run_weights(const WeightsArgs& a, const Common& c, std::ostream& out) {
  const Weight w = build_weight(a);
  json j = header("weights", c.seed);
  j["weight"] = w.describe();
  const auto ax = weight_axioms(w, a.range);
  j["axioms"] = {{"range", a.range},
                 {"submultiplicative", ax.submultiplicative},
                 {"violations", ax.violations},
                 {"regular", ax.regular},
                 {"tail_exponent", ax.tail_exponent ? json(*ax.tail_exponent) : json(nullptr)}};
  int code = kExitOk;
  if (!a.input.empty() || a.random_degree >= 0) {
    const auto f = input_series(a.input, a.random_degree, c.seed);
    j["norm"] = weighted_norm(f, w);
    j["wiener_norm"] = sobolev_norm(f, 0.0);
    if (a.sandwich_s) {
      const auto sw = norme_sandwich(f, *a.sandwich_s);
      j["sandwich"] = {{"s", *a.sandwich_s}, {"lhs", sw.lhs}, {"mid", sw.mid}, {"rhs", sw.rhs},
                       {"holds", sw.holds}};
      if (!sw.holds) code = kExitAssertion;
    }
    if (a.regularize_at) {
      const auto ns = parse_int_list(a.reg_n, "--reg-n");
      const auto st = regularizer_study(f, *a.regularize_at, a.s, ns);
      json rows = json::array();
      for (const auto& r : st.rows)
        rows.push_back({{"n", r.n}, {"M", r.truncation}, {"u_norm0", r.u_norm0}, {"error", r.error}});
      j["regularizer"] = {{"angle", *a.regularize_at}, {"s", a.s}, {"rows", rows},
                          {"fitted_rate", st.fitted_rate ? json(*st.fitted_rate) : json(nullptr)}};
    }
  }
  emit(j, c.out, out);
  return code;
}

// ---- herz -----------------------------------------------------------------

struct HerzArgs {
  double s = 0.0;
  std::string n_list = "8..1024";
  std::string input;
  std::int64_t random_degree = -1;
  std::string report;
};

int run_herz(const HerzArgs& a, const Common& c, std::ostream& out) {
  const auto ns = parse_int_list(a.n_list, "--N");
  const auto f = input_series(a.input, a.random_degree, c.seed);
  const auto study = convergence_study(f, a.s, ns);

  json j = header("herz", c.seed);
  j["s"] = a.s;
  j["p"] = integer_part(a.s);
  j["construction"] = integer_part(a.s) >= 1 ? "spectral-antiderivative" : "kernel";
  int code = kExitOk;
  json rows = json::array();
  std::optional<HerzConstants> k;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    json row = {{"N", ns[i]}, {"error", study.rows[i].error}};
    if (a.s < 1.0) {
      const auto hb = herz_bound(f, ns[i], a.s);
      row["norm_fn"] = hb.norm_fn;
      row["bound"] = hb.bound;
      row["holds"] = hb.holds;
      if (!hb.holds) code = kExitAssertion;
      k = hb.constants;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["fitted_rate"] = study.fitted_rate ? json(*study.fitted_rate) : json(nullptr);
  j["full_rate"] = study.full_rate ? json(*study.full_rate) : json(nullptr);
  j["fit_window_min_N"] = study.window_min_n;
  if (k)
    j["constants"] = {{"K1", k->k1}, {"K2", k->k2}, {"K2_max_variant", k->k2_max}, {"K", k->k}};
  j["bound_verdict"] = a.s < 1.0 ? json(code == kExitOk) : json(nullptr);

  if (!a.report.empty()) {
    auto csv = open_csv(a.report, c.seed);
    if (study.fitted_rate) csv << "# fitted_rate=" << format_double(*study.fitted_rate) << '\n';
    csv << "N,error,norm_fn,bound,holds\n";
    for (const auto& row : j["rows"]) {
      csv << row["N"].get<std::int64_t>() << ',' << format_double(row["error"].get<double>());
      if (row.contains("bound"))
        csv << ',' << format_double(row["norm_fn"].get<double>()) << ','
            << format_double(row["bound"].get<double>()) << ',' << (row["holds"].get<bool>() ? 1 : 0);
      else
        csv << ",,,";
      csv << '\n';
    }
  }
  emit(j, c.out, out);
  return code;
}

// ---- outer ----------------------------------------------------------------

struct OuterArgs {
  int q = 3;
  double beta = 0.0;
  std::optional<double> delta;
  std::int64_t grid = 1 << 16;
  std::int64_t m = 1 << 12;
  double floor = -40.0;
  double aliasing_tol = 1e-10;
  std::string series_out;
};

int run_outer(const OuterArgs& a, const Common& c, std::ostream& out) {
  require(a.grid > 0 && a.m >= 0, "--grid and --M must be positive");
  const auto params = admissible_parameters(a.beta, a.q);
  const double delta = a.delta.value_or(params.delta);
  const auto set = PerfectSymmetricSet::from_q(a.q);
  const auto profile = distance_profile_for(set, delta, static_cast<std::size_t>(a.grid), a.floor);
  const auto f = outer_from_modulus(profile, a.m, a.aliasing_tol);

  json j = header("outer", c.seed);
  j["q"] = a.q;
  j["beta"] = a.beta;
  j["b"] = params.b;
  j["gamma"] = params.gamma;
  j["delta"] = delta;
  j["delta_interval"] = {params.delta_lo, params.delta_hi};
  j["grid"] = a.grid;
  j["M"] = a.m;
  j["floor"] = a.floor;
  j["distance_level"] = profile.level;
  const auto& d = f.diagnostics;
  j["diagnostics"] = {{"negative_energy", d.negative_energy},
                      {"energy_above_half_M", d.energy_above_half_m},
                      {"energy_above_M", d.energy_above_m},
                      {"modulus_error", d.modulus_error},
                      {"bound_violations", d.bound_violations},
                      {"unclamped_points", d.unclamped}};
  j["scale"] = {f.scale.real(), f.scale.imag()};
  if (!a.series_out.empty()) {
    json s = series_to_json(f.series());
    s["schema"] = kSchemaVersion;
    write_json(a.series_out, s);
    j["series"] = a.series_out;
  }
  emit(j, c.out, out);
  return kExitOk;
}

// ---- synthcheck -----------------------------------------------------------

struct SynthArgs {
  std::string input;
  int q = 3;
  std::string m_list = "0,1,2";
  int level = 8;
  std::string n_list = "1..1024";
  double s = 0.0;
};

int run_synthcheck(const SynthArgs& a, const Common& c, std::ostream& out) {
  require(!a.input.empty(), "synthcheck needs --input series.json");
  const auto f = read_series(a.input);
  json j = header("synthcheck", c.seed);
  j["q"] = a.q;
  j["level"] = a.level;
  j["s"] = a.s;
  json res = json::array();
  for (auto m : parse_int_list(a.m_list, "--m-list"))
    res.push_back({{"m", m}, {"residual", annihilation_residual(f, a.q, static_cast<int>(m), a.level)}});
  j["residuals"] = std::move(res);
  json bounds = json::array();
  for (auto n : parse_int_list(a.n_list, "--n-list")) {
    const auto b = inverse_power_bound(f, a.q, n, a.s);
    bounds.push_back({{"n", n}, {"m", b.m}, {"bound", b.bound},
                      {"bound_over_n_s", b.bound / std::pow(static_cast<double>(n), a.s)}});
  }
  j["bounds"] = std::move(bounds);
  emit(j, c.out, out);
  return kExitOk;
}

// ---- model ----------------------------------------------------------------

struct ModelArgs {
  std::string xi = "1/3";
  int measure_level = 12;
  std::int64_t m = 1 << 14;
  std::string radius_policy = "amp=1e4";
  std::string n_list = "1..1024";
  double mass = kTwoPi;
  std::string placement = "left";
  std::string csv;
};

int run_model(const ModelArgs& a, const Common& c, std::ostream& out) {
  require(a.placement == "left" || a.placement == "mid", "--placement must be left or mid");
  const auto set = PerfectSymmetricSet::parse(a.xi);
  const auto ns = parse_int_list(a.n_list, "--n-list");
  const auto policy = RadiusPolicy::parse(a.radius_policy);
  const auto mu = cantor_measure(set, a.measure_level,
                                 a.placement == "mid" ? AtomPlacement::Midpoint
                                                      : AtomPlacement::LeftEndpoint,
                                 a.mass);
  const auto v = inner_from_measure(mu, a.m, policy);
  const std::int64_t n_max = *std::max_element(ns.begin(), ns.end());
  require(2 * n_max <= a.m, "--n-list entries must satisfy 2n <= M");
  const auto table = projection_norms(v, 2 * n_max);

  json j = header("model", c.seed);
  j["xi"] = set.xi();
  j["b"] = set.critical_exponent();
  j["measure_level"] = a.measure_level;
  j["M"] = a.m;
  j["radius"] = v.radius;
  j["mass"] = a.mass;
  j["V0"] = {v.coeffs[0].real(), v.coeffs[0].imag()};
  j["pnorm2_0"] = table.pnorm2[0];
  j["energy"] = v.energy;
  j["tail_slack"] = v.tail_bound;

  std::vector<std::pair<double, double>> pts;
  json rows = json::array();
  for (auto n : ns) {
    const auto lb = inverse_power_lower_bound(table, n, n_max);
    rows.push_back({{"n", n}, {"lower_bound", lb.value}, {"argmax_j", lb.argmax}});
    pts.emplace_back(static_cast<double>(n), lb.value);
  }
  j["lower_bounds"] = std::move(rows);
  if (pts.size() >= 5) {
    const auto fit = growth_exponent_fit(pts);
    j["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
  } else {
    j["fit"] = nullptr;
  }
  if (!a.csv.empty()) {
    auto f = open_csv(a.csv, c.seed);
    f << "n,lower_bound,tail_slack\n";
    for (const auto& [n, val] : pts)
      f << static_cast<std::int64_t>(n) << ',' << format_double(val) << ','
        << format_double(v.tail_bound) << '\n';
  }
  emit(j, c.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cantor-set harmonic analysis experiments"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "seed for random polynomials (recorded in every artifact)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "seed for random polynomials");
    sub->add_option("-o,--out", common.out, "write the JSON record here instead of stdout");
  };

  CantorArgs ca;
  auto* cantor_cmd = app.add_subcommand("cantor", "level covers, gaps and thresholds of E_xi");
  cantor_cmd->add_option("--xi", ca.xi, "ratio as 1/q or a decimal");
  cantor_cmd->add_option("--level", ca.level, "cover level n");
  cantor_cmd->add_option("--metric", ca.metric, "arc or chordal");
  cantor_cmd->add_option("--distance-at", ca.distance_at, "angles at which to enclose d(t, E)")
      ->delimiter(',');
  cantor_cmd->add_option("--census-csv", ca.census_csv, "gap census CSV path");
  add_common(cantor_cmd);

  WeightsArgs wa;
  double sandwich = -1.0;
  auto* weights_cmd = app.add_subcommand("weights", "weighted norms, weight axioms, norm sandwich");
  weights_cmd->add_option("--kind", wa.kind, "polynomial, one-sided or table");
  weights_cmd->add_option("--s", wa.s, "polynomial exponent");
  weights_cmd->add_option("--beta", wa.beta, "one-sided exponent");
  weights_cmd->add_option("--table", wa.table, "JSON array omega(-R..R)");
  weights_cmd->add_option("--range", wa.range, "pair range for the axiom check");
  weights_cmd->add_option("--input", wa.input, "series JSON");
  weights_cmd->add_option("--random-degree", wa.random_degree, "use a seeded random polynomial");
  auto* sandwich_opt = weights_cmd->add_option("--sandwich-s", sandwich, "run the sandwich at this s");
  double regularize_at = 0.0;
  auto* reg_opt = weights_cmd->add_option("--regularize-at", regularize_at,
                                          "angle of the point regularizer study (uses --s)");
  weights_cmd->add_option("--reg-n", wa.reg_n, "regularizer indices: 10,100 or 10..10240");
  add_common(weights_cmd);

  HerzArgs ha;
  auto* herz_cmd = app.add_subcommand("herz", "interpolant convergence and the A_s bound");
  herz_cmd->add_option("--s", ha.s, "smoothness s");
  herz_cmd->add_option("--N", ha.n_list, "node counts: 8,16,32 or 8..1024");
  herz_cmd->add_option("--input", ha.input, "series JSON");
  herz_cmd->add_option("--random-degree", ha.random_degree, "use a seeded random polynomial");
  herz_cmd->add_option("--report", ha.report, "CSV path");
  add_common(herz_cmd);

  OuterArgs oa;
  double delta = -1.0;
  auto* outer_cmd = app.add_subcommand("outer", "outer function with modulus exp(-d^-delta)");
  outer_cmd->add_option("--q", oa.q, "E_{1/q}");
  outer_cmd->add_option("--beta", oa.beta, "growth exponent beta < b(1/q)");
  auto* delta_opt = outer_cmd->add_option("--delta", delta, "override the admissible delta");
  outer_cmd->add_option("--grid", oa.grid, "grid size G (power of two)");
  outer_cmd->add_option("--M", oa.m, "truncation M");
  outer_cmd->add_option("--floor", oa.floor, "clamp floor for log|f|");
  outer_cmd->add_option("--aliasing-tol", oa.aliasing_tol, "max relative energy above M/2");
  outer_cmd->add_option("--series-out", oa.series_out, "write the Taylor series JSON here");
  add_common(outer_cmd);

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synthcheck", "annihilation residuals and inverse-power bounds");
  synth_cmd->add_option("--input", sa.input, "outer series JSON")->required();
  synth_cmd->add_option("--q", sa.q, "E_{1/q}");
  synth_cmd->add_option("--m-list", sa.m_list, "dilation exponents");
  synth_cmd->add_option("--level", sa.level, "endpoint level");
  synth_cmd->add_option("--n-list", sa.n_list, "powers n");
  synth_cmd->add_option("--s", sa.s, "polynomial growth exponent s");
  add_common(synth_cmd);

  ModelArgs ma;
  auto* model_cmd = app.add_subcommand("model", "lower bounds for ||T^-n|| on the model space");
  model_cmd->add_option("--xi", ma.xi, "ratio as 1/q or a decimal");
  model_cmd->add_option("--measure-level", ma.measure_level, "atomic measure level m");
  model_cmd->add_option("--M", ma.m, "Taylor truncation");
  model_cmd->add_option("--radius-policy", ma.radius_policy, "amp=<r^-M> or r=<radius>");
  model_cmd->add_option("--n-list", ma.n_list, "powers n (2n <= M)");
  model_cmd->add_option("--mass", ma.mass, "total mass of the measure");
  model_cmd->add_option("--placement", ma.placement, "atom placement: left or mid");
  model_cmd->add_option("--csv", ma.csv, "CSV path for (n, lower_bound, tail_slack)");
  add_common(model_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : exit_code(ErrorKind::Usage);
  }

  try {
    if (*cantor_cmd) return run_cantor(ca, common, out);
    if (*weights_cmd) {
      if (*sandwich_opt) wa.sandwich_s = sandwich;
      if (*reg_opt) wa.regularize_at = regularize_at;
      return run_weights(wa, common, out);
    }
    if (*herz_cmd) return run_herz(ha, common, out);
    if (*outer_cmd) {
      if (*delta_opt) oa.delta = delta;
      return run_outer(oa, common, out);
    }
    if (*synth_cmd) return run_synthcheck(sa, common, out);
    if (*model_cmd) return run_model(ma, common, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return exit_code(ErrorKind::Resource);
  }
  return exit_code(ErrorKind::Usage);
}

}  // namespace cantor
