// shapefilter: synthesize, simulate and analyse shaping filters from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "shaping/error.hpp"
#include "shaping/error_analysis.hpp"
#include "shaping/impulse_response.hpp"
#include "shaping/io.hpp"
#include "shaping/log.hpp"
#include "shaping/presets.hpp"
#include "shaping/simulation.hpp"
#include "shaping/state_space.hpp"

using namespace shaping;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string command;
  std::optional<std::string> preset;
  std::optional<std::string> tf_text;
  std::optional<json> tf_json;
  std::optional<double> horizon;
  std::vector<int> orders;
  std::string method = "spectral";
  std::uint64_t seed = 1;
  std::size_t trajectories = 1;
  std::size_t grid = 1000;
  std::string out;
  std::string format = "csv";
  std::string op = "rational";
  std::string mode = "factored";
  bool stats = false;
};

struct Resolved {
  RationalTransferFunction tf;
  double horizon;
  std::string label;
};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "preset") cfg.preset = value.get<std::string>();
      else if (key == "tf") cfg.tf_json = value;
      else if (key == "T") cfg.horizon = value.get<double>();
      else if (key == "L") cfg.orders = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
      else if (key == "method") cfg.method = value.get<std::string>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "n") cfg.trajectories = value.get<std::size_t>();
      else if (key == "grid") cfg.grid = value.get<std::size_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "format") cfg.format = value.get<std::string>();
      else if (key == "operator") cfg.op = value.get<std::string>();
      else if (key == "mode") cfg.mode = value.get<std::string>();
      else if (key == "stats") cfg.stats = value.get<bool>();
      else throw Error(ErrorKind::ParseError, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Resolved resolve_tf(const RunConfig& cfg) {
  const int sources = (cfg.preset ? 1 : 0) + (cfg.tf_text || cfg.tf_json ? 1 : 0);
  if (sources == 0) fail("one of --preset or --tf is required");
  if (sources > 1) fail("--preset and --tf are mutually exclusive");
  if (cfg.preset) {
    const auto& p = find_preset(*cfg.preset);
    return {p.tf, cfg.horizon.value_or(p.horizon), p.name};
  }
  auto tf = cfg.tf_text ? parse_transfer_function(*cfg.tf_text) : parse_transfer_function(*cfg.tf_json);
  if (!cfg.horizon) fail("--T is required with an inline --tf");
  auto label = transfer_function_to_json(tf).dump();
  return {std::move(tf), *cfg.horizon, std::move(label)};
}

CompositionMode parse_mode(const std::string& mode) {
  if (mode == "factored") return CompositionMode::Factored;
  if (mode == "polynomial") return CompositionMode::Polynomial;
  fail("unknown mode '" + mode + "'");
}

void validate_common(const RunConfig& cfg, double horizon) {
  if (!(horizon > 0.0)) fail("T must be positive");
  for (int l : cfg.orders)
    if (l < 1) fail("L must be >= 1");
  if (cfg.grid < 2) fail("grid must be >= 2");
  if (cfg.trajectories < 1) fail("n must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json") fail("format must be csv or json");
}

CsvHeader base_header(const RunConfig& cfg, const Resolved& r) {
  CsvHeader h{{"shapefilter", kVersion}, {"command", cfg.command}};
  if (cfg.preset) h.emplace_back("preset", r.label);
  else h.emplace_back("tf", r.label);
  h.emplace_back("T", format_double(r.horizon));
  return h;
}

json poles_json(const std::vector<Pole>& poles) {
  auto arr = json::array();
  for (const auto& p : poles) arr.push_back({{"re", p.value.real()}, {"im", p.value.imag()}, {"multiplicity", p.multiplicity}});
  return arr;
}

std::string_view kind_name(ModalKind k) {
  switch (k) {
    case ModalKind::Exp: return "exp";
    case ModalKind::TExp: return "t_exp";
    case ModalKind::ExpCos: return "exp_cos";
    case ModalKind::ExpSin: return "exp_sin";
  }
  return "exp";
}

void cmd_synthesize(const RunConfig& cfg, std::ostream& os) {
  const auto r = resolve_tf(cfg);
  validate_common(cfg, r.horizon);
  const auto pz = find_poles_zeros(r.tf);

  json doc;
  doc["version"] = kVersion;
  doc["source"] = r.label;
  doc["tf"] = transfer_function_to_json(r.tf);
  doc["order"] = r.tf.order();
  doc["stable"] = pz.stable;
  doc["gain"] = pz.gain;
  doc["poles"] = poles_json(pz.poles);
  auto zeros = json::array();
  for (const auto& z : pz.zeros) zeros.push_back({{"re", z.real()}, {"im", z.imag()}});
  doc["zeros"] = zeros;
  doc["realization"] = realization_to_json(companion_realization(r.tf));
  const auto interp = interpolation_realization(r.tf);
  doc["interpolation_B"] = std::vector<double>(interp.B.data(), interp.B.data() + interp.B.size());

  try {
    const auto pf = partial_fractions(r.tf);
    json fr = {{"real", json::array()}, {"pairs", json::array()}};
    for (const auto& t : pf.real_terms)
      fr["real"].push_back({{"theta", t.time_constant()}, {"multiplicity", t.multiplicity}, {"coefficient", t.coefficient}});
    for (const auto& t : pf.pair_terms)
      fr["pairs"].push_back({{"theta", t.theta}, {"xi", t.xi}, {"coefficient", t.coefficient}, {"s_coefficient", t.s_coefficient}});
    doc["partial_fractions"] = fr;
    const auto k = impulse_from_fractions(pf);
    auto terms = json::array();
    for (const auto& t : k.terms())
      terms.push_back({{"kind", kind_name(t.kind)}, {"rate", t.rate}, {"frequency", t.frequency}, {"coefficient", t.coefficient}});
    doc["impulse_response"] = terms;
    doc["kernel_norm_sq"] = kernel_norm_squared(k, r.horizon);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedPoleStructure) throw;
    doc["partial_fractions"] = nullptr;
    doc["impulse_response"] = nullptr;
    doc["note"] = e.what();
  }
  os << doc.dump(2) << '\n';
}

void cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  const auto r = resolve_tf(cfg);
  validate_common(cfg, r.horizon);
  const int order = cfg.orders.empty() ? 256 : cfg.orders.front();
  if (cfg.orders.size() > 1) fail("simulate takes a single L");
  const std::size_t steps = cfg.grid - 1;
  const bool stable = find_poles_zeros(r.tf).stable;

  CsvHeader header = base_header(cfg, r);
  header.emplace_back("method", cfg.method);
  header.emplace_back("seed", std::to_string(cfg.seed));
  header.emplace_back("n", std::to_string(cfg.trajectories));
  header.emplace_back("grid", std::to_string(cfg.grid));

  std::function<SampleTrajectory(GaussianSource&)> run;
  std::optional<SpectralOperator> w;
  std::optional<StateSpaceRealization> real;
  std::optional<ModalImpulseResponse> kernel;
  if (cfg.method == "spectral") {
    header.emplace_back("L", std::to_string(order));
    header.emplace_back("mode", cfg.mode);
    w = compose_rational(r.tf, r.horizon, order, parse_mode(cfg.mode));
    run = [&](GaussianSource& src) { return spectral_simulate(*w, src, cfg.grid); };
  } else if (cfg.method == "sde") {
    if (!stable) {
      header.emplace_back("warning", "unstable transfer function; trajectories grow without bound");
      warn("simulating an unstable transfer function");
    }
    real = companion_realization(r.tf);
    run = [&](GaussianSource& src) { return euler_maruyama(*real, r.horizon, steps, src); };
  } else if (cfg.method == "ito") {
    kernel = impulse_from_fractions(partial_fractions(r.tf));
    run = [&](GaussianSource& src) { return ito_sum_simulate(*kernel, r.horizon, steps, src); };
  } else {
    fail("method must be spectral, sde or ito");
  }

  const GaussianSource base(cfg.seed);
  if (cfg.stats) {
    if (cfg.trajectories < 2) fail("--stats needs n >= 2");
    RunningMoments moments(uniform_grid(r.horizon, cfg.grid));
    for (std::size_t n = 0; n < cfg.trajectories; ++n) {
      GaussianSource src = base.with_stream(n);
      moments.add(run(src).values);
    }
    const auto st = moments.stats();
    if (cfg.format == "json") {
      os << json{{"header", header}, {"t", st.grid}, {"mean", st.mean}, {"var", st.variance}, {"stderr", st.stderr_mean}}.dump()
         << '\n';
    } else {
      write_header(os, header);
      write_stats_csv(os, st);
    }
    return;
  }

  std::vector<SampleTrajectory> trs;
  trs.reserve(cfg.trajectories);
  for (std::size_t n = 0; n < cfg.trajectories; ++n) {
    GaussianSource src = base.with_stream(n);
    trs.push_back(run(src));
  }
  if (cfg.format == "json") {
    json doc = {{"header", header}, {"t", trs.front().grid}, {"x", json::array()}};
    for (const auto& tr : trs) doc["x"].push_back(tr.values);
    os << doc.dump() << '\n';
  } else {
    write_header(os, header);
    if (trs.size() == 1) write_trajectory_csv(os, trs.front());
    else write_trajectories_wide_csv(os, trs);
  }
}

void cmd_error_table(const RunConfig& cfg, std::ostream& os) {
  const auto r = resolve_tf(cfg);
  validate_common(cfg, r.horizon);
  const std::vector<int> orders = cfg.orders.empty() ? std::vector<int>{4, 8, 16, 32, 64, 128, 256} : cfg.orders;
  const auto reports = error_table(r.tf, r.horizon, orders, parse_mode(cfg.mode));
  std::optional<double> rate;
  if (reports.size() >= 3) {
    try {
      rate = convergence_rate(reports);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateFit) throw;
    }
  }
  CsvHeader header = base_header(cfg, r);
  header.emplace_back("mode", cfg.mode);
  header.emplace_back("kernel_norm_sq", format_double(reports.front().kernel_norm_sq));
  if (rate) header.emplace_back("rate", format_double(*rate));

  if (cfg.format == "json") {
    json doc = {{"header", header}, {"rows", json::array()}};
    for (const auto& rep : reports)
      doc["rows"].push_back({{"L", rep.order}, {"epsilon", rep.epsilon}, {"epsilon1", rep.epsilon1}, {"epsilon2", rep.epsilon2}});
    doc["rate"] = rate ? json(*rate) : json(nullptr);
    os << doc.dump(2) << '\n';
  } else {
    write_header(os, header);
    os << error_table_csv(reports);
  }
}

void cmd_operator(const RunConfig& cfg, std::ostream& os) {
  const int order = cfg.orders.empty() ? 16 : cfg.orders.front();
  if (cfg.orders.size() > 1) fail("operator takes a single L");
  const bool needs_tf = cfg.op != "P" && cfg.op != "Pinv";

  std::optional<Resolved> r;
  double horizon = cfg.horizon.value_or(0.0);
  if (needs_tf || cfg.preset || cfg.tf_text || cfg.tf_json) {
    r = resolve_tf(cfg);
    horizon = r->horizon;
  } else if (!cfg.horizon) {
    fail("--T is required");
  }
  validate_common(cfg, horizon);

  SpectralOperator w;
  if (cfg.op == "P") w = differentiation_matrix(horizon, order);
  else if (cfg.op == "Pinv") w = integration_matrix(horizon, order);
  else if (cfg.op == "exact") w = exact_projection(r->tf, horizon, order);
  else if (cfg.op == "rational") w = compose_rational(r->tf, horizon, order, parse_mode(cfg.mode));
  else if (cfg.op == "whiten") w = whitening_rational(r->tf, horizon, order);
  else fail("operator must be exact, rational, P, Pinv or whiten");

  CsvHeader header{{"shapefilter", kVersion}, {"command", cfg.command}, {"operator", cfg.op}};
  if (r) header.emplace_back(cfg.preset ? "preset" : "tf", r->label);
  header.emplace_back("T", format_double(horizon));
  header.emplace_back("L", std::to_string(order));
  header.emplace_back("provenance", std::string(to_string(w.provenance)));

  if (cfg.format == "json") {
    os << operator_to_json(w, r ? transfer_function_to_json(r->tf) : json(nullptr)).dump() << '\n';
  } else {
    write_header(os, header);
    write_matrix_csv(os, w.matrix);
  }
}

bool given(CLI::App* app, const std::string& name) {
  try {
    return app->get_option(name)->count() > 0;
  } catch (const CLI::OptionNotFound&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shaping filters for Gaussian processes with rational spectral density"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, tf_text, preset;
  double horizon = 0.0;
  std::vector<int> orders;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--tf", tf_text, R"(inline transfer function {"num": [...], "den": [...]}, ascending powers)");
    sub->add_option("--preset", preset, "dryden1, dryden2, dryden3 or osc");
    sub->add_option("--T", horizon, "horizon T > 0");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--mode", cfg.mode, "factored or polynomial");
  };

  auto* synth = app.add_subcommand("synthesize", "realization, poles, partial fractions and impulse response as JSON");
  add_common(synth);

  auto* sim = app.add_subcommand("simulate", "sample trajectories");
  add_common(sim);
  sim->add_option("--L", orders, "truncation order (spectral method)")->expected(1);
  sim->add_option("--method", cfg.method, "spectral, sde or ito");
  sim->add_option("--seed", cfg.seed, "random seed");
  sim->add_option("--n", cfg.trajectories, "number of trajectories");
  sim->add_option("--grid", cfg.grid, "grid points on [0, T]");
  sim->add_flag("--stats", cfg.stats, "write per-time mean, variance and standard error instead of paths");

  auto* table = app.add_subcommand("error-table", "approximation errors epsilon, epsilon1, epsilon2 per L");
  add_common(table);
  table->add_option("--L", orders, "truncation orders, ascending")->delimiter(',');

  auto* oper = app.add_subcommand("operator", "dump a truncated operator matrix");
  add_common(oper);
  oper->add_option("--L", orders, "truncation order")->expected(1);
  oper->add_option("--operator", cfg.op, "exact, rational, P, Pinv or whiten");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.command = active->get_name();
  try {
    // Config file first, then explicit flags on top.
    RunConfig merged = cfg;
    if (!config_path.empty()) {
      apply_config_file(merged, config_path);
      if (given(active, "--method")) merged.method = cfg.method;
      if (given(active, "--seed")) merged.seed = cfg.seed;
      if (given(active, "--n")) merged.trajectories = cfg.trajectories;
      if (given(active, "--grid")) merged.grid = cfg.grid;
      if (given(active, "--out")) merged.out = cfg.out;
      if (given(active, "--format")) merged.format = cfg.format;
      if (given(active, "--operator")) merged.op = cfg.op;
      if (given(active, "--mode")) merged.mode = cfg.mode;
      if (given(active, "--stats")) merged.stats = true;
    }
    if (given(active, "--preset")) {
      merged.preset = preset;
      merged.tf_json.reset();
      merged.tf_text.reset();
    }
    if (given(active, "--tf")) {
      merged.tf_text = tf_text;
      merged.tf_json.reset();
      if (!given(active, "--preset")) merged.preset.reset();
    }
    if (given(active, "--T")) merged.horizon = horizon;
    if (given(active, "--L")) merged.orders = orders;
    merged.command = cfg.command;

    std::ostringstream buffer;
    if (merged.command == "synthesize") cmd_synthesize(merged, buffer);
    else if (merged.command == "simulate") cmd_simulate(merged, buffer);
    else if (merged.command == "error-table") cmd_error_table(merged, buffer);
    else cmd_operator(merged, buffer);

    if (merged.out.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream out(merged.out, std::ios::binary);
      if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + merged.out);
      out << buffer.str();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_numeric_failure(e.kind()) ? 3 : 2;
  }
  return 0;
}
