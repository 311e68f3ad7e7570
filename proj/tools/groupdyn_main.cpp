// groupdyn: model evaluation, scaling ladders, stochastic simulation, and
// histogram fitting from the command line.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "groupdyn/groupdyn.hpp"

namespace {

using nlohmann::json;

// "lo,hi" range flags.
std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  const auto comma = text.find(',');
  std::size_t lo_end = 0, hi_end = 0;
  std::pair<double, double> range;
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    range.first = std::stod(text.substr(0, comma), &lo_end);
    range.second = std::stod(text.substr(comma + 1), &hi_end);
  } catch (const std::exception&) {
    throw std::invalid_argument(flag + " expects 'lo,hi', got '" + text + "'");
  }
  if (lo_end != comma || hi_end != text.size() - comma - 1) {
    throw std::invalid_argument(flag + " expects 'lo,hi', got '" + text + "'");
  }
  return range;
}

// Table-style display rounding: three significant figures.
double round_sig3(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  const double mag = std::pow(10.0, 2.0 - std::floor(std::log10(std::abs(v))));
  return std::round(v * mag) / mag;
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path != "-") {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open --out " + path);
      stream = &file;
    }
  }
  std::ostream& out() { return *stream; }
};

std::string fmt(double v, bool rounded) {
  if (rounded && v != 0.0 && std::isfinite(v)) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.3g", v);
    return {buf, static_cast<std::size_t>(len)};
  }
  return groupdyn::detail::format_double(v);
}

int run_psi(double beta, double n_t, double n_min, double n_max, double step,
            const std::string& format, const std::string& out_path,
            bool rounded) {
  const groupdyn::GroupScalingParams params{beta, n_t};
  if (!(n_min >= 1.0)) throw std::invalid_argument("--n-min must be >= 1");
  if (!(step > 0.0)) throw std::invalid_argument("--step must be > 0");
  if (n_max < n_min) throw std::invalid_argument("--n-max must be >= --n-min");
  Output output(out_path);
  json rows = json::array();
  if (format == "csv") output.out() << "n,psi\n";
  for (double n = n_min; n <= n_max + 1e-12; n += step) {
    const double value = groupdyn::psi(n, params);
    if (format == "csv") {
      output.out() << fmt(n, false) << ',' << fmt(value, rounded) << '\n';
    } else {
      rows.push_back({{"n", n}, {"psi", rounded ? round_sig3(value) : value}});
    }
  }
  if (format == "json") output.out() << rows.dump(2) << '\n';
  return 0;
}

int run_ladder(double beta, double seed_scale, int levels,
               const std::string& format, const std::string& out_path,
               bool rounded) {
  const groupdyn::GroupScalingParams params{beta, seed_scale};
  const auto result = groupdyn::ladder(params, seed_scale, levels);
  Output output(out_path);
  if (format == "csv") {
    output.out() << "level,scale,mode\n";
    for (std::size_t k = 0; k < result.levels.size(); ++k) {
      output.out() << k << ','
                   << fmt(result.levels[k].contention_scale, rounded) << ','
                   << result.levels[k].integer_mode << '\n';
    }
  } else {
    json rows = json::array();
    for (std::size_t k = 0; k < result.levels.size(); ++k) {
      const double scale = rounded
                               ? round_sig3(result.levels[k].contention_scale)
                               : result.levels[k].contention_scale;
      rows.push_back({{"level", k},
                      {"scale", scale},
                      {"mode", result.levels[k].integer_mode}});
    }
    output.out() << rows.dump(2) << '\n';
  }
  return 0;
}

std::string sidecar_path(const std::string& out_path) {
  const auto dot = out_path.rfind('.');
  const auto slash = out_path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out_path + ".json";
  }
  return out_path.substr(0, dot) + ".json";
}

int run_simulate(double beta, double n_t, double lambda0,
                 std::uint64_t events, std::uint64_t burn_in,
                 std::uint64_t seed, int replicas, int n_cap,
                 const std::string& out_path, const std::string& log_path) {
  groupdyn::SimConfig config{groupdyn::GroupScalingParams{beta, n_t}};
  config.join_rate_lambda0 = lambda0;
  config.event_budget = events;
  config.burn_in = burn_in;
  config.master_seed = seed;
  config.replicas = replicas;
  if (n_cap > 0) config.n_cap = n_cap;
  config.capture_log = !log_path.empty();
  config.validate();

  const auto result = groupdyn::run(config);
  {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open --out " + out_path);
    groupdyn::write_histogram_csv(out, result.histogram);
  }
  if (config.capture_log) {
    std::ofstream log(log_path);
    if (!log) throw std::invalid_argument("cannot open --log " + log_path);
    groupdyn::write_event_log_csv(log, result.log);
  }
  const auto reference = groupdyn::stationary_reference(config);
  const double tv =
      groupdyn::tv_distance(result.histogram, reference, config.n_min);
  json sidecar;
  sidecar["config"] = {{"beta", beta},
                       {"n_t", n_t},
                       {"lambda0", lambda0},
                       {"events", events},
                       {"burn_in", burn_in},
                       {"seed", seed},
                       {"replicas", replicas},
                       {"n_cap", config.n_cap},
                       {"n_min", config.n_min}};
  sidecar["tv_distance"] = tv;
  sidecar["total_weight"] = result.histogram.total;
  std::ofstream side(sidecar_path(out_path));
  if (!side) throw std::invalid_argument("cannot open sidecar file");
  side << sidecar.dump(2) << '\n';
  std::cout << "tv_distance " << groupdyn::detail::format_double(tv) << '\n';
  return 0;
}

int run_fit(const std::string& input, const std::string& beta_range,
            const std::string& n_t_range, int grid, double tol,
            int n_max_cut, const std::string& loss,
            const std::string& out_path) {
  const auto betas = parse_range(beta_range, "--beta-range");
  const auto n_ts = parse_range(n_t_range, "--n-t-range");
  std::ifstream in(input);
  if (!in) throw std::invalid_argument("cannot open --input " + input);
  const auto obs = groupdyn::read_observations_csv(in);
  if (obs.counts.size() < 2) {
    std::cerr << "observations cover a single group size; the distribution "
                 "is unidentifiable\n";
    return 3;
  }
  groupdyn::FitConfig config;
  config.beta_lo = betas.first;
  config.beta_hi = betas.second;
  config.n_t_lo = n_ts.first;
  config.n_t_hi = n_ts.second;
  config.grid_points = grid;
  config.refine_tolerance = tol;
  config.n_max_cut = n_max_cut;
  config.loss = loss == "lsq" ? groupdyn::FitLoss::least_squares
                              : groupdyn::FitLoss::mle;
  const auto result = groupdyn::fit(obs, config);
  Output output(out_path);
  output.out() << groupdyn::to_json(result, config).dump(2) << '\n';
  std::cout << "beta_hat " << groupdyn::detail::format_double(result.beta_hat)
            << " n_t_hat " << groupdyn::detail::format_double(result.n_t_hat)
            << " implied_mode " << result.implied_mode << '\n';
  return 0;
}

int run_bands(const std::string& format, const std::string& out_path,
              bool rounded) {
  Output output(out_path);
  const auto bands = groupdyn::canonical_bands();
  if (format == "csv") {
    output.out() << "band,attention,f_low,f_center,f_high,dunbar_level,product\n";
    for (const auto& b : bands) {
      output.out() << b.name << ',' << b.attention << ',' << fmt(b.f_low, false)
                   << ',' << fmt(b.f_center, false) << ',' << fmt(b.f_high, false)
                   << ',' << fmt(b.dunbar_level, false) << ','
                   << fmt(groupdyn::throughput_product(b), rounded) << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& b : bands) {
      const double product = groupdyn::throughput_product(b);
      rows.push_back({{"band", b.name},
                      {"attention", b.attention},
                      {"f_low", b.f_low},
                      {"f_center", b.f_center},
                      {"f_high", b.f_high},
                      {"dunbar_level", b.dunbar_level},
                      {"product", rounded ? round_sig3(product) : product}});
    }
    output.out() << rows.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-size distribution model: evaluate, simulate, fit"};
  app.require_subcommand(1);
  bool rounded = false;
  app.add_flag("--round", rounded, "display values at 3 significant figures");

  auto* psi_cmd = app.add_subcommand("psi", "tabulate the group-size density");
  double beta = 1.0, n_t = 8.0, n_min_real = 1.0, n_max_real = 40.0, step = 1.0;
  std::string format = "csv", out_path = "-";
  psi_cmd->add_option("--beta", beta)->required();
  psi_cmd->add_option("--n-t", n_t)->required();
  psi_cmd->add_option("--n-min", n_min_real)->capture_default_str();
  psi_cmd->add_option("--n-max", n_max_real)->capture_default_str();
  psi_cmd->add_option("--step", step)->capture_default_str();
  psi_cmd->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "json"}));
  psi_cmd->add_option("--out", out_path)->capture_default_str();

  auto* ladder_cmd =
      app.add_subcommand("ladder", "contention-scale hierarchy from a seed");
  double ladder_beta = 1.0, seed_scale = 8.0;
  int levels = 4;
  std::string ladder_format = "csv", ladder_out = "-";
  ladder_cmd->add_option("--beta", ladder_beta)->required();
  ladder_cmd->add_option("--seed-scale", seed_scale)->required();
  ladder_cmd->add_option("--levels", levels)->capture_default_str();
  ladder_cmd->add_option("--format", ladder_format)
      ->check(CLI::IsMember({"csv", "json"}));
  ladder_cmd->add_option("--out", ladder_out)->capture_default_str();

  auto* sim_cmd =
      app.add_subcommand("simulate", "run the birth-death group simulator");
  double sim_beta = 1.0, sim_n_t = 8.0, lambda0 = 1.0;
  std::uint64_t events = 100000, burn_in = 0, seed = 0;
  int replicas = 1, n_cap = 0;
  std::string sim_out, log_path;
  sim_cmd->add_option("--beta", sim_beta)->required();
  sim_cmd->add_option("--n-t", sim_n_t)->required();
  sim_cmd->add_option("--lambda0", lambda0)->capture_default_str();
  sim_cmd->add_option("--events", events)->capture_default_str();
  sim_cmd->add_option("--burn-in", burn_in)->capture_default_str();
  sim_cmd->add_option("--seed", seed)->capture_default_str();
  sim_cmd->add_option("--replicas", replicas)->capture_default_str();
  sim_cmd->add_option("--n-cap", n_cap, "0 derives the cap from the mode");
  sim_cmd->add_option("--out", sim_out, "histogram CSV path")->required();
  sim_cmd->add_option("--log", log_path, "write the event log CSV here");

  auto* fit_cmd =
      app.add_subcommand("fit", "maximum-likelihood fit of an n,count CSV");
  std::string fit_input, fit_out = "-", loss = "mle";
  std::string beta_range = "0.875,1.0";
  std::string n_t_range = "4,2000";
  int grid = 24, fit_cut = 0;
  double tol = 1e-5;
  fit_cmd->add_option("--input", fit_input)->required();
  fit_cmd->add_option("--beta-range", beta_range)->capture_default_str();
  fit_cmd->add_option("--n-t-range", n_t_range)->capture_default_str();
  fit_cmd->add_option("--grid", grid)->capture_default_str();
  fit_cmd->add_option("--tol", tol)->capture_default_str();
  fit_cmd->add_option("--n-max-cut", fit_cut)->capture_default_str();
  fit_cmd->add_option("--loss", loss)->check(CLI::IsMember({"mle", "lsq"}));
  fit_cmd->add_option("--out", fit_out)->capture_default_str();

  auto* bands_cmd =
      app.add_subcommand("bands", "attention bands and throughput products");
  std::string bands_format = "csv", bands_out = "-";
  bands_cmd->add_option("--format", bands_format)
      ->check(CLI::IsMember({"csv", "json"}));
  bands_cmd->add_option("--out", bands_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (psi_cmd->parsed()) {
      return run_psi(beta, n_t, n_min_real, n_max_real, step, format, out_path,
                     rounded);
    }
    if (ladder_cmd->parsed()) {
      return run_ladder(ladder_beta, seed_scale, levels, ladder_format,
                        ladder_out, rounded);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(sim_beta, sim_n_t, lambda0, events, burn_in, seed,
                          replicas, n_cap, sim_out, log_path);
    }
    if (fit_cmd->parsed()) {
      return run_fit(fit_input, beta_range, n_t_range, grid, tol, fit_cut,
                     loss, fit_out);
    }
    if (bands_cmd->parsed()) {
      return run_bands(bands_format, bands_out, rounded);
    }
  } catch (const groupdyn::CsvError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
