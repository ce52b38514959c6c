#include "qwalk/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "qwalk/coherent.hpp"
#include "qwalk/fock.hpp"
#include "qwalk/jones.hpp"
#include "qwalk/sweep.hpp"

namespace qwalk::cli {

namespace {

using nlohmann::json;

std::vector<double> split_numbers(const std::string& spec, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what + ": cannot parse '" + item + "' as a number");
    }
  }
  return values;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(what + ": expected a number or a [re, im] pair");
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

RunMode parse_mode(const std::string& s) {
  if (s == "ideal") return RunMode::Ideal;
  if (s == "jones") return RunMode::Jones;
  if (s == "ring") return RunMode::Ring;
  if (s == "coherent") return RunMode::Coherent;
  if (s == "hom") return RunMode::Hom;
  throw ConfigError("mode: unknown mode '" + s + "' (expected ideal, jones, ring, coherent or hom)");
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Ideal: return "ideal";
    case RunMode::Jones: return "jones";
    case RunMode::Ring: return "ring";
    case RunMode::Coherent: return "coherent";
    case RunMode::Hom: return "hom";
  }
  return "?";
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ConfigError("format: unknown format '" + s + "' (expected csv or json)");
}

CoinVector parse_coin(const std::string& spec, std::uint64_t seed) {
  if (spec == "random") return random_coin(seed, 0);
  if (spec == "symmetric" || spec == "up" || spec == "down") return coin_preset(spec);
  const auto v = split_numbers(spec, "coin");
  if (v.size() != 4) throw ConfigError("coin: expected a preset (symmetric, up, down, random) or 're,im,re,im'");
  const CoinVector c{{v[0], v[1]}, {v[2], v[3]}};
  if (!c.is_finite() || std::abs(c.norm2() - 1.0) > kAccumulatedTolerance) {
    throw ConfigError("coin: amplitudes must be finite and normalized");
  }
  return c;
}

Complex parse_complex(const std::string& spec) {
  const auto v = split_numbers(spec, "alpha");
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw ConfigError("alpha: expected 're' or 're,im'");
}

void apply_config_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "mode") {
        cfg.mode = parse_mode(value.get<std::string>());
      } else if (key == "steps") {
        cfg.steps = value.get<int>();
      } else if (key == "q") {
        cfg.q = value.get<double>();
      } else if (key == "coin") {
        if (value.is_string()) {
          cfg.coin = value.get<std::string>();
        } else if (value.is_array() && value.size() == 2) {
          const Complex up = complex_from_json(value[0], "coin");
          const Complex down = complex_from_json(value[1], "coin");
          cfg.coin = format_number(up.real()) + "," + format_number(up.imag()) + "," + format_number(down.real()) + "," +
                     format_number(down.imag());
        } else {
          throw ConfigError("coin: expected a preset name or [[re, im], [re, im]]");
        }
      } else if (key == "qwp-angle") {
        cfg.qwp_angle = value.get<double>();
      } else if (key == "mu") {
        cfg.mu = value.get<double>();
      } else if (key == "window-center") {
        cfg.detector.window_center = value.get<int>();
      } else if (key == "window-halfwidth") {
        cfg.detector.window_halfwidth = value.get<int>();
      } else if (key == "odd-even-split") {
        cfg.detector.odd_even_split = value.get<bool>();
      } else if (key == "alpha") {
        cfg.alpha = complex_from_json(value, "alpha");
      } else if (key == "output") {
        cfg.output = value.get<std::string>();
      } else if (key == "format") {
        cfg.format = parse_format(value.get<std::string>());
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else {
        throw ConfigError("config: unknown field '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError(key + ": " + e.what());
    }
    cfg.explicit_fields.insert(key);
  }
}

OutputFormat RunConfig::effective_format() const {
  if (format) return *format;
  return mode == RunMode::Hom ? OutputFormat::Json : OutputFormat::Csv;
}

void RunConfig::validate() const {
  auto reject_unless = [&](const char* field, bool allowed, const std::string& why) {
    if (!allowed && explicit_fields.count(field)) throw ConfigError(std::string(field) + ": " + why);
  };
  const bool ring = mode == RunMode::Ring;
  const std::string mode_name = to_string(mode);
  reject_unless("mu", ring, "only used by mode ring, not " + mode_name);
  reject_unless("window-center", ring, "only used by mode ring, not " + mode_name);
  reject_unless("window-halfwidth", ring, "only used by mode ring, not " + mode_name);
  reject_unless("odd-even-split", ring, "only used by mode ring, not " + mode_name);
  reject_unless("alpha", mode == RunMode::Coherent, "only used by mode coherent, not " + mode_name);
  reject_unless("steps", mode != RunMode::Hom, "mode hom always runs two round trips");
  reject_unless("coin", mode != RunMode::Hom, "mode hom uses the fixed R/L photon pair");
  reject_unless("qwp-angle", mode != RunMode::Hom, "mode hom uses the 45 degree quarter-wave plate");

  try {
    Charge::from_q(q);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("q: ") + e.what());
  }
  if (mode == RunMode::Hom && q != 0.5) throw ConfigError("q: mode hom requires q = 0.5");
  if (mode == RunMode::Hom && format == OutputFormat::Csv) throw ConfigError("format: mode hom writes a JSON report only");
  if (mode != RunMode::Hom && steps < 1) throw ConfigError("steps: must be at least 1");
  if (!std::isfinite(qwp_angle)) throw ConfigError("qwp-angle: must be finite");
  if (ring && !(mu > 0.0 && mu <= 1.0)) throw ConfigError("mu: must lie in (0, 1], got " + format_number(mu));
  if (ring && detector.window_halfwidth <= 0) throw ConfigError("window-halfwidth: must be positive");
  if (!is_finite(alpha)) throw ConfigError("alpha: must be finite");
  if (mode != RunMode::Hom) parse_coin(coin, seed);
}

StepParams step_params(const RunConfig& cfg) {
  StepParams p;
  p.q = Charge::from_q(cfg.q);
  p.coin = cfg.qwp_angle == kPi / 4 ? hadamard() : coin_for_qwp(cfg.qwp_angle);
  return p;
}

std::vector<IterationRecord> simulate(const RunConfig& cfg) {
  cfg.validate();
  const StepParams params = step_params(cfg);
  const CoinVector coin = parse_coin(cfg.coin, cfg.seed);
  std::vector<IterationRecord> records;

  auto push_spectrum = [&](int n, std::map<int, double> spectrum) {
    IterationRecord r;
    r.iteration = n;
    for (const auto& [ell, p] : spectrum) r.detected_power += p;
    r.spectrum = std::move(spectrum);
    records.push_back(std::move(r));
  };

  switch (cfg.mode) {
    case RunMode::Ideal: {
      WalkState s = WalkState::localized(0, coin);
      for (int n = 1; n <= cfg.steps; ++n) {
        s = step(s, params);
        push_spectrum(n, distribution(s));
      }
      break;
    }
    case RunMode::Jones: {
      const ModeOperator round_trip = walk_step_operator(params.q, cfg.qwp_angle);
      JonesField f = JonesField::single_mode(0, coin.up, coin.down);
      for (int n = 1; n <= cfg.steps; ++n) {
        f = apply(round_trip, f);
        std::map<int, double> spectrum;
        for (const auto& [ell, a] : f.amplitudes) spectrum[ell] = std::norm(a.r) + std::norm(a.l);
        push_spectrum(n, std::move(spectrum));
      }
      break;
    }
    case RunMode::Coherent: {
      CoherentField f = coherent_input(cfg.alpha, 0, coin);
      const CreationMap map = CreationMap::walk_step(params);
      for (int n = 1; n <= cfg.steps; ++n) {
        f = evolve_coherent(f, map);
        push_spectrum(n, mean_photon_spectrum(f));
      }
      break;
    }
    case RunMode::Ring: {
      RingConfig rc;
      rc.mu = cfg.mu;
      rc.n_iterations = cfg.steps;
      rc.step = params;
      rc.detector = cfg.detector;
      RingResult result = run_ring(JonesField::single_mode(0, coin.up, coin.down), rc);
      std::cerr << "energy audit: entry_rejected=" << format_number(result.entry_rejected)
                << " final_circulating=" << format_number(result.final_circulating)
                << " residual=" << format_number(energy_audit(result)) << "\n";
      records = std::move(result.records);
      break;
    }
    case RunMode::Hom:
      throw ConfigError("mode: hom produces a report, not spectrum records");
  }
  return records;
}

json hom_report(const RunConfig& cfg) {
  cfg.validate();
  const int ell = 0;
  const FockState out = hom_two_roundtrips(ell);
  json terms = json::array();
  for (const auto& [config, amp] : out.terms) {
    json modes = json::array();
    for (const Mode& m : config) modes.push_back({{"ell", m.ell}, {"pol", std::string(to_string(m.pol))}});
    terms.push_back({{"modes", modes}, {"amplitude", complex_to_json(amp)}});
  }
  return {{"mode", "hom"},
          {"ell", ell},
          {"roundtrips", 2},
          {"input", json::array({{{"ell", ell}, {"pol", "R"}}, {{"ell", ell + 2}, {"pol", "L"}}})},
          {"coincidence_amplitude", coincidence_amplitude(out, ell, ell + 2)},
          {"distinguishable_coincidence_probability", distinguishable_coincidence_probability(ell)},
          {"norm", out.norm2()},
          {"terms", terms}};
}

json records_to_json(const std::vector<IterationRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    json spectrum = json::array();
    for (const auto& [ell, p] : r.spectrum) spectrum.push_back(json::array({ell, p}));
    arr.push_back({{"iteration", r.iteration},
                   {"detected_power", r.detected_power},
                   {"clipped_power", r.clipped_power},
                   {"spectrum", spectrum}});
  }
  return arr;
}

std::vector<IterationRecord> records_from_json(const json& j) {
  std::vector<IterationRecord> records;
  for (const auto& item : j) {
    IterationRecord r;
    r.iteration = item.at("iteration").get<int>();
    r.detected_power = item.at("detected_power").get<double>();
    r.clipped_power = item.at("clipped_power").get<double>();
    for (const auto& pair : item.at("spectrum")) r.spectrum.emplace(pair.at(0).get<int>(), pair.at(1).get<double>());
    records.push_back(std::move(r));
  }
  return records;
}

void emit_spectrum_table(std::ostream& out, const std::vector<IterationRecord>& records, OutputFormat format,
                         bool ring_columns) {
  if (records.empty()) throw std::invalid_argument("no records to emit");
  if (format == OutputFormat::Json) {
    out << records_to_json(records).dump(2) << "\n";
    return;
  }
  out << "iteration,ell,probability_or_power";
  if (ring_columns) out << ",detected_power,clipped_power";
  out << "\n";
  for (const auto& r : records) {
    for (const auto& [ell, p] : r.spectrum) {
      out << r.iteration << ',' << ell << ',' << format_number(p);
      if (ring_columns) out << ',' << format_number(r.detected_power) << ',' << format_number(r.clipped_power);
      out << "\n";
    }
  }
}

namespace {

template <typename Writer>
void write_output(const std::string& path, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(std::cout);
    std::cout.flush();
    if (!std::cout) throw OutputError("failed writing to stdout");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open output file '" + path + "'");
  writer(file);
  file.flush();
  if (!file) throw OutputError("failed writing output file '" + path + "'");
}

struct SweepOptions {
  int trials = 20;
  int steps = 50;
  std::uint64_t seed = 0;
  bool serial = false;
  std::string output;
};

json sweep_report(const SweepOptions& opt) {
  SweepConfig cfg;
  cfg.trials = opt.trials;
  cfg.steps = opt.steps;
  cfg.seed = opt.seed;
  const auto trials = opt.serial ? equivalence_sweep_serial(cfg) : equivalence_sweep(cfg);
  json arr = json::array();
  for (const auto& t : trials) {
    arr.push_back({{"index", t.index},
                   {"coin", json::array({complex_to_json(t.coin.up), complex_to_json(t.coin.down)})},
                   {"walk_vs_jones", t.walk_vs_jones},
                   {"walk_vs_fock", t.walk_vs_fock},
                   {"jones_vs_fock", t.jones_vs_fock},
                   {"coherent_vs_jones", t.coherent_vs_jones}});
  }
  return {{"steps", opt.steps}, {"seed", opt.seed}, {"trials", arr}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Coined quantum walk in polarization x OAM space: ideal walk, Jones field, ring interferometer, "
               "coherent states and two-photon bunching"};

  std::string mode, coin, alpha, output, format, config_path;
  int steps = 0, window_center = 0, window_halfwidth = 0;
  double q = 0.0, qwp_angle = 0.0, mu = 0.0;
  bool odd_even_split = false;
  std::uint64_t seed = 0;

  app.add_option("--config", config_path, "JSON config file with the same (kebab-case) fields");
  app.add_option("--mode", mode, "ideal | jones | ring | coherent | hom");
  app.add_option("--steps", steps, "Number of walk steps / ring round trips (default 100)");
  app.add_option("--q", q, "q-plate charge, a half-integer (default 0.5)");
  app.add_option("--coin", coin, "Initial coin: symmetric | up | down | random | re,im,re,im");
  app.add_option("--qwp-angle", qwp_angle, "Quarter-wave plate axis angle in radians (default pi/4)");
  app.add_option("--mu", mu, "Ring out-coupling intensity transmission in (0, 1]");
  app.add_option("--window-center", window_center, "Detector window centre (ring)");
  app.add_option("--window-halfwidth", window_halfwidth, "Detector window half-width (ring, default 50)");
  app.add_flag("--odd-even-split", odd_even_split, "Split odd/even OAM orders before sorting (ring)");
  app.add_option("--alpha", alpha, "Coherent amplitude 're' or 're,im' (coherent)");
  app.add_option("--output", output, "Output path (default stdout)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--seed", seed, "Seed for the 'random' coin");

  SweepOptions sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Cross-layer equivalence for random coins, run in parallel");
  sweep_cmd->add_option("--trials", sweep.trials, "Number of random initial coins")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--steps", sweep.steps, "Steps per trial")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed");
  sweep_cmd->add_flag("--serial", sweep.serial, "Use the serial reference path");
  sweep_cmd->add_option("--output", sweep.output, "Output path (default stdout)");

  std::vector<std::string> storage{"qwalk"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sweep_cmd->parsed()) {
      const json report = sweep_report(sweep);
      write_output(sweep.output, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
      return 0;
    }

    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("config: cannot read '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError("config: " + std::string(e.what()));
      }
      apply_config_json(cfg, j);
    }
    auto given = [&](const char* flag) { return app.count(flag) > 0; };
    auto mark = [&](const char* field) { cfg.explicit_fields.insert(field); };
    if (given("--mode")) { cfg.mode = parse_mode(mode); mark("mode"); }
    if (given("--steps")) { cfg.steps = steps; mark("steps"); }
    if (given("--q")) { cfg.q = q; mark("q"); }
    if (given("--coin")) { cfg.coin = coin; mark("coin"); }
    if (given("--qwp-angle")) { cfg.qwp_angle = qwp_angle; mark("qwp-angle"); }
    if (given("--mu")) { cfg.mu = mu; mark("mu"); }
    if (given("--window-center")) { cfg.detector.window_center = window_center; mark("window-center"); }
    if (given("--window-halfwidth")) { cfg.detector.window_halfwidth = window_halfwidth; mark("window-halfwidth"); }
    if (given("--odd-even-split")) { cfg.detector.odd_even_split = odd_even_split; mark("odd-even-split"); }
    if (given("--alpha")) { cfg.alpha = parse_complex(alpha); mark("alpha"); }
    if (given("--output")) { cfg.output = output; mark("output"); }
    if (given("--format")) { cfg.format = parse_format(format); mark("format"); }
    if (given("--seed")) { cfg.seed = seed; mark("seed"); }

    cfg.validate();
    if (cfg.mode == RunMode::Hom) {
      const json report = hom_report(cfg);
      write_output(cfg.output, [&](std::ostream& os) { os << report.dump(2) << "\n"; });
    } else {
      const auto records = simulate(cfg);
      write_output(cfg.output, [&](std::ostream& os) {
        emit_spectrum_table(os, records, cfg.effective_format(), cfg.mode == RunMode::Ring);
      });
    }
  } catch (const ConfigError& e) {
    std::cerr << "qwalk: invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const OutputError& e) {
    std::cerr << "qwalk: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qwalk: invalid configuration: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qwalk::cli

namespace qwalk {

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli::run_cli(args);
}

}  // namespace qwalk
