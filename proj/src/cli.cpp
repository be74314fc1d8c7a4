#include "magnon/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magnon/errors.hpp"
#include "magnon/io.hpp"
#include "magnon/oracle_checks.hpp"
#include "magnon/protocols.hpp"
#include "magnon/sweeps.hpp"

namespace magnon::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
  int n = 0;
  int n_min = 0;
  int n_max = 0;
  double j_xy = 1.0;
  double j_z = 0.0;
  double h_field = 1.0;
  std::vector<std::string> encodings;
  double theta = 0.0;
  double phi = 0.0;
  double t = 0.0;
  double t_max = 100.0;
  double t_step = 0.05;
  double h_max = 2.0;
  double h_step = 0.05;
  double theta_step = kPi / 60.0;
  std::vector<int> sites;
  std::vector<double> swap_times;
  int swaps = 3;
  double prominence = 0.02;
  int trials = 50;
  std::uint64_t seed = 20240611;
  bool no_refine = false;
  bool exact = false;
  std::string out;
  std::string summary;
  std::string format = "csv";
};

// Options live on the top-level app so a config file can set any of them.
struct Flags {
  CLI::Option *n, *n_min, *n_max, *encoding, *theta, *t, *t_max, *swap_times;
};

class Output {
 public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open output file " + path);
    }
  }
  std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_text(const std::string &path, const std::string &text) {
  Output out(path);
  out.stream() << text << '\n';
}

void write_summary(const RunConfig &cfg, const std::string &json) {
  if (!cfg.summary.empty()) write_text(cfg.summary, json);
}

template <class T>
T pick(CLI::Option *opt, const T &value, const T &fallback) {
  return opt->count() > 0 ? value : fallback;
}

std::vector<EncodingName> encodings_or(const RunConfig &cfg, std::vector<EncodingName> fallback) {
  if (cfg.encodings.empty()) return fallback;
  std::vector<EncodingName> out;
  for (const auto &e : cfg.encodings) out.push_back(parse_encoding(e));
  return out;
}

int block_size_of(EncodingName e) { return LogicalEncoding(e).block_size(); }

std::vector<int> n_range(const RunConfig &cfg, const Flags &f, int lo, int hi,
                         const std::vector<EncodingName> &encs) {
  int need = 1;
  for (auto e : encs) need = std::max(need, block_size_of(e));
  const int n_max = pick(f.n_max, cfg.n_max, hi);
  const int n_min = pick(f.n_min, cfg.n_min, std::min(lo, n_max));
  if (n_max < need) {
    throw ChainTooShortError("--n-max " + std::to_string(n_max) + " is shorter than the " + std::to_string(need) +
                             "-site logical block");
  }
  if (n_min > n_max) throw ValidationError("--n-min exceeds --n-max");
  std::vector<int> ns;
  for (int n = std::max(n_min, need); n <= n_max; ++n) ns.push_back(n);
  return ns;
}

SweepSpec base_spec(const RunConfig &cfg) {
  SweepSpec spec = SweepSpec::defaults();
  spec.j_xy = cfg.j_xy;
  spec.h_field = cfg.h_field;
  spec.phi = cfg.phi;
  spec.times = uniform_grid(0.0, cfg.t_max, cfg.t_step);
  spec.h_values = uniform_grid(0.0, cfg.h_max, cfg.h_step);
  spec.thetas = uniform_grid(0.0, kPi, cfg.theta_step);
  spec.refine = !cfg.no_refine;
  return spec;
}

ChainParams chain(const RunConfig &cfg, int n) {
  ChainParams p{n, cfg.j_xy, cfg.j_z, cfg.h_field};
  p.validate();
  return p;
}

void emit_sweep(const RunConfig &cfg, const SweepResult &r) {
  const std::string json = io::sweep_json(r);
  if (cfg.format == "json") {
    write_text(cfg.out, json);
  } else {
    Output out(cfg.out);
    io::write_sweep_csv(out.stream(), r);
  }
  write_summary(cfg, json);
}

int cmd_propagator(const RunConfig &cfg, const Flags &f) {
  const ChainParams p = chain(cfg, pick(f.n, cfg.n, 10));
  const PropagatorMatrix prop = propagator(p, cfg.t);
  if (cfg.format == "json") {
    write_text(cfg.out, io::propagator_json(prop));
  } else {
    Output out(cfg.out);
    io::write_propagator_csv(out.stream(), prop);
  }
  return 0;
}

int cmd_trace(const RunConfig &cfg, const Flags &f) {
  const auto enc = LogicalEncoding(encodings_or(cfg, {EncodingName::VacuumSinglet}).front());
  const int n = pick(f.n, cfg.n, 48);
  const BlochState bloch{pick(f.theta, cfg.theta, kPi), cfg.phi};
  const ChainParams p = chain(cfg, n);
  const ModeTable modes(p);
  const FidelityTrace trace =
      fidelity_trace(modes, logical_state(enc, bloch, Placement::Start, n), target_state(enc, bloch, n),
                     block_sites(enc, Placement::End, n), uniform_grid(0.0, cfg.t_max, cfg.t_step), cfg.prominence);
  const std::string peaks = io::peaks_json(trace.peaks);
  if (cfg.format == "json") {
    write_text(cfg.out, peaks);
  } else {
    Output out(cfg.out);
    io::write_trace_csv(out.stream(), trace);
  }
  write_summary(cfg, peaks);
  return 0;
}

int cmd_fig1(const RunConfig &cfg, const Flags &f) {
  SweepSpec spec = base_spec(cfg);
  spec.encodings = encodings_or(cfg, {EncodingName::TwoQubit, EncodingName::ThreeQubit1, EncodingName::ThreeQubit2,
                                      EncodingName::FourQubit});
  spec.n_values = n_range(cfg, f, 4, 50, spec.encodings);
  spec.thetas = {pick(f.theta, cfg.theta, kPi / 2.0)};
  spec.validate();
  emit_sweep(cfg, max_fidelity_vs_length(spec));
  return 0;
}

int cmd_fig2(const RunConfig &cfg, const Flags &f) {
  SweepSpec spec = base_spec(cfg);
  spec.encodings = encodings_or(cfg, {EncodingName::ThreeQubit1});
  spec.n_values = n_range(cfg, f, 6, 50, spec.encodings);
  spec.validate();
  emit_sweep(cfg, max_fidelity_surface(spec));
  return 0;
}

int cmd_fig3(const RunConfig &cfg, const Flags &f) {
  SweepSpec spec = base_spec(cfg);
  spec.encodings = encodings_or(cfg, {EncodingName::VacuumSinglet});
  spec.n_values = {pick(f.n, cfg.n, 48)};
  spec.thetas = {pick(f.theta, cfg.theta, kPi)};
  spec.h_values = {cfg.h_field};
  spec.validate();
  const auto traces = fidelity_site_traces(spec, cfg.sites, cfg.prominence);
  const std::string json = io::site_traces_json(traces);
  if (cfg.format == "json") {
    write_text(cfg.out, json);
  } else {
    Output out(cfg.out);
    io::write_site_traces_csv(out.stream(), traces);
  }
  write_summary(cfg, json);
  return 0;
}

int cmd_avg(const RunConfig &cfg, const Flags &f, bool range) {
  SweepSpec spec = base_spec(cfg);
  spec.encodings = encodings_or(cfg, {EncodingName::VacuumSinglet, EncodingName::SingleSpin});
  if (range) {
    spec.n_values = n_range(cfg, f, 5, 80, spec.encodings);
  } else {
    spec.n_values = {pick(f.n, cfg.n, 70)};
  }
  spec.validate();
  emit_sweep(cfg, avg_fidelity_vs_length(spec));
  return 0;
}

int cmd_memory(const RunConfig &cfg, const Flags &f) {
  const auto enc = LogicalEncoding(encodings_or(cfg, {EncodingName::VacuumSinglet}).front());
  const int n = pick(f.n, cfg.n, 48);
  const BlochState bloch{pick(f.theta, cfg.theta, kPi), cfg.phi};
  const ChainParams p = chain(cfg, n);
  std::vector<double> swaps = cfg.swap_times;
  if (swaps.empty()) {
    // Swap at the first few peaks of the end-block trace.
    const FidelityTrace trace =
        fidelity_trace(ModeTable(p), logical_state(enc, bloch, Placement::Start, n), target_state(enc, bloch, n),
                       block_sites(enc, Placement::End, n), uniform_grid(0.0, cfg.t_max, cfg.t_step), cfg.prominence);
    for (const auto &pk : trace.peaks) {
      if (static_cast<int>(swaps.size()) == cfg.swaps) break;
      swaps.push_back(pk.time);
    }
    if (swaps.empty()) throw ValidationError("no fidelity peaks in [0, t-max]; pass --swap-times");
  }
  const MemoryProtocolResult r =
      cfg.exact ? memory_protocol_exact(p, enc, bloch, swaps) : memory_protocol(p, enc, bloch, swaps);
  const std::string json = io::memory_json(r);
  if (cfg.format == "json") {
    write_text(cfg.out, json);
  } else {
    Output out(cfg.out);
    io::write_memory_csv(out.stream(), r);
  }
  write_summary(cfg, json);
  return 0;
}

int cmd_dual(const RunConfig &cfg, const Flags &f) {
  const int n = pick(f.n, cfg.n, 48);
  const BlochState bloch{pick(f.theta, cfg.theta, kPi / 2.0), cfg.phi};
  const ChainParams p = chain(cfg, n);
  const double t = pick(f.t, cfg.t, 25.0);
  const DualChainOutcome o = cfg.exact ? dual_chain_protocol_exact(p, bloch, t) : dual_chain_protocol(p, bloch, t);
  double total = 0.0;
  for (double x : o.outcome_probabilities) total += x;
  if (std::abs(total - 1.0) > 1e-10) throw InvariantError("chain-2 outcome probabilities do not sum to 1");
  const std::string json = io::dual_chain_json(o);
  if (cfg.format == "json") {
    write_text(cfg.out, json);
  } else {
    Output out(cfg.out);
    io::write_dual_chain_csv(out.stream(), o);
  }
  write_summary(cfg, json);
  return 0;
}

int cmd_verify(const RunConfig &cfg, const Flags &f) {
  const auto checks = run_oracle_checks(pick(f.n, cfg.n, 8), cfg.trials, cfg.seed);
  const std::string json = io::oracle_report_json(checks);
  if (cfg.format == "json") {
    write_text(cfg.out, json);
  } else {
    Output out(cfg.out);
    io::write_oracle_report_csv(out.stream(), checks);
  }
  write_summary(cfg, json);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const OracleCheck &c) { return c.passed; });
  if (!ok) std::cerr << "verify-oracle: at least one check exceeded its tolerance\n";
  return ok ? 0 : 2;
}

}  // namespace

int run(int argc, char **argv) {
  CLI::App app{"Magnon-picture quantum state transfer through XY spin chains", "magnon-chain"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Print help for every command");

  RunConfig cfg;
  Flags f{};
  f.n = app.add_option("--n", cfg.n, "chain length");
  f.n_min = app.add_option("--n-min", cfg.n_min, "smallest chain length in a sweep");
  f.n_max = app.add_option("--n-max", cfg.n_max, "largest chain length in a sweep");
  app.add_option("--j", cfg.j_xy, "XY coupling J")->capture_default_str();
  app.add_option("--jz", cfg.j_z, "Ising coupling (dense oracle only)")->capture_default_str();
  app.add_option("--h", cfg.h_field, "magnetic field h")->capture_default_str();
  f.encoding = app.add_option("--encoding", cfg.encodings,
                              "two-qubit | three-qubit-1 | three-qubit-2 | four-qubit | vacuum-singlet | single-spin")
                   ->delimiter(',');
  f.theta = app.add_option("--theta", cfg.theta, "Bloch polar angle (radians)");
  app.add_option("--phi", cfg.phi, "Bloch azimuth (radians)")->capture_default_str();
  f.t = app.add_option("--t", cfg.t, "evaluation time")->capture_default_str();
  f.t_max = app.add_option("--t-max", cfg.t_max, "end of the time grid")->capture_default_str();
  app.add_option("--t-step", cfg.t_step, "time grid step")->capture_default_str();
  app.add_option("--h-max", cfg.h_max, "end of the field grid")->capture_default_str();
  app.add_option("--h-step", cfg.h_step, "field grid step")->capture_default_str();
  app.add_option("--theta-step", cfg.theta_step, "theta grid step")->capture_default_str();
  app.add_option("--sites", cfg.sites, "receiving-block end sites for fig3")->delimiter(',');
  f.swap_times = app.add_option("--swap-times", cfg.swap_times, "memory-protocol swap times")->delimiter(',');
  app.add_option("--swaps", cfg.swaps, "number of trace peaks used as swap times")->capture_default_str();
  app.add_option("--prominence", cfg.prominence, "peak prominence")->capture_default_str();
  app.add_option("--trials", cfg.trials, "random trials per oracle check")->capture_default_str();
  app.add_option("--seed", cfg.seed, "oracle-check RNG seed")->capture_default_str();
  app.add_flag("--no-refine", cfg.no_refine, "report raw grid maxima");
  app.add_flag("--exact", cfg.exact, "run protocols with the dense oracle");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--summary", cfg.summary, "JSON summary file");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  struct Command {
    const char *name;
    const char *help;
    std::function<int()> fn;
  };
  const std::vector<Command> commands = {
      {"propagator", "single-magnon propagator f_{j,l}(t)", [&] { return cmd_propagator(cfg, f); }},
      {"trace", "fidelity trace on the end block", [&] { return cmd_trace(cfg, f); }},
      {"fig1", "maximum fidelity vs chain length per encoding", [&] { return cmd_fig1(cfg, f); }},
      {"fig2", "maximum fidelity over chain length and theta", [&] { return cmd_fig2(cfg, f); }},
      {"fig3", "fidelity traces on every receiving block", [&] { return cmd_fig3(cfg, f); }},
      {"fig4", "optimised average fidelity vs chain length", [&] { return cmd_avg(cfg, f, true); }},
      {"avg-fidelity", "optimised average fidelity at one chain length", [&] { return cmd_avg(cfg, f, false); }},
      {"protocol-memory", "repeated swap-to-memory protocol", [&] { return cmd_memory(cfg, f); }},
      {"protocol-dual", "dual-chain confirmation protocol", [&] { return cmd_dual(cfg, f); }},
      {"verify-oracle", "analytic engine vs dense oracle", [&] { return cmd_verify(cfg, f); }},
  };
  for (const auto &c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    for (const auto &c : commands) {
      if (app.got_subcommand(c.name)) return c.fn();
    }
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace magnon::cli
