// qbnets: inequality batches, entropies of serialized states, the Holevo
// demo and the roots-of-unity suite.
//
// Exit codes: 0 pass, 1 claim failure, 2 configuration or parse error,
// 3 data invariant violated by an input file.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qbnets/holevo.hpp"
#include "qbnets/inequalities.hpp"
#include "qbnets/io.hpp"
#include "qbnets/purestate.hpp"
#include "qbnets/rum.hpp"

namespace {

using namespace qbnets;
using io::Json;

enum Exit : int { kPass = 0, kClaimFailure = 1, kConfigError = 2, kDataInvariant = 3 };

struct Output {
  std::string format = "json";
  std::string path;
};

std::string sci(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fixed4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

void emit(const Output& out, const Json& report, const std::string& table) {
  const std::string text = out.format == "table" ? table : report.dump(2) + "\n";
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + out.path + "'");
  f << text;
}

Json report_header(const char* command) {
  Json j;
  j["schema"] = io::kReportSchema;
  j["command"] = command;
  return j;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownLabel: return kConfigError;
    case ErrorKind::InvalidState:
    case ErrorKind::InvalidChannel:
    case ErrorKind::InvalidNet:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ShapeMismatch: return kDataInvariant;
  }
  return kClaimFailure;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct CheckConfig {
  std::string ids = "all";
  std::size_t trials = 100;
  std::string dims;
  Seed seed = 1;
};

int cmd_check(const CheckConfig& cfg, const Output& out) {
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be >= 1");
  std::vector<InequalityId> ids;
  if (cfg.ids == "all") {
    for (const auto& e : inequality_registry()) ids.push_back(e.id);
  } else {
    for (const auto& name : split(cfg.ids, ',')) ids.push_back(parse_inequality_id(name));
  }
  if (ids.empty()) throw Error(ErrorKind::InvalidArgument, "no inequality ids selected");
  std::vector<std::size_t> dims;
  for (const auto& d : split(cfg.dims, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(d, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != d.size() || v < 2) throw Error(ErrorKind::InvalidArgument, "--dims entries must be integers >= 2");
    dims.push_back(v);
  }

  Json report = report_header("check");
  report["seed"] = cfg.seed;
  report["trials"] = cfg.trials;
  report["dims"] = dims;
  Json results = Json::array();
  std::ostringstream table;
  table << pad("id", 22) << lpad("trials", 8) << lpad("passed", 8) << lpad("min_margin", 12) << "\n";
  bool all_pass = true;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto batch = run_batch(ids[k], cfg.trials, dims, derive_seed(cfg.seed, k));
    all_pass = all_pass && batch.passed == batch.trials;
    results.push_back(io::to_json(batch));
    table << pad(std::string(to_string(batch.id)), 22) << lpad(std::to_string(batch.trials), 8)
          << lpad(std::to_string(batch.passed), 8) << lpad(sci(batch.min_margin), 12) << "\n";
  }
  report["results"] = results;

  Json counter = Json::array();
  std::size_t failed_as_expected = 0;
  const auto suite = counterexample_suite();
  for (const auto& v : suite) {
    if (!v.holds) ++failed_as_expected;
    counter.push_back(io::to_json(v));
  }
  report["counterexamples"] = counter;
  const bool counter_ok = failed_as_expected == suite.size();
  report["counterexamples_fail_as_expected"] = counter_ok;
  report["all_pass"] = all_pass && counter_ok;
  table << "counterexamples failing as expected: " << failed_as_expected << "/" << suite.size() << "\n";
  table << (all_pass && counter_ok ? "PASS" : "FAIL") << "\n";
  emit(out, report, table.str());
  return all_pass && counter_ok ? kPass : kClaimFailure;
}

// ---------------------------------------------------------------------------

struct EntropyConfig {
  std::string state_file;
  std::vector<std::string> quantities;
  std::string partition;
};

int cmd_entropy(const EntropyConfig& cfg, const Output& out) {
  const auto state = io::state_from_json(io::read_file(cfg.state_file));
  std::vector<Quantity> qs;
  for (const auto& q : cfg.quantities) qs.push_back(Quantity::parse(q));
  if (qs.empty()) qs.push_back(Quantity::entropy(state.layout().labels()));

  Json report = report_header("entropy");
  report["state"] = cfg.state_file;
  Json values = Json::array();
  std::ostringstream table;
  table << pad("quantity", 24) << lpad("nats", 12) << lpad("bits", 12) << "\n";
  for (const auto& q : qs) {
    const double nats = quantum_entropy(q, state);
    values.push_back({{"quantity", q.to_string()}, {"nats", nats}, {"bits", nats_to_bits(nats)}});
    table << pad(q.to_string(), 24) << lpad(fixed4(nats), 12) << lpad(fixed4(nats_to_bits(nats)), 12) << "\n";
  }
  report["quantities"] = values;

  int code = kPass;
  if (!cfg.partition.empty()) {
    std::vector<std::vector<std::string>> blocks;
    for (const auto& b : split(cfg.partition, '|')) blocks.push_back(split(b, ','));
    Json ids = Json::array();
    std::size_t failed = 0;
    const auto verdicts = check_pure_identities(state, blocks);
    for (const auto& v : verdicts) {
      if (!v.holds) ++failed;
      ids.push_back(io::to_json(v));
    }
    report["pure_identities"] = ids;
    table << "pure-state identities holding: " << verdicts.size() - failed << "/" << verdicts.size() << "\n";
    if (failed) code = kClaimFailure;
  }
  emit(out, report, table.str());
  return code;
}

// ---------------------------------------------------------------------------

struct HolevoConfig {
  std::string preset;
  std::string ensemble_file;
  std::size_t samples = 50;
  Seed seed = 1;
};

Ensemble preset_ensemble(const std::string& name) {
  const SubsystemLayout q{{"q", 2}};
  ComplexVector zero = ComplexVector::Unit(2, 0);
  ComplexVector one = ComplexVector::Unit(2, 1);
  RealVector half = RealVector::Constant(2, 0.5);
  if (name == "orthogonal") {
    return Ensemble(half, {LabeledState::from_ket(q, zero), LabeledState::from_ket(q, one)});
  }
  if (name == "zero-plus") {
    ComplexVector plus = (zero + one) / std::numbers::sqrt2;
    return Ensemble(half, {LabeledState::from_ket(q, zero), LabeledState::from_ket(q, plus)});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown preset '" + name + "' (orthogonal, zero-plus)");
}

int cmd_holevo(const HolevoConfig& cfg, const Output& out) {
  if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "--samples must be >= 1");
  if (cfg.preset.empty() == cfg.ensemble_file.empty()) {
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --preset and --ensemble");
  }
  const Ensemble e =
      cfg.preset.empty() ? io::ensemble_from_json(io::read_file(cfg.ensemble_file)) : preset_ensemble(cfg.preset);
  const auto r = check_holevo_bound(e, cfg.samples, cfg.seed);
  const double gap = r.holevo - r.accessible.best;

  Json report = report_header("holevo-demo");
  report["seed"] = cfg.seed;
  report["hol"] = r.holevo;
  report["acc_lower_bound"] = r.accessible.best;
  report["samples"] = cfg.samples;
  report["gap"] = gap;
  report["best_index"] = r.accessible.best_index;
  Json per = Json::array();
  for (double v : r.accessible.per_sample) per.push_back(v);
  report["per_sample"] = per;
  report["violations"] = r.violations;
  report["holds"] = r.verdict.holds;

  std::ostringstream table;
  table << "Hol              " << fixed4(r.holevo) << " nats\n"
        << "Acc lower bound  " << fixed4(r.accessible.best) << " nats\n"
        << "gap              " << sci(gap) << "\n"
        << "measurements     " << r.accessible.per_sample.size() << " (violations " << r.violations << ")\n"
        << (r.verdict.holds ? "PASS" : "FAIL") << "\n";
  emit(out, report, table.str());
  return r.verdict.holds ? kPass : kClaimFailure;
}

// ---------------------------------------------------------------------------

int cmd_rum(long long n, const Output& out) {
  if (n < 1 || n > static_cast<long long>(kRumMaxParties)) {
    throw Error(ErrorKind::InvalidArgument, "--n must lie in 1.." + std::to_string(kRumMaxParties));
  }
  const RumSystem sys(static_cast<std::size_t>(n));
  const auto suite = rum_check_suite(sys);
  const auto table_values = rum_entropy_table(sys);
  Json report = report_header("rum");
  report.update(io::to_json(suite, table_values));

  std::ostringstream table;
  table << pad("subset", 40) << lpad("S", 12) << "\n";
  for (std::size_t mask = 1; mask < table_values.size(); ++mask) {
    std::string name = "{";
    for (std::size_t j = 0; j < sys.n; ++j) {
      if (mask & (std::size_t{1} << j)) name += (name.size() > 1 ? "," : "") + std::to_string(j + 1);
    }
    table << pad(name + "}", 40) << lpad(fixed4(table_values[mask]), 12) << "\n";
  }
  for (const auto& v : suite.verdicts) {
    table << pad(v.id, 26) << pad(v.relation, 40) << lpad(sci(v.margin), 12) << (v.holds ? "  ok" : "  FAIL") << "\n";
  }
  table << "complement " << suite.complement_checks << ", triangle " << suite.triangle_checks
        << ", negative conditionals " << suite.negative_conditionals << ", failures " << suite.failures << "\n";
  emit(out, report, table.str());
  return suite.all_hold() ? kPass : kClaimFailure;
}

Seed default_seed() {
  if (const char* env = std::getenv("QBNETS_SEED")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidArgument, "QBNETS_SEED must be an unsigned integer");
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy inequality checks for quantum Bayesian nets"};
  app.require_subcommand(1);
  Output out;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--out", out.path, "Write the report to this file instead of stdout");
  };

  Seed env_seed = 1;
  try {
    env_seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  CheckConfig check;
  check.seed = env_seed;
  long long trials = static_cast<long long>(check.trials);
  auto* check_cmd = app.add_subcommand("check", "Run seeded batches of inequality checkers");
  check_cmd->add_option("--ids", check.ids, "Comma-separated inequality ids, or 'all'");
  check_cmd->add_option("--trials", trials, "Random instances per id");
  check_cmd->add_option("--dims", check.dims, "Comma-separated per-subsystem dimensions (each >= 2)");
  check_cmd->add_option("--seed", check.seed, "Base seed (default $QBNETS_SEED or 1)");
  add_output(check_cmd);

  EntropyConfig entropy;
  auto* entropy_cmd = app.add_subcommand("entropy", "Entropies of a serialized state");
  entropy_cmd->add_option("--state", entropy.state_file, "State JSON file")->required();
  entropy_cmd->add_option("--quantity,-q", entropy.quantities, "Quantity such as 'S(a:b|c)'; repeatable");
  entropy_cmd->add_option("--partition", entropy.partition,
                          "Blocks for the pure-state identities, e.g. 'a|b,c|d'");
  add_output(entropy_cmd);

  HolevoConfig holevo;
  holevo.seed = env_seed;
  long long samples = static_cast<long long>(holevo.samples);
  auto* holevo_cmd = app.add_subcommand("holevo-demo", "Holevo information versus sampled measurements");
  holevo_cmd->add_option("--preset", holevo.preset, "orthogonal or zero-plus");
  holevo_cmd->add_option("--ensemble", holevo.ensemble_file, "Ensemble JSON file");
  holevo_cmd->add_option("--samples", samples, "Random projective measurements");
  holevo_cmd->add_option("--seed", holevo.seed, "Seed (default $QBNETS_SEED or 1)");
  add_output(holevo_cmd);

  long long n = 0;
  auto* rum_cmd = app.add_subcommand("rum", "Exhaustive roots-of-unity model suite");
  rum_cmd->add_option("--n", n, "Number of parties (1..16)")->required();
  add_output(rum_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*check_cmd) {
      if (trials < 1) throw Error(ErrorKind::InvalidArgument, "--trials must be >= 1");
      check.trials = static_cast<std::size_t>(trials);
      return cmd_check(check, out);
    }
    if (*entropy_cmd) return cmd_entropy(entropy, out);
    if (*holevo_cmd) {
      if (samples < 1) throw Error(ErrorKind::InvalidArgument, "--samples must be >= 1");
      holevo.samples = static_cast<std::size_t>(samples);
      return cmd_holevo(holevo, out);
    }
    if (*rum_cmd) return cmd_rum(n, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return kConfigError;
}
