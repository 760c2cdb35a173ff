// winarith: verify, trace, sweep and optimize windowed arithmetic circuits.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "winarith/bench.h"
#include "winarith/cost_model.h"
#include "winarith/errors.h"

namespace {

using namespace winarith;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_uint(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("not a non-negative integer: '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw UsageError("integer out of range: '" + text + "'");
  }
}

// "a,b,c" or "lo..hi". Ranges step by +1, or double when `doubling` is set.
std::vector<std::uint64_t> parse_list(const std::string& text, bool doubling) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    std::uint64_t lo = parse_uint(text.substr(0, dots));
    std::uint64_t hi = parse_uint(text.substr(dots + 2));
    if (hi < lo || (doubling && lo == 0)) throw UsageError("malformed range: '" + text + "'");
    for (std::uint64_t v = lo; v <= hi; v = doubling ? v * 2 : v + 1) {
      out.push_back(v);
      if (v == hi) break;
    }
    return out;
  }
  std::stringstream in(text);
  std::string item;
  std::vector<std::string> items;
  while (std::getline(in, item, ',')) items.push_back(item);
  if (text.back() == ',') throw UsageError("malformed list: '" + text + "'");
  // "a,b,...,c" continues the step (b = 2a doubles, otherwise b - a).
  if (items.size() == 4 && items[2] == "...") {
    std::uint64_t a = parse_uint(items[0]);
    std::uint64_t b = parse_uint(items[1]);
    std::uint64_t c = parse_uint(items[3]);
    if (b <= a || c < b) throw UsageError("malformed list: '" + text + "'");
    for (std::uint64_t v = a; v <= c; v = (b == 2 * a) ? v * 2 : v + (b - a)) out.push_back(v);
    if (out.back() != c) throw UsageError("list does not reach its end value: '" + text + "'");
    return out;
  }
  for (const auto& i : items) out.push_back(parse_uint(i));
  return out;
}

std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

Construction parse_bench_op(const std::string& name) {
  Construction c = parse_construction(name);
  if (!is_bench_op(c)) throw UsageError("not a benchmark construction: " + name);
  return c;
}

struct RunOptions {
  std::string op;
  std::size_t n = 0;
  std::optional<std::size_t> window;
  std::optional<std::size_t> window_e;
  std::optional<std::size_t> n_e;
  std::uint64_t seed = 1;
};

void add_run_options(CLI::App* cmd, RunOptions& opt, bool seed_required) {
  cmd->add_option("--op", opt.op, "Construction name")->required();
  cmd->add_option("--n", opt.n, "Factor size in bits")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--window", opt.window, "Multiplication window (default: optimized)")->check(CLI::PositiveNumber);
  cmd->add_option("--window-e", opt.window_e, "Exponent window (default: optimized)")->check(CLI::PositiveNumber);
  cmd->add_option("--n-e", opt.n_e, "Exponent length (default: 2n)");
  auto* seed = cmd->add_option("--seed", opt.seed, "Instance seed");
  if (seed_required) seed->required();
}

// Resolves unset windows with the optimizer.
RunSpec resolve(const RunOptions& opt, Construction op, const BenchInstance& inst) {
  RunSpec spec{op, 1, 1, true};
  if (uses_window(op)) {
    WindowChoice best = optimize_window(op, opt.n, inst.n_e);
    spec.w = opt.window.value_or(best.w);
    spec.w_e = opt.window_e.value_or(best.w_e);
  }
  return spec;
}

void print_windows(std::ostream& out, const RunSpec& spec, const BenchInstance& inst) {
  if (uses_window(spec.op)) out << " w=" << spec.w;
  if (uses_exponent(spec.op)) out << " w_e=" << spec.w_e << " n_e=" << inst.n_e;
}

int cmd_verify(const RunOptions& opt) {
  Construction op = parse_bench_op(opt.op);
  BenchInstance inst = make_instance(opt.n, opt.seed, opt.n_e);
  RunSpec spec = resolve(opt, op, inst);
  RunResult r = run_instance(inst, spec);
  std::cout << construction_name(op) << " n=" << opt.n;
  print_windows(std::cout, spec, inst);
  std::cout << " seed=" << opt.seed << "\n";
  std::cout << "expected=" << r.expected << " actual=" << r.actual << "\n";
  std::cout << "traced: " << r.traced << "\n";
  std::cout << "predicted_toffolis=" << r.predicted.toffolis << "\n";
  if (!r.ok) {
    std::cout << "MISMATCH\nreplay: " << replay_command(inst, spec) << "\n";
    return kExitMismatch;
  }
  if (r.traced.toffolis != r.predicted.toffolis) {
    std::cout << "PREDICTOR MISMATCH\n";
    return kExitMismatch;
  }
  std::cout << "OK\n";
  return kExitOk;
}

int cmd_trace(const RunOptions& opt) {
  Construction op = parse_bench_op(opt.op);
  BenchInstance inst = make_instance(opt.n, opt.seed, opt.n_e);
  RunSpec spec = resolve(opt, op, inst);
  RunResult r = run_instance(inst, spec);
  OpDescriptor desc;
  desc.construction = op;
  desc.n = inst.n;
  desc.n_e = inst.n_e;
  desc.w = spec.w;
  desc.w_e = spec.w_e;
  if (op == Construction::kProductAddClassical || op == Construction::kProductAddQubit ||
      op == Construction::kProductAddWindowed) {
    desc.k = inst.k;
  } else if (op == Construction::kTimesEqualWindowed) {
    desc.k = inst.k | 1;
  } else {
    desc.k = inst.k_mod;
    desc.modulus = inst.modulus;
  }
  Prediction p = predict_detailed(desc);
  std::cout << construction_name(op) << " n=" << opt.n;
  print_windows(std::cout, spec, inst);
  std::cout << " seed=" << opt.seed << (r.ok ? " oracle=ok" : " oracle=MISMATCH") << "\n";
  std::cout << "traced:    " << r.traced << "\n";
  std::cout << "predicted: " << p.tally << "\n";
  std::cout << std::left << std::setw(40) << "term" << std::right << std::setw(8) << "repeat" << std::setw(12)
            << "lookup" << std::setw(12) << "add" << std::setw(12) << "unlookup" << std::setw(14) << "toffolis"
            << "\n";
  for (const auto& t : p.terms) {
    std::cout << std::left << std::setw(40) << t.label << std::right << std::setw(8) << t.repeat << std::setw(12)
              << t.lookup << std::setw(12) << t.add << std::setw(12) << t.unlookup << std::setw(14) << t.toffolis()
              << "\n";
  }
  return r.ok && r.traced.toffolis == p.tally.toffolis ? kExitOk : kExitMismatch;
}

struct SweepOptions {
  std::string ops;
  std::string sizes;
  std::string windows = "auto";
  std::string windows_e;
  std::optional<std::string> seeds;
  std::optional<std::size_t> n_e;
  std::size_t threads = 0;
  std::string out = "-";
};

int cmd_sweep(const SweepOptions& opt) {
  SweepConfig config;
  std::stringstream names(opt.ops);
  std::string name;
  while (std::getline(names, name, ',')) config.ops.push_back(parse_bench_op(name));
  if (config.ops.empty()) throw UsageError("--ops is empty");
  config.sizes = to_sizes(parse_list(opt.sizes, true));
  if (opt.windows != "auto") {
    config.windows = to_sizes(parse_list(opt.windows, false));
    if (config.windows.empty()) throw UsageError("--windows is empty");
  }
  if (!opt.windows_e.empty()) {
    if (opt.windows == "auto") throw UsageError("--windows-e needs an explicit --windows list");
    config.windows_e = to_sizes(parse_list(opt.windows_e, false));
  }
  for (std::size_t w : config.windows) {
    if (w == 0) throw UsageError("windows must be >= 1");
  }
  for (std::size_t w : config.windows_e) {
    if (w == 0) throw UsageError("windows must be >= 1");
  }
  if (opt.seeds) {
    config.seeds = parse_list(*opt.seeds, false);
    if (config.seeds.empty()) throw UsageError("--seeds selects no seeds");
  }
  for (std::size_t n : config.sizes) {
    if (n == 0) throw UsageError("sizes must be >= 1");
    for (Construction c : config.ops) {
      if (is_modular(c) && n < 2) throw UsageError("modular constructions need n >= 2");
    }
  }
  config.n_e = opt.n_e;
  config.threads = opt.threads;

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (opt.out != "-") {
    file.open(opt.out, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write " + opt.out);
    out = &file;
  }
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(config);
  } catch (const OracleMismatch& e) {
    std::cerr << e.what() << "\nreplay: " << e.replay() << "\n";
    return kExitMismatch;
  }
  write_csv(*out, rows);
  out->flush();
  if (!*out) throw UsageError("failed writing " + opt.out);
  for (const auto& row : rows) {
    if (row.traced.toffolis != row.predicted_toffolis) {
      std::cerr << "predictor mismatch in " << construction_name(row.op) << " n=" << row.n << "\n";
      return kExitMismatch;
    }
  }
  return kExitOk;
}

struct OptimizeOptions {
  std::string op;
  std::size_t n = 0;
  std::optional<std::size_t> n_e;
};

int cmd_optimize(const OptimizeOptions& opt) {
  Construction op = parse_construction(opt.op);
  if (!uses_window(op)) throw UsageError(opt.op + " has no window to optimize");
  WindowChoice best = optimize_window(op, opt.n, opt.n_e);
  const std::size_t n_e = opt.n_e.value_or(2 * opt.n);
  std::cout << construction_name(op) << " n=" << opt.n;
  if (uses_exponent(op)) std::cout << " n_e=" << n_e;
  std::cout << "\nbest w=" << best.w;
  if (uses_exponent(op)) std::cout << " w_e=" << best.w_e;
  std::cout << " toffolis=" << best.toffolis << "\n";
  std::cout << std::setw(4) << "w";
  if (uses_exponent(op)) std::cout << std::setw(6) << "w_e";
  std::cout << std::setw(16) << "toffolis" << "\n";
  OpDescriptor desc;
  desc.construction = op;
  desc.n = opt.n;
  desc.n_e = n_e;
  for (std::size_t w = 1; w <= 20; ++w) {
    desc.w = w;
    std::uint64_t cost = 0;
    std::size_t best_we = 1;
    if (uses_exponent(op)) {
      // Best exponent window for this multiplication window.
      cost = UINT64_MAX;
      for (std::size_t we = 1; we <= 20; ++we) {
        desc.w_e = we;
        std::uint64_t c = predict(desc).toffolis;
        if (c < cost) {
          cost = c;
          best_we = we;
        }
      }
    } else {
      cost = predict(desc).toffolis;
    }
    std::cout << std::setw(4) << w;
    if (uses_exponent(op)) std::cout << std::setw(6) << best_we;
    std::cout << std::setw(16) << cost << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Windowed quantum arithmetic: verify, trace, sweep and optimize."};
  app.require_subcommand(1);

  RunOptions verify_opt;
  add_run_options(app.add_subcommand("verify", "Run one instance against its big-integer oracle"), verify_opt, true);
  RunOptions trace_opt;
  add_run_options(app.add_subcommand("trace", "Print traced and predicted costs per window"), trace_opt, false);

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Cost sweep to CSV");
  sweep->add_option("--ops", sweep_opt.ops, "Comma-separated construction names")->required();
  sweep->add_option("--sizes", sweep_opt.sizes, "Comma list or lo..hi (doubling)")->required();
  sweep->add_option("--windows", sweep_opt.windows, "'auto', comma list or lo..hi");
  sweep->add_option("--windows-e", sweep_opt.windows_e, "Exponent windows (default: --windows)");
  sweep->add_option("--seeds", sweep_opt.seeds, "Comma list or lo..hi (default: 1..max(1, 64/ceil(n/16)))");
  sweep->add_option("--n-e", sweep_opt.n_e, "Exponent length for modexp (default: 2n)");
  sweep->add_option("--threads", sweep_opt.threads, "Worker threads (default: hardware)");
  sweep->add_option("--out", sweep_opt.out, "Output CSV path, '-' for stdout");

  OptimizeOptions optimize_opt;
  auto* optimize = app.add_subcommand("optimize", "Predicted cost per window and the argmin");
  optimize->add_option("--op", optimize_opt.op, "Construction name")->required();
  optimize->add_option("--n", optimize_opt.n, "Factor size in bits")->required()->check(CLI::PositiveNumber);
  optimize->add_option("--n-e", optimize_opt.n_e, "Exponent length (default: 2n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("verify")) return cmd_verify(verify_opt);
    if (app.got_subcommand("trace")) return cmd_trace(trace_opt);
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_opt);
    return cmd_optimize(optimize_opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownConstruction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TableTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonZeroRelease& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitMismatch;
  }
}
