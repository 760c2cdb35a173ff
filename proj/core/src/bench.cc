#include "winarith/bench.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "winarith/arithmetic.h"
#include "winarith/errors.h"
#include "winarith/sim_state.h"
#include "winarith/windowed.h"

namespace winarith {
namespace {

BigInt random_bits(std::mt19937_64& rng, std::size_t bits) {
  BigInt v = 0;
  for (std::size_t done = 0; done < bits; done += 64) {
    v |= BigInt(rng()) << done;
  }
  return low_bits(v, bits);
}

BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
  const std::size_t bits = bit_length(bound);
  while (true) {
    BigInt v = random_bits(rng, bits);
    if (v < bound) return v;
  }
}

bool is_product_add(Construction c) {
  return c == Construction::kProductAddClassical || c == Construction::kProductAddQubit ||
         c == Construction::kProductAddWindowed;
}

OpDescriptor descriptor_for(const BenchInstance& inst, const RunSpec& spec) {
  OpDescriptor op;
  op.construction = spec.op;
  op.n = inst.n;
  op.w = spec.w;
  op.w_e = spec.w_e;
  op.n_e = inst.n_e;
  if (is_product_add(spec.op)) {
    op.k = inst.k;
  } else if (spec.op == Construction::kTimesEqualWindowed) {
    op.k = inst.k | 1;
  } else {
    op.k = inst.k_mod;
    op.modulus = inst.modulus;
  }
  return op;
}

void load(SimState& sim, const Quint& q, const BigInt& v) { sim.xor_constant(q, v); }

// Clears a register known to hold v and releases it.
void unload(SimState& sim, const Quint& q, const BigInt& v) {
  sim.xor_constant(q, v);
  sim.qfree(q);
}

}  // namespace

std::size_t default_instance_count(std::size_t n) {
  std::size_t blocks = std::max<std::size_t>(1, (n + 15) / 16);
  return std::max<std::size_t>(1, 64 / blocks);
}

BenchInstance make_instance(std::size_t n, std::uint64_t seed, std::optional<std::size_t> n_e) {
  if (n == 0) throw PreconditionError("instances need n >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n)};
  std::mt19937_64 rng(seq);
  BenchInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.n_e = n_e.value_or(2 * n);
  inst.k = random_bits(rng, n);
  inst.y0 = random_bits(rng, n);
  inst.t0 = random_bits(rng, 2 * n);
  if (n >= 2) {
    inst.modulus = random_bits(rng, n) | pow2(n - 1) | 1;
    do {
      inst.k_mod = uniform_below(rng, inst.modulus);
    } while (inst.k_mod == 0 || gcd(inst.k_mod, inst.modulus) != 1);
    inst.x_mod = uniform_below(rng, inst.modulus);
    inst.y_mod = uniform_below(rng, inst.modulus);
    inst.exponent = random_bits(rng, inst.n_e);
  }
  return inst;
}

std::vector<BenchInstance> gen_instances(std::size_t n, std::size_t count, std::uint64_t seed,
                                         std::optional<std::size_t> n_e) {
  std::vector<BenchInstance> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(make_instance(n, seed + j, n_e));
  return out;
}

const std::vector<Construction>& bench_ops() {
  static const std::vector<Construction> ops{
      Construction::kProductAddClassical,   Construction::kProductAddQubit,
      Construction::kProductAddWindowed,    Construction::kTimesEqualWindowed,
      Construction::kProductAddModWindowed, Construction::kTimesEqualModWindowed,
      Construction::kModExpWindowed,
  };
  return ops;
}

bool is_bench_op(Construction c) {
  const auto& ops = bench_ops();
  return std::find(ops.begin(), ops.end(), c) != ops.end();
}

std::string replay_command(const BenchInstance& instance, const RunSpec& spec) {
  std::ostringstream out;
  out << "winarith verify --op " << construction_name(spec.op) << " --n " << instance.n;
  if (uses_window(spec.op)) out << " --window " << spec.w;
  if (uses_exponent(spec.op)) out << " --window-e " << spec.w_e << " --n-e " << instance.n_e;
  out << " --seed " << instance.seed;
  return out.str();
}

RunResult run_instance(const BenchInstance& inst, const RunSpec& spec) {
  if (!is_bench_op(spec.op)) {
    throw PreconditionError("not a benchmark construction: " + std::string(construction_name(spec.op)));
  }
  if (is_modular(spec.op) && inst.n < 2) {
    throw PreconditionError("modular constructions need n >= 2");
  }
  SimState sim(inst.seed);
  sim.set_checks(spec.checks);
  const std::size_t n = inst.n;
  RunResult result;
  bool inputs_intact = true;

  if (is_product_add(spec.op)) {
    Quint target = sim.qalloc(2 * n, "target");
    Quint y = sim.qalloc(n, "y");
    load(sim, target, inst.t0);
    load(sim, y, inst.y0);
    switch (spec.op) {
      case Construction::kProductAddClassical:
        plus_equal_product_classical_iter(sim, target, inst.k, y);
        break;
      case Construction::kProductAddQubit:
        plus_equal_product_qubit_iter(sim, target, inst.k, y);
        break;
      default:
        plus_equal_product_windowed(sim, target, inst.k, y, spec.w);
        break;
    }
    result.expected = low_bits(inst.t0 + inst.k * inst.y0, 2 * n);
    result.actual = sim.read(target);
    inputs_intact = sim.read(y) == inst.y0;
    unload(sim, y, sim.read(y));
    unload(sim, target, result.actual);
  } else if (spec.op == Construction::kTimesEqualWindowed) {
    Quint target = sim.qalloc(n, "target");
    load(sim, target, inst.y0);
    const BigInt k = inst.k | 1;
    times_equal_windowed(sim, target, k, spec.w);
    result.expected = low_bits(inst.y0 * k, n);
    result.actual = sim.read(target);
    unload(sim, target, result.actual);
  } else {
    const BigInt& N = inst.modulus;
    QuintMod target = sim.qalloc_mod(N, "target");
    load(sim, target.reg, inst.x_mod);
    switch (spec.op) {
      case Construction::kProductAddModWindowed: {
        Quint y = sim.qalloc(n, "y");
        load(sim, y, inst.y_mod);
        plus_equal_product_mod_windowed(sim, target, inst.k_mod, y, spec.w);
        result.expected = (inst.x_mod + inst.k_mod * inst.y_mod) % N;
        inputs_intact = sim.read(y) == inst.y_mod;
        unload(sim, y, sim.read(y));
        break;
      }
      case Construction::kTimesEqualModWindowed:
        times_equal_mod_windowed(sim, target, inst.k_mod, spec.w);
        result.expected = (inst.x_mod * inst.k_mod) % N;
        break;
      default: {
        Quint e = sim.qalloc(inst.n_e, "exponent");
        load(sim, e, inst.exponent);
        times_equal_exp_mod(sim, target, inst.k_mod, e, WindowConfig{spec.w, spec.w_e});
        result.expected = (inst.x_mod * pow_mod(inst.k_mod, inst.exponent, N)) % N;
        inputs_intact = sim.read(e) == inst.exponent;
        unload(sim, e, sim.read(e));
        break;
      }
    }
    result.actual = sim.read(target.reg);
    unload(sim, target.reg, result.actual);
  }

  result.traced = sim.tally();
  result.predicted = predict(descriptor_for(inst, spec));
  result.ok = inputs_intact && result.expected == result.actual && sim.live_qubits() == 0;
  return result;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  struct Task {
    BenchInstance instance;
    RunSpec spec;
    SweepRow row;
  };
  std::vector<Task> tasks;
  for (Construction op : config.ops) {
    if (!is_bench_op(op)) {
      throw PreconditionError("not a benchmark construction: " + std::string(construction_name(op)));
    }
    for (std::size_t n : config.sizes) {
      std::vector<std::uint64_t> seeds = config.seeds;
      if (seeds.empty()) {
        for (std::size_t s = 1; s <= default_instance_count(n); ++s) seeds.push_back(s);
      }
      std::optional<std::size_t> n_e;
      if (uses_exponent(op)) n_e = config.n_e.value_or(2 * n);

      std::vector<std::pair<std::size_t, std::size_t>> windows;
      if (!uses_window(op)) {
        windows.push_back({1, 1});
      } else if (config.windows.empty()) {
        WindowChoice best = optimize_window(op, n, n_e);
        windows.push_back({best.w, best.w_e});
      } else {
        const auto& wes = config.windows_e.empty() ? config.windows : config.windows_e;
        for (std::size_t we : uses_exponent(op) ? wes : std::vector<std::size_t>{1}) {
          for (std::size_t w : config.windows) windows.push_back({w, we});
        }
      }

      for (const auto& [w, we] : windows) {
        for (std::uint64_t seed : seeds) {
          Task task;
          task.instance = make_instance(n, seed, n_e);
          task.spec = RunSpec{op, w, we, false};
          task.row.op = op;
          task.row.n = n;
          task.row.seed = seed;
          if (uses_window(op)) task.row.w = w;
          if (uses_exponent(op)) {
            task.row.w_e = we;
            task.row.n_e = n_e;
          }
          tasks.push_back(std::move(task));
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      Task& task = tasks[i];
      try {
        RunResult r = run_instance(task.instance, task.spec);
        if (!r.ok) {
          throw OracleMismatch("oracle mismatch: expected " + r.expected.str() + ", got " + r.actual.str(),
                               replay_command(task.instance, task.spec));
        }
        task.row.traced = r.traced;
        task.row.predicted_toffolis = r.predicted.toffolis;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::size_t threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  std::vector<SweepRow> rows;
  rows.reserve(tasks.size());
  for (auto& task : tasks) rows.push_back(task.row);
  return rows;
}

std::string_view csv_header() {
  return "op,n,n_e,w,w_e,seed,toffolis,ancilla_high_water,measurements,lookups,predicted_toffolis";
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    out << construction_name(r.op) << ',' << r.n << ',' << opt(r.n_e) << ',' << opt(r.w) << ',' << opt(r.w_e)
        << ',' << r.seed << ',' << r.traced.toffolis << ',' << r.traced.ancilla_high_water << ','
        << r.traced.measurements << ',' << r.traced.lookups << ',' << r.predicted_toffolis << '\n';
  }
}

}  // namespace winarith
