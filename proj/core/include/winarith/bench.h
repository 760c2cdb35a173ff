#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "winarith/big_int.h"
#include "winarith/cost_model.h"
#include "winarith/cost_tally.h"

namespace winarith {

/// Random problem of factor size n, reproducible from (n, seed).
///
/// k, y0 are n-bit and t0 is 2n-bit (product additions). Modular operations
/// use modulus (odd, top bit set), k_mod coprime to it, x_mod, y_mod < modulus
/// and an n_e-bit exponent; these are only filled for n >= 2.
struct BenchInstance {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  BigInt k;
  BigInt y0;
  BigInt t0;
  BigInt modulus;
  BigInt k_mod;
  BigInt x_mod;
  BigInt y_mod;
  std::size_t n_e = 0;
  BigInt exponent;
};

BenchInstance make_instance(std::size_t n, std::uint64_t seed, std::optional<std::size_t> n_e = std::nullopt);
/// Instances for seeds seed, seed+1, ..., seed+count-1.
std::vector<BenchInstance> gen_instances(std::size_t n, std::size_t count, std::uint64_t seed,
                                         std::optional<std::size_t> n_e = std::nullopt);
/// max(1, 64 / ceil(n / 16)).
std::size_t default_instance_count(std::size_t n);

/// The seven benchmarked constructions, in CSV order.
const std::vector<Construction>& bench_ops();
bool is_bench_op(Construction c);

class OracleMismatch : public std::runtime_error {
 public:
  OracleMismatch(const std::string& what, std::string replay)
      : std::runtime_error(what), replay_(std::move(replay)) {}
  const std::string& replay() const { return replay_; }

 private:
  std::string replay_;
};

struct RunSpec {
  Construction op = Construction::kProductAddWindowed;
  std::size_t w = 1;
  std::size_t w_e = 1;
  bool checks = false;
};

struct RunResult {
  CostTally traced;
  CostTally predicted;
  BigInt expected;
  BigInt actual;
  bool ok = false;
};

/// Runs one construction on a fresh simulator, compares the result with the
/// big-integer oracle and releases every register.
RunResult run_instance(const BenchInstance& instance, const RunSpec& spec);
std::string replay_command(const BenchInstance& instance, const RunSpec& spec);

struct SweepRow {
  Construction op = Construction::kProductAddWindowed;
  std::size_t n = 0;
  std::optional<std::size_t> n_e;
  std::optional<std::size_t> w;
  std::optional<std::size_t> w_e;
  std::uint64_t seed = 0;
  CostTally traced;
  std::uint64_t predicted_toffolis = 0;
};

struct SweepConfig {
  std::vector<Construction> ops;
  std::vector<std::size_t> sizes;
  /// Empty means auto (optimize_window).
  std::vector<std::size_t> windows;
  /// Exponent windows for modexp; empty means the same list as `windows`.
  std::vector<std::size_t> windows_e;
  /// Empty means default_instance_count(n) seeds starting at 1.
  std::vector<std::uint64_t> seeds;
  /// Exponent length for modexp; unset means 2n.
  std::optional<std::size_t> n_e;
  std::size_t threads = 0;
};

/// Every returned row passed its oracle. Throws OracleMismatch otherwise.
/// Row order is deterministic regardless of thread count.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string_view csv_header();
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace winarith
