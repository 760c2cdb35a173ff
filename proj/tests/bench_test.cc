#include "winarith/bench.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "winarith/errors.h"

namespace winarith {
namespace {

TEST(GenInstances, SameSeedSameInstances) {
  auto a = gen_instances(40, 5, 9);
  auto b = gen_instances(40, 5, 9);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].k, b[i].k);
    EXPECT_EQ(a[i].y0, b[i].y0);
    EXPECT_EQ(a[i].t0, b[i].t0);
    EXPECT_EQ(a[i].modulus, b[i].modulus);
    EXPECT_EQ(a[i].exponent, b[i].exponent);
  }
}

TEST(GenInstances, DistinctConstants) {
  std::set<BigInt> ks;
  for (const auto& inst : gen_instances(8, 10, 1)) ks.insert(inst.k);
  EXPECT_GE(ks.size(), 8u);
}

TEST(GenInstances, HalfTheBitsAreSet) {
  const std::size_t n = 64;
  std::size_t total = 0;
  for (const auto& inst : gen_instances(n, 1000, 1)) total += popcount(inst.k);
  double mean = static_cast<double>(total) / (1000.0 * n);
  EXPECT_GE(mean, 0.45);
  EXPECT_LE(mean, 0.55);
}

TEST(GenInstances, ModularFieldsAreValid) {
  for (const auto& inst : gen_instances(20, 50, 3)) {
    EXPECT_EQ(bit_length(inst.modulus), 20u);
    EXPECT_EQ(inst.modulus % 2, 1);
    EXPECT_EQ(gcd(inst.k_mod, inst.modulus), 1);
    EXPECT_LT(inst.x_mod, inst.modulus);
    EXPECT_LT(inst.y_mod, inst.modulus);
    EXPECT_EQ(inst.n_e, 40u);
  }
}

TEST(GenInstances, DefaultCount) {
  EXPECT_EQ(default_instance_count(8), 64u);
  EXPECT_EQ(default_instance_count(32), 32u);
  EXPECT_EQ(default_instance_count(4096), 1u);
}

TEST(RunInstance, EveryOpMatchesOracleAndPredictor) {
  for (Construction op : bench_ops()) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      BenchInstance inst = make_instance(12, seed, 10);
      RunResult r = run_instance(inst, RunSpec{op, 3, 2, true});
      EXPECT_TRUE(r.ok) << construction_name(op);
      EXPECT_EQ(r.traced.toffolis, r.predicted.toffolis) << construction_name(op);
      EXPECT_EQ(r.traced.measurements, r.predicted.measurements) << construction_name(op);
      EXPECT_EQ(r.traced.lookups, r.predicted.lookups) << construction_name(op);
    }
  }
}

TEST(RunInstance, ModularOpsNeedTwoBits) {
  EXPECT_THROW(run_instance(make_instance(1, 1), RunSpec{Construction::kTimesEqualModWindowed}), PreconditionError);
}

TEST(Sweep, RowsMatchPredictor) {
  SweepConfig config;
  config.ops = {Construction::kProductAddWindowed};
  config.sizes = {8};
  config.windows = {2};
  auto rows = run_sweep(config);
  EXPECT_EQ(rows.size(), 64u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.traced.toffolis, row.predicted_toffolis);
    EXPECT_EQ(row.w, 2u);
    EXPECT_FALSE(row.n_e.has_value());
  }
}

TEST(Sweep, EmptySizesGiveHeaderOnly) {
  SweepConfig config;
  config.ops = {Construction::kProductAddWindowed};
  std::ostringstream out;
  write_csv(out, run_sweep(config));
  EXPECT_EQ(out.str(), "op,n,n_e,w,w_e,seed,toffolis,ancilla_high_water,measurements,lookups,predicted_toffolis\n");
}

TEST(Sweep, WindowedBeatsClassicalAtOneTwentyEight) {
  SweepConfig config;
  config.ops = {Construction::kProductAddClassical, Construction::kProductAddWindowed};
  config.sizes = {128};
  config.windows = {7};
  config.seeds = {1, 2, 3};
  auto rows = run_sweep(config);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i].seed, rows[i + 3].seed);
    EXPECT_LT(rows[i + 3].traced.toffolis, rows[i].traced.toffolis);
  }
}

TEST(Sweep, CsvIsDeterministicAcrossThreadCounts) {
  SweepConfig config;
  config.ops = bench_ops();
  config.sizes = {6, 10};
  config.windows = {1, 3};
  config.seeds = {1, 2};
  config.n_e = 6;
  auto render = [&](std::size_t threads) {
    config.threads = threads;
    std::ostringstream out;
    write_csv(out, run_sweep(config));
    return out.str();
  };
  std::string one = render(1);
  EXPECT_EQ(one, render(3));
  EXPECT_EQ(one, render(1));
  EXPECT_EQ(one.find('\r'), std::string::npos);
  EXPECT_NE(one.find("modexp-windowed,6,6,1,3,"), std::string::npos);
  EXPECT_NE(one.find("product-add-classical,6,,,,1,"), std::string::npos);
}

TEST(Sweep, AutoWindowsUseOptimizer) {
  SweepConfig config;
  config.ops = {Construction::kProductAddWindowed};
  config.sizes = {64};
  config.seeds = {1};
  auto rows = run_sweep(config);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].w, optimize_window(Construction::kProductAddWindowed, 64).w);
}

TEST(Replay, CommandNamesTheInstance) {
  BenchInstance inst = make_instance(16, 4);
  EXPECT_EQ(replay_command(inst, RunSpec{Construction::kModExpWindowed, 3, 2}),
            "winarith verify --op modexp-windowed --n 16 --window 3 --window-e 2 --n-e 32 --seed 4");
}

}  // namespace
}  // namespace winarith
