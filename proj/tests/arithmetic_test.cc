#include "winarith/arithmetic.h"

#include <gtest/gtest.h>

#include <random>

#include "winarith/cost_model.h"
#include "winarith/errors.h"

namespace winarith {
namespace {

BigInt random_below_bits(std::mt19937_64& rng, std::size_t bits) {
  BigInt v = 0;
  for (std::size_t i = 0; i < bits; i += 64) v |= BigInt(rng()) << i;
  return low_bits(v, bits);
}

TEST(AddInto, ZeroAddendKeepsTarget) {
  SimState sim;
  Quint t = sim.qalloc(8);
  Quint a = sim.qalloc(8);
  sim.xor_constant(t, 77);
  add_into(sim, t, a);
  EXPECT_EQ(sim.read(t), 77);
}

TEST(AddInto, Wraparound) {
  SimState sim;
  Quint t = sim.qalloc(4);
  Quint a = sim.qalloc(4);
  sim.xor_constant(t, 9);
  sim.xor_constant(a, 12);
  add_into(sim, t, a);
  EXPECT_EQ(sim.read(t), 5);
  EXPECT_EQ(sim.tally().toffolis, 3u);
}

TEST(AddInto, ExhaustiveFourBitsWithShortAddends) {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (unsigned tv = 0; tv < 16; ++tv) {
      for (unsigned av = 0; av < (1u << k); ++av) {
        SimState sim;
        Quint t = sim.qalloc(4);
        Quint a = sim.qalloc(k);
        sim.xor_constant(t, tv);
        sim.xor_constant(a, av);
        add_into(sim, t, a);
        ASSERT_EQ(sim.read(t), (tv + av) % 16);
        ASSERT_EQ(sim.read(a), av);
        ASSERT_EQ(sim.tally().toffolis, 3u);
        sub_into(sim, t, a);
        ASSERT_EQ(sim.read(t), tv);
      }
    }
  }
}

TEST(AddInto, RandomWideOracleAndInverse) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t m = 1 + rng() % 128;
    std::size_t k = 1 + rng() % m;
    BigInt tv = random_below_bits(rng, m);
    BigInt av = random_below_bits(rng, k);
    SimState sim(trial);
    Quint t = sim.qalloc(m);
    Quint a = sim.qalloc(k);
    sim.xor_constant(t, tv);
    sim.xor_constant(a, av);
    add_into(sim, t, a);
    ASSERT_EQ(sim.read(t), low_bits(tv + av, m));
    ASSERT_EQ(sim.tally().toffolis, add_cost(m));
    sub_into(sim, t, a);
    ASSERT_EQ(sim.read(t), tv);
    sub_into(sim, t, a);
    ASSERT_EQ(sim.read(t), low_bits(tv + pow2(m) - av, m));
    ASSERT_EQ(sim.live_qubits(), m + k);
  }
}

TEST(AddInto, AliasingRejected) {
  SimState sim;
  Quint t = sim.qalloc(4);
  EXPECT_THROW(add_into(sim, t, t.slice(0, 2)), PreconditionError);
  EXPECT_THROW(add_into(sim, t.slice(0, 2), t), PreconditionError);
}

TEST(AddConstant, ZeroIsFree) {
  SimState sim;
  Quint t = sim.qalloc(8);
  add_constant_into(sim, t, 0);
  EXPECT_EQ(sim.tally().toffolis, 0u);
}

TEST(AddConstant, EightBitWrap) {
  SimState sim;
  Quint t = sim.qalloc(8);
  sim.xor_constant(t, 200);
  add_constant_into(sim, t, 100);
  EXPECT_EQ(sim.read(t), 44);
  EXPECT_EQ(sim.tally().toffolis, 7u);
  EXPECT_EQ(sim.live_qubits(), 8u);
}

TEST(AddConstant, ControlledUsesTwoEntryLookup) {
  for (int cv = 0; cv < 2; ++cv) {
    SimState sim;
    Qubit c = sim.alloc_qubit();
    if (cv) sim.x(c);
    Quint t = sim.qalloc(8);
    sim.xor_constant(t, 200);
    sim.with_control(c, [&] { add_constant_into(sim, t, 100); });
    EXPECT_EQ(sim.read(t), cv ? 44 : 200);
    EXPECT_EQ(sim.tally().toffolis, 8u);
    EXPECT_EQ(sim.tally().lookups, 1u);
  }
}

TEST(AddConstant, RandomOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t m = 1 + rng() % 100;
    BigInt tv = random_below_bits(rng, m);
    BigInt k = random_below_bits(rng, m);
    SimState sim;
    Quint t = sim.qalloc(m);
    sim.xor_constant(t, tv);
    add_constant_into(sim, t, k);
    ASSERT_EQ(sim.read(t), low_bits(tv + k, m));
    ASSERT_EQ(sim.tally().toffolis, k == 0 ? 0u : add_cost(m));
  }
}

TEST(ModAdd, ZeroAddend) {
  SimState sim;
  QuintMod t = sim.qalloc_mod(13);
  Quint a = sim.qalloc(4);
  sim.xor_constant(t.reg, 9);
  mod_add_into(sim, t, a);
  EXPECT_EQ(sim.read(t.reg), 9);
}

TEST(ModAdd, SmallExample) {
  SimState sim;
  QuintMod t = sim.qalloc_mod(13);
  Quint a = sim.qalloc(4);
  sim.xor_constant(t.reg, 9);
  sim.xor_constant(a, 7);
  mod_add_into(sim, t, a);
  EXPECT_EQ(sim.read(t.reg), 3);
  EXPECT_EQ(sim.tally().toffolis, mod_add_cost(4));
}

TEST(ModAdd, ExhaustiveSmallModuli) {
  for (unsigned N = 3; N <= 31; N += 2) {
    std::size_t n = ceil_lg(BigInt(N));
    for (unsigned tv = 0; tv < N; ++tv) {
      for (unsigned av = 0; av < N; ++av) {
        SimState sim;
        QuintMod t = sim.qalloc_mod(N);
        Quint a = sim.qalloc(n);
        sim.xor_constant(t.reg, tv);
        sim.xor_constant(a, av);
        mod_add_into(sim, t, a);
        ASSERT_EQ(sim.read(t.reg), (tv + av) % N) << "N=" << N;
        ASSERT_EQ(sim.tally().toffolis, mod_add_cost(n));
        mod_sub_into(sim, t, a);
        ASSERT_EQ(sim.read(t.reg), tv);
        mod_sub_into(sim, t, a);
        ASSERT_EQ(sim.read(t.reg), (tv + N - av) % N);
        ASSERT_EQ(sim.live_qubits(), 2 * n);
      }
    }
  }
}

TEST(ModAdd, RandomLargeModuli) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t bits = 2 + rng() % 200;
    BigInt N = random_below_bits(rng, bits) | pow2(bits - 1) | 1;
    BigInt tv = random_below_bits(rng, bits) % N;
    BigInt av = random_below_bits(rng, bits) % N;
    SimState sim(trial);
    QuintMod t = sim.qalloc_mod(N);
    Quint a = sim.qalloc(bits);
    sim.xor_constant(t.reg, tv);
    sim.xor_constant(a, av);
    mod_add_into(sim, t, a);
    ASSERT_EQ(sim.read(t.reg), (tv + av) % N);
    mod_sub_into(sim, t, a);
    ASSERT_EQ(sim.read(t.reg), tv);
  }
}

TEST(ModAdd, UnreducedAddendTrapped) {
  SimState sim;
  QuintMod t = sim.qalloc_mod(13);
  Quint a = sim.qalloc(4);
  sim.xor_constant(a, 14);
  EXPECT_THROW(mod_add_into(sim, t, a), PreconditionError);
}

TEST(Swap, ExchangesWithoutToffolis) {
  SimState sim;
  Quint a = sim.qalloc(4);
  Quint b = sim.qalloc(4);
  sim.xor_constant(a, 5);
  sim.xor_constant(b, 9);
  swap_registers(sim, a, b);
  EXPECT_EQ(sim.read(a), 9);
  EXPECT_EQ(sim.read(b), 5);
  swap_registers(sim, a, b);
  EXPECT_EQ(sim.read(a), 5);
  EXPECT_EQ(sim.tally().toffolis, 0u);
  EXPECT_THROW(swap_registers(sim, a, a), PreconditionError);
}

TEST(Classical, ModinvAndPowMod) {
  EXPECT_EQ(modinv(1, 13), BigInt(1));
  EXPECT_FALSE(modinv(2, 4).has_value());
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    BigInt N = 2 + rng() % 100000;
    BigInt k = rng() % N;
    auto inv = modinv(k, N);
    if (gcd(k, N) == 1) {
      ASSERT_TRUE(inv.has_value());
      ASSERT_EQ((*inv * k) % N, 1 % N);
    } else {
      ASSERT_FALSE(inv.has_value());
    }
    unsigned e = rng() % 40;
    BigInt iter = 1 % N;
    for (unsigned i = 0; i < e; ++i) iter = (iter * k) % N;
    ASSERT_EQ(pow_mod(k, e, N), iter);
  }
}

}  // namespace
}  // namespace winarith
