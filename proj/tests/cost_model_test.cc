#include "winarith/cost_model.h"

#include <gtest/gtest.h>

#include <cmath>

#include "winarith/errors.h"

namespace winarith {
namespace {

OpDescriptor make(Construction c, std::size_t n, std::size_t w = 1, std::size_t w_e = 1, std::size_t n_e = 0) {
  OpDescriptor op;
  op.construction = c;
  op.n = n;
  op.w = w;
  op.w_e = w_e;
  op.n_e = n_e;
  return op;
}

TEST(Predict, EmptyProductAddIsFree) {
  EXPECT_EQ(predict(make(Construction::kProductAddWindowed, 0, 5)).toffolis, 0u);
}

TEST(Predict, LookupOfThousandTwentyFour) {
  EXPECT_EQ(predict(make(Construction::kLookup, 1024)).toffolis, 1023u);
}

TEST(Predict, WindowedProductAddSixtyFour) {
  Prediction p = predict_detailed(make(Construction::kProductAddWindowed, 64, 4));
  EXPECT_EQ(p.tally.toffolis, 1856u);
  ASSERT_EQ(p.terms.size(), 16u);
  EXPECT_EQ(p.terms[0].lookup, 15u);
  EXPECT_EQ(p.terms[0].add, 127u);
  EXPECT_EQ(p.terms[0].unlookup, 4u);
  EXPECT_EQ(p.tally.lookups, 16u);
}

TEST(Predict, UnlookupFormula) {
  EXPECT_EQ(unlookup_cost(1), 0u);
  EXPECT_EQ(unlookup_cost(2), 0u);
  EXPECT_EQ(unlookup_cost(16), 4u);
  for (std::size_t lg = 2; lg <= 12; ++lg) {
    std::size_t L = std::size_t{1} << lg;
    EXPECT_LE(static_cast<double>(unlookup_cost(L)), 2 * std::sqrt(static_cast<double>(L))) << L;
  }
}

TEST(Predict, ModAddIsFivePerBitMinusOne) {
  EXPECT_EQ(predict(make(Construction::kModAdd, 10)).toffolis, 49u);
}

TEST(Predict, EvenTimesEqualConstantThrows) {
  OpDescriptor op = make(Construction::kTimesEqualWindowed, 8, 2);
  op.k = 4;
  EXPECT_THROW(predict(op), PreconditionError);
  op.k = 1;
  EXPECT_EQ(predict(op).toffolis, 0u);
}

TEST(Predict, ZeroModularConstantIsFree) {
  OpDescriptor op = make(Construction::kProductAddModWindowed, 8, 2);
  op.k = 26;
  op.modulus = 13;
  EXPECT_EQ(predict(op).toffolis, 0u);
}

TEST(Predict, ZeroWindowRejected) {
  EXPECT_THROW(predict(make(Construction::kProductAddWindowed, 8, 0)), PreconditionError);
}

TEST(ParseConstruction, NamesRoundTripAndUnknownThrows) {
  for (Construction c : {Construction::kProductAddClassical, Construction::kProductAddQubit,
                         Construction::kProductAddWindowed, Construction::kTimesEqualWindowed,
                         Construction::kProductAddModWindowed, Construction::kTimesEqualModWindowed,
                         Construction::kModExpWindowed, Construction::kLookup}) {
    EXPECT_EQ(parse_construction(construction_name(c)), c);
  }
  EXPECT_EQ(parse_construction("product-add"), Construction::kProductAddWindowed);
  EXPECT_EQ(parse_construction("modexp"), Construction::kModExpWindowed);
  EXPECT_THROW(parse_construction("karatsuba"), UnknownConstruction);
}

TEST(OptimizeWindow, SingleBitPicksOne) {
  EXPECT_EQ(optimize_window(Construction::kProductAddWindowed, 1).w, 1u);
}

TEST(OptimizeWindow, ProductAddNearLgN) {
  WindowChoice c = optimize_window(Construction::kProductAddWindowed, 1024);
  EXPECT_GE(c.w, 8u);
  EXPECT_LE(c.w, 12u);
  for (std::size_t w = 1; w <= 20; ++w) {
    EXPECT_LE(c.toffolis, predict(make(Construction::kProductAddWindowed, 1024, w)).toffolis);
  }
}

TEST(OptimizeWindow, TiesGoToSmallerWindow) {
  // n = 2: every window >= 2 collapses to the same single lookup.
  WindowChoice c = optimize_window(Construction::kProductAddWindowed, 2);
  for (std::size_t w = 1; w < c.w; ++w) {
    EXPECT_GT(predict(make(Construction::kProductAddWindowed, 2, w)).toffolis, c.toffolis);
  }
}

TEST(OptimizeWindow, ModexpWindowsRoughlyEven) {
  WindowChoice c = optimize_window(Construction::kModExpWindowed, 256, 512);
  EXPECT_LE(c.w > c.w_e ? c.w - c.w_e : c.w_e - c.w, 1u);
}

TEST(Predict, SquareModexpWindowsBeatSkewed) {
  // Compared over windows that tile both registers exactly.
  for (std::size_t n : {64, 256}) {
    auto tiles = [&](std::size_t w) { return w >= 1 && n % w == 0; };
    for (std::size_t w = 1; w <= 10; ++w) {
      if (!tiles(w)) continue;
      std::uint64_t square = predict(make(Construction::kModExpWindowed, n, w, w, 2 * n)).toffolis;
      for (std::size_t j = 1; j < w; ++j) {
        if (!tiles(w + j) || !tiles(w - j)) continue;
        EXPECT_LE(square, predict(make(Construction::kModExpWindowed, n, w + j, w - j, 2 * n)).toffolis);
        EXPECT_LE(square, predict(make(Construction::kModExpWindowed, n, w - j, w + j, 2 * n)).toffolis);
      }
    }
  }
}

}  // namespace
}  // namespace winarith
