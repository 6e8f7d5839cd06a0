#include <gtest/gtest.h>

#include "modexp/ratio.hpp"

using modexp::Errc;
using modexp::Error;
using modexp::ExtendedRatio;
using modexp::Ratio;

TEST(Ratio, NormalisesSignAndLowestTerms) {
  Ratio r{6, -8};
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Ratio(0, 5), Ratio{0});
  EXPECT_EQ(Ratio(0, 5).den(), 1);
}

TEST(Ratio, Arithmetic) {
  EXPECT_EQ(Ratio(1, 2) + Ratio(1, 3), Ratio(5, 6));
  EXPECT_EQ(Ratio(1, 2) - Ratio(2, 3), Ratio(-1, 6));
  EXPECT_EQ(Ratio(3, 4) * Ratio(2, 9), Ratio(1, 6));
  EXPECT_EQ(Ratio(3, 4) / Ratio(3, 8), Ratio{2});
  EXPECT_THROW(Ratio{1} / Ratio{0}, Error);
}

TEST(Ratio, OrderingIsExact) {
  Ratio a{1'000'000'007, 1'000'000'009};
  Ratio b{1'000'000'008, 1'000'000'010};
  EXPECT_LT(a, b);
  EXPECT_GT(Ratio(-1, 3), Ratio(-1, 2));
  EXPECT_EQ(modexp::min(a, b), a);
  EXPECT_EQ(modexp::abs(Ratio(-2, 7)), Ratio(2, 7));
}

TEST(Ratio, ParseForms) {
  EXPECT_EQ(Ratio::parse("7"), Ratio{7});
  EXPECT_EQ(Ratio::parse("-3/4"), Ratio(-3, 4));
  EXPECT_EQ(Ratio::parse("0.25"), Ratio(1, 4));
  EXPECT_EQ(Ratio::parse("-0.5"), Ratio(-1, 2));
  EXPECT_EQ(Ratio::parse("051/100"), Ratio(51, 100));
  for (const char* bad : {"", "x", "1/0", "1/", "/2", "1.", "1.2.3", "3/4/5"}) {
    EXPECT_THROW(Ratio::parse(bad), Error) << bad;
  }
}

TEST(Ratio, FloorCeil) {
  EXPECT_EQ(Ratio(7, 2).floor(), 3);
  EXPECT_EQ(Ratio(-7, 2).floor(), -4);
  EXPECT_EQ(Ratio(-7, 2).ceil(), -3);
  EXPECT_EQ(Ratio{5}.ceil(), 5);
}

TEST(Ratio, OverflowIsReported) {
  Ratio big{INT64_MAX};
  try {
    (void)(big * big);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overflow);
  }
}

TEST(Ratio, CeilLog2Inverse) {
  EXPECT_EQ(modexp::ceil_log2_inverse(Ratio{1}), 0);
  EXPECT_EQ(modexp::ceil_log2_inverse(Ratio(1, 2)), 1);
  EXPECT_EQ(modexp::ceil_log2_inverse(Ratio(1, 3)), 2);
  EXPECT_EQ(modexp::ceil_log2_inverse(Ratio(1, 4)), 2);
  EXPECT_EQ(modexp::ceil_log2_inverse(Ratio(3, 13)), 3);
  EXPECT_THROW(modexp::ceil_log2_inverse(Ratio{0}), Error);
}

TEST(Ratio, FloorSqrt) {
  EXPECT_EQ(modexp::floor_sqrt(Ratio{20}), 4);
  EXPECT_EQ(modexp::floor_sqrt(Ratio{200}), 14);
  EXPECT_EQ(modexp::floor_sqrt(Ratio{16}), 4);
  EXPECT_EQ(modexp::floor_sqrt(Ratio(9, 4)), 1);
  EXPECT_EQ(modexp::floor_sqrt(Ratio{0}), 0);
  for (std::int64_t x = 0; x < 500; ++x) {
    std::int64_t s = modexp::floor_sqrt(Ratio{x});
    EXPECT_LE(s * s, x);
    EXPECT_GT((s + 1) * (s + 1), x);
  }
}

TEST(ExtendedRatio, InfinityOrdersLast) {
  ExtendedRatio inf = ExtendedRatio::inf();
  EXPECT_GT(inf, ExtendedRatio::of(Ratio{1'000'000}));
  EXPECT_EQ(inf, ExtendedRatio::inf());
  EXPECT_NE(inf, Ratio{0});
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_EQ(ExtendedRatio::of(Ratio(3, 4)).str(), "3/4");
}
