#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mfrac/error.hpp"
#include "mfrac/hurst_expr.hpp"

namespace {

using mfrac::HurstExpr;
using mfrac::ParseError;

double eval(const std::string& s, double t) { return HurstExpr::parse(s).evaluate(t); }

std::size_t error_offset(const std::string& s) {
  try {
    HurstExpr::parse(s);
  } catch (const ParseError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no error for '" << s << "'";
  return ~std::size_t{0};
}

TEST(HurstExpr, ExampleFamilies) {
  EXPECT_EQ(eval("0.3", 0.42), 0.3);
  EXPECT_EQ(eval("0.8 - 0.55*t", 0.0), 0.8);
  EXPECT_NEAR(eval("0.4 - 0.25*sin(6*pi*t)", 0.25), 0.65, 1e-15);
}

TEST(HurstExpr, Precedence) {
  EXPECT_EQ(eval("1 + 2 * 3", 0), 7.0);
  EXPECT_EQ(eval("2 ^ 3 ^ 2", 0), 512.0);
  EXPECT_EQ(eval("-2 ^ 2", 0), -4.0);
  EXPECT_EQ(eval("(-2) ^ 2", 0), 4.0);
  EXPECT_EQ(eval("-2 * 3", 0), -6.0);
  EXPECT_EQ(eval("2 ^ -1", 0), 0.5);
  EXPECT_EQ(eval("10 - 4 - 3", 0), 3.0);
  EXPECT_EQ(eval("8 / 4 / 2", 0), 1.0);
  EXPECT_EQ(eval("1 + 1 < 3", 0), 1.0);
  EXPECT_EQ(eval("t >= 0.5", 0.5), 1.0);
  EXPECT_EQ(eval("t > 0.5", 0.5), 0.0);
  EXPECT_EQ(eval("t <= 0.5", 0.5), 1.0);
  EXPECT_EQ(eval("t < 0.5", 0.5), 0.0);
  EXPECT_EQ(eval("2e-1 + 1E1", 0), 10.2);
  EXPECT_EQ(eval(".5", 0), 0.5);
}

TEST(HurstExpr, Functions) {
  EXPECT_NEAR(eval("cos(pi)", 0), -1.0, 1e-15);
  EXPECT_NEAR(eval("exp(1)", 0), std::numbers::e, 1e-15);
  EXPECT_EQ(eval("abs(-0.25)", 0), 0.25);
  EXPECT_EQ(eval("min(0.2, t)", 0.7), 0.2);
  EXPECT_EQ(eval("max(0.2, t)", 0.7), 0.7);
  EXPECT_EQ(eval("ifelse(t <= 0.5, 0.2, 0.8)", 0.6), 0.8);
  EXPECT_EQ(eval("ifelse(t <= 0.5, 0.2, 0.8)", 0.5), 0.2);
}

TEST(HurstExpr, ToHurstSpec) {
  EXPECT_EQ(mfrac::to_hurst_spec(HurstExpr::parse("0.3")).eval(5, 0.7), 0.3);
  const auto clamp = mfrac::to_hurst_spec(HurstExpr::parse("t")).eval_checked(0, 0.0);
  EXPECT_EQ(clamp.value, 1e-6);
  EXPECT_TRUE(clamp.clamped);
  const auto step = mfrac::to_hurst_spec(HurstExpr::parse("ifelse(t <= 0.5, 0.2, 0.8)"));
  EXPECT_EQ(step.eval(3, 0.6), 0.8);
  EXPECT_FALSE(step.is_level_dependent());
}

TEST(HurstExpr, PositionedErrors) {
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("0.3 +"), 5u);
  EXPECT_EQ(error_offset("0.3 + x"), 6u);
  EXPECT_EQ(error_offset("foo(t)"), 0u);
  EXPECT_EQ(error_offset("sin t"), 0u);
  EXPECT_EQ(error_offset("(t + 1"), 6u);
  EXPECT_EQ(error_offset("t $ 2"), 2u);
  EXPECT_EQ(error_offset("min(t)"), 5u);
  EXPECT_EQ(error_offset("1 2"), 2u);
  EXPECT_EQ(error_offset("1e999"), 0u);
  EXPECT_EQ(error_offset("t)"), 1u);
  EXPECT_EQ(error_offset("pi(1)"), 0u);
}

TEST(HurstExpr, ErrorMessageNamesOffset) {
  try {
    HurstExpr::parse("0.3 + x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("offset 6"), std::string::npos);
    EXPECT_NE(e.detail().find("unknown identifier"), std::string::npos);
  }
}

TEST(HurstExpr, FormatRoundTrips) {
  for (const std::string s :
       {"0.3", "0.8 - 0.55*t", "0.4 - 0.25*sin(6*pi*t)", "-t^2^0.5", "ifelse(t <= 0.5, 0.2, 0.8)",
        "max(min(t, 0.9), 0.1) + abs(-1e-7)", "1 < 2 < 3", "--t", "exp(-t) / (1 + t) * 0.1"}) {
    const auto e = HurstExpr::parse(s);
    const auto f = HurstExpr::parse(e.format());
    EXPECT_EQ(e, f) << s << " -> " << e.format();
    EXPECT_EQ(f.format(), e.format());
    EXPECT_EQ(e.evaluate(0.37), f.evaluate(0.37));
  }
}

// Random well-formed expressions: parse never fails, round trip holds.
std::string random_expr(std::mt19937_64& gen, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  std::uniform_real_distribution<double> num(0.0, 3.0);
  switch (pick(gen)) {
    case 0: return std::to_string(num(gen));
    case 1: return "t";
    case 2: return "pi";
    case 3: return "(" + random_expr(gen, depth - 1) + " + " + random_expr(gen, depth - 1) + ")";
    case 4: return random_expr(gen, depth - 1) + " * " + random_expr(gen, depth - 1);
    case 5: return "-" + random_expr(gen, depth - 1);
    case 6: return "sin(" + random_expr(gen, depth - 1) + ")";
    case 7: return "min(" + random_expr(gen, depth - 1) + ", " + random_expr(gen, depth - 1) + ")";
    case 8: return random_expr(gen, depth - 1) + " ^ " + random_expr(gen, depth - 1);
    default:
      return "ifelse(" + random_expr(gen, depth - 1) + " < " + random_expr(gen, depth - 1) + ", " +
             random_expr(gen, depth - 1) + ", " + random_expr(gen, depth - 1) + ")";
  }
}

TEST(HurstExpr, FuzzWellFormed) {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_expr(gen, 4);
    const auto e = HurstExpr::parse(s);
    EXPECT_EQ(e, HurstExpr::parse(e.format())) << s;
  }
}

TEST(HurstExpr, FuzzMalformedAlwaysPositioned) {
  std::mt19937_64 gen(12);
  const std::string alphabet = "t0.5+-*/^()<>=,sinpx $";
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> len(1, 12);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int n = len(gen);
    for (int c = 0; c < n; ++c) s += alphabet[ch(gen)];
    try {
      HurstExpr::parse(s);
    } catch (const ParseError& e) {
      EXPECT_LE(e.offset(), s.size()) << s;
    }
  }
}

TEST(HurstExpr, DeepNestingRejected) {
  const std::string s = std::string(1000, '(') + "t" + std::string(1000, ')');
  EXPECT_THROW(HurstExpr::parse(s), ParseError);
}

}  // namespace
