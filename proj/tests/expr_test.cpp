#include "padic/eval.hpp"
#include "padic/expr.hpp"

#include <gtest/gtest.h>

#include <random>

#include "expr_reference.hpp"
#include "oracles.hpp"

namespace padic {
namespace {

using testing::TreeGen;

Rational R(long n, long d = 1) { return make_rational(n, d); }

ExprPtr L(long n, long d = 1) { return make_literal(R(n, d)); }

std::size_t error_offset(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return std::string_view::npos;
}

TEST(Parse, Precedence) {
  EXPECT_TRUE(same_tree(*parse("2+3*4"), *make_binary(BinaryOp::Add, L(2), make_binary(BinaryOp::Mul, L(3), L(4)))));
  EXPECT_TRUE(same_tree(*parse("1-2-3"), *make_binary(BinaryOp::Sub, make_binary(BinaryOp::Sub, L(1), L(2)), L(3))));
  EXPECT_TRUE(same_tree(*parse("-2*3"), *make_binary(BinaryOp::Mul, make_neg(L(2)), L(3))));
  EXPECT_TRUE(same_tree(*parse(" ( 1 + 2 ) * 3 "),
                        *make_binary(BinaryOp::Mul, make_binary(BinaryOp::Add, L(1), L(2)), L(3))));
  EXPECT_TRUE(same_tree(*parse("--5"), *make_neg(make_neg(L(5)))));
}

TEST(Parse, RationalLiteralsBindTighterThanDivision) {
  EXPECT_TRUE(same_tree(*parse("val(343/2)"), *make_call(Function::Val, {L(343, 2)})));
  EXPECT_TRUE(same_tree(*parse("343 / 2"), *L(343, 2)));
  EXPECT_TRUE(same_tree(*parse("(343)/2"), *make_binary(BinaryOp::Div, L(343), L(2))));
  EXPECT_TRUE(same_tree(*parse("2/(3)"), *make_binary(BinaryOp::Div, L(2), L(3))));
  EXPECT_TRUE(same_tree(*parse("1/2/3"), *make_binary(BinaryOp::Div, L(1, 2), L(3))));
  EXPECT_TRUE(same_tree(*parse("4/6"), *L(2, 3)));
  EXPECT_TRUE(same_tree(*parse("dist(9, -1)"), *make_call(Function::Dist, {L(9), make_neg(L(1))})));
}

TEST(Parse, Errors) {
  try {
    parse("norm(12");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_EQ(e.offset(), 7u);
    EXPECT_EQ(e.expected().count("')'"), 1u);
  }
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("1 +"), 3u);
  EXPECT_EQ(error_offset("1 2"), 2u);
  EXPECT_EQ(error_offset("foo(1)"), 0u);
  EXPECT_EQ(error_offset("val 1"), 4u);
  EXPECT_EQ(error_offset("dist(1)"), 6u);
  EXPECT_EQ(error_offset("val(1, 2)"), 5u);
  EXPECT_EQ(error_offset("3/0"), 2u);
  EXPECT_EQ(error_offset("(1+2"), 4u);
  EXPECT_EQ(error_offset("1 + #"), 4u);
  EXPECT_EQ(error_offset("1)"), 1u);
  EXPECT_EQ(error_offset("1.5"), 1u);
}

TEST(Render, Canonical) {
  EXPECT_EQ(render(*parse("2+3*4")), "2 + 3 * 4");
  EXPECT_EQ(render(*parse("(1+2)*3")), "(1 + 2) * 3");
  EXPECT_EQ(render(*parse("1-(2-3)")), "1 - (2 - 3)");
  EXPECT_EQ(render(*parse("(2)/3")), "2 / (3)");
  EXPECT_EQ(render(*parse("-(1+2)")), "-(1 + 2)");
  EXPECT_EQ(render(*parse("dist(1/2,-3)")), "dist(1/2, -3)");
}

TEST(Render, RoundTripGenerated) {
  TreeGen gen(11);
  for (int i = 0; i < 1000; ++i) {
    ExprPtr e = gen.tree(5);
    std::string text = render(*e);
    ExprPtr back = parse(text);
    ASSERT_TRUE(same_tree(*e, *back)) << text << " => " << render(*back);
    ASSERT_EQ(render(*back), text);
  }
}

TEST(Parse, InsertedJunkIsReportedWhereItSits) {
  TreeGen gen(12);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    std::string text = render(*gen.tree(4));
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, text.size())(rng);
    auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
    if (k > 0 && k < text.size() && alnum(text[k - 1]) && alnum(text[k])) continue;
    std::string bad = text.substr(0, k) + "@" + text.substr(k);
    ASSERT_EQ(error_offset(bad), k) << bad;
  }
}

TEST(Parse, TruncationIsReportedAtEnd) {
  TreeGen gen(13);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    std::string text = render(*gen.tree(4));
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
    auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
    if (k > 0 && alnum(text[k - 1]) && alnum(text[k])) continue;
    std::string cut = text.substr(0, k);
    std::size_t offset = error_offset(cut);
    if (offset != std::string_view::npos) {
      ASSERT_EQ(offset, cut.size()) << cut;
    }
  }
}

TEST(Eval, Examples) {
  EvalContext ten{10, 4};
  EXPECT_EQ(format_result(eval(*parse("1/3"), ten), ten), "...6667");
  EvalContext two{2, 12};
  EXPECT_EQ(format_result(eval(*parse("norm(12)"), two), two), "1/4");
  EvalContext seven{7, 3};
  EXPECT_EQ(format_result(eval(*parse("sqrt(2)"), seven), seven), "...213");
  EvalContext ten6{10, 6};
  EXPECT_EQ(format_result(eval(*parse("-58"), ten6), ten6), "...999942");
  EXPECT_EQ(format_result(eval(*parse("dist(9, -1)"), ten6), ten6), "1/10");
  EXPECT_EQ(format_result(eval(*parse("val(343/2)"), EvalContext{7, 6}), EvalContext{7, 6}), "3");
  EXPECT_EQ(format_result(eval(*parse("val(0)"), EvalContext{7, 6}), EvalContext{7, 6}), "inf");
  EXPECT_EQ(format_result(eval(*parse("expand(1/3)"), ten), ten), "(6)7");
  EvalContext marked{10, 6, true};
  EXPECT_EQ(format_result(eval(*parse("58 - 58"), marked), marked), "0");
}

TEST(Eval, DigitSeriesOperands) {
  const EvalContext ctx{7, 5};
  PadicNumber root = hensel_sqrt(R(2), 7, 5);
  EXPECT_EQ(std::get<PadicNumber>(eval(*parse("sqrt(2) * sqrt(2)"), ctx)), mul(root, root));
  EXPECT_EQ(std::get<PadicNumber>(eval(*parse("sqrt(2) + 1/7"), ctx)), add(root, from_rational(R(1, 7), 7, 5)));
  EXPECT_EQ(std::get<PadicNumber>(eval(*parse("1 / sqrt(2)"), ctx)), div(from_rational(R(1), 7, 5), root));
  EXPECT_EQ(std::get<PadicNumber>(eval(*parse("-sqrt(2)"), ctx)), negate(root));
  EXPECT_EQ(std::get<Valuation>(eval(*parse("val(7 * sqrt(2))"), ctx)), Valuation::finite(1));
  EXPECT_EQ(std::get<NormValue>(eval(*parse("dist(sqrt(2), 3)"), ctx)), digit_norm(sub(root, from_rational(R(3), 7, 5))));
  EXPECT_THROW(eval(*parse("sqrt(sqrt(2))"), ctx), Error);
  EXPECT_THROW(eval(*parse("sqrt(2) - sqrt(2) + val(sqrt(2) - sqrt(2))"), ctx), Error);
}

TEST(Eval, ErrorsCarryKinds) {
  auto kind = [](std::string_view text, EvalContext ctx) {
    try {
      eval(*parse(text), ctx);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind("1/(1-1)", EvalContext{5, 4}), ErrorKind::ZeroOperand);
  EXPECT_EQ(kind("sqrt(2)", EvalContext{10, 4}), ErrorKind::NonPrimeBase);
  EXPECT_EQ(kind("sqrt(3)", EvalContext{2, 4}), ErrorKind::EvenPrimeUnsupported);
  EXPECT_EQ(kind("sqrt(3)", EvalContext{5, 4}), ErrorKind::NoSquareRoot);
  EXPECT_EQ(kind("sqrt(5)", EvalContext{5, 4}), ErrorKind::OddValuation);
  EXPECT_EQ(kind("1", EvalContext{1, 4}), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind("1", EvalContext{5, 0}), ErrorKind::InvalidArgument);
}

TEST(Eval, DifferentialAgainstModuleCalls) {
  TreeGen gen(21);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    ExprPtr e = gen.tree(4);
    for (Digit base : {2u, 5u, 10u}) {
      std::string why;
      testing::Verdict v = testing::differential(*e, EvalContext{base, 8}, why);
      ASSERT_NE(v, testing::Verdict::Mismatch) << why;
      compared += v == testing::Verdict::Compared;
    }
  }
  EXPECT_GT(compared, 1500);
}

TEST(Eval, OutputIsNeverFloatingPoint) {
  TreeGen gen(31);
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = gen.tree(4);
    for (bool machine : {false, true}) {
      EvalContext ctx{7, 6, true, machine};
      try {
        std::string out = format_result(eval(*e, ctx), ctx);
        for (std::size_t k = 0; k + 1 < out.size(); ++k) {
          ASSERT_FALSE(out[k] == 'e' && (out[k + 1] == '+' || out[k + 1] == '-')) << out;
        }
        ASSERT_EQ(out.find("nan"), std::string::npos);
      } catch (const Error&) {
      }
    }
  }
}

}  // namespace
}  // namespace padic
