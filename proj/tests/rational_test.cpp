#include "bayesbias/rational.hpp"

#include <gtest/gtest.h>

#include <sstream>

using bayesbias::Rational;

TEST(Rational, NormalizesOnConstruction) {
  Rational r{Rational::Integer(6), Rational::Integer(-8)};
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 4);
  EXPECT_EQ(r.to_string(), "-3/4");
  EXPECT_EQ(Rational(5).to_string(), "5");
  EXPECT_EQ(Rational(0).to_string(), "0");
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(Rational::Integer(1), Rational::Integer(0)), std::domain_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, Arithmetic) {
  const Rational a(Rational::Integer(3), Rational::Integer(10));
  const Rational b(Rational::Integer(2), Rational::Integer(5));
  EXPECT_EQ(a + b, Rational(Rational::Integer(7), Rational::Integer(10)));
  EXPECT_EQ(a - b, Rational(Rational::Integer(-1), Rational::Integer(10)));
  EXPECT_EQ(a * b, Rational(Rational::Integer(3), Rational::Integer(25)));
  EXPECT_EQ(a / b, Rational(Rational::Integer(3), Rational::Integer(4)));
  EXPECT_EQ(-a, Rational(Rational::Integer(-3), Rational::Integer(10)));
  Rational c = a;
  c += b;
  c -= b;
  c *= 2;
  c /= 2;
  EXPECT_EQ(c, a);
}

TEST(Rational, OrderingByCrossMultiplication) {
  const Rational third(Rational::Integer(1), Rational::Integer(3));
  const Rational two_sixths(Rational::Integer(2), Rational::Integer(6));
  EXPECT_EQ(third, two_sixths);
  EXPECT_LT(Rational(Rational::Integer(3), Rational::Integer(7)), Rational(Rational::Integer(3), Rational::Integer(5)));
  EXPECT_GT(Rational(0), Rational(Rational::Integer(-1), Rational::Integer(1000)));
  EXPECT_TRUE(third.is_positive());
  EXPECT_TRUE((-third).is_negative());
  EXPECT_TRUE(Rational(0).is_zero());
  EXPECT_TRUE(Rational(4).is_integer());
  EXPECT_FALSE(third.is_integer());
}

TEST(Rational, ParseAcceptsCanonicalText) {
  EXPECT_EQ(Rational::parse("3/7"), Rational(Rational::Integer(3), Rational::Integer(7)));
  EXPECT_EQ(Rational::parse("-2/5"), Rational(Rational::Integer(-2), Rational::Integer(5)));
  EXPECT_EQ(Rational::parse("0"), Rational(0));
  EXPECT_EQ(Rational::parse("12"), Rational(12));
  EXPECT_EQ(Rational::parse("-12"), Rational(-12));
}

TEST(Rational, ParseRejectsNonCanonicalText) {
  for (const char* bad : {"", "2/4", "1/1", "-0", "+1", "01", "0.3", "1/0", "1/-2", "3/", "/3", "a", "1 /2", "0/5"}) {
    EXPECT_FALSE(Rational::parse(bad).has_value()) << bad;
  }
}

TEST(Rational, ParsePrintRoundTrip) {
  for (int p = -30; p <= 30; ++p) {
    for (int q = 1; q <= 12; ++q) {
      const Rational r{Rational::Integer(p), Rational::Integer(q)};
      EXPECT_EQ(Rational::parse(r.to_string()), r);
    }
  }
}

TEST(Rational, BigValuesStayExact) {
  Rational r(1);
  for (int i = 0; i < 200; ++i) r /= 3;
  for (int i = 0; i < 200; ++i) r *= 3;
  EXPECT_EQ(r, Rational(1));
  std::ostringstream os;
  os << Rational(Rational::Integer(1), Rational::Integer(3));
  EXPECT_EQ(os.str(), "1/3");
}
