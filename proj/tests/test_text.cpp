#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "qprice/text.hpp"

using namespace qprice;

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(80.0), "80.0");
  EXPECT_EQ(format_number(109.2), "109.2");
  EXPECT_EQ(format_number(-0.5), "-0.5");
  EXPECT_EQ(format_number(0.0), "0.0");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.30000000000000004");
  const double x = 2011.6 * 1.5;
  EXPECT_EQ(*parse_number(format_number(x)), x);
}

TEST(FormatFixed, RoundsAndAvoidsNegativeZero) {
  EXPECT_EQ(format_fixed(163.8, 1), "163.8");
  EXPECT_EQ(format_fixed(9828.0, 2), "9828.00");
  EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
  EXPECT_EQ(format_fixed(std::numeric_limits<double>::quiet_NaN(), 1), "nan");
}

TEST(ParseNumber, Strict) {
  EXPECT_EQ(parse_number(" 1.5 "), 1.5);
  EXPECT_EQ(parse_number("+2"), 2.0);
  EXPECT_EQ(parse_number("-8.4"), -8.4);
  EXPECT_FALSE(parse_number(""));
  EXPECT_FALSE(parse_number("abc"));
  EXPECT_FALSE(parse_number("1.5x"));
  EXPECT_FALSE(parse_number("nan"));
  EXPECT_FALSE(parse_number("inf"));
  EXPECT_FALSE(parse_number("1e999"));
}

TEST(SplitCsv, QuotedAndLiteralQuotes) {
  auto f = split_csv_record("Samsung 24\" HD,-0.5,109.2,80.0");
  ASSERT_TRUE(f);
  ASSERT_EQ(f->size(), 4u);
  EXPECT_EQ((*f)[0], "Samsung 24\" HD");

  f = split_csv_record("\"a, \"\"b\"\"\",2");
  ASSERT_TRUE(f);
  ASSERT_EQ(f->size(), 2u);
  EXPECT_EQ((*f)[0], "a, \"b\"");

  EXPECT_FALSE(split_csv_record("\"unterminated,1"));
  EXPECT_FALSE(split_csv_record("\"x\"y,1"));

  f = split_csv_record("a,,b,");
  ASSERT_TRUE(f);
  EXPECT_EQ(f->size(), 4u);
}

TEST(CsvField, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(csv_field("Samsung 24\" HD"), "Samsung 24\" HD");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("\"lead"), "\"\"\"lead\"");
  for (const char* s : {"plain", "a,b", "\"lead", "mid\"dle", "x,\"y\""}) {
    const auto back = split_csv_record(csv_field(s));
    ASSERT_TRUE(back) << s;
    ASSERT_EQ(back->size(), 1u) << s;
    EXPECT_EQ((*back)[0], s);
  }
}

TEST(SplitLines, BomAndCarriageReturns) {
  const auto lines = split_lines("\xEF\xBB\xBF" "a\r\nb\nc");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[1], "b");
  EXPECT_EQ(lines[2], "c");
  EXPECT_EQ(split_lines("a\n").size(), 1u);
  EXPECT_TRUE(split_lines("").empty());
}
