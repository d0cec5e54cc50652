#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "mfrac/error.hpp"
#include "mfrac_app/csv.hpp"
#include "mfrac_app/svg.hpp"

namespace {

using namespace mfrac;
using namespace mfrac::app;

std::string error_of(const std::string& text) {
  try {
    read_series_csv(text, "f.csv");
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(SeriesCsv, RoundTripsEveryDouble) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<std::uint64_t> bits;
  std::vector<double> t, v;
  for (int i = 0; i < 2000; ++i) {
    t.push_back(i * 0.1 + 1e-3);
    double d;
    do {
      const auto b = bits(gen);
      std::memcpy(&d, &b, sizeof d);
    } while (!std::isfinite(d));
    v.push_back(d);
  }
  v[0] = std::numeric_limits<double>::denorm_min();
  v[1] = -0.0;
  v[2] = std::numeric_limits<double>::max();
  const TimeSeries x(t, v);
  const auto text = write_series_csv(x);
  EXPECT_EQ(text.substr(0, 4), "t,x\n");
  const auto back = read_series_csv(text);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(back.times()[i], x.times()[i]);
    EXPECT_EQ(std::memcmp(&back.values()[i], &x.values()[i], sizeof(double)), 0) << i;
  }
}

TEST(SeriesCsv, AcceptsQuotesSpacesAndCrlf) {
  const auto x = read_series_csv("\"t\",\"x\"\r\n0, 1.5\r\n 1 ,+2\r\n\r\n");
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x.values()[1], 2.0);
}

TEST(SeriesCsv, ErrorsArePositioned) {
  EXPECT_EQ(error_of("t,x\n0,1\n1,abc\n"), "f.csv:3:3: not a number: 'abc'");
  EXPECT_EQ(error_of("t,y\n0,1\n"), "f.csv:1:1: expected header 't,x'");
  EXPECT_EQ(error_of("t,x\n0,1,2\n"), "f.csv:2:5: expected 2 fields, found 3");
  EXPECT_EQ(error_of(""), "f.csv:1:1: empty file; expected a header row");
  EXPECT_EQ(error_of("t,x\n0,1\n"), "f.csv:3:1: need at least two samples");
  EXPECT_NE(error_of("t,x\n0,1\n0,2\n").find("strictly increasing"), std::string::npos);
  EXPECT_NE(error_of("t,x\n0,1\n1,1e999\n").find("f.csv:3:3"), std::string::npos);
}

TEST(PriceCsv, SingleColumnOrSeries) {
  EXPECT_EQ(read_price_csv("price\n1\n2.5\n"), (std::vector<double>{1, 2.5}));
  EXPECT_EQ(read_price_csv("t,x\n0,4\n1,5\n"), (std::vector<double>{4, 5}));
  EXPECT_THROW(read_price_csv("a,b,c\n1,2,3\n"), DataError);
  EXPECT_THROW(read_price_csv("p\n1\nx\n"), DataError);
}

TEST(MatrixCsv, HeaderRowAndFirstColumnAreGrid) {
  const CovMatrix c({0.0, 0.5}, {1.0, 2.0, 2.0, 3.0});
  EXPECT_EQ(write_matrix_csv(c), "t,0,0.5\n0,1,2\n0.5,2,3\n");
}

TEST(Svg, WellFormedAndEscaped) {
  PlotPanel p{"a < b & c", {{"line", {0, 1, 2}, {1, 3, 2}, false}, {"step", {0, 1}, {0, 1}, true}},
              std::nullopt};
  const auto svg = render_svg({p, p});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
  EXPECT_EQ(count, 4u);
  EXPECT_EQ(render_svg({p}), render_svg({p}));
}

}  // namespace
