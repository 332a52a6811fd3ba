#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/dataio/svg.hpp"
#include "circuitforge/error.hpp"
#include "oracles.hpp"

using namespace circuitforge;
using namespace circuitforge::dataio;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

const std::vector<ColumnSpec> kCols = {
    {"name", CellType::Text}, {"n", CellType::Integer}, {"x", CellType::Decimal, 3}, {"on", CellType::Date}};

}  // namespace

TEST(Csv, QuotesOnlyWhenNeeded) {
  TableDocument doc{"t", kCols, {}};
  doc.rows.push_back({std::string("plain"), std::int64_t{1}, Decimal::parse("1.5"), Date(2000, 1, 2)});
  doc.rows.push_back({std::string("a,b \"c\""), std::int64_t{-2}, Decimal::parse("-0.0005"), Date(1435, 12, 31)});
  doc.rows.push_back({std::string("two\nlines"), std::int64_t{0}, Decimal{}, Date(2019, 6, 30)});
  const std::string text = to_csv(doc);
  EXPECT_EQ(text,
            "name,n,x,on\n"
            "plain,1,1.500,2000-01-02\n"
            "\"a,b \"\"c\"\"\",-2,-0.001,1435-12-31\n"
            "\"two\nlines\",0,0.000,2019-06-30\n");
}

TEST(Csv, RandomTablesRoundTrip) {
  std::mt19937_64 rng(8);
  const std::string alphabet = "ab ,\"\n\r1.x";
  for (int trial = 0; trial < 300; ++trial) {
    TableDocument doc{"t", kCols, {}};
    const int rows = static_cast<int>(rng() % 8);
    for (int r = 0; r < rows; ++r) {
      std::string s;
      for (int k = static_cast<int>(rng() % 6); k > 0; --k) s += alphabet[rng() % alphabet.size()];
      doc.rows.push_back({s, static_cast<std::int64_t>(rng() % 2001) - 1000,
                          Decimal::from_micros((static_cast<std::int64_t>(rng() % 2'000'000) - 1'000'000) * 1000),
                          Date(1400 + static_cast<int>(rng() % 600), 1 + static_cast<unsigned>(rng() % 12), 1)});
    }
    const std::string text = to_csv(doc);
    const auto back = parse_table(text, kCols, "t");
    ASSERT_EQ(back, doc) << text;
    ASSERT_EQ(to_csv(back), text);
  }
}

TEST(Csv, ParserHandlesBomAndCrlf) {
  const auto recs = parse_csv("\xEF\xBB\xBF" "a,b\r\n1,\"x\r\ny\"\r\n");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0][0], "a");
  EXPECT_EQ(recs[1][1], "x\r\ny");
}

TEST(Csv, Errors) {
  EXPECT_EQ(code_of([] { (void)parse_csv("a,\"open\n"); }), Errc::UnparsableRow);
  EXPECT_EQ(code_of([] { (void)parse_table("wrong,header,here,x\n", kCols); }), Errc::MalformedHeader);
  EXPECT_EQ(code_of([] { (void)parse_table("name,n,x,on\nq,notanint,1,2000-01-01\n", kCols); }), Errc::UnparsableRow);
  EXPECT_EQ(code_of([] { (void)parse_table("name,n,x,on\nq,1\n", kCols); }), Errc::UnparsableRow);
  EXPECT_EQ(code_of([] { (void)read_text("/nonexistent/dir/file.csv"); }), Errc::IoFailure);
}

TEST(Csv, ValidateCatchesTypeMismatch) {
  TableDocument doc{"t", kCols, {{std::int64_t{1}, std::int64_t{1}, Decimal{}, Date(2000, 1, 1)}}};
  EXPECT_EQ(code_of([&] { doc.validate(); }), Errc::InvalidArgument);
}

TEST(SeriesIo, SkipsMissingAndSorts) {
  const auto r = parse_series("DATE,BUSLOANS\n2000-03-01,3\n2000-01-01,.\n2000-02-01,2\n2000-04-01,\n",
                              policy::Unit::CurrencyBillions);
  EXPECT_EQ(r.skipped, 2u);
  ASSERT_EQ(r.series.size(), 2u);
  EXPECT_EQ(r.series.points()[0].date, Date(2000, 2, 1));
  EXPECT_EQ(r.series.points()[1].value, Decimal::parse("3"));
}

TEST(SeriesIo, RepeatedDateIsAnError) {
  EXPECT_EQ(code_of([] { (void)parse_series("DATE,V\n2000-01-01,1\n2000-01-01,2\n", policy::Unit::Months); }),
            Errc::UnparsableRow);
  EXPECT_EQ(code_of([] { (void)parse_series("DATE,V\n", policy::Unit::Months); }), Errc::EmptySeries);
}

TEST(SeriesIo, BundledSamplesHaveTheStatedShape) {
  const auto stock = read_series(oracle::data_path("busloans_sample.csv"), policy::Unit::CurrencyBillions).series;
  const auto mat = read_series(oracle::data_path("edanq_sample.csv"), policy::Unit::Months).series;
  EXPECT_EQ(stock.size(), 240u);
  EXPECT_EQ(mat.size(), 70u);
  EXPECT_EQ(stock.min(), Decimal::parse("862.8"));
  EXPECT_EQ(stock.max(), Decimal::parse("2373"));
  EXPECT_EQ(stock.median(), Decimal::parse("1357"));
  EXPECT_EQ(mat.median(), Decimal::parse("17.58"));
}

TEST(SeriesIo, WriteThenRead) {
  const policy::Series s(policy::Unit::Months, {{Date(2000, 1, 1), Decimal::parse("1.25")},
                                                {Date(2000, 4, 1), Decimal::parse("2.5")}});
  const std::string text = series_to_csv(s, "EDANQ", 2);
  EXPECT_EQ(text, "DATE,EDANQ\n2000-01-01,1.25\n2000-04-01,2.50\n");
  EXPECT_EQ(parse_series(text, policy::Unit::Months).series, s);
}

TEST(Svg, LineChartIsDeterministic) {
  ChartSpec spec;
  spec.title = "supply & <growth>";
  spec.series = {{"a", {0, 1, 2}, {1, 4, 9}}, {"b", {0, 1, 2}, {2, 2, 2}}};
  const std::string a = render_chart(spec);
  EXPECT_EQ(a, render_chart(spec));
  EXPECT_NE(a.find("<svg xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  EXPECT_EQ(a.substr(a.size() - 7), "</svg>\n");
  EXPECT_EQ(count(a, "<polyline"), 2u);
  EXPECT_EQ(count(a, "<circle"), 6u);
  EXPECT_NE(a.find("supply &amp; &lt;growth&gt;"), std::string::npos);
}

TEST(Svg, HistogramBars) {
  ChartSpec spec;
  spec.kind = ChartKind::Histogram;
  spec.bins = 4;
  spec.series = {{"rates", {}, {0.1, 0.12, 0.15, 0.2, 0.28}}};
  EXPECT_EQ(count(render_chart(spec), "class=\"bar\""), 4u);
  EXPECT_EQ(histogram_counts({0.0, 0.5, 1.0, 0.99}, 2, 0, 1), (std::vector<int>{1, 3}));
}

TEST(Svg, EmptySeriesIsAnError) {
  ChartSpec spec;
  EXPECT_EQ(code_of([&] { (void)render_chart(spec); }), Errc::EmptySeries);
}

TEST(Svg, WriteToFile) {
  const auto dir = std::filesystem::temp_directory_path() / "circuitforge_svg_test";
  std::filesystem::create_directories(dir);
  ChartSpec spec;
  spec.series = {{"a", {0, 1}, {0, 1}}};
  spec.output_path = (dir / "c.svg").string();
  write_chart(spec);
  EXPECT_EQ(read_text(spec.output_path), render_chart(spec));
  std::filesystem::remove_all(dir);
}
