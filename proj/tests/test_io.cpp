#include <gtest/gtest.h>

#include <filesystem>

#include "lcslab/error.hpp"
#include "lcslab/io.hpp"

namespace lcslab {
namespace {

TEST(BlockStringJson, RoundTripWithExactlyFourFields) {
  const BlockString s = build_string({3, 40}, 12);
  const Json j = to_json(s);
  EXPECT_EQ(j.size(), 4u);
  for (const char* key : {"initial", "blocks", "rest", "truncated"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(block_string_from_json(j, 3), s);
  EXPECT_EQ(block_string_from_json(Json::parse(j.dump()), 3), s);
}

TEST(BlockStringJson, RejectsMalformedDocuments) {
  Json j = to_json(build_string({3, 40}, 12));
  Json extra = j;
  extra["l"] = 3;
  EXPECT_THROW(block_string_from_json(extra, 3), LabError);
  Json bad_initial = j;
  bad_initial["initial"] = 2;
  EXPECT_THROW(block_string_from_json(bad_initial, 3), LabError);
  Json bad_block = j;
  bad_block["blocks"][0] = 9;
  EXPECT_THROW(block_string_from_json(bad_block, 3), LabError);
  EXPECT_THROW(block_string_from_json(Json::array(), 3), LabError);
}

TEST(TraceJson, UnusedIndexIsNull) {
  const std::vector<ModStep> trace{{0, StepKind::Half, 3, std::nullopt}, {1, StepKind::Tilde, 2, 5}};
  const Json j = trace_to_json(trace);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["kind"], "half");
  EXPECT_EQ(j[0]["chosen_short_index"], 3);
  EXPECT_TRUE(j[0]["chosen_long_index"].is_null());
  EXPECT_EQ(j[1]["kind"], "tilde");
  EXPECT_EQ(j[1]["step"], 1);
  EXPECT_EQ(j[1]["chosen_long_index"], 5);
}

TEST(Csv, HeaderRowsAndLineEndings) {
  CsvTable t({"index", "lcs"});
  t.add_row({"0", "4"}).add_row({"1", "0"});
  EXPECT_EQ(t.str(), "index,lcs\n0,4\n1,0\n");
  EXPECT_THROW(t.add_row({"1"}), LabError);
  const CsvTable back = parse_csv("x,y\r\n01,10\r\n\n0,\n");
  EXPECT_EQ(back.header(), (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(back.rows().size(), 2u);
  EXPECT_EQ(back.rows()[1], (std::vector<std::string>{"0", ""}));
  EXPECT_THROW(parse_csv(""), LabError);
  EXPECT_THROW(parse_csv("x,y\n0\n"), LabError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "lcslab_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "out.txt";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  EXPECT_EQ(read_file(path), "second\n");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  EXPECT_THROW(read_file(dir / "missing"), LabError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace lcslab
