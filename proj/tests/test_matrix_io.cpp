#include "ginvkit/matrix_io.hpp"
#include "ginvkit/testkit.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace ginv::io {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class MatrixFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ginvkit_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

std::string field_of(const json& doc) {
  try {
    from_json(doc);
  } catch (const FormatError& e) {
    return e.field();
  }
  return "";
}

TEST_F(MatrixFileTest, RoundTripIsBitExact) {
  testkit::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Index r = rng.integer(1, 8);
    const Index c = rng.integer(1, 8);
    CMatrix m = testkit::random_matrix(rng, r, c);
    m(0, 0) *= std::pow(10.0, rng.integer(-300, 300));
    const fs::path p = dir_ / "m.json";
    write_matrix(p, m);
    const CMatrix back = read_matrix(p);
    ASSERT_EQ(back.rows(), r);
    ASSERT_EQ(back.cols(), c);
    for (Index k = 0; k < m.size(); ++k) {
      EXPECT_EQ(back.data()[k].real(), m.data()[k].real());
      EXPECT_EQ(back.data()[k].imag(), m.data()[k].imag());
    }
  }
}

TEST_F(MatrixFileTest, ExtremeValuesSurvive) {
  CMatrix m(1, 3);
  m << Complex(std::numeric_limits<double>::denorm_min(), -0.0),
      Complex(std::numeric_limits<double>::max(), 0.1), Complex(1.0 / 3, -2.0 / 7);
  write_matrix(dir_ / "x.json", m);
  EXPECT_EQ(read_matrix(dir_ / "x.json"), m);
}

TEST_F(MatrixFileTest, Fixture) {
  const CMatrix b = test::fixture("example_b.json");
  EXPECT_EQ(b, test::example_b());
}

TEST(MatrixJson, Layout) {
  CMatrix m(1, 2);
  m << Complex(1, 2), Complex(3, -4);
  const json doc = to_json(m);
  EXPECT_EQ(doc["rows"], 1);
  EXPECT_EQ(doc["cols"], 2);
  EXPECT_EQ(doc["data"][0][1][1], -4.0);
  EXPECT_EQ(from_json(doc), m);
}

TEST(MatrixJson, EmptyMatrix) {
  const json doc = {{"rows", 0}, {"cols", 0}, {"data", json::array()}};
  EXPECT_EQ(from_json(doc).size(), 0);
}

TEST(MatrixJson, ErrorsNameTheField) {
  const json good = to_json(test::real({{1, 2}, {3, 4}}));
  EXPECT_EQ(field_of(json::array()), "document");

  json d = good;
  d.erase("rows");
  EXPECT_EQ(field_of(d), "rows");

  d = good;
  d["cols"] = -1;
  EXPECT_EQ(field_of(d), "cols");

  d = good;
  d["rows"] = 3;
  EXPECT_EQ(field_of(d), "data");

  d = good;
  d["data"][1] = json::array({json::array({1, 0})});
  EXPECT_EQ(field_of(d), "data[1]");

  d = good;
  d["data"][1][0] = json::array({1, 0, 0});
  EXPECT_EQ(field_of(d), "data[1][0]");

  d = good;
  d["data"][0][1][1] = "x";
  EXPECT_EQ(field_of(d), "data[0][1][1]");

  d = good;
  d.erase("data");
  EXPECT_EQ(field_of(d), "data");
}

TEST_F(MatrixFileTest, MalformedJson) {
  const fs::path p = dir_ / "bad.json";
  std::ofstream(p) << "{\"rows\": 1, \"cols\": 1, \"data\": [[[1, 0]]";
  try {
    read_matrix(p);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.field(), "document");
  }
  EXPECT_THROW(read_matrix(dir_ / "missing.json"), std::runtime_error);
}

}  // namespace
}  // namespace ginv::io
