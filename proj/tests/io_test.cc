// tests/io_test.cc

// Copyright 2026  The sctc-mdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "sctc/io.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "sctc/error.h"

namespace sctc {
namespace {

ErrorCode ReadError(const std::string &text) {
  std::istringstream in(text);
  try {
    ReadMatrixCsv(in);
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::kIo;
}

TEST(MatrixCsv, RoundTripIsExact) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> normal(0.0, 1e3);
  Matrix m(5, 7);
  for (double &v : m.Data()) v = normal(rng);
  std::stringstream buffer;
  WriteMatrixCsv(buffer, m);
  EXPECT_EQ(ReadMatrixCsv(buffer), m);
}

TEST(MatrixCsv, Malformed) {
  EXPECT_EQ(ReadError(""), ErrorCode::kParse);
  EXPECT_EQ(ReadError("2,2\n1,2\n"), ErrorCode::kParse);
  EXPECT_EQ(ReadError("1,2\n1,2,3\n"), ErrorCode::kParse);
  EXPECT_EQ(ReadError("1,2\n1,abc\n"), ErrorCode::kParse);
}

TEST(MatrixCsv, MissingFileIsIoError) {
  try {
    ReadMatrixCsv(std::filesystem::path("/nonexistent/x.csv"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ErrorCodes, MessageCarriesName) {
  const Error e(ErrorCode::kInfeasibleTarget, "too short");
  EXPECT_EQ(std::string(e.what()), "InfeasibleTarget: too short");
  EXPECT_EQ(ErrorCodeName(ErrorCode::kIo), "Io");
}

}  // namespace
}  // namespace sctc
