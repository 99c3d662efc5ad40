// Copyright 2026 The saska Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "saska/params.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "saska/error.h"

namespace saska {
namespace {

TEST(BuiltinParamsTest, AllSetsValidate) {
  for (std::string_view name : BuiltinParamNames()) {
    const DhParams& p = BuiltinParams(name);
    EXPECT_TRUE(InSubgroup(p, p.g())) << name;
  }
}

TEST(BuiltinParamsTest, D2dSetHasFortyDigitModulus) {
  const DhParams& p = BuiltinParams(kD2dParamSet);
  EXPECT_EQ(p.p().str().size(), 40u);
  EXPECT_EQ(boost::multiprecision::msb(p.p()) + 1, 132u);
  EXPECT_EQ(p.p(), 2 * p.q() + 1);
}

TEST(BuiltinParamsTest, Modp2048Size) {
  const DhParams& p = BuiltinParams(kModp2048ParamSet);
  EXPECT_EQ(boost::multiprecision::msb(p.p()) + 1, 2048u);
  EXPECT_EQ(p.g(), 2);
}

TEST(BuiltinParamsTest, UnknownNameRejected) {
  EXPECT_THROW(BuiltinParams("nope"), Error);
}

TEST(ParseParamsTest, AcceptsCommentsAndBlankLines) {
  DhParams p = ParseParams("# test group\n23  # p\n\n  11\n2\n");
  EXPECT_EQ(p, ValidateParams(23, 11, 2));
}

TEST(ParseParamsTest, RejectsBadInput) {
  EXPECT_THROW(ParseParams("23\n11\n"), Error);
  EXPECT_THROW(ParseParams("23\n11\n2\n5\n"), Error);
  EXPECT_THROW(ParseParams("23\n0x0b\n2\n"), Error);
  try {
    ParseParams("23\n11\n5\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kBadGenerator);
  }
}

TEST(ParseParamsTest, LoadsFromFileAndResolves) {
  auto path = std::filesystem::temp_directory_path() / "saska_params_test.txt";
  {
    std::ofstream out(path);
    out << "# p, q, g\n23\n11\n4\n";
  }
  EXPECT_EQ(LoadParamsFile(path).g(), 4);
  EXPECT_EQ(ResolveParams(path.string()).g(), 4);
  EXPECT_EQ(ResolveParams("test-23"), BuiltinParams(kTestParamSet));
  std::filesystem::remove(path);
  EXPECT_THROW(LoadParamsFile(path), Error);
}

TEST(ParamSetIdTest, StableAndDistinct) {
  const auto a = ParamSetId(BuiltinParams(kTestParamSet));
  EXPECT_EQ(a, ParamSetId(ValidateParams(23, 11, 2)));
  EXPECT_NE(a, ParamSetId(ValidateParams(23, 11, 4)));
  EXPECT_NE(a, ParamSetId(BuiltinParams(kD2dParamSet)));
}

}  // namespace
}  // namespace saska
