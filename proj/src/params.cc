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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "saska/error.h"
#include "saska/sha256.h"

namespace saska {

namespace {

constexpr const char* kD2dP = "3141592653589793238462643383279502886819";
constexpr const char* kD2dQ = "1570796326794896619231321691639751443409";

constexpr const char* kModp2048PHex =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

DhParams MakeModp2048() {
  BigInt p(std::string("0x") + kModp2048PHex);
  BigInt q = (p - 1) / 2;
  return ValidateParams(std::move(p), std::move(q), BigInt(2));
}

std::string_view Trim(std::string_view s) {
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

const DhParams& BuiltinParams(std::string_view name) {
  if (name == kTestParamSet) {
    static const DhParams params = ValidateParams(23, 11, 2);
    return params;
  }
  if (name == kD2dParamSet) {
    // Safe prime p = 2q + 1; 4 is a square, so it generates the order-q
    // subgroup.
    static const DhParams params =
        ValidateParams(BigInt(kD2dP), BigInt(kD2dQ), BigInt(4));
    return params;
  }
  if (name == kModp2048ParamSet) {
    static const DhParams params = MakeModp2048();
    return params;
  }
  Throw(Errc::kInvalidArgument, "unknown parameter set: " + std::string(name));
}

std::vector<std::string_view> BuiltinParamNames() {
  return {kTestParamSet, kD2dParamSet, kModp2048ParamSet};
}

DhParams ParseParams(std::string_view text) {
  std::vector<BigInt> values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = Trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    bool digits = std::all_of(line.begin(), line.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    if (!digits) {
      Throw(Errc::kInvalidArgument,
            "line " + std::to_string(line_no) + ": expected a decimal integer");
    }
    values.emplace_back(std::string(line));
  }
  if (values.size() != 3) {
    Throw(Errc::kInvalidArgument, "expected exactly three integers p, q, g");
  }
  return ValidateParams(values[0], values[1], values[2]);
}

DhParams LoadParamsFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    Throw(Errc::kInvalidArgument, "cannot read parameter file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return ParseParams(text.str());
}

DhParams ResolveParams(std::string_view name_or_path) {
  for (std::string_view name : BuiltinParamNames()) {
    if (name == name_or_path) return BuiltinParams(name);
  }
  return LoadParamsFile(std::filesystem::path(std::string(name_or_path)));
}

std::uint32_t ParamSetId(const DhParams& params) {
  ByteWriter w;
  w.Raw(AsBytes("SASKA-PARAMS"));
  w.Field(EncodeMagnitude(params.p()));
  w.Field(EncodeMagnitude(params.q()));
  w.Field(EncodeMagnitude(params.g()));
  Digest d = Sha256(w.Take());
  return (std::uint32_t{d[0]} << 24) | (std::uint32_t{d[1]} << 16) |
         (std::uint32_t{d[2]} << 8) | d[3];
}

}  // namespace saska
