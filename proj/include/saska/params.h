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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "saska/group.h"

namespace saska {

// 11-element subgroup of Z_23^*; for tests and simulation.
inline constexpr std::string_view kTestParamSet = "test-23";
// 40-decimal-digit safe prime (132 bits), the default for peers.
inline constexpr std::string_view kD2dParamSet = "d2d-40";
// RFC 3526 group 14.
inline constexpr std::string_view kModp2048ParamSet = "modp-2048";

inline constexpr std::string_view kDefaultParamSet = kD2dParamSet;

// Environment variable naming a parameter file used when none is given.
inline constexpr const char* kParamsEnvVar = "SASKA_PARAMS";

// Built-in sets are validated once on first use. Throws kInvalidArgument
// for an unknown name.
const DhParams& BuiltinParams(std::string_view name);
std::vector<std::string_view> BuiltinParamNames();

// Three decimal integers p, q, g, one per line; '#' starts a comment.
DhParams ParseParams(std::string_view text);
DhParams LoadParamsFile(const std::filesystem::path& path);

// A built-in name, otherwise a path to a parameter file.
DhParams ResolveParams(std::string_view name_or_path);

// 32-bit identifier carried in Msg2 so peers detect differing groups.
// First four octets of SHA-256 over the length-prefixed p, q, g.
std::uint32_t ParamSetId(const DhParams& params);

}  // namespace saska
