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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace saska {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string ToHex(ByteView data, bool upper = false);
// Throws kInvalidArgument on odd length or non-hex characters.
Bytes FromHex(std::string_view hex);

ByteView AsBytes(std::string_view s);

// Big-endian writer used by the wire codec.
class ByteWriter {
 public:
  void U8(std::uint8_t v) { out_.push_back(v); }
  void U16(std::uint16_t v);
  void U32(std::uint32_t v);
  void Raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }
  // 2-octet length prefix followed by the data; throws kInvalidArgument if
  // the data does not fit.
  void Field(ByteView data);

  std::size_t size() const { return out_.size(); }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Bounds-checked big-endian reader. Every short read throws
// kMalformedMessage.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  std::uint8_t U8();
  std::uint16_t U16();
  std::uint32_t U32();
  ByteView Raw(std::size_t n);
  ByteView Field();
  ByteView Rest();

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace saska
