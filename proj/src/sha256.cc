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

#include "saska/sha256.h"

#include <openssl/evp.h>

#include "saska/error.h"

namespace saska {

namespace {

Digest OneShot(const EVP_MD* md, ByteView data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 ||
      len != kDigestSize) {
    Throw(Errc::kInvalidArgument, "digest computation failed");
  }
  return out;
}

EVP_MD_CTX* Ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }

}  // namespace

Digest Sha256(ByteView data) { return OneShot(EVP_sha256(), data); }

Digest Sha3_256(ByteView data) { return OneShot(EVP_sha3_256(), data); }

Sha256Stream::Sha256Stream() : ctx_(EVP_MD_CTX_new()) {
  if (ctx_ == nullptr || EVP_DigestInit_ex(Ctx(ctx_), EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(Ctx(ctx_));
    throw std::bad_alloc();
  }
}

Sha256Stream::~Sha256Stream() { EVP_MD_CTX_free(Ctx(ctx_)); }

Sha256Stream& Sha256Stream::Update(ByteView data) {
  EVP_DigestUpdate(Ctx(ctx_), data.data(), data.size());
  return *this;
}

Digest Sha256Stream::Final() {
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(Ctx(ctx_), out.data(), &len);
  return out;
}

}  // namespace saska
