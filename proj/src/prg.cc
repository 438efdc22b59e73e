// Copyright 2026 The mpcdfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpcdfg/prg.h"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace mpcdfg {
namespace {

constexpr std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES>
    kNonce{};

void EnsureSodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

Prg::Prg(const Key& key) : key_(key) { EnsureSodium(); }

Prg Prg::FromSeed(std::uint64_t seed, std::string_view label) {
  EnsureSodium();
  std::array<std::uint8_t, 8> seed_bytes;
  std::memcpy(seed_bytes.data(), &seed, sizeof(seed));
  crypto_generichash_state state;
  Key key;
  crypto_generichash_init(&state, nullptr, 0, key.size());
  crypto_generichash_update(&state, seed_bytes.data(), seed_bytes.size());
  crypto_generichash_update(
      &state, reinterpret_cast<const unsigned char*>(label.data()),
      label.size());
  crypto_generichash_final(&state, key.data(), key.size());
  return Prg(key);
}

void Prg::Refill() {
  constexpr std::size_t kBytes = sizeof(buffer_);
  std::memset(buffer_.data(), 0, kBytes);
  auto* raw = reinterpret_cast<unsigned char*>(buffer_.data());
  crypto_stream_chacha20_ietf_xor_ic(raw, raw, kBytes, kNonce.data(),
                                     block_counter_, key_.data());
  block_counter_ += kBytes / 64;
  pos_ = 0;
}

std::uint64_t Prg::NextU64() {
  if (pos_ == buffer_.size()) Refill();
  return buffer_[pos_++];
}

void Prg::Fill(std::span<std::uint64_t> out) {
  while (!out.empty()) {
    if (pos_ == buffer_.size()) Refill();
    const std::size_t n = std::min(out.size(), buffer_.size() - pos_);
    std::memcpy(out.data(), buffer_.data() + pos_, n * sizeof(std::uint64_t));
    pos_ += n;
    out = out.subspan(n);
  }
}

}  // namespace mpcdfg
