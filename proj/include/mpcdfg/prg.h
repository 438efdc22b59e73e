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

#ifndef MPCDFG_PRG_H_
#define MPCDFG_PRG_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace mpcdfg {

// ChaCha20 keystream expanded from a 256-bit key. Single consumer; copying a
// Prg forks an identical stream.
class Prg {
 public:
  using Key = std::array<std::uint8_t, 32>;

  explicit Prg(const Key& key);

  // Derives a key from a numeric seed and a domain-separation label.
  static Prg FromSeed(std::uint64_t seed, std::string_view label);

  std::uint64_t NextU64();
  void Fill(std::span<std::uint64_t> out);

 private:
  void Refill();

  Key key_;
  std::uint32_t block_counter_ = 0;
  std::array<std::uint64_t, 64> buffer_{};
  std::size_t pos_ = buffer_.size();
};

}  // namespace mpcdfg

#endif  // MPCDFG_PRG_H_
