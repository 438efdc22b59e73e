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

#ifndef MPCDFG_PROTOCOLS_H_
#define MPCDFG_PROTOCOLS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpcdfg/ring_sharing.h"
#include "mpcdfg/runtime.h"

namespace mpcdfg {

// Square matrix of shared cells, row-major.
struct SharedMatrix {
  std::size_t width = 0;
  SharedVector cells;

  std::size_t index(std::size_t row, std::size_t col) const {
    return row * width + col;
  }
};

// Element-wise product of two sharings: one round, one ring element per lane
// per party.
SharedVector MulVec(Runtime& rt, const SharedVector& x, const SharedVector& y);

// Bitwise AND of two XOR-shared word vectors; same cost shape as MulVec.
SharedBits AndBits(Runtime& rt, const SharedBits& x, const SharedBits& y);

// Arithmetic-to-Boolean conversion: lane k of the result XOR-shares the 64
// bits of secret k, bit j of the word being bit j of the secret. The three
// additive summands are re-shared as Boolean values without communication,
// reduced to two operands by a carry-save layer, and added with a
// Kogge-Stone prefix circuit of depth log2(64).
SharedBits BitDecompose(Runtime& rt, const SharedVector& x);

// Bit k of every lane moved to position 0, all other bits cleared.
SharedBits ExtractBit(const SharedBits& words, int k);

// Bit 0 of lane k is 1 iff word k is zero (AND-fold of the negated bits).
SharedBits ZeroTest(Runtime& rt, const SharedBits& words);

// Converts bit 0 of each XOR-shared lane into an additive sharing of 0/1.
SharedBitVector BitToArith(Runtime& rt, const SharedBits& bits);

// [x_k == y_k] as an additive 0/1 sharing.
SharedBitVector Eq(Runtime& rt, const SharedVector& x, const SharedVector& y);

// [x_k < y_k] for secrets below 2^63, via the sign bit of x - y.
SharedBitVector Lt(Runtime& rt, const SharedVector& x, const SharedVector& y);

// b_k ? x_k : y_k, computed as y + b * (x - y).
SharedVector Mux(Runtime& rt, const SharedBitVector& b, const SharedVector& x,
                 const SharedVector& y);

// M[p][q] = u[p] * v[q] as one batched multiplication of m^2 lanes.
SharedMatrix OuterProduct(Runtime& rt, const SharedVector& u,
                          const SharedVector& v);

// Per-party communication of each primitive. Bytes are those sent by each
// party per input lane (per matrix cell for the outer product); every party
// sends the same amount.
struct PrimitiveCost {
  std::string_view name;
  std::uint64_t rounds;
  std::uint64_t bytes_per_lane;
};

namespace cost {
inline constexpr PrimitiveCost kMulVec{"mul_vec", 1, 8};
inline constexpr PrimitiveCost kAndBits{"and_bits", 1, 8};
inline constexpr PrimitiveCost kBitDecompose{"bit_decompose", 8, 104};
inline constexpr PrimitiveCost kZeroTest{"zero_test", 6, 48};
inline constexpr PrimitiveCost kBitToArith{"bit_to_arith", 2, 16};
inline constexpr PrimitiveCost kEq{"eq", 16, 168};
inline constexpr PrimitiveCost kLt{"lt", 10, 120};
inline constexpr PrimitiveCost kMux{"mux", 1, 8};
inline constexpr PrimitiveCost kOuterProduct{"outer_product", 1, 8};
inline constexpr PrimitiveCost kOpen{"open", 1, 8};
}  // namespace cost

std::vector<PrimitiveCost> CostTable();

// {primitive: {rounds, bytes_per_party_per_lane}}
nlohmann::json CostTableJson();

}  // namespace mpcdfg

#endif  // MPCDFG_PROTOCOLS_H_
