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

#include "mpcdfg/protocols.h"

#include <array>

namespace mpcdfg {
namespace {

using Summands = std::array<std::vector<std::uint64_t>, kNumParties>;

// The additive summand s_j of a sharing, re-shared as its own sharing with
// every other summand zero. Party i holds (s_i, s_{i+1}), so it can place
// s_i and s_{i+1} but knows nothing of s_{i+2}.
template <typename Out, typename In>
Out SummandAsSharing(const In& x, int j, std::uint64_t mask) {
  Out out(x.size());
  for (PartyId id : kAllParties) {
    const auto& src = x.party(id);
    auto& dst = out.party(id);
    if (id.index() == j) {
      for (std::size_t k = 0; k < x.size(); ++k) dst.first[k] = src.first[k] & mask;
    } else if (id.next().index() == j) {
      for (std::size_t k = 0; k < x.size(); ++k) {
        dst.second[k] = src.second[k] & mask;
      }
    }
  }
  return out;
}

}  // namespace

SharedVector MulVec(Runtime& rt, const SharedVector& x, const SharedVector& y) {
  if (x.size() != y.size()) throw ShapeError("mul_vec length mismatch");
  const std::size_t n = x.size();
  Summands z;
  for (PartyId id : kAllParties) {
    auto& out = z[id.index()];
    out.resize(n);
    rt.randomness(id).ZeroShareArith(out);
    const auto& a = x.party(id);
    const auto& b = y.party(id);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] += a.first[k] * b.first[k] + a.first[k] * b.second[k] +
                a.second[k] * b.first[k];
    }
  }
  return rt.Reshare<ArithmeticDomain>(std::move(z));
}

SharedBits AndBits(Runtime& rt, const SharedBits& x, const SharedBits& y) {
  if (x.size() != y.size()) throw ShapeError("and_bits length mismatch");
  const std::size_t n = x.size();
  Summands z;
  for (PartyId id : kAllParties) {
    auto& out = z[id.index()];
    out.resize(n);
    rt.randomness(id).ZeroShareXor(out);
    const auto& a = x.party(id);
    const auto& b = y.party(id);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] ^= (a.first[k] & b.first[k]) ^ (a.first[k] & b.second[k]) ^
                (a.second[k] & b.first[k]);
    }
  }
  return rt.Reshare<BooleanDomain>(std::move(z));
}

SharedBits BitDecompose(Runtime& rt, const SharedVector& x) {
  constexpr std::uint64_t kAll = ~std::uint64_t{0};
  const std::size_t n = x.size();
  const auto x0 = SummandAsSharing<SharedBits>(x, 0, kAll);
  const auto x1 = SummandAsSharing<SharedBits>(x, 1, kAll);
  const auto x2 = SummandAsSharing<SharedBits>(x, 2, kAll);

  // Carry-save layer: x0 + x1 + x2 = sum + 2 * maj(x0, x1, x2).
  const SharedBits sum = XorLocal(XorLocal(x0, x1), x2);
  const SharedBits carry =
      XorLocal(AndBits(rt, XorLocal(x0, x2), XorLocal(x1, x2)), x2);

  const SharedBits a = sum;
  const SharedBits b = ShiftLeft(carry, 1);
  SharedBits generate = AndBits(rt, a, b);
  SharedBits propagate = XorLocal(a, b);
  for (int d = 1; d < 64; d <<= 1) {
    const SharedBits shifted_g = ShiftLeft(generate, d);
    if (d == 32) {
      generate = XorLocal(generate, AndBits(rt, propagate, shifted_g));
      break;
    }
    // G' = G | (P & G<<d), P' = P & P<<d in one round. G and P & G<<d are
    // never both set, so the OR is an XOR.
    std::array<SharedBits, 2> lhs = {propagate, propagate};
    std::array<SharedBits, 2> rhs = {shifted_g, ShiftLeft(propagate, d)};
    const SharedBits both =
        AndBits(rt, SharedBits::Concat(lhs), SharedBits::Concat(rhs));
    generate = XorLocal(generate, both.Slice(0, n));
    propagate = both.Slice(n, n);
  }
  return XorLocal(XorLocal(a, b), ShiftLeft(generate, 1));
}

SharedBits ExtractBit(const SharedBits& words, int k) {
  return AndPublic(ShiftRight(words, k), 1);
}

SharedBits ZeroTest(Runtime& rt, const SharedBits& words) {
  SharedBits z = XorPublic(words, ~std::uint64_t{0});
  for (int s = 32; s >= 1; s >>= 1) {
    z = AndBits(rt, z, ShiftRight(z, s));
  }
  return AndPublic(z, 1);
}

SharedBitVector BitToArith(Runtime& rt, const SharedBits& bits) {
  // b = b0 ^ b1 ^ b2 with each b_j known to two parties; u ^ v is
  // u + v - 2uv over the integers.
  const auto a0 = SummandAsSharing<SharedVector>(bits, 0, 1);
  const auto a1 = SummandAsSharing<SharedVector>(bits, 1, 1);
  const auto a2 = SummandAsSharing<SharedVector>(bits, 2, 1);
  const SharedVector x01 = SubLocal(
      AddLocal(a0, a1), ScaleByPublic(MulVec(rt, a0, a1), 2));
  return SubLocal(AddLocal(x01, a2), ScaleByPublic(MulVec(rt, x01, a2), 2));
}

SharedBitVector Eq(Runtime& rt, const SharedVector& x, const SharedVector& y) {
  const SharedBits bits = BitDecompose(rt, SubLocal(x, y));
  return BitToArith(rt, ZeroTest(rt, bits));
}

SharedBitVector Lt(Runtime& rt, const SharedVector& x, const SharedVector& y) {
  const SharedBits bits = BitDecompose(rt, SubLocal(x, y));
  return BitToArith(rt, ExtractBit(bits, 63));
}

SharedVector Mux(Runtime& rt, const SharedBitVector& b, const SharedVector& x,
                 const SharedVector& y) {
  if (b.size() != x.size() || x.size() != y.size()) {
    throw ShapeError("mux length mismatch");
  }
  return AddLocal(y, MulVec(rt, b, SubLocal(x, y)));
}

SharedMatrix OuterProduct(Runtime& rt, const SharedVector& u,
                          const SharedVector& v) {
  if (u.size() != v.size()) throw ShapeError("outer_product length mismatch");
  const std::size_t m = u.size();
  std::vector<std::size_t> rows(m * m);
  std::vector<std::size_t> cols(m * m);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) {
      rows[p * m + q] = p;
      cols[p * m + q] = q;
    }
  }
  return {m, MulVec(rt, u.Gather(rows), v.Gather(cols))};
}

std::vector<PrimitiveCost> CostTable() {
  return {cost::kMulVec,     cost::kAndBits,    cost::kBitDecompose,
          cost::kZeroTest,   cost::kBitToArith, cost::kEq,
          cost::kLt,         cost::kMux,        cost::kOuterProduct,
          cost::kOpen};
}

nlohmann::json CostTableJson() {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& c : CostTable()) {
    out[std::string(c.name)] = {{"rounds", c.rounds},
                                {"bytes_per_party_per_lane", c.bytes_per_lane}};
  }
  return out;
}

}  // namespace mpcdfg
