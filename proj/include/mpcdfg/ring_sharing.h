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

#ifndef MPCDFG_RING_SHARING_H_
#define MPCDFG_RING_SHARING_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mpcdfg/errors.h"
#include "mpcdfg/prg.h"

namespace mpcdfg {

// Residue modulo 2^64; unsigned overflow is the ring arithmetic.
using RingElem = std::uint64_t;

inline constexpr int kNumParties = 3;

class PartyId {
 public:
  constexpr explicit PartyId(int index) : index_(index) {
    if (index < 0 || index >= kNumParties) {
      throw RangeError("party index out of range");
    }
  }

  constexpr int index() const { return index_; }
  constexpr PartyId next() const { return PartyId((index_ + 1) % kNumParties); }
  constexpr PartyId prev() const {
    return PartyId((index_ + kNumParties - 1) % kNumParties);
  }

  constexpr bool operator==(const PartyId&) const = default;

 private:
  int index_;
};

inline constexpr std::array<PartyId, kNumParties> kAllParties = {
    PartyId(0), PartyId(1), PartyId(2)};

// Party i's view of a 2-out-of-3 replicated sharing x = s0 + s1 + s2: the
// pair (s_i, s_{i+1 mod 3}).
struct ReplicatedShare {
  PartyId party;
  RingElem first;
  RingElem second;
};

using ShareViews = std::array<ReplicatedShare, kNumParties>;

// Shares `secret` with the first two summands fixed by the caller.
ShareViews ShareWith(RingElem secret, RingElem s0, RingElem s1);

// Shares `secret` with s0, s1 drawn from `randomness`.
ShareViews Share(RingElem secret, Prg& randomness);

// Recovers the secret from two distinct parties' views. Throws
// IntegrityError when the replicated component they both hold disagrees.
RingElem Reconstruct(const ReplicatedShare& a, const ReplicatedShare& b);

// One party's columnar slice of a shared vector.
struct PartyShares {
  std::vector<RingElem> first;
  std::vector<RingElem> second;

  std::size_t size() const { return first.size(); }
};

struct ArithmeticDomain {};
struct BooleanDomain {};

// Column-oriented replicated sharing of n lanes, held as three party views.
// The domain tag separates additive (mod 2^64) sharings from XOR sharings of
// 64-bit words; all operations here are local.
template <typename Domain>
class ReplicatedVector {
 public:
  ReplicatedVector() = default;

  explicit ReplicatedVector(std::size_t n) {
    for (auto& p : parts_) {
      p.first.assign(n, 0);
      p.second.assign(n, 0);
    }
  }

  explicit ReplicatedVector(std::array<PartyShares, kNumParties> parts)
      : parts_(std::move(parts)) {
    const std::size_t n = parts_[0].first.size();
    for (const auto& p : parts_) {
      if (p.first.size() != n || p.second.size() != n) {
        throw ShapeError("party views disagree on vector length");
      }
    }
  }

  // Sharing of public values: the value sits in summand s0 (held by parties
  // 0 and 2) and the other summands are zero.
  static ReplicatedVector FromPublic(std::span<const RingElem> values) {
    ReplicatedVector out(values.size());
    std::copy(values.begin(), values.end(), out.parts_[0].first.begin());
    std::copy(values.begin(), values.end(), out.parts_[2].second.begin());
    return out;
  }

  static ReplicatedVector FromPublic(std::size_t n, RingElem value) {
    std::vector<RingElem> values(n, value);
    return FromPublic(values);
  }

  std::size_t size() const { return parts_[0].first.size(); }
  bool empty() const { return size() == 0; }

  PartyShares& party(PartyId id) { return parts_[id.index()]; }
  const PartyShares& party(PartyId id) const { return parts_[id.index()]; }

  ReplicatedShare view(PartyId id, std::size_t lane) const {
    const auto& p = parts_[id.index()];
    return {id, p.first.at(lane), p.second.at(lane)};
  }

  ReplicatedVector Slice(std::size_t offset, std::size_t count) const {
    if (offset + count > size()) throw ShapeError("slice out of range");
    ReplicatedVector out;
    for (int i = 0; i < kNumParties; ++i) {
      const auto& src = parts_[i];
      out.parts_[i].first.assign(src.first.begin() + offset,
                                 src.first.begin() + offset + count);
      out.parts_[i].second.assign(src.second.begin() + offset,
                                  src.second.begin() + offset + count);
    }
    return out;
  }

  ReplicatedVector Gather(std::span<const std::size_t> lanes) const {
    ReplicatedVector out;
    for (int i = 0; i < kNumParties; ++i) {
      const auto& src = parts_[i];
      auto& dst = out.parts_[i];
      dst.first.resize(lanes.size());
      dst.second.resize(lanes.size());
      for (std::size_t k = 0; k < lanes.size(); ++k) {
        dst.first[k] = src.first[lanes[k]];
        dst.second[k] = src.second[lanes[k]];
      }
    }
    return out;
  }

  void Scatter(std::span<const std::size_t> lanes,
               const ReplicatedVector& values) {
    if (lanes.size() != values.size()) throw ShapeError("scatter length");
    for (int i = 0; i < kNumParties; ++i) {
      auto& dst = parts_[i];
      const auto& src = values.parts_[i];
      for (std::size_t k = 0; k < lanes.size(); ++k) {
        dst.first[lanes[k]] = src.first[k];
        dst.second[lanes[k]] = src.second[k];
      }
    }
  }

  void Append(const ReplicatedVector& tail) {
    for (int i = 0; i < kNumParties; ++i) {
      auto& dst = parts_[i];
      const auto& src = tail.parts_[i];
      dst.first.insert(dst.first.end(), src.first.begin(), src.first.end());
      dst.second.insert(dst.second.end(), src.second.begin(),
                        src.second.end());
    }
  }

  static ReplicatedVector Concat(std::span<const ReplicatedVector> parts) {
    ReplicatedVector out;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    for (auto& p : out.parts_) {
      p.first.reserve(total);
      p.second.reserve(total);
    }
    for (const auto& p : parts) out.Append(p);
    return out;
  }

 private:
  std::array<PartyShares, kNumParties> parts_;
};

using SharedVector = ReplicatedVector<ArithmeticDomain>;
using SharedBits = ReplicatedVector<BooleanDomain>;

// An arithmetic sharing whose secrets are constrained to {0, 1}.
using SharedBitVector = SharedVector;

// Local (communication-free) arithmetic on additive sharings.
SharedVector AddLocal(const SharedVector& x, const SharedVector& y);
SharedVector SubLocal(const SharedVector& x, const SharedVector& y);
SharedVector ScaleByPublic(const SharedVector& x, RingElem k);
SharedVector AddPublic(const SharedVector& x, RingElem k);

// Local operations on XOR sharings of 64-bit words.
SharedBits XorLocal(const SharedBits& x, const SharedBits& y);
SharedBits XorPublic(const SharedBits& x, std::uint64_t mask);
SharedBits AndPublic(const SharedBits& x, std::uint64_t mask);
SharedBits ShiftLeft(const SharedBits& x, int bits);
SharedBits ShiftRight(const SharedBits& x, int bits);

// Test-mode reconstruction of every lane from all three views, verifying the
// replication invariant. Never called by protocol code.
std::vector<RingElem> Reconstruct(const SharedVector& x);
std::vector<std::uint64_t> Reconstruct(const SharedBits& x);

namespace testing_hooks {
// Number of secret values reconstructed to plaintext so far in this process.
std::uint64_t ReconstructionCount();
void RecordReconstructions(std::uint64_t n);
}  // namespace testing_hooks

}  // namespace mpcdfg

#endif  // MPCDFG_RING_SHARING_H_
