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

#include "mpcdfg/ring_sharing.h"

#include <atomic>

namespace mpcdfg {
namespace {

std::atomic<std::uint64_t> g_reconstructions{0};

template <typename Domain, typename Op>
ReplicatedVector<Domain> Zip(const ReplicatedVector<Domain>& x,
                             const ReplicatedVector<Domain>& y, Op op) {
  if (x.size() != y.size()) throw ShapeError("operand length mismatch");
  ReplicatedVector<Domain> out(x.size());
  for (PartyId id : kAllParties) {
    const auto& a = x.party(id);
    const auto& b = y.party(id);
    auto& c = out.party(id);
    for (std::size_t k = 0; k < x.size(); ++k) {
      c.first[k] = op(a.first[k], b.first[k]);
      c.second[k] = op(a.second[k], b.second[k]);
    }
  }
  return out;
}

template <typename Domain, typename Op>
ReplicatedVector<Domain> Map(const ReplicatedVector<Domain>& x, Op op) {
  ReplicatedVector<Domain> out(x.size());
  for (PartyId id : kAllParties) {
    const auto& a = x.party(id);
    auto& c = out.party(id);
    for (std::size_t k = 0; k < x.size(); ++k) {
      c.first[k] = op(a.first[k]);
      c.second[k] = op(a.second[k]);
    }
  }
  return out;
}

// Applies `op` to summand s0 only, i.e. party 0's first and party 2's second
// component.
template <typename Domain, typename Op>
ReplicatedVector<Domain> MapFirstSummand(const ReplicatedVector<Domain>& x,
                                         Op op) {
  ReplicatedVector<Domain> out = x;
  for (auto& v : out.party(PartyId(0)).first) v = op(v);
  for (auto& v : out.party(PartyId(2)).second) v = op(v);
  return out;
}

template <typename Domain, typename Combine>
std::vector<RingElem> ReconstructAll(const ReplicatedVector<Domain>& x,
                                     Combine combine) {
  const std::size_t n = x.size();
  for (PartyId id : kAllParties) {
    const auto& mine = x.party(id).second;
    const auto& theirs = x.party(id.next()).first;
    for (std::size_t k = 0; k < n; ++k) {
      if (mine[k] != theirs[k]) {
        throw IntegrityError("replicated component mismatch at lane " +
                             std::to_string(k));
      }
    }
  }
  const auto& p0 = x.party(PartyId(0));
  const auto& p1 = x.party(PartyId(1));
  std::vector<RingElem> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = combine(combine(p0.first[k], p0.second[k]), p1.second[k]);
  }
  return out;
}

}  // namespace

ShareViews ShareWith(RingElem secret, RingElem s0, RingElem s1) {
  const RingElem s2 = secret - s0 - s1;
  return {ReplicatedShare{PartyId(0), s0, s1},
          ReplicatedShare{PartyId(1), s1, s2},
          ReplicatedShare{PartyId(2), s2, s0}};
}

ShareViews Share(RingElem secret, Prg& randomness) {
  const RingElem s0 = randomness.NextU64();
  const RingElem s1 = randomness.NextU64();
  return ShareWith(secret, s0, s1);
}

RingElem Reconstruct(const ReplicatedShare& a, const ReplicatedShare& b) {
  if (a.party == b.party) {
    throw IntegrityError("reconstruction needs two distinct parties");
  }
  // Order the views so that `lo.party.next() == hi.party`.
  const bool adjacent = a.party.next() == b.party;
  const ReplicatedShare& lo = adjacent ? a : b;
  const ReplicatedShare& hi = adjacent ? b : a;
  if (lo.second != hi.first) {
    throw IntegrityError("views come from different sharings");
  }
  return lo.first + lo.second + hi.second;
}

SharedVector AddLocal(const SharedVector& x, const SharedVector& y) {
  return Zip(x, y, [](RingElem a, RingElem b) { return a + b; });
}

SharedVector SubLocal(const SharedVector& x, const SharedVector& y) {
  return Zip(x, y, [](RingElem a, RingElem b) { return a - b; });
}

SharedVector ScaleByPublic(const SharedVector& x, RingElem k) {
  return Map(x, [k](RingElem a) { return a * k; });
}

SharedVector AddPublic(const SharedVector& x, RingElem k) {
  return MapFirstSummand(x, [k](RingElem a) { return a + k; });
}

SharedBits XorLocal(const SharedBits& x, const SharedBits& y) {
  return Zip(x, y, [](std::uint64_t a, std::uint64_t b) { return a ^ b; });
}

SharedBits XorPublic(const SharedBits& x, std::uint64_t mask) {
  return MapFirstSummand(x, [mask](std::uint64_t a) { return a ^ mask; });
}

SharedBits AndPublic(const SharedBits& x, std::uint64_t mask) {
  return Map(x, [mask](std::uint64_t a) { return a & mask; });
}

SharedBits ShiftLeft(const SharedBits& x, int bits) {
  return Map(x, [bits](std::uint64_t a) { return a << bits; });
}

SharedBits ShiftRight(const SharedBits& x, int bits) {
  return Map(x, [bits](std::uint64_t a) { return a >> bits; });
}

std::vector<RingElem> Reconstruct(const SharedVector& x) {
  return ReconstructAll(x, [](RingElem a, RingElem b) { return a + b; });
}

std::vector<std::uint64_t> Reconstruct(const SharedBits& x) {
  return ReconstructAll(x,
                        [](std::uint64_t a, std::uint64_t b) { return a ^ b; });
}

namespace testing_hooks {

std::uint64_t ReconstructionCount() { return g_reconstructions.load(); }

void RecordReconstructions(std::uint64_t n) { g_reconstructions += n; }

}  // namespace testing_hooks
}  // namespace mpcdfg
