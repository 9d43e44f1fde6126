// Copyright 2026 The riscf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace riscf {

// Stream purposes. Values are part of the seeding contract; do not renumber.
enum class Stream : std::uint64_t {
  ApPositions = 1,
  RisPositions = 2,
  UserPositions = 3,
  ShadowDirect = 4,
  ShadowApRis = 5,
  ShadowRisUser = 6,
  LosPhase = 7,
  RisPhase = 8,
  DirectFading = 9,
  RisUserFading = 10,
  MarginalChannel = 11,
  PilotNoise = 12,
  Symbols = 13,
  ReceiverNoise = 14,
  Bootstrap = 15,
  Test = 99,
};

std::uint64_t mix64(std::uint64_t x) noexcept;

// SplitMix64 as a UniformRandomBitGenerator. Cheap to construct, used for
// draws keyed by a node or link index.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Labels identifying one random stream. Identical labels give identical
// draws; any differing label gives an unrelated stream.
struct SeedContext {
  std::uint64_t master_seed = 0;
  std::uint64_t topology = 0;
  std::uint64_t channel = 0;
  Stream purpose = Stream::Test;

  SeedContext with_topology(std::uint64_t t) const noexcept {
    SeedContext c = *this;
    c.topology = t;
    return c;
  }
  SeedContext with_channel(std::uint64_t ch) const noexcept {
    SeedContext c = *this;
    c.channel = ch;
    return c;
  }
  SeedContext with_purpose(Stream p) const noexcept {
    SeedContext c = *this;
    c.purpose = p;
    return c;
  }

  std::uint64_t derive() const noexcept;

  // Sequential stream for bulk per-draw sampling.
  std::mt19937_64 engine() const;
  // Stream keyed additionally by up to two indices (node, link, element).
  SplitMix64 keyed(std::uint64_t a, std::uint64_t b = 0) const noexcept;
};

}  // namespace riscf
