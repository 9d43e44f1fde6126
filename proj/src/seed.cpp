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

#include "riscf/seed.hpp"

namespace riscf {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

namespace {
std::uint64_t absorb(std::uint64_t h, std::uint64_t label) noexcept {
  return mix64(h ^ mix64(label + 0x9e3779b97f4a7c15ULL));
}
}  // namespace

std::uint64_t SeedContext::derive() const noexcept {
  std::uint64_t h = mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
  h = absorb(h, topology);
  h = absorb(h, channel);
  h = absorb(h, static_cast<std::uint64_t>(purpose));
  return h;
}

std::mt19937_64 SeedContext::engine() const {
  const std::uint64_t s = derive();
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

SplitMix64 SeedContext::keyed(std::uint64_t a, std::uint64_t b) const noexcept {
  return SplitMix64(absorb(absorb(derive(), a), b));
}

}  // namespace riscf
