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

#include <iosfwd>
#include <vector>

#include "riscf/scenario.hpp"
#include "riscf/seed.hpp"

namespace riscf {

// x/y in kilometres inside the D x D square, z (height) in metres.
struct Position {
  double x_km = 0.0;
  double y_km = 0.0;
  double z_m = 0.0;
};

struct Topology {
  std::vector<Position> aps;
  std::vector<Position> surfaces;
  std::vector<Position> users;
};

// Uniform placement. Each node's coordinates come from a stream keyed by its
// index, so the first n nodes are identical for any count >= n.
// Uses seed.master_seed and seed.topology; the purpose label is ignored.
Topology draw_topology(const ScenarioConfig& cfg, const SeedContext& seed);

// 3-D Euclidean distance in metres.
double distance_m(const Position& a, const Position& b) noexcept;

// node_type,index,x_km,y_km,z_m
void write_topology_csv(std::ostream& out, const Topology& topo);

}  // namespace riscf
