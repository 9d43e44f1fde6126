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

#include "riscf/geometry.hpp"

#include <cmath>
#include <ostream>
#include <random>

namespace riscf {
namespace {

std::vector<Position> place(std::size_t count, double side_km, double height_m,
                            const SeedContext& seed) {
  std::vector<Position> out(count);
  std::uniform_real_distribution<double> coord(0.0, side_km);
  for (std::size_t i = 0; i < count; ++i) {
    auto eng = seed.keyed(i);
    out[i].x_km = coord(eng);
    out[i].y_km = coord(eng);
    out[i].z_m = height_m;
  }
  return out;
}

}  // namespace

Topology draw_topology(const ScenarioConfig& cfg, const SeedContext& seed) {
  Topology t;
  const double side = cfg.area_side_km;
  t.aps = place(cfg.ap_count, side, cfg.ap_height_m, seed.with_channel(0).with_purpose(Stream::ApPositions));
  t.surfaces = place(cfg.ris_count, side, cfg.ris_height_m,
                     seed.with_channel(0).with_purpose(Stream::RisPositions));
  t.users = place(cfg.user_count, side, cfg.user_height_m,
                  seed.with_channel(0).with_purpose(Stream::UserPositions));
  return t;
}

double distance_m(const Position& a, const Position& b) noexcept {
  const double dx = (a.x_km - b.x_km) * 1000.0;
  const double dy = (a.y_km - b.y_km) * 1000.0;
  const double dz = a.z_m - b.z_m;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void write_topology_csv(std::ostream& out, const Topology& topo) {
  out << "node_type,index,x_km,y_km,z_m\n";
  auto dump = [&out](const char* type, const std::vector<Position>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out << type << ',' << i << ',' << nodes[i].x_km << ',' << nodes[i].y_km << ','
          << nodes[i].z_m << '\n';
  };
  const auto old = out.precision(17);
  dump("ap", topo.aps);
  dump("ris", topo.surfaces);
  dump("user", topo.users);
  out.precision(old);
}

}  // namespace riscf
