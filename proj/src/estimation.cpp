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

#include "riscf/estimation.hpp"

#include <numbers>
#include <stdexcept>

#include "riscf/channels.hpp"
#include "riscf/kernels.hpp"

namespace riscf {

PilotBook PilotBook::dft(std::size_t length, std::size_t users) {
  if (users > length) throw std::invalid_argument("PilotBook: more users than pilot symbols");
  PilotBook book;
  book.by_user_ = ComplexMatrix(users, length);
  const double scale = 1.0 / std::sqrt(static_cast<double>(length));
  for (std::size_t k = 0; k < users; ++k)
    for (std::size_t t = 0; t < length; ++t) {
      // Reduce k*t mod length first so the angle stays small.
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>((k * t) % length) / static_cast<double>(length);
      book.by_user_(k, t) = std::polar(scale, angle);
    }
  book.by_symbol_ = book.by_user_.transposed();
  return book;
}

ComplexMatrix receive_pilots(const ComplexMatrix& g, const PilotBook& pilots, double p_c,
                             const ComplexMatrix& noise) {
  const std::size_t M = g.rows();
  const std::size_t L = pilots.length();
  if (g.cols() != pilots.users() || noise.rows() != M || noise.cols() != L)
    throw std::invalid_argument("receive_pilots: shape mismatch");
  const double amp = std::sqrt(static_cast<double>(L) * p_c);
  const auto& kern = kernels::active();
  ComplexMatrix y(M, L);
  for (std::size_t m = 0; m < M; ++m) {
    const auto gm = g.row(m);
    for (std::size_t t = 0; t < L; ++t)
      y(m, t) = amp * kern.dotu(gm.data(), pilots.symbol(t).data(), gm.size()) + noise(m, t);
  }
  return y;
}

ComplexMatrix receive_pilots(const ComplexMatrix& g, const PilotBook& pilots, double p_c,
                             std::mt19937_64& eng) {
  ComplexMatrix noise(g.rows(), pilots.length());
  for (auto& w : noise.flat()) w = complex_normal(eng);
  return receive_pilots(g, pilots, p_c, noise);
}

ComplexMatrix project_pilots(const ComplexMatrix& received, const PilotBook& pilots) {
  const std::size_t M = received.rows();
  const std::size_t K = pilots.users();
  if (received.cols() != pilots.length())
    throw std::invalid_argument("project_pilots: shape mismatch");
  const auto& kern = kernels::active();
  ComplexMatrix out(M, K);
  for (std::size_t m = 0; m < M; ++m) {
    const auto ym = received.row(m);
    for (std::size_t k = 0; k < K; ++k)
      out(m, k) = kern.dotc(pilots.pilot(k).data(), ym.data(), ym.size());
  }
  return out;
}

RealMatrix gamma_matrix(const RealMatrix& rho, double tau_c, double p_c) {
  RealMatrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j) out(i, j) = gamma_of(rho(i, j), tau_c, p_c);
  return out;
}

ComplexMatrix estimate_from_pilots(const ComplexMatrix& g, const RealMatrix& rho,
                                   const PilotBook& pilots, double p_c, std::mt19937_64& eng) {
  const ComplexMatrix projected = project_pilots(receive_pilots(g, pilots, p_c, eng), pilots);
  const double tau_c = static_cast<double>(pilots.length());
  ComplexMatrix g_hat(g.rows(), g.cols());
  for (std::size_t m = 0; m < g.rows(); ++m)
    for (std::size_t k = 0; k < g.cols(); ++k)
      g_hat(m, k) = mmse_estimate(projected(m, k), rho(m, k), tau_c, p_c);
  return g_hat;
}

ChannelEstimate estimate_channels(const ComplexMatrix& g, const RealMatrix& rho,
                                  const PilotBook& pilots, double p_c, std::mt19937_64& eng) {
  return {estimate_from_pilots(g, rho, pilots, p_c, eng),
          gamma_matrix(rho, static_cast<double>(pilots.length()), p_c)};
}

}  // namespace riscf
