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

// Inner-loop kernels used by the channel aggregation, pilot projection and
// beamforming stages. Every kernel has a scalar reference implementation; an
// AVX2/FMA variant is selected at runtime when the CPU supports it.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace riscf::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  // sum_i a[i] * b[i]
  std::complex<double> (*dotu)(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n);
  // sum_i conj(a[i]) * b[i]
  std::complex<double> (*dotc)(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n);
  // sum_i a[i] * b[i], real
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i |a[i]|^2
  double (*norm2)(const std::complex<double>* a, std::size_t n);
};

bool backend_available(Backend b) noexcept;

// Table for a specific backend. Falls back to Scalar if `b` is unavailable.
const KernelTable& table(Backend b) noexcept;

// Backend used by the free functions below. Initialised from CPU detection,
// overridable with the RISCF_KERNELS environment variable (scalar|avx2|auto)
// or set_active_backend().
Backend active_backend() noexcept;
void set_active_backend(Backend b) noexcept;

std::string_view backend_name(Backend b) noexcept;
// Parses "scalar", "avx2" or "auto"; returns false on unknown names.
bool parse_backend(std::string_view name, Backend& out) noexcept;

const KernelTable& active() noexcept;

inline std::complex<double> dotu(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> b) noexcept {
  return active().dotu(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline std::complex<double> dotc(std::span<const std::complex<double>> a,
                                 std::span<const std::complex<double>> b) noexcept {
  return active().dotc(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline double norm2(std::span<const std::complex<double>> a) noexcept {
  return active().norm2(a.data(), a.size());
}

}  // namespace riscf::kernels
