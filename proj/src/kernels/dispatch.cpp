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

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace riscf::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(RISCF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() noexcept {
  Backend best = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  if (const char* env = std::getenv("RISCF_KERNELS")) {
    Backend requested;
    if (parse_backend(env, requested) && backend_available(requested)) {
      if (std::string_view(env) != "auto") return requested;
    }
  }
  return best;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Backend b) noexcept {
#if defined(RISCF_HAVE_AVX2)
  if (b == Backend::Avx2 && backend_available(b)) return detail::avx2_table;
#else
  (void)b;
#endif
  return detail::scalar_table;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) noexcept {
  current().store(backend_available(b) ? b : Backend::Scalar, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool parse_backend(std::string_view name, Backend& out) noexcept {
  if (name == "scalar") {
    out = Backend::Scalar;
  } else if (name == "avx2") {
    out = Backend::Avx2;
  } else if (name == "auto") {
    out = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
  } else {
    return false;
  }
  return true;
}

const KernelTable& active() noexcept { return table(active_backend()); }

}  // namespace riscf::kernels
