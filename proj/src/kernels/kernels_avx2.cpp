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

// AVX2 + FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace riscf::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Interleaved complex layout: one __m256d holds two complex values
// [r0 i0 r1 i1]. `same` accumulates (ar*br, ai*bi), `cross` accumulates
// (ar*bi, ai*br) using b with re/im swapped within each lane.
struct ComplexAccumulators {
  __m256d same0 = _mm256_setzero_pd();
  __m256d cross0 = _mm256_setzero_pd();
  __m256d same1 = _mm256_setzero_pd();
  __m256d cross1 = _mm256_setzero_pd();
};

inline void accumulate(const double* pa, const double* pb, std::size_t n, ComplexAccumulators& acc,
                       std::size_t& i) {
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
    acc.same0 = _mm256_fmadd_pd(a0, b0, acc.same0);
    acc.cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), acc.cross0);
    acc.same1 = _mm256_fmadd_pd(a1, b1, acc.same1);
    acc.cross1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), acc.cross1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    acc.same0 = _mm256_fmadd_pd(a0, b0, acc.same0);
    acc.cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), acc.cross0);
  }
}

// Reduces to the four partial sums rr, ii, ri, ir.
inline void reduce(const ComplexAccumulators& acc, double& rr, double& ii, double& ri,
                   double& ir) {
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, _mm256_add_pd(acc.same0, acc.same1));
  _mm256_store_pd(c, _mm256_add_pd(acc.cross0, acc.cross1));
  rr = s[0] + s[2];
  ii = s[1] + s[3];
  ri = c[0] + c[2];
  ir = c[1] + c[3];
}

std::complex<double> dotu_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  ComplexAccumulators acc;
  std::size_t i = 0;
  accumulate(pa, pb, n, acc, i);
  double rr, ii, ri, ir;
  reduce(acc, rr, ii, ri, ir);
  double re = rr - ii;
  double im = ri + ir;
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

std::complex<double> dotc_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  ComplexAccumulators acc;
  std::size_t i = 0;
  accumulate(pa, pb, n, acc, i);
  double rr, ii, ri, ir;
  reduce(acc, rr, ii, ri, ir);
  double re = rr + ii;
  double im = ri - ir;
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double out = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double norm2_avx2(const std::complex<double>* a, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  // 2n doubles; |z|^2 is the plain sum of squares of the interleaved array.
  return dot_avx2(p, p, 2 * n);
}

}  // namespace

const KernelTable avx2_table{dotu_avx2, dotc_avx2, dot_avx2, norm2_avx2};

}  // namespace riscf::kernels::detail
