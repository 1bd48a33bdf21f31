// Copyright 2026 The Hyperbell Authors
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

#include <immintrin.h>

#include "kernels_internal.h"

namespace hyperbell::kernels::detail {

namespace {

// [r0, i0, r1, i1] * broadcast(re, im), matching the scalar operation order.
inline __m256d cmul_broadcast(__m256d v, __m256d re, __m256d im) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_addsub_pd(_mm256_mul_pd(v, re), _mm256_mul_pd(swapped, im));
}

void gemm_avx2(MatIn a, MatIn b, MatOut out) {
    const double *pb = reinterpret_cast<const double *>(b.data());
    double *po = reinterpret_cast<double *>(out.data());
    for (std::size_t i = 0; i < kDim; ++i) {
        __m256d acc[kDim / 2];
        for (auto &v : acc) {
            v = _mm256_setzero_pd();
        }
        for (std::size_t k = 0; k < kDim; ++k) {
            const __m256d ar = _mm256_set1_pd(a[i * kDim + k].real());
            const __m256d ai = _mm256_set1_pd(a[i * kDim + k].imag());
            const double *row = pb + 2 * k * kDim;
            for (std::size_t jp = 0; jp < kDim / 2; ++jp) {
                const __m256d bv = _mm256_loadu_pd(row + 4 * jp);
                acc[jp] = _mm256_add_pd(acc[jp], cmul_broadcast(bv, ar, ai));
            }
        }
        for (std::size_t jp = 0; jp < kDim / 2; ++jp) {
            _mm256_storeu_pd(po + 2 * i * kDim + 4 * jp, acc[jp]);
        }
    }
}

void gemv_avx2(MatIn a, VecIn x, VecOut out) {
    const double *pa = reinterpret_cast<const double *>(a.data());
    double *po = reinterpret_cast<double *>(out.data());
    __m256d acc[kDim / 2];
    for (auto &v : acc) {
        v = _mm256_setzero_pd();
    }
    for (std::size_t k = 0; k < kDim; ++k) {
        const __m256d xr = _mm256_set1_pd(x[k].real());
        const __m256d xi = _mm256_set1_pd(x[k].imag());
        for (std::size_t ip = 0; ip < kDim / 2; ++ip) {
            const double *lo = pa + 2 * ((2 * ip) * kDim + k);
            const double *hi = pa + 2 * ((2 * ip + 1) * kDim + k);
            const __m256d av = _mm256_loadu2_m128d(hi, lo);
            acc[ip] = _mm256_add_pd(acc[ip], cmul_broadcast(av, xr, xi));
        }
    }
    for (std::size_t ip = 0; ip < kDim / 2; ++ip) {
        _mm256_storeu_pd(po + 4 * ip, acc[ip]);
    }
}

void accumulate_avx2(MatIn a, MatOut acc) {
    const double *pa = reinterpret_cast<const double *>(a.data());
    double *pc = reinterpret_cast<double *>(acc.data());
    for (std::size_t i = 0; i < 2 * kElems; i += 4) {
        _mm256_storeu_pd(pc + i, _mm256_add_pd(_mm256_loadu_pd(pc + i), _mm256_loadu_pd(pa + i)));
    }
}

}  // namespace

const KernelTable &avx2_table() {
    static const KernelTable table{"avx2", &gemm_avx2, &gemv_avx2, &accumulate_avx2};
    return table;
}

}  // namespace hyperbell::kernels::detail
