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

#include "kernels_internal.h"

namespace hyperbell::kernels {

namespace {

// The complex products are spelled out so the vector variants can reproduce
// them operation for operation: re = ar*br - ai*bi, im = ar*bi + ai*br.

void gemm_scalar(MatIn a, MatIn b, MatOut out) {
    for (std::size_t i = 0; i < kDim; ++i) {
        double acc_re[kDim] = {};
        double acc_im[kDim] = {};
        for (std::size_t k = 0; k < kDim; ++k) {
            const double ar = a[i * kDim + k].real();
            const double ai = a[i * kDim + k].imag();
            for (std::size_t j = 0; j < kDim; ++j) {
                const double br = b[k * kDim + j].real();
                const double bi = b[k * kDim + j].imag();
                acc_re[j] += ar * br - ai * bi;
                acc_im[j] += ar * bi + ai * br;
            }
        }
        for (std::size_t j = 0; j < kDim; ++j) {
            out[i * kDim + j] = cplx(acc_re[j], acc_im[j]);
        }
    }
}

void gemv_scalar(MatIn a, VecIn x, VecOut out) {
    double acc_re[kDim] = {};
    double acc_im[kDim] = {};
    for (std::size_t k = 0; k < kDim; ++k) {
        const double xr = x[k].real();
        const double xi = x[k].imag();
        for (std::size_t i = 0; i < kDim; ++i) {
            const double ar = a[i * kDim + k].real();
            const double ai = a[i * kDim + k].imag();
            acc_re[i] += ar * xr - ai * xi;
            acc_im[i] += ai * xr + ar * xi;
        }
    }
    for (std::size_t i = 0; i < kDim; ++i) {
        out[i] = cplx(acc_re[i], acc_im[i]);
    }
}

void accumulate_scalar(MatIn a, MatOut acc) {
    for (std::size_t i = 0; i < kElems; ++i) {
        acc[i] = cplx(acc[i].real() + a[i].real(), acc[i].imag() + a[i].imag());
    }
}

}  // namespace

const KernelTable &scalar_kernels() {
    static const KernelTable table{"scalar", &gemm_scalar, &gemv_scalar, &accumulate_scalar};
    return table;
}

}  // namespace hyperbell::kernels
