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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

/// Dense complex arithmetic on the fixed 16-dimensional two-photon space.
///
/// Every kernel has a portable scalar reference implementation. Vector variants
/// (currently AVX2 on x86-64) are compiled into separate translation units and
/// chosen at runtime from the host CPU features. Vector variants perform the
/// same IEEE operations in the same order as the scalar reference, so results
/// are bit-identical across variants; the equivalence tests assert this.
///
/// Set HYPERBELL_KERNELS=scalar (or avx2) to force a variant.
namespace hyperbell::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t kDim = 16;
inline constexpr std::size_t kElems = kDim * kDim;

using MatIn = std::span<const cplx, kElems>;
using MatOut = std::span<cplx, kElems>;
using VecIn = std::span<const cplx, kDim>;
using VecOut = std::span<cplx, kDim>;

struct KernelTable {
    std::string_view name;
    /// out = a * b, row-major. `out` must not alias the inputs.
    void (*gemm)(MatIn a, MatIn b, MatOut out);
    /// out = a * x. `out` must not alias the inputs.
    void (*gemv)(MatIn a, VecIn x, VecOut out);
    /// acc += a, elementwise.
    void (*accumulate)(MatIn a, MatOut acc);
};

const KernelTable &scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable *avx2_kernels();

/// Every variant usable on this host, scalar first.
std::vector<const KernelTable *> available_kernels();

/// The variant used by the library. Resolved once on first use.
const KernelTable &active_kernels();

}  // namespace hyperbell::kernels
