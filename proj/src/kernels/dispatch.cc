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

#include <cstdlib>
#include <string_view>

#include "kernels_internal.h"

namespace hyperbell::kernels {

const KernelTable *avx2_kernels() {
#if defined(HYPERBELL_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const KernelTable *> available_kernels() {
    std::vector<const KernelTable *> out{&scalar_kernels()};
    if (const KernelTable *t = avx2_kernels()) {
        out.push_back(t);
    }
    return out;
}

namespace {

const KernelTable &resolve() {
    const char *forced = std::getenv("HYPERBELL_KERNELS");
    if (forced != nullptr) {
        for (const KernelTable *t : available_kernels()) {
            if (t->name == std::string_view(forced)) {
                return *t;
            }
        }
    }
    if (const KernelTable *t = avx2_kernels()) {
        return *t;
    }
    return scalar_kernels();
}

}  // namespace

const KernelTable &active_kernels() {
    static const KernelTable &table = resolve();
    return table;
}

}  // namespace hyperbell::kernels
