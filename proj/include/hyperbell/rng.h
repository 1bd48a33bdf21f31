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

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperbell {

/// Seedable generator with a fixed, platform-independent output stream.
///
/// Version "mt19937_64/v1": std::mt19937_64 (its sequence is fixed by the C++
/// standard), uniforms built from the top 53 bits, Poisson variates by the
/// multiplication method below a mean of 10 and by Hormann's transformed
/// rejection (PTRS) above. None of the implementation-defined std::
/// distributions are used.
class Rng {
   public:
    static constexpr std::string_view kVersion = "mt19937_64/v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    std::uint64_t next_u64() {
        return engine_();
    }
    /// Uniform on [0, 1).
    double uniform();
    std::uint64_t poisson(double mean);

   private:
    std::mt19937_64 engine_;
};

/// Independent stream seed for work item `index` (splitmix64 of the pair),
/// so parallel results do not depend on scheduling.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hyperbell
