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

#include <array>
#include <cmath>
#include <complex>

#include "hyperbell/qstate.h"
#include "hyperbell/rng.h"

namespace hyperbell::testing {

inline StateVector random_state(Rng &rng) {
    std::array<cplx, kDim> a{};
    for (cplx &x : a) {
        x = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
    return StateVector(a).normalized();
}

inline StateVector random_c_state(Rng &rng) {
    std::array<cplx, kDim> a{};
    for (std::size_t i = 0; i < kDim; ++i) {
        const std::size_t m = momentum_config(i);
        if (m == kConfigC0 || m == kConfigC1) {
            a[i] = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        }
    }
    return StateVector(a).normalized();
}

inline DensityOp random_mixed_c_state(Rng &rng, int rank) {
    Matrix16 m;
    for (int r = 0; r < rank; ++r) {
        const StateVector s = random_c_state(rng);
        m += cplx(1.0 / rank) * DensityOp::pure(s).matrix();
    }
    return DensityOp(m);
}

// Single-photon Bell vectors spelled out from |H l>, |V r>, |V l>, |H r>,
// without going through the library's basis-change tables.
inline StateVector spb_product_by_hand(int a, int b) {
    auto local = [](int which, Pol &p1, Mom &m1, Pol &p2, Mom &m2, double &sign) {
        // sigma+- = (H l +- V r)/sqrt2, tau+- = (V l +- H r)/sqrt2
        const bool sigma = which < 2;
        sign = (which % 2 == 0) ? 1.0 : -1.0;
        p1 = sigma ? Pol::H : Pol::V;
        m1 = Mom::L;
        p2 = sigma ? Pol::V : Pol::H;
        m2 = Mom::R;
    };
    Pol pa1, pa2, pb1, pb2;
    Mom ma1, ma2, mb1, mb2;
    double sa, sb;
    local(a, pa1, ma1, pa2, ma2, sa);
    local(b, pb1, mb1, pb2, mb2, sb);
    std::array<cplx, kDim> out{};
    out[basis_index(pa1, ma1, pb1, mb1)] += 0.5;
    out[basis_index(pa1, ma1, pb2, mb2)] += 0.5 * sb;
    out[basis_index(pa2, ma2, pb1, mb1)] += 0.5 * sa;
    out[basis_index(pa2, ma2, pb2, mb2)] += 0.5 * sa * sb;
    return StateVector(out);
}

}  // namespace hyperbell::testing
