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

#include "hyperbell/elements.h"

#include <cmath>
#include <numbers>
#include <string>

#include "hyperbell/error.h"

namespace hyperbell {

namespace {

bool photon_selected(PhotonSel sel, bool photon_a) {
    return sel == PhotonSel::Both || (sel == PhotonSel::A) == photon_a;
}

bool momentum_selected(MomentumSel sel, std::size_t mom) {
    switch (sel) {
        case MomentumSel::LeftOnly:
            return mom == 0;
        case MomentumSel::RightOnly:
            return mom == 1;
        case MomentumSel::Both:
            return true;
    }
    return false;
}

Mat4 identity4() {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i) {
        m[i * 4 + i] = 1.0;
    }
    return m;
}

// Local photon operator applying `jones` to polarization on the selected momentum branch.
Mat4 conditioned_polarization_op(const Mat2 &jones, MomentumSel sel) {
    Mat4 m{};
    for (std::size_t mom = 0; mom < 2; ++mom) {
        for (std::size_t p_out = 0; p_out < 2; ++p_out) {
            for (std::size_t p_in = 0; p_in < 2; ++p_in) {
                const cplx v = momentum_selected(sel, mom) ? jones[p_out * 2 + p_in]
                                                           : cplx(p_out == p_in ? 1.0 : 0.0);
                m[(2 * p_out + mom) * 4 + (2 * p_in + mom)] = v;
            }
        }
    }
    return m;
}

std::string footprint_name(ModeFootprint f) {
    std::string out;
    switch (f.photon) {
        case PhotonSel::A:
            out = "A";
            break;
        case PhotonSel::B:
            out = "B";
            break;
        case PhotonSel::Both:
            out = "AB";
            break;
    }
    switch (f.momentum) {
        case MomentumSel::LeftOnly:
            return out + ":l";
        case MomentumSel::RightOnly:
            return out + ":r";
        case MomentumSel::Both:
            return out + ":lr";
    }
    return out;
}

void require_range(bool ok, const std::string &what) {
    if (!ok) {
        throw SimError(ErrorCode::OutOfRange, what);
    }
}

}  // namespace

void SpectralFilter::validate() const {
    require_range(center_nm > 0.0 && std::isfinite(center_nm), "filter center wavelength must be > 0 nm");
    require_range(fwhm_nm > 0.0 && fwhm_nm < center_nm, "filter fwhm must satisfy 0 < fwhm < center");
}

double SpectralFilter::coherence_length_um() const {
    return center_nm * center_nm / fwhm_nm * 1e-3;
}

double SpectralFilter::wavenumber_fwhm_per_um() const {
    return 2.0 * std::numbers::pi * fwhm_nm / (center_nm * center_nm) * 1e3;
}

void NoiseParams::validate() const {
    require_range(pol_werner_p >= 0.0 && pol_werner_p <= 1.0, "pol_werner_p must lie in [0, 1]");
    require_range(bs_imbalance >= -0.5 && bs_imbalance <= 0.5, "bs_imbalance must lie in [-0.5, 0.5]");
    require_range(detector_efficiency > 0.0 && detector_efficiency <= 1.0,
                  "detector_efficiency must lie in (0, 1]");
}

ElementUnitary half_wave_plate(double theta, ModeFootprint footprint) {
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    const Mat2 jones = {c, s, s, -c};
    const Mat4 op = conditioned_polarization_op(jones, footprint.momentum);

    ElementUnitary u;
    u.name = "half_wave_plate(" + std::to_string(theta) + "," + footprint_name(footprint) + ")";
    const bool on_a = photon_selected(footprint.photon, true);
    const bool on_b = photon_selected(footprint.photon, false);
    u.matrix = Matrix16::kron_photons(on_a ? op : identity4(), on_b ? op : identity4());
    const bool conditioned = footprint.momentum != MomentumSel::Both;
    if (on_a) {
        u.footprint.insert(Subsystem::PolA);
        if (conditioned) {
            u.footprint.insert(Subsystem::MomA);
        }
    }
    if (on_b) {
        u.footprint.insert(Subsystem::PolB);
        if (conditioned) {
            u.footprint.insert(Subsystem::MomB);
        }
    }
    return u;
}

ElementUnitary phase_plate(double phi, ModeFootprint footprint) {
    const cplx phase = std::polar(1.0, phi);
    Mat4 op{};
    for (std::size_t local = 0; local < 4; ++local) {
        op[local * 4 + local] = momentum_selected(footprint.momentum, local & 1u) ? phase : cplx(1.0);
    }
    ElementUnitary u;
    u.name = "phase_plate(" + std::to_string(phi) + "," + footprint_name(footprint) + ")";
    const bool on_a = photon_selected(footprint.photon, true);
    const bool on_b = photon_selected(footprint.photon, false);
    u.matrix = Matrix16::kron_photons(on_a ? op : identity4(), on_b ? op : identity4());
    if (on_a) {
        u.footprint.insert(Subsystem::MomA);
    }
    if (on_b) {
        u.footprint.insert(Subsystem::MomB);
    }
    return u;
}

ElementUnitary unbalanced_beam_splitter(double eps) {
    require_range(eps >= -0.5 && eps <= 0.5, "beam splitter imbalance must lie in [-0.5, 0.5]");
    const double t = std::sqrt(0.5 + eps);
    const double r = std::sqrt(0.5 - eps);
    // Rows are output ports (u, v), columns input modes (l, r).
    const Mat2 ports = {t, r, r, -t};
    const Mat2 id = {1.0, 0.0, 0.0, 1.0};
    ElementUnitary u;
    u.name = "beam_splitter(" + std::to_string(eps) + ")";
    u.matrix = Matrix16::kron(id, ports, id, ports);
    u.footprint = {Subsystem::MomA, Subsystem::MomB};
    return u;
}

ElementUnitary beam_splitter() {
    return unbalanced_beam_splitter(0.0);
}

double visibility(double delay_um, const SpectralFilter &filter) {
    require_range(delay_um >= 0.0, "delay must be >= 0");
    filter.validate();
    if (delay_um == 0.0) {
        return 1.0;
    }
    const double x = filter.wavenumber_fwhm_per_um() * delay_um;
    switch (filter.shape) {
        case FilterShape::Gaussian:
            return std::exp(-x * x / (16.0 * std::numbers::ln2));
        case FilterShape::Rectangular:
            return std::abs(std::sin(0.5 * x) / (0.5 * x));
    }
    return 0.0;
}

double delay_for_visibility(double v, const SpectralFilter &filter) {
    require_range(filter.shape == FilterShape::Gaussian, "visibility inversion needs a gaussian filter");
    require_range(v > 0.0 && v <= 1.0, "visibility must lie in (0, 1]");
    filter.validate();
    return std::sqrt(-16.0 * std::numbers::ln2 * std::log(v)) / filter.wavenumber_fwhm_per_um();
}

KrausChannel delay_dephasing_channel(double v) {
    require_range(v >= 0.0 && v <= 1.0, "visibility must lie in [0, 1]");
    const double keep = std::sqrt(0.5 * (1.0 + v));
    const double flip = std::sqrt(0.5 * (1.0 - v));
    std::array<cplx, kDim> k0{};
    std::array<cplx, kDim> k1{};
    for (std::size_t i = 0; i < kDim; ++i) {
        switch (momentum_config(i)) {
            case kConfigC0:
                k0[i] = keep;
                k1[i] = flip;
                break;
            case kConfigC1:
                k0[i] = keep;
                k1[i] = -flip;
                break;
            default:
                k0[i] = 1.0;
                break;
        }
    }
    KrausChannel ch;
    ch.name = "delay_dephasing(" + std::to_string(v) + ")";
    ch.operators.push_back(Matrix16::diagonal(k0));
    if (flip > 0.0) {
        ch.operators.push_back(Matrix16::diagonal(k1));
    }
    return ch;
}

KrausChannel polarization_werner_channel(double p) {
    require_range(p >= 0.0 && p <= 1.0, "werner parameter must lie in [0, 1]");
    const std::array<Mat2, 4> paulis = {{
        {1.0, 0.0, 0.0, 1.0},
        {0.0, 1.0, 1.0, 0.0},
        {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0},
        {1.0, 0.0, 0.0, -1.0},
    }};
    const Mat2 &id = paulis[0];
    // (1/16) sum_P P rho P^dag fully depolarizes both polarization qubits.
    const double w_identity = std::sqrt(p + (1.0 - p) / 16.0);
    const double w_pauli = std::sqrt((1.0 - p) / 16.0);

    KrausChannel ch;
    ch.name = "polarization_werner(" + std::to_string(p) + ")";
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const double w = (a == 0 && b == 0) ? w_identity : w_pauli;
            if (w == 0.0) {
                continue;
            }
            Matrix16 k = Matrix16::kron(paulis[a], id, paulis[b], id);
            k *= w;
            ch.operators.push_back(k);
        }
    }
    return ch;
}

std::array<Matrix16, kDim> pbs_detection_operators() {
    std::array<Matrix16, kDim> out{};
    for (std::size_t k = 0; k < kDim; ++k) {
        out[k](k, k) = 1.0;
    }
    return out;
}

}  // namespace hyperbell
