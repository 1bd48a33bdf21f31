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
#include <cstdint>

#include "hyperbell/qstate.h"

/// Optical elements and noise channels of the source and the analyzer.
namespace hyperbell {

enum class PhotonSel : std::uint8_t { A, B, Both };
enum class MomentumSel : std::uint8_t { LeftOnly, RightOnly, Both };

/// Which photon(s) and which momentum branch an element intercepts.
struct ModeFootprint {
    PhotonSel photon = PhotonSel::Both;
    MomentumSel momentum = MomentumSel::Both;

    static constexpr ModeFootprint right_modes() {
        return {PhotonSel::Both, MomentumSel::RightOnly};
    }
    static constexpr ModeFootprint left_mode_a() {
        return {PhotonSel::A, MomentumSel::LeftOnly};
    }
};

enum class FilterShape : std::uint8_t { Gaussian, Rectangular };

/// Interference filter in front of the detectors. Wavelengths in nm.
struct SpectralFilter {
    double center_nm = 728.0;
    double fwhm_nm = 6.0;
    FilterShape shape = FilterShape::Gaussian;

    /// Throws OutOfRange unless 0 < fwhm < center.
    void validate() const;
    /// center^2 / fwhm, in micrometres.
    double coherence_length_um() const;
    /// FWHM of the spectrum in wavenumber, in rad/um.
    double wavenumber_fwhm_per_um() const;
};

struct NoiseParams {
    double pol_werner_p = 1.0;
    double bs_imbalance = 0.0;
    double detector_efficiency = 1.0;

    void validate() const;
};

/// Jones matrix [[cos 2t, sin 2t], [sin 2t, -cos 2t]] on the polarization of
/// every photon / momentum branch selected by `footprint`.
ElementUnitary half_wave_plate(double theta, ModeFootprint footprint);

/// Phase e^{i phi} on the selected momentum branch.
ElementUnitary phase_plate(double phi, ModeFootprint footprint);

/// 50/50 splitter on both photons: l -> (u + v)/sqrt2, r -> (u - v)/sqrt2.
ElementUnitary beam_splitter();

/// Transmissivity T = 1/2 + eps: l -> sqrt(T) u + sqrt(1-T) v,
/// r -> sqrt(1-T) u - sqrt(T) v. Throws OutOfRange unless |eps| <= 1/2.
ElementUnitary unbalanced_beam_splitter(double eps);

/// Coherence between the two mode pairs at path difference `delay_um`:
/// modulus of the normalized Fourier transform of the filter's spectral
/// intensity (in wavenumber) evaluated at the delay. Throws OutOfRange for a
/// negative delay.
double visibility(double delay_um, const SpectralFilter &filter);

/// Inverse of visibility() for the gaussian filter. Throws OutOfRange for
/// other shapes or V outside (0, 1].
double delay_for_visibility(double v, const SpectralFilter &filter);

/// Phase damping between l_A r_B and r_A l_B: their coherences are scaled by
/// V; populations and the l_A l_B / r_A r_B block are untouched. Composes
/// multiplicatively in V on states supported on the two mode pairs. Throws
/// OutOfRange unless 0 <= V <= 1.
KrausChannel delay_dephasing_channel(double v);

/// rho_pol -> p rho_pol + (1 - p) I/4 on both polarizations, via the 16
/// two-qubit Pauli products. Throws OutOfRange unless 0 <= p <= 1.
KrausChannel polarization_werner_channel(double p);

/// Rank-one projectors |polA, portA, polB, portB><...|, indexed by the basis
/// index of the pattern (ports reuse the momentum slots).
std::array<Matrix16, kDim> pbs_detection_operators();

}  // namespace hyperbell
