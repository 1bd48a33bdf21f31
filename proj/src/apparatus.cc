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

#include "hyperbell/apparatus.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperbell/elements.h"
#include "hyperbell/error.h"

namespace hyperbell {

namespace {

constexpr double kFactorTol = 1e-10;
constexpr double kLeakageTol = 1e-10;
// Round-off floor below which a Born probability is reported as exactly zero.
constexpr double kProbabilityFloor = 1e-14;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector source_phi_state(int sign) {
    // Mirror phase theta = 0 or pi in (HH + e^{i theta} VV)/sqrt2.
    const cplx mirror = std::polar(1.0, sign > 0 ? 0.0 : std::numbers::pi);
    const std::array<cplx, 4> pol = {kInvSqrt2, 0.0, 0.0, kInvSqrt2 * mirror};
    return compose_pol_mom(pol, momentum_psi(+1));
}

}  // namespace

std::string_view bell_label_name(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return "phi+";
        case BellLabel::PhiMinus:
            return "phi-";
        case BellLabel::PsiPlus:
            return "psi+";
        case BellLabel::PsiMinus:
            return "psi-";
    }
    return "?";
}

std::optional<BellLabel> parse_bell_label(std::string_view text) {
    for (BellLabel l : kAllBellLabels) {
        if (bell_label_name(l) == text) {
            return l;
        }
    }
    return std::nullopt;
}

std::array<cplx, 4> polarization_bell_vector(BellLabel label) {
    const double s = kInvSqrt2;
    switch (label) {
        case BellLabel::PhiPlus:
            return {s, 0.0, 0.0, s};
        case BellLabel::PhiMinus:
            return {s, 0.0, 0.0, -s};
        case BellLabel::PsiPlus:
            return {0.0, s, s, 0.0};
        case BellLabel::PsiMinus:
            return {0.0, s, -s, 0.0};
    }
    return {};
}

std::array<cplx, 4> momentum_psi(int sign) {
    return {0.0, kInvSqrt2, sign > 0 ? kInvSqrt2 : -kInvSqrt2, 0.0};
}

StateVector hyperentangled_state(BellLabel label) {
    return compose_pol_mom(polarization_bell_vector(label), momentum_psi(+1));
}

StateVector prepare_hyperentangled(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return source_phi_state(+1);
        case BellLabel::PhiMinus:
            return source_phi_state(-1);
        case BellLabel::PsiPlus:
            return apply_unitary(source_phi_state(+1),
                                 half_wave_plate(std::numbers::pi / 4, ModeFootprint::right_modes()));
        case BellLabel::PsiMinus: {
            // HW* turns Phi- into Psi- but also flips psi+ to psi-.
            const StateVector flipped = apply_unitary(
                source_phi_state(-1), half_wave_plate(std::numbers::pi / 4, ModeFootprint::right_modes()));
            return apply_unitary(flipped, phase_plate(std::numbers::pi, ModeFootprint::left_mode_a()));
        }
    }
    return {};
}

// ------------------------------------------------------- coincidence pattern

CoincidencePattern CoincidencePattern::from_index(std::size_t index) {
    CoincidencePattern p;
    p.pol_a = static_cast<Pol>((index >> 3) & 1u);
    p.port_a = static_cast<Port>((index >> 2) & 1u);
    p.pol_b = static_cast<Pol>((index >> 1) & 1u);
    p.port_b = static_cast<Port>(index & 1u);
    return p;
}

CoincidencePattern CoincidencePattern::from_outcomes(SpbOutcome a, SpbOutcome b) {
    return from_index(4u * static_cast<std::size_t>(a) + static_cast<std::size_t>(b));
}

std::size_t CoincidencePattern::index() const {
    return 8u * static_cast<std::size_t>(pol_a) + 4u * static_cast<std::size_t>(port_a) +
           2u * static_cast<std::size_t>(pol_b) + static_cast<std::size_t>(port_b);
}

SpbOutcome CoincidencePattern::outcome_a() const {
    return static_cast<SpbOutcome>(2u * static_cast<unsigned>(pol_a) + static_cast<unsigned>(port_a));
}

SpbOutcome CoincidencePattern::outcome_b() const {
    return static_cast<SpbOutcome>(2u * static_cast<unsigned>(pol_b) + static_cast<unsigned>(port_b));
}

std::string CoincidencePattern::spb_name() const {
    return std::string(outcome_name(outcome_a())) + "/" + std::string(outcome_name(outcome_b()));
}

std::string CoincidencePattern::port_name() const {
    auto side = [](Port port, Pol pol) {
        std::string s;
        s += port == Port::U ? 'u' : 'v';
        s += pol == Pol::H ? 'H' : 'V';
        return s;
    };
    return side(port_a, pol_a) + "/" + side(port_b, pol_b);
}

// ------------------------------------------------------------ decision table

std::vector<CoincidencePattern> DecisionTable::patterns_for(BellLabel label) const {
    std::vector<CoincidencePattern> out;
    for (std::size_t i = 0; i < kDim; ++i) {
        if (map_[i] == label) {
            out.push_back(CoincidencePattern::from_index(i));
        }
    }
    return out;
}

bool DecisionTable::is_partition() const {
    std::array<int, 4> counts{};
    for (BellLabel l : map_) {
        const auto k = static_cast<std::size_t>(l);
        if (k >= counts.size()) {
            return false;
        }
        ++counts[k];
    }
    return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 4; });
}

const DecisionTable &decision_table() {
    static const DecisionTable table = [] {
        using O = SpbOutcome;
        struct Entry {
            O a;
            O b;
            BellLabel label;
        };
        static constexpr Entry entries[] = {
            {O::SigmaPlus, O::TauPlus, BellLabel::PhiPlus},     {O::SigmaMinus, O::TauMinus, BellLabel::PhiPlus},
            {O::TauPlus, O::SigmaPlus, BellLabel::PhiPlus},     {O::TauMinus, O::SigmaMinus, BellLabel::PhiPlus},
            {O::SigmaPlus, O::TauMinus, BellLabel::PhiMinus},   {O::SigmaMinus, O::TauPlus, BellLabel::PhiMinus},
            {O::TauPlus, O::SigmaMinus, BellLabel::PhiMinus},   {O::TauMinus, O::SigmaPlus, BellLabel::PhiMinus},
            {O::SigmaPlus, O::SigmaPlus, BellLabel::PsiPlus},   {O::SigmaMinus, O::SigmaMinus, BellLabel::PsiPlus},
            {O::TauPlus, O::TauPlus, BellLabel::PsiPlus},       {O::TauMinus, O::TauMinus, BellLabel::PsiPlus},
            {O::SigmaPlus, O::SigmaMinus, BellLabel::PsiMinus}, {O::SigmaMinus, O::SigmaPlus, BellLabel::PsiMinus},
            {O::TauPlus, O::TauMinus, BellLabel::PsiMinus},     {O::TauMinus, O::TauPlus, BellLabel::PsiMinus},
        };
        std::array<BellLabel, kDim> map{};
        for (const Entry &e : entries) {
            map[CoincidencePattern::from_outcomes(e.a, e.b).index()] = e.label;
        }
        return DecisionTable(map);
    }();
    return table;
}

BellLabel classify(CoincidencePattern pattern) {
    return decision_table()[pattern];
}

SpbDecomposition decompose_single_photon_bell(const StateVector &state) {
    SpbDecomposition out;
    out.coeffs = to_single_photon_bell_basis(state);
    for (SpbOutcome a : kAllOutcomes) {
        for (SpbOutcome b : kAllOutcomes) {
            const cplx c = out.coeffs.at(a, b);
            if (std::abs(c) > 1e-12) {
                out.nonzero.push_back({a, b, c});
            }
        }
    }
    return out;
}

// ------------------------------------------------------------------ analyzer

ElementUnitary analyzer_wave_plate() {
    static const ElementUnitary hw0 = [] {
        ElementUnitary u = half_wave_plate(std::numbers::pi / 4, ModeFootprint::right_modes());
        u.name = "HW0";
        return u;
    }();
    return hw0;
}

ProbHistogram analyzer_probabilities(const DensityOp &rho, const AnalyzerConfig &config) {
    config.validate();
    double leakage = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        const std::size_t m = momentum_config(i);
        if (m != kConfigC0 && m != kConfigC1) {
            leakage += rho(i, i).real();
        }
    }
    if (leakage > kLeakageTol) {
        throw SimError(ErrorCode::Leakage, "input has population " + std::to_string(leakage) +
                                               " outside the two mode-pair configurations");
    }

    DensityOp state = apply_channel(rho, polarization_werner_channel(config.noise.pol_werner_p));
    state = apply_unitary(state, analyzer_wave_plate());
    state = apply_channel(state, delay_dephasing_channel(visibility(config.delay_um, config.filter)));
    state = apply_unitary(state, unbalanced_beam_splitter(config.noise.bs_imbalance));

    static const std::array<Matrix16, kDim> projectors = pbs_detection_operators();
    const double eta2 = config.noise.detector_efficiency * config.noise.detector_efficiency;
    ProbHistogram out;
    for (std::size_t k = 0; k < kDim; ++k) {
        double p = (projectors[k] * state.matrix()).trace().real();
        if (std::abs(p) < kProbabilityFloor) {
            p = 0.0;
        }
        out.bins[k] = p * eta2;
    }
    return out;
}

BellAncillaForm factor_bell_ancilla(const StateVector &state) {
    std::array<cplx, 4> branch0{};
    std::array<cplx, 4> branch1{};
    double leakage = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        const std::size_t m = momentum_config(i);
        if (m == kConfigC0) {
            branch0[polarization_config(i)] = state[i];
        } else if (m == kConfigC1) {
            branch1[polarization_config(i)] = state[i];
        } else {
            leakage += std::norm(state[i]);
        }
    }
    if (leakage > kFactorTol) {
        throw SimError(ErrorCode::DecompositionFailed, "state leaks outside the mode-pair qubit");
    }

    auto project = [](BellLabel l, const std::array<cplx, 4> &v) {
        const auto b = polarization_bell_vector(l);
        cplx s = 0.0;
        for (std::size_t p = 0; p < 4; ++p) {
            s += std::conj(b[p]) * v[p];
        }
        return s;
    };

    BellLabel best = BellLabel::PhiPlus;
    double best_weight = -1.0;
    for (BellLabel l : kAllBellLabels) {
        const double w = std::norm(project(l, branch0)) + std::norm(project(l, branch1));
        if (w > best_weight) {
            best_weight = w;
            best = l;
        }
    }

    const cplx c0 = project(best, branch0);
    const cplx c1 = project(best, branch1);
    const auto bell = polarization_bell_vector(best);
    double residual = 0.0;
    for (std::size_t p = 0; p < 4; ++p) {
        residual = std::max(residual, std::abs(branch0[p] - c0 * bell[p]));
        residual = std::max(residual, std::abs(branch1[p] - c1 * bell[p]));
    }
    if (residual > kFactorTol) {
        throw SimError(ErrorCode::DecompositionFailed, "polarization is not a single Bell state");
    }
    for (int sign : {+1, -1}) {
        if (std::abs(c1 - static_cast<double>(sign) * c0) <= kFactorTol && std::abs(c0) > kFactorTol) {
            return {best, sign};
        }
    }
    throw SimError(ErrorCode::DecompositionFailed, "mode-pair qubit is not |+> or |->");
}

BellAncillaForm phase_transfer_check(BellLabel label) {
    return factor_bell_ancilla(apply_unitary(prepare_hyperentangled(label), analyzer_wave_plate()));
}

}  // namespace hyperbell
