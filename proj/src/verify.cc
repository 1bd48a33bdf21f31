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

#include "hyperbell/verify.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "hyperbell/elements.h"
#include "hyperbell/error.h"
#include "hyperbell/experiment.h"
#include "hyperbell/rng.h"

namespace hyperbell {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kSpectralTol = 1e-10;

std::string fmt_err(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

StateVector random_state(Rng &rng) {
    std::array<cplx, kDim> a{};
    for (cplx &x : a) {
        x = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
    return StateVector(a).normalized();
}

// Random state restricted to the two mode-pair configurations.
StateVector random_c_subspace_state(Rng &rng) {
    std::array<cplx, kDim> a{};
    for (std::size_t i = 0; i < kDim; ++i) {
        const std::size_t m = momentum_config(i);
        if (m == kConfigC0 || m == kConfigC1) {
            a[i] = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        }
    }
    return StateVector(a).normalized();
}

std::vector<ElementUnitary> all_elements() {
    std::vector<ElementUnitary> out;
    const ModeFootprint footprints[] = {
        ModeFootprint::right_modes(),
        ModeFootprint::left_mode_a(),
        {PhotonSel::B, MomentumSel::Both},
        {PhotonSel::Both, MomentumSel::Both},
        {PhotonSel::A, MomentumSel::RightOnly},
    };
    for (const ModeFootprint &f : footprints) {
        for (double theta : {0.0, 0.3, std::numbers::pi / 8, std::numbers::pi / 4, 1.1}) {
            out.push_back(half_wave_plate(theta, f));
        }
        for (double phi : {0.0, 0.7, std::numbers::pi}) {
            out.push_back(phase_plate(phi, f));
        }
    }
    out.push_back(beam_splitter());
    for (double eps : {-0.5, -0.2, 0.1, 0.5}) {
        out.push_back(unbalanced_beam_splitter(eps));
    }
    out.push_back(analyzer_wave_plate());
    return out;
}

std::vector<KrausChannel> all_channels() {
    std::vector<KrausChannel> out;
    for (double v : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        out.push_back(delay_dephasing_channel(v));
    }
    for (double p : {0.0, 0.5, 0.852, 1.0}) {
        out.push_back(polarization_werner_channel(p));
    }
    return out;
}

AnalyzerConfig ideal_config() {
    return AnalyzerConfig{};
}

double classified(const ProbHistogram &probs, BellLabel label, const DecisionTable &table) {
    double s = 0.0;
    for (const CoincidencePattern &p : table.patterns_for(label)) {
        s += probs[p];
    }
    return s;
}

CheckResult check_unitarity() {
    double worst = 0.0;
    std::string worst_name;
    for (const ElementUnitary &u : all_elements()) {
        const double e = u.unitarity_error();
        if (e > worst) {
            worst = e;
            worst_name = u.name;
        }
    }
    return {"unitarity", worst < kAlgebraTol, "max |U^dag U - I| = " + fmt_err(worst) + " " + worst_name};
}

CheckResult check_hw_involution() {
    double worst = 0.0;
    for (double theta : {0.0, 0.2, std::numbers::pi / 4, 1.3, 2.9}) {
        const ElementUnitary u = half_wave_plate(theta, ModeFootprint::right_modes());
        worst = std::max(worst, (u.matrix * u.matrix).max_abs_diff(Matrix16::identity()));
    }
    return {"half-wave plate involution", worst < kAlgebraTol, "max |HW^2 - I| = " + fmt_err(worst)};
}

CheckResult check_footprints() {
    // U acts as identity outside its footprint: for product inputs the reduced
    // state on the complement is unchanged.
    Rng rng(7);
    double worst = 0.0;
    for (const ElementUnitary &u : all_elements()) {
        const SubsystemSet rest = u.footprint.complement();
        if (rest.empty()) {
            continue;
        }
        std::array<std::array<cplx, 2>, 4> q{};
        for (auto &qubit : q) {
            qubit = {cplx(rng.uniform() - 0.5, rng.uniform() - 0.5), cplx(rng.uniform() - 0.5, rng.uniform() - 0.5)};
        }
        std::array<cplx, kDim> a{};
        for (std::size_t i = 0; i < kDim; ++i) {
            a[i] = q[0][(i >> 3) & 1] * q[1][(i >> 2) & 1] * q[2][(i >> 1) & 1] * q[3][i & 1];
        }
        const DensityOp rho = DensityOp::pure(StateVector(a).normalized());
        worst = std::max(worst, partial_trace(apply_unitary(rho, u), rest).max_abs_diff(partial_trace(rho, rest)));
    }
    return {"element footprints", worst < kAlgebraTol, "max reduced-state change = " + fmt_err(worst)};
}

CheckResult check_kraus_completeness() {
    double worst = 0.0;
    for (const KrausChannel &ch : all_channels()) {
        worst = std::max(worst, ch.completeness_error());
    }
    return {"kraus completeness", worst < kSpectralTol, "max |sum K^dag K - I| = " + fmt_err(worst)};
}

CheckResult check_channel_outputs() {
    Rng rng(11);
    double herm = 0.0;
    double trace = 0.0;
    double min_eig = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        const DensityOp rho = DensityOp::pure(random_state(rng));
        for (const KrausChannel &ch : all_channels()) {
            const DensityOp out = apply_channel(rho, ch);
            herm = std::max(herm, out.hermiticity_error());
            trace = std::max(trace, std::abs(out.trace() - 1.0));
            min_eig = std::min(min_eig, out.eigenvalues().front());
        }
    }
    const bool ok = herm < kAlgebraTol && trace < kAlgebraTol && min_eig >= -kSpectralTol;
    return {"channel outputs hermitian, psd, trace one", ok,
            "herm " + fmt_err(herm) + ", trace " + fmt_err(trace) + ", min eigenvalue " + fmt_err(min_eig)};
}

CheckResult check_basis_isometry() {
    Rng rng(13);
    double norm_err = 0.0;
    double round_trip = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const StateVector s = random_state(rng);
        const SinglePhotonBellCoeffs c = to_single_photon_bell_basis(s);
        norm_err = std::max(norm_err, std::abs(std::sqrt(c.norm_squared()) - 1.0));
        round_trip = std::max(round_trip, from_single_photon_bell_basis(c).max_abs_diff(s));
    }
    return {"single-photon Bell basis isometry", norm_err < kAlgebraTol && round_trip < kAlgebraTol,
            "norm " + fmt_err(norm_err) + ", round trip " + fmt_err(round_trip)};
}

CheckResult check_spb_expansion() {
    double worst = 0.0;
    for (BellLabel l : kAllBellLabels) {
        SinglePhotonBellCoeffs expected;
        for (const ExpectedSpbTerm &t : expected_spb_expansion(l)) {
            expected.coeffs[4 * static_cast<std::size_t>(t.a) + static_cast<std::size_t>(t.b)] = 0.5 * t.sign;
        }
        const SinglePhotonBellCoeffs got = decompose_single_photon_bell(hyperentangled_state(l)).coeffs;
        for (std::size_t i = 0; i < kDim; ++i) {
            worst = std::max(worst, std::abs(got.coeffs[i] - expected.coeffs[i]));
        }
    }
    return {"single-photon Bell expansion signs", worst < kAlgebraTol, "max coefficient error " + fmt_err(worst)};
}

CheckResult check_hw0_single_photon_map() {
    // sigma+- -> |H> (l +- r)/sqrt2 and tau+- -> |V> (l +- r)/sqrt2, on each photon.
    const ElementUnitary hw0 = analyzer_wave_plate();
    const double s = 1.0 / std::sqrt(2.0);
    double worst = 0.0;
    for (SpbOutcome o : kAllOutcomes) {
        const std::size_t pol = (o == SpbOutcome::SigmaPlus || o == SpbOutcome::SigmaMinus) ? 0 : 1;
        const double sign = (o == SpbOutcome::SigmaPlus || o == SpbOutcome::TauPlus) ? 1.0 : -1.0;
        std::array<cplx, 4> expected{};
        expected[2 * pol + 0] = s;
        expected[2 * pol + 1] = sign * s;
        const auto local = single_photon_bell_vector(o);
        const std::array<cplx, 4> spectator = {1.0, 0.0, 0.0, 0.0};  // |H l> on the other photon
        for (bool on_a : {true, false}) {
            std::array<cplx, kDim> in{};
            std::array<cplx, kDim> want{};
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    in[4 * i + j] = on_a ? local[i] * spectator[j] : spectator[i] * local[j];
                    want[4 * i + j] = on_a ? expected[i] * spectator[j] : spectator[i] * expected[j];
                }
            }
            worst = std::max(worst, apply_unitary(StateVector(in), hw0).max_abs_diff(StateVector(want)));
        }
    }
    return {"hw0 single-photon Bell map", worst < kAlgebraTol, "max amplitude error " + fmt_err(worst)};
}

CheckResult check_phase_transfer() {
    struct Expect {
        BellLabel in;
        BellLabel out;
        int sign;
    };
    const Expect expect[] = {
        {BellLabel::PhiPlus, BellLabel::PsiPlus, +1},
        {BellLabel::PhiMinus, BellLabel::PsiMinus, -1},
        {BellLabel::PsiPlus, BellLabel::PhiPlus, +1},
        {BellLabel::PsiMinus, BellLabel::PhiMinus, -1},
    };
    std::string detail;
    bool ok = true;
    for (const Expect &e : expect) {
        try {
            const BellAncillaForm f = phase_transfer_check(e.in);
            if (f.label != e.out || f.sign != e.sign) {
                ok = false;
                detail += std::string(bell_label_name(e.in)) + " -> " + std::string(bell_label_name(f.label)) +
                          (f.sign > 0 ? ",+ " : ",- ");
            }
        } catch (const SimError &err) {
            ok = false;
            detail += std::string(bell_label_name(e.in)) + ": " + err.what() + " ";
        }
    }
    return {"hw0 phase-to-ancilla transfer", ok, ok ? "all four labels" : detail};
}

CheckResult check_source_chain() {
    double worst = 0.0;
    for (BellLabel l : kAllBellLabels) {
        worst = std::max(worst, prepare_hyperentangled(l).phase_insensitive_diff(hyperentangled_state(l)));
    }
    return {"source chain reproduces hyperentangled states", worst < kAlgebraTol, "max error " + fmt_err(worst)};
}

CheckResult check_table_disjointness(const DecisionTable &table) {
    std::set<std::size_t> seen;
    bool ok = table.is_partition();
    for (BellLabel l : kAllBellLabels) {
        for (const CoincidencePattern &p : table.patterns_for(l)) {
            ok = ok && seen.insert(p.index()).second;
        }
    }
    // Ideal supports must also be disjoint and fall inside the table's sets.
    std::set<std::size_t> support_union;
    for (BellLabel l : kAllBellLabels) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), ideal_config());
        for (std::size_t i = 0; i < kDim; ++i) {
            if (probs.bins[i] > kAlgebraTol) {
                ok = ok && support_union.insert(i).second;
            }
        }
    }
    ok = ok && seen.size() == kDim && support_union.size() == kDim;
    return {"decision-table disjointness", ok, ok ? "16 patterns, 4 per label" : "table is not a 4x4 partition"};
}

CheckResult check_ideal_determinism(const DecisionTable &table) {
    double worst = 0.0;
    for (BellLabel l : kAllBellLabels) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), ideal_config());
        for (std::size_t i = 0; i < kDim; ++i) {
            const bool in_set = table[CoincidencePattern::from_index(i)] == l;
            worst = std::max(worst, std::abs(probs.bins[i] - (in_set ? 0.25 : 0.0)));
        }
    }
    return {"ideal analyzer determinism", worst < kAlgebraTol, "max deviation from 1/4 pattern " + fmt_err(worst)};
}

CheckResult check_dephasing_semigroup() {
    Rng rng(17);
    double worst = 0.0;
    for (auto [v, w] : {std::pair{0.3, 0.6}, std::pair{0.9, 0.1}, std::pair{0.0, 0.5}}) {
        const DensityOp rho = DensityOp::pure(random_c_subspace_state(rng));
        const DensityOp two = apply_channel(apply_channel(rho, delay_dephasing_channel(v)), delay_dephasing_channel(w));
        const DensityOp one = apply_channel(rho, delay_dephasing_channel(v * w));
        worst = std::max(worst, two.matrix().max_abs_diff(one.matrix()));
    }
    return {"dephasing semigroup", worst < kAlgebraTol, "max error " + fmt_err(worst)};
}

CheckResult check_dephasing_law(const DecisionTable &table) {
    double worst = 0.0;
    const DensityOp rho = DensityOp::pure(prepare_hyperentangled(BellLabel::PsiPlus));
    AnalyzerConfig cfg;
    for (int i = 0; i <= 20; ++i) {
        const double v = i / 20.0;
        cfg.delay_um = v > 0.0 ? delay_for_visibility(v, cfg.filter) : 1e6;
        const double vis = visibility(cfg.delay_um, cfg.filter);
        const ProbHistogram probs = analyzer_probabilities(rho, cfg);
        worst = std::max(worst, std::abs(classified(probs, BellLabel::PsiPlus, table) - 0.5 * (1.0 + vis)));
        worst = std::max(worst, std::abs(classified(probs, BellLabel::PsiMinus, table) - 0.5 * (1.0 - vis)));
    }
    return {"dephasing fidelity law", worst < kAlgebraTol, "max |F - (1 +- V)/2| = " + fmt_err(worst)};
}

CheckResult check_werner_law(const DecisionTable &table) {
    double worst = 0.0;
    AnalyzerConfig cfg;
    for (double p : {0.0, 0.3, 0.852, 1.0}) {
        cfg.noise.pol_werner_p = p;
        for (BellLabel l : kAllBellLabels) {
            const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), cfg);
            worst = std::max(worst, std::abs(classified(probs, l, table) - (p + (1.0 - p) / 4.0)));
        }
    }
    return {"werner fidelity law", worst < kAlgebraTol, "max |F - (p + (1-p)/4)| = " + fmt_err(worst)};
}

CheckResult check_born_sanity() {
    double worst_sum = 0.0;
    double min_prob = 0.0;
    AnalyzerConfig cfg;
    cfg.noise = {0.7, 0.2, 0.8};
    cfg.delay_um = 40.0;
    const double eta2 = 0.64;
    for (BellLabel l : kAllBellLabels) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), cfg);
        worst_sum = std::max(worst_sum, std::abs(probs.total() - eta2));
        for (double p : probs.bins) {
            min_prob = std::min(min_prob, p);
        }
    }
    return {"born rule sanity", worst_sum < 1e-9 && min_prob >= 0.0,
            "sum error " + fmt_err(worst_sum) + ", min probability " + fmt_err(min_prob)};
}

CheckResult check_kernel_equivalence() {
    Rng rng(19);
    std::array<cplx, kernels::kElems> a{};
    std::array<cplx, kernels::kElems> b{};
    std::array<cplx, kDim> x{};
    for (auto *arr : {&a, &b}) {
        for (cplx &v : *arr) {
            v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
    }
    for (cplx &v : x) {
        v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    const kernels::KernelTable &ref = kernels::scalar_kernels();
    std::array<cplx, kernels::kElems> want_mm{};
    std::array<cplx, kDim> want_mv{};
    ref.gemm(a, b, want_mm);
    ref.gemv(a, x, want_mv);
    std::string names;
    bool ok = true;
    for (const kernels::KernelTable *t : kernels::available_kernels()) {
        std::array<cplx, kernels::kElems> got_mm{};
        std::array<cplx, kDim> got_mv{};
        t->gemm(a, b, got_mm);
        t->gemv(a, x, got_mv);
        std::array<cplx, kernels::kElems> acc_ref = a;
        std::array<cplx, kernels::kElems> acc_got = a;
        ref.accumulate(b, acc_ref);
        t->accumulate(b, acc_got);
        ok = ok && got_mm == want_mm && got_mv == want_mv && acc_ref == acc_got;
        names += std::string(t->name) + " ";
    }
    return {"vector kernels match scalar reference", ok, "variants: " + names};
}

}  // namespace

std::array<ExpectedSpbTerm, 4> expected_spb_expansion(BellLabel label) {
    using O = SpbOutcome;
    switch (label) {
        case BellLabel::PhiPlus:
            return {{{O::SigmaPlus, O::TauPlus, +1},
                     {O::SigmaMinus, O::TauMinus, -1},
                     {O::TauPlus, O::SigmaPlus, +1},
                     {O::TauMinus, O::SigmaMinus, -1}}};
        case BellLabel::PhiMinus:
            return {{{O::SigmaPlus, O::TauMinus, -1},
                     {O::SigmaMinus, O::TauPlus, +1},
                     {O::TauPlus, O::SigmaMinus, +1},
                     {O::TauMinus, O::SigmaPlus, -1}}};
        case BellLabel::PsiPlus:
            return {{{O::SigmaPlus, O::SigmaPlus, +1},
                     {O::SigmaMinus, O::SigmaMinus, -1},
                     {O::TauPlus, O::TauPlus, +1},
                     {O::TauMinus, O::TauMinus, -1}}};
        case BellLabel::PsiMinus:
            return {{{O::SigmaPlus, O::SigmaMinus, -1},
                     {O::SigmaMinus, O::SigmaPlus, +1},
                     {O::TauPlus, O::TauMinus, +1},
                     {O::TauMinus, O::TauPlus, -1}}};
    }
    return {};
}

std::vector<CheckResult> run_invariant_suites(const DecisionTable &table) {
    std::vector<CheckResult> out;
    auto guarded = [&out](const char *name, auto &&check) {
        try {
            out.push_back(check());
        } catch (const std::exception &e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };
    guarded("unitarity", check_unitarity);
    guarded("half-wave plate involution", check_hw_involution);
    guarded("element footprints", check_footprints);
    guarded("kraus completeness", check_kraus_completeness);
    guarded("channel outputs hermitian, psd, trace one", check_channel_outputs);
    guarded("single-photon Bell basis isometry", check_basis_isometry);
    guarded("single-photon Bell expansion signs", check_spb_expansion);
    guarded("hw0 single-photon Bell map", check_hw0_single_photon_map);
    guarded("hw0 phase-to-ancilla transfer", check_phase_transfer);
    guarded("source chain reproduces hyperentangled states", check_source_chain);
    guarded("decision-table disjointness", [&] { return check_table_disjointness(table); });
    guarded("ideal analyzer determinism", [&] { return check_ideal_determinism(table); });
    guarded("dephasing semigroup", check_dephasing_semigroup);
    guarded("dephasing fidelity law", [&] { return check_dephasing_law(table); });
    guarded("werner fidelity law", [&] { return check_werner_law(table); });
    guarded("born rule sanity", check_born_sanity);
    guarded("vector kernels match scalar reference", check_kernel_equivalence);
    return out;
}

}  // namespace hyperbell
