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

#include <cmath>
#include <numbers>
#include <set>

#include "gtest/gtest.h"
#include "hyperbell/elements.h"
#include "hyperbell/error.h"
#include "hyperbell/verify.h"
#include "test_util.h"

using namespace hyperbell;

namespace {

double classified(const ProbHistogram &probs, BellLabel label) {
    double s = 0.0;
    for (const CoincidencePattern &p : decision_table().patterns_for(label)) {
        s += probs[p];
    }
    return s;
}

CoincidencePattern pattern(Port pa, Pol a, Port pb, Pol b) {
    CoincidencePattern p;
    p.port_a = pa;
    p.pol_a = a;
    p.port_b = pb;
    p.pol_b = b;
    return p;
}

}  // namespace

TEST(apparatus, labels_round_trip) {
    for (BellLabel l : kAllBellLabels) {
        EXPECT_EQ(parse_bell_label(bell_label_name(l)), l);
    }
    EXPECT_FALSE(parse_bell_label("phi").has_value());
}

TEST(apparatus, source_chain_matches_textbook_states) {
    for (BellLabel l : kAllBellLabels) {
        EXPECT_LT(prepare_hyperentangled(l).phase_insensitive_diff(hyperentangled_state(l)), 1e-12);
        EXPECT_NEAR(prepare_hyperentangled(l).norm(), 1.0, 1e-12);
    }
    EXPECT_LT(prepare_hyperentangled(BellLabel::PhiPlus).max_abs_diff(hyperentangled_state(BellLabel::PhiPlus)), 1e-15);
}

TEST(apparatus, pattern_indexing) {
    for (std::size_t i = 0; i < kDim; ++i) {
        const CoincidencePattern p = CoincidencePattern::from_index(i);
        EXPECT_EQ(p.index(), i);
        EXPECT_EQ(CoincidencePattern::from_outcomes(p.outcome_a(), p.outcome_b()), p);
    }
    const CoincidencePattern p = pattern(Port::U, Pol::H, Port::V, Pol::V);
    EXPECT_EQ(p.port_name(), "uH/vV");
    EXPECT_EQ(p.spb_name(), "sigma+/tau-");
}

TEST(apparatus, classify_examples) {
    EXPECT_EQ(classify(pattern(Port::U, Pol::H, Port::U, Pol::V)), BellLabel::PhiPlus);
    EXPECT_EQ(classify(pattern(Port::V, Pol::V, Port::U, Pol::V)), BellLabel::PsiMinus);
    EXPECT_EQ(classify(pattern(Port::U, Pol::H, Port::U, Pol::H)), BellLabel::PsiPlus);
    EXPECT_EQ(classify(pattern(Port::V, Pol::H, Port::U, Pol::V)), BellLabel::PhiMinus);
}

TEST(apparatus, decision_table_is_a_partition) {
    EXPECT_TRUE(decision_table().is_partition());
    std::set<std::size_t> seen;
    for (BellLabel l : kAllBellLabels) {
        const auto ps = decision_table().patterns_for(l);
        EXPECT_EQ(ps.size(), 4u);
        for (const auto &p : ps) {
            EXPECT_TRUE(seen.insert(p.index()).second);
        }
    }
    EXPECT_EQ(seen.size(), kDim);

    auto raw = decision_table().raw();
    raw[0] = BellLabel::PhiPlus;
    raw[1] = BellLabel::PhiPlus;
    EXPECT_FALSE(DecisionTable(raw).is_partition());
}

TEST(apparatus, decision_table_matches_brute_force_propagation) {
    // Rebuild the table from scratch by propagating each ideal input through
    // wave plate, beam splitter and detectors with explicit matrix algebra.
    const Matrix16 chain = beam_splitter().matrix * analyzer_wave_plate().matrix;
    std::array<int, kDim> owner{};
    owner.fill(-1);
    for (BellLabel l : kAllBellLabels) {
        const StateVector out = chain * hyperentangled_state(l);
        for (std::size_t k = 0; k < kDim; ++k) {
            const double p = std::norm(out[k]);
            if (p > 1e-12) {
                EXPECT_NEAR(p, 0.25, 1e-12);
                EXPECT_EQ(owner[k], -1);
                owner[k] = static_cast<int>(l);
            }
        }
    }
    for (std::size_t k = 0; k < kDim; ++k) {
        EXPECT_EQ(owner[k], static_cast<int>(decision_table().raw()[k])) << k;
    }
}

TEST(apparatus, decomposition_matches_hand_expansion) {
    for (BellLabel l : kAllBellLabels) {
        const StateVector xi = hyperentangled_state(l);
        const SpbDecomposition d = decompose_single_photon_bell(xi);
        ASSERT_EQ(d.nonzero.size(), 4u);
        const auto expected = expected_spb_expansion(l);
        for (std::size_t i = 0; i < 4; ++i) {
            const SpbTerm &t = d.nonzero[i];
            const cplx by_hand = hyperbell::testing::spb_product_by_hand(static_cast<int>(t.a), static_cast<int>(t.b)).inner(xi);
            EXPECT_NEAR(std::abs(t.coeff - by_hand), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(t.coeff), 0.5, 1e-12);
            EXPECT_EQ(decision_table()[CoincidencePattern::from_outcomes(t.a, t.b)], l);
            bool found = false;
            for (const auto &e : expected) {
                if (e.a == t.a && e.b == t.b) {
                    found = true;
                    EXPECT_NEAR(t.coeff.real(), 0.5 * e.sign, 1e-12);
                }
            }
            EXPECT_TRUE(found) << outcome_name(t.a) << outcome_name(t.b);
        }
    }
}

TEST(apparatus, hw0_maps_each_term_to_its_detector) {
    // After HW0 and the splitter, |a>|b> lands on the single pattern for (a, b).
    const Matrix16 chain = beam_splitter().matrix * analyzer_wave_plate().matrix;
    for (SpbOutcome a : kAllOutcomes) {
        for (SpbOutcome b : kAllOutcomes) {
            const StateVector out = chain * single_photon_bell_product(a, b);
            EXPECT_NEAR(std::norm(out[CoincidencePattern::from_outcomes(a, b).index()]), 1.0, 1e-12);
        }
    }
}

TEST(apparatus, phase_transfer_examples) {
    const BellAncillaForm phi_plus = phase_transfer_check(BellLabel::PhiPlus);
    EXPECT_EQ(phi_plus.label, BellLabel::PsiPlus);
    EXPECT_EQ(phi_plus.sign, +1);
    const BellAncillaForm phi_minus = phase_transfer_check(BellLabel::PhiMinus);
    EXPECT_EQ(phi_minus.label, BellLabel::PsiMinus);
    EXPECT_EQ(phi_minus.sign, -1);
    const BellAncillaForm psi_plus = phase_transfer_check(BellLabel::PsiPlus);
    EXPECT_EQ(psi_plus.label, BellLabel::PhiPlus);
    EXPECT_EQ(psi_plus.sign, +1);
    const BellAncillaForm psi_minus = phase_transfer_check(BellLabel::PsiMinus);
    EXPECT_EQ(psi_minus.label, BellLabel::PhiMinus);
    EXPECT_EQ(psi_minus.sign, -1);

    for (BellLabel l : kAllBellLabels) {
        const StateVector twice =
            apply_unitary(apply_unitary(hyperentangled_state(l), analyzer_wave_plate()), analyzer_wave_plate());
        const BellAncillaForm f = factor_bell_ancilla(twice);
        EXPECT_EQ(f.label, l);
        EXPECT_EQ(f.sign, +1);
    }
}

TEST(apparatus, factoring_rejects_non_products) {
    EXPECT_THROW(factor_bell_ancilla(make_basis_state(Pol::H, Mom::L, Pol::H, Mom::L)), SimError);
    try {
        factor_bell_ancilla(make_basis_state(Pol::H, Mom::L, Pol::H, Mom::R));
        ADD_FAILURE();
    } catch (const SimError &e) {
        EXPECT_EQ(e.code(), ErrorCode::DecompositionFailed);
    }
}

TEST(apparatus, ideal_analyzer_is_deterministic) {
    const AnalyzerConfig ideal;
    for (BellLabel l : kAllBellLabels) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), ideal);
        EXPECT_NEAR(classified(probs, l), 1.0, 1e-12);
        for (const CoincidencePattern &p : decision_table().patterns_for(l)) {
            EXPECT_NEAR(probs[p], 0.25, 1e-12);
        }
    }
}

TEST(apparatus, full_dephasing_splits_over_eight_patterns) {
    AnalyzerConfig cfg;
    cfg.delay_um = 1e6;
    for (BellLabel l : kAllBellLabels) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(hyperentangled_state(l)), cfg);
        int eighth = 0;
        for (double p : probs.bins) {
            if (std::abs(p - 0.125) < 1e-12) {
                ++eighth;
            } else {
                EXPECT_EQ(p, 0.0);
            }
        }
        EXPECT_EQ(eighth, 8);
    }
}

TEST(apparatus, fully_depolarized_input_is_uniform) {
    AnalyzerConfig cfg;
    cfg.noise.pol_werner_p = 0.0;
    for (BellLabel l : kAllBellLabels) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(hyperentangled_state(l)), cfg);
        for (double p : probs.bins) {
            EXPECT_NEAR(p, 1.0 / 16.0, 1e-12);
        }
    }
}

TEST(apparatus, efficiency_scales_probabilities) {
    AnalyzerConfig cfg;
    cfg.noise.detector_efficiency = 0.5;
    const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(hyperentangled_state(BellLabel::PsiMinus)), cfg);
    EXPECT_NEAR(probs.total(), 0.25, 1e-12);
}

TEST(apparatus, leakage_is_rejected) {
    const AnalyzerConfig cfg;
    try {
        analyzer_probabilities(DensityOp::pure(make_basis_state(Pol::H, Mom::L, Pol::V, Mom::L)), cfg);
        ADD_FAILURE();
    } catch (const SimError &e) {
        EXPECT_EQ(e.code(), ErrorCode::Leakage);
    }
}

TEST(apparatus, dephasing_law_on_a_grid) {
    AnalyzerConfig cfg;
    for (int i = 0; i <= 40; ++i) {
        cfg.delay_um = 5.0 * i;
        const double v = visibility(cfg.delay_um, cfg.filter);
        for (BellLabel l : kAllBellLabels) {
            const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), cfg);
            EXPECT_NEAR(classified(probs, l), 0.5 * (1.0 + v), 1e-12);
        }
        const ProbHistogram pp = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(BellLabel::PsiPlus)), cfg);
        EXPECT_NEAR(classified(pp, BellLabel::PsiMinus), 0.5 * (1.0 - v), 1e-12);
        const ProbHistogram pm = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(BellLabel::PhiPlus)), cfg);
        EXPECT_NEAR(classified(pm, BellLabel::PhiMinus), 0.5 * (1.0 - v), 1e-12);
    }
}

TEST(apparatus, werner_law_on_a_grid) {
    AnalyzerConfig cfg;
    for (int i = 0; i <= 20; ++i) {
        cfg.noise.pol_werner_p = i / 20.0;
        const double p = cfg.noise.pol_werner_p;
        for (BellLabel l : kAllBellLabels) {
            const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(l)), cfg);
            EXPECT_NEAR(classified(probs, l), p + (1.0 - p) / 4.0, 1e-12);
            for (BellLabel other : kAllBellLabels) {
                if (other != l) {
                    EXPECT_NEAR(classified(probs, other), (1.0 - p) / 4.0, 1e-12);
                }
            }
        }
    }
}

TEST(apparatus, born_rule_on_random_mixed_inputs) {
    Rng rng(61);
    AnalyzerConfig cfg;
    for (int i = 0; i < 50; ++i) {
        cfg.delay_um = 100.0 * rng.uniform();
        cfg.noise.pol_werner_p = rng.uniform();
        cfg.noise.bs_imbalance = rng.uniform() - 0.5;
        const DensityOp rho = hyperbell::testing::random_mixed_c_state(rng, 3);
        const ProbHistogram probs = analyzer_probabilities(rho, cfg);
        EXPECT_NEAR(probs.total(), 1.0, 1e-12);
        for (double p : probs.bins) {
            EXPECT_GE(p, 0.0);
        }
    }
}

TEST(apparatus, swapping_photons_mirrors_the_patterns) {
    // Exchanging A and B maps pattern (a, b) to (b, a); Phi and Psi inputs
    // with momentum psi+ are symmetric, so their histograms must be too.
    AnalyzerConfig cfg;
    cfg.delay_um = 30.0;
    cfg.noise.pol_werner_p = 0.7;
    for (BellLabel l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus}) {
        const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(hyperentangled_state(l)), cfg);
        for (SpbOutcome a : kAllOutcomes) {
            for (SpbOutcome b : kAllOutcomes) {
                EXPECT_NEAR(probs[CoincidencePattern::from_outcomes(a, b)], probs[CoincidencePattern::from_outcomes(b, a)],
                            1e-12);
            }
        }
    }
}
