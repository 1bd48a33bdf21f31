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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbell/config.h"
#include "hyperbell/qstate.h"

/// Hyperentangled source, the single-photon Bell analyzer and its decision rule.
namespace hyperbell {

enum class BellLabel : std::uint8_t { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                                            BellLabel::PsiPlus, BellLabel::PsiMinus};

/// "phi+", "phi-", "psi+", "psi-".
std::string_view bell_label_name(BellLabel label);
std::optional<BellLabel> parse_bell_label(std::string_view text);

/// Two-photon polarization vector, index 2 * polA + polB.
std::array<cplx, 4> polarization_bell_vector(BellLabel label);

/// (l_A r_B + sign * r_A l_B)/sqrt2, index 2 * momA + momB.
std::array<cplx, 4> momentum_psi(int sign);

/// |label>_pol (x) |psi+>_mom written down directly.
StateVector hyperentangled_state(BellLabel label);

/// The same state produced by the modeled source: Phi+- from the mirror
/// phase, Psi+- through the r-mode half-wave plate, and for Psi- the glass
/// plate on l_A that undoes the momentum sign flip. Equal to
/// hyperentangled_state() up to a global phase (-1 for Psi-).
StateVector prepare_hyperentangled(BellLabel label);

enum class Port : std::uint8_t { U = 0, V = 1 };

/// Which detector fired on each side.
struct CoincidencePattern {
    Port port_a = Port::U;
    Pol pol_a = Pol::H;
    Port port_b = Port::U;
    Pol pol_b = Pol::H;

    static CoincidencePattern from_index(std::size_t index);
    static CoincidencePattern from_outcomes(SpbOutcome a, SpbOutcome b);

    /// Basis index of the detected state: 8 polA + 4 portA + 2 polB + portB.
    std::size_t index() const;
    SpbOutcome outcome_a() const;
    SpbOutcome outcome_b() const;
    /// "sigma+/tau-"
    std::string spb_name() const;
    /// "uH/vV"
    std::string port_name() const;

    bool operator==(const CoincidencePattern &) const = default;
};

template <class T>
struct Histogram16 {
    std::array<T, kDim> bins{};

    T &operator[](CoincidencePattern p) {
        return bins[p.index()];
    }
    const T &operator[](CoincidencePattern p) const {
        return bins[p.index()];
    }
    T total() const {
        T s{};
        for (const T &b : bins) {
            s += b;
        }
        return s;
    }
    bool operator==(const Histogram16 &) const = default;
};

using ProbHistogram = Histogram16<double>;
using CountHistogram = Histogram16<std::uint64_t>;

/// Total map from coincidence pattern to the inferred input Bell state.
class DecisionTable {
   public:
    explicit DecisionTable(const std::array<BellLabel, kDim> &by_pattern_index) : map_(by_pattern_index) {
    }

    BellLabel operator[](CoincidencePattern p) const {
        return map_[p.index()];
    }
    std::vector<CoincidencePattern> patterns_for(BellLabel label) const;
    /// Each label owns exactly four patterns.
    bool is_partition() const;
    const std::array<BellLabel, kDim> &raw() const {
        return map_;
    }

   private:
    std::array<BellLabel, kDim> map_;
};

/// Patterns follow the single-photon Bell expansion of the four
/// hyperentangled states: Phi+ {s+t+, s-t-, t+s+, t-s-}, Phi- {s+t-, s-t+,
/// t+s-, t-s+}, Psi+ {s+s+, s-s-, t+t+, t-t-}, Psi- {s+s-, s-s+, t+t-, t-t+}.
const DecisionTable &decision_table();

BellLabel classify(CoincidencePattern pattern);

struct SpbTerm {
    SpbOutcome a;
    SpbOutcome b;
    cplx coeff;
};

struct SpbDecomposition {
    SinglePhotonBellCoeffs coeffs;
    /// Entries with modulus above 1e-12, in (a, b) order.
    std::vector<SpbTerm> nonzero;
};

SpbDecomposition decompose_single_photon_bell(const StateVector &state);

/// HW0: the 45-degree half-wave plate on the r modes of both photons.
ElementUnitary analyzer_wave_plate();

/// Born-rule probabilities of the 16 coincidence patterns. Pipeline:
/// polarization Werner noise, HW0, delay dephasing with the filter visibility,
/// the (possibly unbalanced) beam splitter, then PBS detection; scaled by
/// efficiency squared. Throws Leakage when the input has more than 1e-10
/// population outside the l_A r_B / r_A l_B mode pairs.
ProbHistogram analyzer_probabilities(const DensityOp &rho, const AnalyzerConfig &config);

struct BellAncillaForm {
    BellLabel label;
    int sign;  // +1 for |+>_C, -1 for |->_C
};

/// Factors a state as |Bell>_pol (x) |+->_C. Throws DecompositionFailed when
/// it is not such a product within 1e-10.
BellAncillaForm factor_bell_ancilla(const StateVector &state);

/// Applies HW0 to the hyperentangled state and factors the result.
BellAncillaForm phase_transfer_check(BellLabel label);

}  // namespace hyperbell
