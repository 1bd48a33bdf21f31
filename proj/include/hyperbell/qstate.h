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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperbell/kernels.h"

/// Linear algebra on the two-photon polarization x momentum space.
///
/// The space is the tensor product of four qubits, ordered
///
///     index = 8 * polA + 4 * momA + 2 * polB + momB
///
/// with polarization H=0, V=1 and momentum l=0, r=1. After the analyzer beam
/// splitter the momentum slots are reused for the output ports u=0, v=1.
namespace hyperbell {

using cplx = std::complex<double>;

inline constexpr std::size_t kDim = kernels::kDim;

enum class Subsystem : std::uint8_t { PolA = 0, MomA = 1, PolB = 2, MomB = 3 };

enum class Pol : std::uint8_t { H = 0, V = 1 };
enum class Mom : std::uint8_t { L = 0, R = 1 };

/// Bit position of a subsystem inside a basis index.
constexpr unsigned index_bit(Subsystem s) {
    return 3u - static_cast<unsigned>(s);
}

constexpr std::size_t basis_index(Pol pol_a, Mom mom_a, Pol pol_b, Mom mom_b) {
    return 8u * static_cast<std::size_t>(pol_a) + 4u * static_cast<std::size_t>(mom_a) +
           2u * static_cast<std::size_t>(pol_b) + static_cast<std::size_t>(mom_b);
}

class SubsystemSet {
   public:
    constexpr SubsystemSet() = default;
    constexpr SubsystemSet(std::initializer_list<Subsystem> items) {
        for (Subsystem s : items) {
            insert(s);
        }
    }

    static constexpr SubsystemSet all() {
        return {Subsystem::PolA, Subsystem::MomA, Subsystem::PolB, Subsystem::MomB};
    }

    constexpr void insert(Subsystem s) {
        mask_ = static_cast<std::uint8_t>(mask_ | (1u << static_cast<unsigned>(s)));
    }
    constexpr bool contains(Subsystem s) const {
        return (mask_ >> static_cast<unsigned>(s)) & 1u;
    }
    constexpr std::size_t size() const {
        return static_cast<std::size_t>(__builtin_popcount(mask_));
    }
    constexpr bool empty() const {
        return mask_ == 0;
    }
    constexpr SubsystemSet complement() const {
        SubsystemSet out;
        out.mask_ = static_cast<std::uint8_t>(~mask_ & 0x0Fu);
        return out;
    }
    constexpr std::uint8_t mask() const {
        return mask_;
    }
    /// Members in global ordering (PolA, MomA, PolB, MomB).
    std::vector<Subsystem> members() const;

    constexpr bool operator==(const SubsystemSet &) const = default;

   private:
    std::uint8_t mask_ = 0;
};

std::string to_string(SubsystemSet set);

/// 2x2 and 4x4 row-major operators on a single qubit / a single photon.
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

/// Row-major dense operator on the full space.
class Matrix16 {
   public:
    Matrix16() = default;

    static Matrix16 identity();
    static Matrix16 diagonal(std::span<const cplx, kDim> diag);
    /// |a><b|
    static Matrix16 outer(std::span<const cplx, kDim> a, std::span<const cplx, kDim> b);
    /// polA (x) momA (x) polB (x) momB.
    static Matrix16 kron(const Mat2 &pol_a, const Mat2 &mom_a, const Mat2 &pol_b, const Mat2 &mom_b);
    /// Photon A (x) photon B, each local operator indexed by 2 * pol + mom.
    static Matrix16 kron_photons(const Mat4 &photon_a, const Mat4 &photon_b);

    cplx &operator()(std::size_t row, std::size_t col) {
        return data_[row * kDim + col];
    }
    const cplx &operator()(std::size_t row, std::size_t col) const {
        return data_[row * kDim + col];
    }

    std::span<const cplx, kernels::kElems> data() const {
        return data_;
    }
    std::span<cplx, kernels::kElems> data() {
        return data_;
    }

    Matrix16 adjoint() const;
    cplx trace() const;
    /// Largest elementwise modulus of (this - other).
    double max_abs_diff(const Matrix16 &other) const;

    Matrix16 &operator+=(const Matrix16 &other);
    Matrix16 &operator*=(cplx scale);

    friend Matrix16 operator*(const Matrix16 &a, const Matrix16 &b);
    friend Matrix16 operator*(cplx scale, Matrix16 m) {
        return m *= scale;
    }
    friend Matrix16 operator+(Matrix16 a, const Matrix16 &b) {
        return a += b;
    }
    bool operator==(const Matrix16 &) const = default;

   private:
    std::array<cplx, kernels::kElems> data_{};
};

class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(const std::array<cplx, kDim> &amplitudes) : amps_(amplitudes) {
    }

    const cplx &operator[](std::size_t i) const {
        return amps_[i];
    }
    std::span<const cplx, kDim> amplitudes() const {
        return amps_;
    }

    double norm() const;
    /// Throws ZeroVector when the norm is below 1e-12.
    StateVector normalized() const;
    /// <this|other>
    cplx inner(const StateVector &other) const;
    /// Largest elementwise modulus of (this - other).
    double max_abs_diff(const StateVector &other) const;
    /// Distance after removing the best global phase of `other`.
    double phase_insensitive_diff(const StateVector &other) const;

    friend StateVector operator*(const Matrix16 &m, const StateVector &v);

   private:
    std::array<cplx, kDim> amps_{};
};

StateVector make_basis_state(Pol pol_a, Mom mom_a, Pol pol_b, Mom mom_b);

/// Normalized linear combination. Throws ZeroVector if the terms cancel.
StateVector superpose(std::span<const std::pair<cplx, StateVector>> terms);
StateVector superpose(std::initializer_list<std::pair<cplx, StateVector>> terms);

/// Product of a two-photon polarization vector (index 2 * polA + polB) and a
/// two-photon momentum vector (index 2 * momA + momB). No normalization.
StateVector compose_pol_mom(const std::array<cplx, 4> &pol, const std::array<cplx, 4> &mom);

class DensityOp {
   public:
    DensityOp() = default;
    explicit DensityOp(const Matrix16 &m) : m_(m) {
    }

    static DensityOp pure(const StateVector &psi);
    static DensityOp maximally_mixed();

    const Matrix16 &matrix() const {
        return m_;
    }
    cplx operator()(std::size_t row, std::size_t col) const {
        return m_(row, col);
    }

    cplx trace() const {
        return m_.trace();
    }
    double hermiticity_error() const;
    /// Ascending eigenvalues of the Hermitian part.
    std::array<double, kDim> eigenvalues() const;

    /// Convex combination with weights summing to one.
    static DensityOp mixture(std::span<const std::pair<double, DensityOp>> parts);

   private:
    Matrix16 m_{};
};

/// An optical element: a unitary plus the factors it acts on nontrivially.
struct ElementUnitary {
    std::string name;
    Matrix16 matrix = Matrix16::identity();
    SubsystemSet footprint;

    double unitarity_error() const;
};

struct KrausChannel {
    std::string name;
    std::vector<Matrix16> operators;

    /// ||sum K^dag K - I|| (max elementwise modulus).
    double completeness_error() const;
};

StateVector apply_unitary(const StateVector &state, const ElementUnitary &u);
DensityOp apply_unitary(const DensityOp &rho, const ElementUnitary &u);

/// Throws NonCPTP when the completeness error exceeds 1e-10.
DensityOp apply_channel(const DensityOp &rho, const KrausChannel &channel);

/// Reduced operator on a subset of the factors, kept in global order.
class ReducedDensity {
   public:
    ReducedDensity(SubsystemSet kept, std::vector<cplx> data);

    SubsystemSet kept() const {
        return kept_;
    }
    std::size_t dim() const {
        return dim_;
    }
    cplx operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    cplx trace() const;
    double max_abs_diff(const ReducedDensity &other) const;

   private:
    SubsystemSet kept_;
    std::size_t dim_;
    std::vector<cplx> data_;
};

/// Throws OutOfRange if `keep` is empty.
ReducedDensity partial_trace(const DensityOp &rho, SubsystemSet keep);

/// <target|rho|target>
double fidelity_pure(const DensityOp &rho, const StateVector &target);

/// Single-photon Bell outcomes; the numeric value is also the local index
/// 2 * pol + port of the detector that fires after the analyzer.
enum class SpbOutcome : std::uint8_t { SigmaPlus = 0, SigmaMinus = 1, TauPlus = 2, TauMinus = 3 };

inline constexpr std::array<SpbOutcome, 4> kAllOutcomes = {
    SpbOutcome::SigmaPlus, SpbOutcome::SigmaMinus, SpbOutcome::TauPlus, SpbOutcome::TauMinus};

std::string_view outcome_name(SpbOutcome o);

/// Local pol (x) mom vector of a single-photon Bell state, indexed by 2 * pol + mom.
std::array<cplx, 4> single_photon_bell_vector(SpbOutcome o);

/// |a>_A |b>_B
StateVector single_photon_bell_product(SpbOutcome a, SpbOutcome b);

struct SinglePhotonBellCoeffs {
    std::array<cplx, kDim> coeffs{};

    cplx at(SpbOutcome a, SpbOutcome b) const {
        return coeffs[4u * static_cast<std::size_t>(a) + static_cast<std::size_t>(b)];
    }
    double norm_squared() const;
};

SinglePhotonBellCoeffs to_single_photon_bell_basis(const StateVector &state);
StateVector from_single_photon_bell_basis(const SinglePhotonBellCoeffs &c);

/// The mode-pair qubit: |0>_C = l_A r_B, |1>_C = r_A l_B.
///
/// amp0 is the (real, nonnegative) norm of the l_A r_B branch; amp1 carries
/// the norm of the r_A l_B branch with the phase of its overlap with the
/// l_A r_B branch, so a product pol (x) C state reproduces its C amplitudes up
/// to global phase. leakage is the population in l_A l_B and r_A r_B.
struct AncillaC {
    cplx amp0;
    cplx amp1;
    double leakage = 0.0;
};

AncillaC extract_ancilla_c(const StateVector &state);

/// Momentum configuration index 2 * momA + momB of a basis index.
constexpr std::size_t momentum_config(std::size_t index) {
    return 2u * ((index >> 2) & 1u) + (index & 1u);
}
/// Polarization index 2 * polA + polB of a basis index.
constexpr std::size_t polarization_config(std::size_t index) {
    return 2u * ((index >> 3) & 1u) + ((index >> 1) & 1u);
}
constexpr std::size_t compose_index(std::size_t pol_config, std::size_t mom_config) {
    return 8u * (pol_config >> 1) + 4u * (mom_config >> 1) + 2u * (pol_config & 1u) + (mom_config & 1u);
}

inline constexpr std::size_t kConfigC0 = 1;  // l_A r_B
inline constexpr std::size_t kConfigC1 = 2;  // r_A l_B

}  // namespace hyperbell
