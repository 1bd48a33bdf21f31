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

#include "hyperbell/qstate.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperbell/error.h"

namespace hyperbell {

namespace {

constexpr double kZeroNormTol = 1e-12;
constexpr double kCptpTol = 1e-10;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::vector<Subsystem> SubsystemSet::members() const {
    std::vector<Subsystem> out;
    for (Subsystem s : {Subsystem::PolA, Subsystem::MomA, Subsystem::PolB, Subsystem::MomB}) {
        if (contains(s)) {
            out.push_back(s);
        }
    }
    return out;
}

std::string to_string(SubsystemSet set) {
    static constexpr std::string_view names[] = {"polA", "momA", "polB", "momB"};
    std::string out = "{";
    bool first = true;
    for (Subsystem s : set.members()) {
        if (!first) {
            out += ",";
        }
        out += names[static_cast<unsigned>(s)];
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------- Matrix16

Matrix16 Matrix16::identity() {
    Matrix16 m;
    for (std::size_t i = 0; i < kDim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix16 Matrix16::diagonal(std::span<const cplx, kDim> diag) {
    Matrix16 m;
    for (std::size_t i = 0; i < kDim; ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

Matrix16 Matrix16::outer(std::span<const cplx, kDim> a, std::span<const cplx, kDim> b) {
    Matrix16 m;
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

Matrix16 Matrix16::kron(const Mat2 &pol_a, const Mat2 &mom_a, const Mat2 &pol_b, const Mat2 &mom_b) {
    Mat4 photon_a{};
    Mat4 photon_b{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            photon_a[r * 4 + c] = pol_a[(r >> 1) * 2 + (c >> 1)] * mom_a[(r & 1) * 2 + (c & 1)];
            photon_b[r * 4 + c] = pol_b[(r >> 1) * 2 + (c >> 1)] * mom_b[(r & 1) * 2 + (c & 1)];
        }
    }
    return kron_photons(photon_a, photon_b);
}

Matrix16 Matrix16::kron_photons(const Mat4 &photon_a, const Mat4 &photon_b) {
    Matrix16 m;
    for (std::size_t r = 0; r < kDim; ++r) {
        for (std::size_t c = 0; c < kDim; ++c) {
            m(r, c) = photon_a[(r >> 2) * 4 + (c >> 2)] * photon_b[(r & 3) * 4 + (c & 3)];
        }
    }
    return m;
}

Matrix16 Matrix16::adjoint() const {
    Matrix16 m;
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            m(j, i) = std::conj((*this)(i, j));
        }
    }
    return m;
}

cplx Matrix16::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix16::max_abs_diff(const Matrix16 &other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < kernels::kElems; ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

Matrix16 &Matrix16::operator+=(const Matrix16 &other) {
    kernels::active_kernels().accumulate(other.data(), data());
    return *this;
}

Matrix16 &Matrix16::operator*=(cplx scale) {
    for (cplx &x : data_) {
        x *= scale;
    }
    return *this;
}

Matrix16 operator*(const Matrix16 &a, const Matrix16 &b) {
    Matrix16 out;
    kernels::active_kernels().gemm(a.data(), b.data(), out.data());
    return out;
}

// ------------------------------------------------------------- StateVector

double StateVector::norm() const {
    double s = 0.0;
    for (const cplx &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n < kZeroNormTol) {
        throw SimError(ErrorCode::ZeroVector, "state vector norm below 1e-12");
    }
    std::array<cplx, kDim> out = amps_;
    for (cplx &a : out) {
        a /= n;
    }
    return StateVector(out);
}

cplx StateVector::inner(const StateVector &other) const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        s += std::conj(amps_[i]) * other.amps_[i];
    }
    return s;
}

double StateVector::max_abs_diff(const StateVector &other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        worst = std::max(worst, std::abs(amps_[i] - other.amps_[i]));
    }
    return worst;
}

double StateVector::phase_insensitive_diff(const StateVector &other) const {
    const cplx overlap = other.inner(*this);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        worst = std::max(worst, std::abs(amps_[i] - phase * other.amps_[i]));
    }
    return worst;
}

StateVector operator*(const Matrix16 &m, const StateVector &v) {
    std::array<cplx, kDim> out{};
    kernels::active_kernels().gemv(m.data(), v.amplitudes(), out);
    return StateVector(out);
}

StateVector make_basis_state(Pol pol_a, Mom mom_a, Pol pol_b, Mom mom_b) {
    std::array<cplx, kDim> a{};
    a[basis_index(pol_a, mom_a, pol_b, mom_b)] = 1.0;
    return StateVector(a);
}

StateVector superpose(std::span<const std::pair<cplx, StateVector>> terms) {
    if (terms.empty()) {
        throw SimError(ErrorCode::ZeroVector, "superpose needs at least one term");
    }
    std::array<cplx, kDim> sum{};
    for (const auto &[coeff, vec] : terms) {
        for (std::size_t i = 0; i < kDim; ++i) {
            sum[i] += coeff * vec[i];
        }
    }
    return StateVector(sum).normalized();
}

StateVector superpose(std::initializer_list<std::pair<cplx, StateVector>> terms) {
    return superpose(std::span<const std::pair<cplx, StateVector>>(terms.begin(), terms.size()));
}

StateVector compose_pol_mom(const std::array<cplx, 4> &pol, const std::array<cplx, 4> &mom) {
    std::array<cplx, kDim> a{};
    for (std::size_t p = 0; p < 4; ++p) {
        for (std::size_t m = 0; m < 4; ++m) {
            a[compose_index(p, m)] = pol[p] * mom[m];
        }
    }
    return StateVector(a);
}

// --------------------------------------------------------------- DensityOp

DensityOp DensityOp::pure(const StateVector &psi) {
    return DensityOp(Matrix16::outer(psi.amplitudes(), psi.amplitudes()));
}

DensityOp DensityOp::maximally_mixed() {
    Matrix16 m = Matrix16::identity();
    m *= 1.0 / static_cast<double>(kDim);
    return DensityOp(m);
}

double DensityOp::hermiticity_error() const {
    return m_.max_abs_diff(m_.adjoint());
}

std::array<double, kDim> DensityOp::eigenvalues() const {
    Eigen::Matrix<cplx, kDim, kDim> m;
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                0.5 * (m_(i, j) + std::conj(m_(j, i)));
        }
    }
    Eigen::SelfAdjointEigenSolver<decltype(m)> solver(m, Eigen::EigenvaluesOnly);
    std::array<double, kDim> out{};
    for (std::size_t i = 0; i < kDim; ++i) {
        out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    }
    return out;
}

DensityOp DensityOp::mixture(std::span<const std::pair<double, DensityOp>> parts) {
    Matrix16 sum;
    for (const auto &[w, rho] : parts) {
        sum += cplx(w) * rho.matrix();
    }
    return DensityOp(sum);
}

// ---------------------------------------------------------- element/channel

double ElementUnitary::unitarity_error() const {
    return (matrix.adjoint() * matrix).max_abs_diff(Matrix16::identity());
}

double KrausChannel::completeness_error() const {
    Matrix16 sum;
    for (const Matrix16 &k : operators) {
        sum += k.adjoint() * k;
    }
    return sum.max_abs_diff(Matrix16::identity());
}

StateVector apply_unitary(const StateVector &state, const ElementUnitary &u) {
    return u.matrix * state;
}

DensityOp apply_unitary(const DensityOp &rho, const ElementUnitary &u) {
    return DensityOp(u.matrix * (rho.matrix() * u.matrix.adjoint()));
}

DensityOp apply_channel(const DensityOp &rho, const KrausChannel &channel) {
    const double err = channel.completeness_error();
    if (err > kCptpTol) {
        throw SimError(ErrorCode::NonCPTP, "channel '" + channel.name +
                                               "' is not trace preserving (completeness error " +
                                               std::to_string(err) + ")");
    }
    Matrix16 out;
    for (const Matrix16 &k : channel.operators) {
        out += k * (rho.matrix() * k.adjoint());
    }
    return DensityOp(out);
}

// ----------------------------------------------------------- partial trace

ReducedDensity::ReducedDensity(SubsystemSet kept, std::vector<cplx> data)
    : kept_(kept), dim_(std::size_t{1} << kept.size()), data_(std::move(data)) {
}

cplx ReducedDensity::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ReducedDensity::max_abs_diff(const ReducedDensity &other) const {
    if (other.kept_ != kept_) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

ReducedDensity partial_trace(const DensityOp &rho, SubsystemSet keep) {
    if (keep.empty()) {
        throw SimError(ErrorCode::OutOfRange, "partial_trace needs at least one kept subsystem");
    }
    const std::vector<Subsystem> kept = keep.members();
    const std::vector<Subsystem> traced = keep.complement().members();

    // Scatter a local index (most significant bit = first member) onto the global bits.
    auto scatter = [](const std::vector<Subsystem> &subs, std::size_t local) {
        std::size_t global = 0;
        const std::size_t n = subs.size();
        for (std::size_t b = 0; b < n; ++b) {
            if ((local >> (n - 1 - b)) & 1u) {
                global |= std::size_t{1} << index_bit(subs[b]);
            }
        }
        return global;
    };

    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    std::vector<cplx> out(dk * dk);
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t tg = scatter(traced, t);
                s += rho(scatter(kept, r) | tg, scatter(kept, c) | tg);
            }
            out[r * dk + c] = s;
        }
    }
    return ReducedDensity(keep, std::move(out));
}

double fidelity_pure(const DensityOp &rho, const StateVector &target) {
    const StateVector rt = rho.matrix() * target;
    return target.inner(rt).real();
}

// ------------------------------------------------- single-photon Bell basis

std::string_view outcome_name(SpbOutcome o) {
    switch (o) {
        case SpbOutcome::SigmaPlus:
            return "sigma+";
        case SpbOutcome::SigmaMinus:
            return "sigma-";
        case SpbOutcome::TauPlus:
            return "tau+";
        case SpbOutcome::TauMinus:
            return "tau-";
    }
    return "?";
}

std::array<cplx, 4> single_photon_bell_vector(SpbOutcome o) {
    // Local index 2 * pol + mom: Hl=0, Hr=1, Vl=2, Vr=3.
    const double s = kInvSqrt2;
    switch (o) {
        case SpbOutcome::SigmaPlus:
            return {s, 0.0, 0.0, s};
        case SpbOutcome::SigmaMinus:
            return {s, 0.0, 0.0, -s};
        case SpbOutcome::TauPlus:
            return {0.0, s, s, 0.0};
        case SpbOutcome::TauMinus:
            return {0.0, -s, s, 0.0};
    }
    return {};
}

StateVector single_photon_bell_product(SpbOutcome a, SpbOutcome b) {
    const auto va = single_photon_bell_vector(a);
    const auto vb = single_photon_bell_vector(b);
    std::array<cplx, kDim> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            out[4 * i + j] = va[i] * vb[j];
        }
    }
    return StateVector(out);
}

double SinglePhotonBellCoeffs::norm_squared() const {
    double s = 0.0;
    for (const cplx &c : coeffs) {
        s += std::norm(c);
    }
    return s;
}

SinglePhotonBellCoeffs to_single_photon_bell_basis(const StateVector &state) {
    // The full index factors as 4 * (local A) + (local B), so the basis change
    // is W (x) W with W's rows the conjugated single-photon Bell vectors.
    std::array<std::array<cplx, 4>, 4> w{};
    for (SpbOutcome o : kAllOutcomes) {
        w[static_cast<std::size_t>(o)] = single_photon_bell_vector(o);
    }
    SinglePhotonBellCoeffs out;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    s += std::conj(w[a][i]) * std::conj(w[b][j]) * state[4 * i + j];
                }
            }
            out.coeffs[4 * a + b] = s;
        }
    }
    return out;
}

StateVector from_single_photon_bell_basis(const SinglePhotonBellCoeffs &c) {
    std::array<cplx, kDim> out{};
    for (SpbOutcome a : kAllOutcomes) {
        for (SpbOutcome b : kAllOutcomes) {
            const StateVector term = single_photon_bell_product(a, b);
            const cplx coeff = c.at(a, b);
            for (std::size_t i = 0; i < kDim; ++i) {
                out[i] += coeff * term[i];
            }
        }
    }
    return StateVector(out);
}

AncillaC extract_ancilla_c(const StateVector &state) {
    std::array<cplx, 4> branch0{};
    std::array<cplx, 4> branch1{};
    double leakage = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        const std::size_t m = momentum_config(i);
        const std::size_t p = polarization_config(i);
        if (m == kConfigC0) {
            branch0[p] = state[i];
        } else if (m == kConfigC1) {
            branch1[p] = state[i];
        } else {
            leakage += std::norm(state[i]);
        }
    }
    double n0 = 0.0;
    double n1 = 0.0;
    cplx overlap = 0.0;
    for (std::size_t p = 0; p < 4; ++p) {
        n0 += std::norm(branch0[p]);
        n1 += std::norm(branch1[p]);
        overlap += std::conj(branch0[p]) * branch1[p];
    }
    AncillaC out;
    out.amp0 = std::sqrt(n0);
    out.amp1 = std::sqrt(n1);
    if (std::abs(overlap) > 0.0) {
        out.amp1 *= overlap / std::abs(overlap);
    }
    out.leakage = leakage;
    return out;
}

}  // namespace hyperbell
