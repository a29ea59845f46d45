#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>

#include "hshift/errors.hpp"
#include "hshift/hyperfine.hpp"

namespace hshift {

// Two-atom spin space.  Tensor order is electron1 x nuclear1 x electron2 x
// nuclear2 with +1/2 before -1/2 in each factor, so the basis index is
//   i = e1*8 + n1*4 + e2*2 + n2          (bit = 0 for +1/2, 1 for -1/2)
// and a product of two single-atom states |m1>|m2> (single-atom basis
// {++, +-, -+, --} as in hyperfine.hpp) lands at index 4*m1 + m2, i.e. the
// pair vector is the plain Kronecker product.  Spin operators use hbar = 1.

inline constexpr int kPairDim = 16;

using PairVector = Eigen::Matrix<std::complex<double>, kPairDim, 1>;
using PairMatrix = Eigen::Matrix<std::complex<double>, kPairDim, kPairDim>;

/// Kronecker product, row-major in the left factor (matches the index
/// convention above).
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

enum class OperatorKind {
    s_squared,       ///< total electron spin S^2
    i_squared,       ///< total nuclear spin I^2
    f_squared,       ///< total spin F^2, F = S + I
    s_z,             ///< total electron S_z
    i_z,             ///< total nuclear I_z
    exchange,        ///< swap of the two atoms
    drive_electron,  ///< S_1x + S_2x (ESR-type perturbation)
    drive_nuclear    ///< I_1x + I_2x (NMR-type perturbation)
};

enum class Drive { electron, nuclear };

struct CollectiveOperator {
    OperatorKind kind;
    PairMatrix matrix;
};

namespace detail {

inline Eigen::MatrixXcd spin_half(char axis) {
    using namespace std::complex_literals;
    Eigen::MatrixXcd s(2, 2);
    switch (axis) {
        case 'x': s << 0.0, 0.5, 0.5, 0.0; break;
        case 'y': s << 0.0, -0.5i, 0.5i, 0.0; break;
        case 'z': s << 0.5, 0.0, 0.0, -0.5; break;
        default: throw domain_error("pair_spin: unknown spin axis");
    }
    return s;
}

/// One-spin operator embedded at slot 0..3 of the four-fold product.
inline Eigen::MatrixXcd embed(char axis, int slot) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < 4; ++k)
        out = kron(out, k == slot ? spin_half(axis) : id);
    return out;
}

inline PairMatrix total_squared(int slot_first, int slot_second) {
    Eigen::MatrixXcd sq = Eigen::MatrixXcd::Zero(kPairDim, kPairDim);
    for (char axis : {'x', 'y', 'z'}) {
        const Eigen::MatrixXcd t = embed(axis, slot_first) + embed(axis, slot_second);
        sq += t * t;
    }
    return sq;
}

inline PairMatrix build(OperatorKind kind) {
    // electron spins live in slots 0 and 2, nuclear spins in slots 1 and 3
    switch (kind) {
        case OperatorKind::s_squared: return total_squared(0, 2);
        case OperatorKind::i_squared: return total_squared(1, 3);
        case OperatorKind::f_squared: {
            Eigen::MatrixXcd sq = Eigen::MatrixXcd::Zero(kPairDim, kPairDim);
            for (char axis : {'x', 'y', 'z'}) {
                const Eigen::MatrixXcd t =
                    embed(axis, 0) + embed(axis, 1) + embed(axis, 2) + embed(axis, 3);
                sq += t * t;
            }
            return sq;
        }
        case OperatorKind::s_z: return embed('z', 0) + embed('z', 2);
        case OperatorKind::i_z: return embed('z', 1) + embed('z', 3);
        case OperatorKind::exchange: {
            PairMatrix P = PairMatrix::Zero();
            for (int e1 = 0; e1 < 2; ++e1)
                for (int n1 = 0; n1 < 2; ++n1)
                    for (int e2 = 0; e2 < 2; ++e2)
                        for (int n2 = 0; n2 < 2; ++n2) {
                            const int from = e1 * 8 + n1 * 4 + e2 * 2 + n2;
                            const int to = e2 * 8 + n2 * 4 + e1 * 2 + n1;
                            P(to, from) = 1.0;
                        }
            return P;
        }
        case OperatorKind::drive_electron: return embed('x', 0) + embed('x', 2);
        case OperatorKind::drive_nuclear: return embed('x', 1) + embed('x', 3);
    }
    throw domain_error("pair_spin: unknown operator kind");
}

} // namespace detail

/// Memoised collective operator; built once per kind on first use.
inline const CollectiveOperator& collective_operator(OperatorKind kind) {
    static const std::array<CollectiveOperator, 8> ops = [] {
        std::array<CollectiveOperator, 8> a{};
        for (int k = 0; k < 8; ++k) {
            a[k].kind = static_cast<OperatorKind>(k);
            a[k].matrix = detail::build(a[k].kind);
        }
        return a;
    }();
    const int k = static_cast<int>(kind);
    if (k < 0 || k >= 8)
        throw domain_error("collective_operator: unknown operator kind");
    return ops[k];
}

struct PairState {
    PairVector amplitudes;
    std::string label;
};

/// Product state |l1>|l2> of two atoms sharing one spectrum.
inline PairState pair_basis_state(const HyperfineSpectrum& s, StateLabel l1, StateLabel l2) {
    const Eigen::VectorXcd v1 = s.state(l1).cast<std::complex<double>>();
    const Eigen::VectorXcd v2 = s.state(l2).cast<std::complex<double>>();
    PairState p;
    p.amplitudes = kron(v1, v2);
    p.label = std::string(to_string(l1)) + to_string(l2);
    return p;
}

/// Normalised symmetric combination (|l1 l2> + |l2 l1>) / sqrt(2); for equal
/// labels this is just the product state.  Only the symmetric combination is
/// representable; identical composite bosons carry no antisymmetric partner.
inline PairState symmetrized_pair_state(const HyperfineSpectrum& s, StateLabel l1, StateLabel l2) {
    if (l1 == l2) return pair_basis_state(s, l1, l2);
    const PairState p12 = pair_basis_state(s, l1, l2);
    const PairState p21 = pair_basis_state(s, l2, l1);
    PairState p;
    p.amplitudes = p12.amplitudes + p21.amplitudes;
    p.amplitudes.normalize();
    p.label = "(" + p12.label + "+" + p21.label + ")/sqrt2";
    return p;
}

/// <psi|Op|psi> / <psi|psi>.  The operators are Hermitian, so the result is
/// real; a non-negligible imaginary residual means corrupted inputs.
inline double expectation_value(const PairState& state, const CollectiveOperator& op) {
    const double nrm2 = state.amplitudes.squaredNorm();
    if (!(nrm2 > 0.0))
        throw domain_error("expectation_value: zero-norm state");
    const std::complex<double> raw = state.amplitudes.dot(op.matrix * state.amplitudes);
    if (std::abs(raw.imag()) > 1e-10 * (1.0 + std::abs(raw.real())))
        throw domain_error("expectation_value: non-real expectation of a Hermitian operator");
    return raw.real() / nrm2;
}

/// Matrix element <target| D |initial> of the one-body drive, hbar = 1.
inline std::complex<double> drive_coupling(const PairState& initial, const PairState& target,
                                           Drive drive) {
    const auto& op = collective_operator(drive == Drive::electron ? OperatorKind::drive_electron
                                                                  : OperatorKind::drive_nuclear);
    return target.amplitudes.dot(op.matrix * initial.amplitudes);
}

/// How much of the drive applied to |bb> leaks into nominally forbidden
/// sectors.  All projections are norms of the normalised driven state
/// D|bb> / ||D|bb>||, so values lie in [0, 1].
struct ForbiddennessReport {
    double driven_norm = 0.0;               ///< ||D|bb>|| before normalisation
    double singlet_projection_norm = 0.0;   ///< electron-singlet sector (S = 0)
    double odd_f_projection_norm = 0.0;     ///< total F = 1 sector
    double swap_antisymmetric_norm = 0.0;   ///< exchange-odd sector
};

namespace detail {

/// Spectral projector onto the eigenspace of `kind` with eigenvalue near
/// `target` (cluster width 0.5, eigenvalues are integers n(n+1) or +-1).
inline PairMatrix eigenspace_projector(OperatorKind kind, double target) {
    const PairMatrix& M = collective_operator(kind).matrix;
    Eigen::SelfAdjointEigenSolver<PairMatrix> solver(M);
    if (solver.info() != Eigen::Success)
        throw domain_error("pair_spin: projector diagonalisation failed");
    PairMatrix P = PairMatrix::Zero();
    for (int j = 0; j < kPairDim; ++j)
        if (std::abs(solver.eigenvalues()(j) - target) < 0.5)
            P += solver.eigenvectors().col(j) * solver.eigenvectors().col(j).adjoint();
    return P;
}

inline const PairMatrix& singlet_projector() {
    static const PairMatrix P = eigenspace_projector(OperatorKind::s_squared, 0.0);
    return P;
}

inline const PairMatrix& odd_f_projector() {
    // F = 1 means F(F+1) = 2
    static const PairMatrix P = eigenspace_projector(OperatorKind::f_squared, 2.0);
    return P;
}

inline const PairMatrix& antisymmetric_projector() {
    static const PairMatrix P =
        0.5 * (PairMatrix::Identity() - collective_operator(OperatorKind::exchange).matrix);
    return P;
}

} // namespace detail

inline ForbiddennessReport forbiddenness_check(const HyperfineSpectrum& s, Drive drive) {
    const PairState bb = pair_basis_state(s, StateLabel::b, StateLabel::b);
    const auto& op = collective_operator(drive == Drive::electron ? OperatorKind::drive_electron
                                                                  : OperatorKind::drive_nuclear);
    PairVector driven = op.matrix * bb.amplitudes;

    ForbiddennessReport r;
    r.driven_norm = driven.norm();
    if (!(r.driven_norm > 0.0))
        throw domain_error("forbiddenness_check: drive annihilates |bb>");
    driven /= r.driven_norm;

    r.singlet_projection_norm = (detail::singlet_projector() * driven).norm();
    r.odd_f_projection_norm = (detail::odd_f_projector() * driven).norm();
    r.swap_antisymmetric_norm = (detail::antisymmetric_projector() * driven).norm();
    return r;
}

} // namespace hshift
