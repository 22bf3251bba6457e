// channels.cpp: solved dephasing channels as Hadamard factor matrices

#include "dfsqt/channels.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace dfsqt::channels {

using qlinalg::Complex;
using qlinalg::DensityOp;

namespace {

Matrix ones(int dim) {
    Matrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = 1.0;
    return m;
}

void check_dims(int rho_dim, int fm_dim) {
    if (rho_dim != fm_dim) {
        throw UnsupportedDimension("channel dimension " + std::to_string(fm_dim) + " does not match state dimension " +
                                   std::to_string(rho_dim));
    }
}

}  // namespace

FactorMatrix FactorMatrix::identity(int dim) { return FactorMatrix(ones(dim)); }

FactorMatrix::FactorMatrix(const Matrix& factors) : m_(factors) {
    constexpr double tol = qlinalg::kStructuralTol;
    for (int i = 0; i < m_.dim(); ++i) {
        if (std::abs(m_(i, i) - 1.0) > tol) throw ContractViolation("factor matrix diagonal must be 1");
        for (int j = 0; j < m_.dim(); ++j) {
            if (std::abs(m_(i, j) - std::conj(m_(j, i))) > tol) {
                throw ContractViolation("factor matrix must be Hermitian");
            }
            if (std::abs(m_(i, j)) > 1.0 + tol) throw ContractViolation("factor magnitude exceeds 1");
        }
    }
}

FactorMatrix alice_factor_matrix(const noise::DecoherenceFactors& fac) {
    Matrix m = ones(4);
    auto set = [&m](int r, int c, Complex v) {
        m(r, c) = v;
        m(c, r) = std::conj(v);
    };
    set(0, 1, fac.f);
    set(0, 2, fac.f);
    set(0, 3, fac.a);
    set(1, 2, 1.0);  // ↑↓/↓↑ coherence: decoherence-free
    set(1, 3, std::conj(fac.g));
    set(2, 3, std::conj(fac.g));
    return FactorMatrix(m);
}

FactorMatrix bob_factor_matrix(const noise::DecoherenceFactors& fac) {
    Matrix m = ones(2);
    m(0, 1) = fac.b;
    m(1, 0) = std::conj(fac.b);
    return FactorMatrix(m);
}

Matrix apply_channel(const Matrix& rho, const FactorMatrix& fm) {
    check_dims(rho.dim(), fm.dim());
    return qlinalg::hadamard(rho, fm.matrix());
}

DensityOp apply_channel(const DensityOp& rho, const FactorMatrix& fm) {
    return DensityOp(apply_channel(rho.matrix(), fm),
                     rho.unit_trace() ? qlinalg::TraceNorm::Unit : qlinalg::TraceNorm::Free);
}

Matrix joint_evolve(const Matrix& rho, const FactorMatrix& alice_fm, const FactorMatrix& bob_fm) {
    check_dims(rho.dim(), alice_fm.dim() * bob_fm.dim());
    return qlinalg::hadamard(rho, qlinalg::tensor(alice_fm.matrix(), bob_fm.matrix()));
}

DensityOp joint_evolve(const DensityOp& rho, const FactorMatrix& alice_fm, const FactorMatrix& bob_fm) {
    return DensityOp(joint_evolve(rho.matrix(), alice_fm, bob_fm),
                     rho.unit_trace() ? qlinalg::TraceNorm::Unit : qlinalg::TraceNorm::Free);
}

Matrix choi_block(const FactorMatrix& fm) { return fm.matrix(); }

}  // namespace dfsqt::channels
