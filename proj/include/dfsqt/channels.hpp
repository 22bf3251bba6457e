// channels.hpp: solved dephasing channels as Hadamard factor matrices

#pragma once

#include "dfsqt/noise.hpp"
#include "dfsqt/qlinalg.hpp"

namespace dfsqt::channels {

using qlinalg::Matrix;

/// Hermitian multiplier matrix with unit diagonal and entries of modulus ≤ 1.
class FactorMatrix {
public:
    explicit FactorMatrix(const Matrix& factors);

    /// All-ones multiplier: the identity map.
    static FactorMatrix identity(int dim);

    const Matrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return m_.dim(); }

private:
    Matrix m_;
};

/// Common-bath map on A₁A₂ in the order (↑↑, ↑↓, ↓↑, ↓↓):
/// upper triangle (0,1)=f, (0,2)=f, (0,3)=a, (1,2)=1, (1,3)=g*, (2,3)=g*.
FactorMatrix alice_factor_matrix(const noise::DecoherenceFactors& fac);

/// Local map on B: (0,1) = b.
FactorMatrix bob_factor_matrix(const noise::DecoherenceFactors& fac);

/// ρ'_ij = fm_ij ρ_ij
Matrix apply_channel(const Matrix& rho, const FactorMatrix& fm);
qlinalg::DensityOp apply_channel(const qlinalg::DensityOp& rho, const FactorMatrix& fm);

/// Both wings at once on an A₁A₂B operator: Hadamard product with alice ⊗ bob.
Matrix joint_evolve(const Matrix& rho, const FactorMatrix& alice_fm, const FactorMatrix& bob_fm);
qlinalg::DensityOp joint_evolve(const qlinalg::DensityOp& rho, const FactorMatrix& alice_fm,
                                const FactorMatrix& bob_fm);

/// Nonzero block of the Choi matrix Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|), which for a
/// Hadamard channel lives on span{|i⟩|i⟩}. PSD iff the map is CP.
Matrix choi_block(const FactorMatrix& fm);

}  // namespace dfsqt::channels
