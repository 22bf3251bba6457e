// qlinalg.hpp: dense complex linear algebra for 1..8 dimensional operators
//
// Basis convention: computational product basis, binary descending with
// |↑⟩ ↔ 0 and |↓⟩ ↔ 1, leftmost subsystem most significant. For A₁A₂ the
// indices 0..3 are (↑↑, ↑↓, ↓↑, ↓↓); for A₁A₂B the B bit is the lowest.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dfsqt/errors.hpp"

namespace dfsqt::qlinalg {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 8;
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;

/// Square complex matrix with inline storage, dimension 1..8.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int dim);

    static Matrix identity(int dim);
    static Matrix diagonal(std::span<const double> values);

    int dim() const noexcept { return dim_; }

    Complex& operator()(int r, int c) noexcept { return data_[static_cast<std::size_t>(r * kMaxDim + c)]; }
    const Complex& operator()(int r, int c) const noexcept {
        return data_[static_cast<std::size_t>(r * kMaxDim + c)];
    }

    Matrix adjoint() const;
    Matrix conjugate() const;
    Complex trace() const noexcept;

    /// max_{ij} |m_ij − m_ji*|
    double hermiticity_defect() const noexcept;
    bool is_hermitian(double tol = kStructuralTol) const noexcept { return hermiticity_defect() <= tol; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(Complex s) noexcept;

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix& other) const noexcept;

private:
    int dim_ = 0;
    std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Elementwise (Hadamard) product.
Matrix hadamard(const Matrix& a, const Matrix& b);

/// max_{ij} |a_ij − b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Column vector with inline storage, dimension 1..8.
class Ket {
public:
    Ket() = default;
    explicit Ket(int dim);
    Ket(std::initializer_list<Complex> amplitudes);

    static Ket basis(int dim, int index);

    int dim() const noexcept { return dim_; }
    Complex& operator[](int i) noexcept { return amp_[static_cast<std::size_t>(i)]; }
    const Complex& operator[](int i) const noexcept { return amp_[static_cast<std::size_t>(i)]; }

    double norm_squared() const noexcept;
    Ket normalized() const;

    /// |self⟩⟨other|
    Matrix outer(const Ket& other) const;
    /// |self⟩⟨self|
    Matrix projector() const { return outer(*this); }

    /// ⟨self|other⟩
    Complex inner(const Ket& other) const noexcept;

    friend Ket operator+(const Ket& a, const Ket& b);
    friend Ket operator-(const Ket& a, const Ket& b);
    friend Ket operator*(Complex s, const Ket& k);
    friend Ket operator*(const Matrix& m, const Ket& k);

private:
    int dim_ = 0;
    std::array<Complex, kMaxDim> amp_{};
};

/// Bloch-sphere parametrization α = cos(θ/2), β = sin(θ/2)e^{iφ}.
struct BlochAngles {
    double theta = 0.0;  // [0, π]
    double phi = 0.0;    // [0, 2π)

    void validate() const;
    Ket ket() const;
    Complex alpha() const;
    Complex beta() const;
};

/// Whether a DensityOp is required to have unit trace.
enum class TraceNorm { Unit, Free };

/// Hermitian positive semidefinite operator on 1, 2 or 3 qubits.
/// Construction checks Hermiticity (1e-12), PSD (−1e-10) and, for
/// TraceNorm::Unit, unit trace.
class DensityOp {
public:
    DensityOp() = default;
    explicit DensityOp(const Matrix& m, TraceNorm norm = TraceNorm::Unit);

    static DensityOp from_ket(const Ket& k);

    const Matrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return m_.dim(); }
    bool unit_trace() const noexcept { return norm_ == TraceNorm::Unit; }
    double trace() const noexcept { return m_.trace().real(); }
    const Complex& operator()(int r, int c) const noexcept { return m_(r, c); }

private:
    Matrix m_;
    TraceNorm norm_ = TraceNorm::Unit;
};

/// Kronecker product; dims multiply and must stay ≤ 8.
Matrix tensor(const Matrix& a, const Matrix& b);
Ket tensor(const Ket& a, const Ket& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);

/// Reduced operator on the qubits listed in `keep` (indices from the most
/// significant qubit, 0-based). Dimension must be a power of two.
Matrix partial_trace(const Matrix& rho, std::span<const int> keep);
DensityOp partial_trace(const DensityOp& rho, std::span<const int> keep);

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k ↔ values[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
EigenSystem eig_hermitian(const Matrix& m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [−1e-8, 0) are clamped to zero; anything more negative is rejected.
Matrix mat_sqrt_psd(const Matrix& m);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace dfsqt::qlinalg
