// qlinalg.cpp: dense complex linear algebra for 1..8 dimensional operators

#include "dfsqt/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace dfsqt::qlinalg {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw UnsupportedDimension("dimension " + std::to_string(dim) + " outside 1..8");
    }
}

void check_same_dim(int a, int b) {
    if (a != b) {
        throw UnsupportedDimension("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

int qubit_count(int dim) {
    int n = 0;
    while ((1 << n) < dim) ++n;
    if ((1 << n) != dim) {
        throw UnsupportedDimension("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return n;
}

// Smallest eigenvalue of a 2x2 Hermitian matrix in closed form.
double min_eig_2x2(const Matrix& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    return 0.5 * (a + d) - std::hypot(0.5 * (a - d), off);
}

}  // namespace

Matrix::Matrix(int dim) : dim_(dim) { check_dim(dim); }

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(static_cast<int>(values.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = values[static_cast<std::size_t>(i)];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
}

Matrix Matrix::conjugate() const {
    Matrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(r, c));
    return out;
}

Complex Matrix::trace() const noexcept {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::hermiticity_defect() const noexcept {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c) worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    check_same_dim(dim_, rhs.dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) (*this)(r, c) += rhs(r, c);
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    check_same_dim(dim_, rhs.dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) (*this)(r, c) -= rhs(r, c);
    return *this;
}

Matrix& Matrix::operator*=(Complex s) noexcept {
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    check_same_dim(a.dim(), b.dim());
    const int n = a.dim();
    Matrix out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

bool Matrix::operator==(const Matrix& other) const noexcept {
    if (dim_ != other.dim_) return false;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            if ((*this)(r, c) != other(r, c)) return false;
    return true;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    check_same_dim(a.dim(), b.dim());
    Matrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) * b(r, c);
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    check_same_dim(a.dim(), b.dim());
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

// ---------------------------------------------------------------- Ket

Ket::Ket(int dim) : dim_(dim) { check_dim(dim); }

Ket::Ket(std::initializer_list<Complex> amplitudes) : Ket(static_cast<int>(amplitudes.size())) {
    std::copy(amplitudes.begin(), amplitudes.end(), amp_.begin());
}

Ket Ket::basis(int dim, int index) {
    Ket k(dim);
    if (index < 0 || index >= dim) throw std::out_of_range("basis index out of range");
    k[index] = 1.0;
    return k;
}

double Ket::norm_squared() const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::norm(amp_[static_cast<std::size_t>(i)]);
    return s;
}

Ket Ket::normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) throw ContractViolation("cannot normalize the zero vector");
    return Complex(1.0 / n) * *this;
}

Matrix Ket::outer(const Ket& other) const {
    check_same_dim(dim_, other.dim_);
    Matrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(r, c) = (*this)[r] * std::conj(other[c]);
    return m;
}

Complex Ket::inner(const Ket& other) const noexcept {
    Complex s = 0.0;
    for (int i = 0; i < std::min(dim_, other.dim_); ++i) s += std::conj((*this)[i]) * other[i];
    return s;
}

Ket operator+(const Ket& a, const Ket& b) {
    check_same_dim(a.dim(), b.dim());
    Ket out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

Ket operator-(const Ket& a, const Ket& b) {
    check_same_dim(a.dim(), b.dim());
    Ket out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
}

Ket operator*(Complex s, const Ket& k) {
    Ket out(k.dim());
    for (int i = 0; i < k.dim(); ++i) out[i] = s * k[i];
    return out;
}

Ket operator*(const Matrix& m, const Ket& k) {
    check_same_dim(m.dim(), k.dim());
    Ket out(k.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out[r] += m(r, c) * k[c];
    return out;
}

// ---------------------------------------------------------------- BlochAngles

void BlochAngles::validate() const {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw ContractViolation("theta outside [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw ContractViolation("phi outside [0, 2pi)");
}

Complex BlochAngles::alpha() const { return std::cos(0.5 * theta); }

Complex BlochAngles::beta() const { return std::sin(0.5 * theta) * std::polar(1.0, phi); }

Ket BlochAngles::ket() const { return Ket{alpha(), beta()}; }

// ---------------------------------------------------------------- DensityOp

DensityOp::DensityOp(const Matrix& m, TraceNorm norm) : m_(m), norm_(norm) {
    if (m.dim() != 2 && m.dim() != 4 && m.dim() != 8) {
        throw UnsupportedDimension("DensityOp dimension must be 2, 4 or 8");
    }
    if (!m.is_hermitian(kStructuralTol)) {
        throw ContractViolation("DensityOp is not Hermitian (defect " + std::to_string(m.hermiticity_defect()) + ")");
    }
    if (norm == TraceNorm::Unit && std::abs(m.trace() - 1.0) > kStructuralTol) {
        throw ContractViolation("DensityOp trace differs from 1");
    }
    const double lowest = m.dim() == 2 ? min_eig_2x2(m) : eig_hermitian(m).values.front();
    if (lowest < -kSpectralTol) {
        throw ContractViolation("DensityOp has negative eigenvalue " + std::to_string(lowest));
    }
}

DensityOp DensityOp::from_ket(const Ket& k) {
    if (std::abs(k.norm_squared() - 1.0) > kStructuralTol) throw ContractViolation("ket is not normalized");
    return DensityOp(k.projector());
}

// ---------------------------------------------------------------- products / traces

Matrix tensor(const Matrix& a, const Matrix& b) {
    const int n = a.dim() * b.dim();
    if (n > kMaxDim) throw UnsupportedDimension("tensor product dimension " + std::to_string(n) + " exceeds 8");
    Matrix out(n);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < b.dim(); ++k)
                for (int l = 0; l < b.dim(); ++l) out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
    return out;
}

Ket tensor(const Ket& a, const Ket& b) {
    const int n = a.dim() * b.dim();
    if (n > kMaxDim) throw UnsupportedDimension("tensor product dimension " + std::to_string(n) + " exceeds 8");
    Ket out(n);
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
    return out;
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
    const bool unit = a.unit_trace() && b.unit_trace();
    return DensityOp(tensor(a.matrix(), b.matrix()), unit ? TraceNorm::Unit : TraceNorm::Free);
}

Matrix partial_trace(const Matrix& rho, std::span<const int> keep) {
    const int n = qubit_count(rho.dim());
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 0 || kept.back() >= n) {
        throw std::invalid_argument("partial_trace: keep set must hold distinct qubit indices in range");
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

    // Bit position of qubit q in a full index (qubit 0 is the most significant).
    auto bit = [n](int q) { return n - 1 - q; };
    auto compose = [&](int kept_bits, int traced_bits) {
        int full = 0;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (kept_bits & (1 << (kept.size() - 1 - i))) full |= 1 << bit(kept[i]);
        for (std::size_t i = 0; i < traced.size(); ++i)
            if (traced_bits & (1 << (traced.size() - 1 - i))) full |= 1 << bit(traced[i]);
        return full;
    };

    const int kd = 1 << kept.size();
    const int td = 1 << traced.size();
    Matrix out(kd);
    for (int r = 0; r < kd; ++r)
        for (int c = 0; c < kd; ++c)
            for (int t = 0; t < td; ++t) out(r, c) += rho(compose(r, t), compose(c, t));
    return out;
}

DensityOp partial_trace(const DensityOp& rho, std::span<const int> keep) {
    return DensityOp(partial_trace(rho.matrix(), keep), rho.unit_trace() ? TraceNorm::Unit : TraceNorm::Free);
}

// ---------------------------------------------------------------- spectra

EigenSystem eig_hermitian(const Matrix& m) {
    const int n = m.dim();
    if (m.hermiticity_defect() > kSpectralTol) {
        throw ContractViolation("eig_hermitian: input is not Hermitian");
    }
    Matrix a = m;
    Matrix v = Matrix::identity(n);
    for (int i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    double scale = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off <= 1e-32 * scale * scale || off == 0.0) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                // Phase D = diag(1, e^{-iφ}) makes the pivot real, then a real rotation zeroes it.
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * mag);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G restricted to (p,q): [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                for (int k = 0; k < n; ++k) {  // A ← A G
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (int k = 0; k < n; ++k) {  // A ← G† A
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                for (int k = 0; k < n; ++k) {  // V ← V G
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

    EigenSystem es;
    es.values.reserve(static_cast<std::size_t>(n));
    es.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        es.values.push_back(a(src, src).real());
        for (int r = 0; r < n; ++r) es.vectors(r, k) = v(r, src);
    }
    return es;
}

Matrix mat_sqrt_psd(const Matrix& m) {
    const EigenSystem es = eig_hermitian(m);
    if (es.values.front() < -1e-8) {
        throw ContractViolation("mat_sqrt_psd: eigenvalue " + std::to_string(es.values.front()) + " below -1e-8");
    }
    const int n = m.dim();
    Matrix out(n);
    for (int k = 0; k < n; ++k) {
        const double root = std::sqrt(std::max(0.0, es.values[static_cast<std::size_t>(k)]));
        if (root == 0.0) continue;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out(r, c) += root * es.vectors(r, k) * std::conj(es.vectors(c, k));
    }
    return out;
}

Matrix pauli_x() {
    Matrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2);
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

}  // namespace dfsqt::qlinalg
