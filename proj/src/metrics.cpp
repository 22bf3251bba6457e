// metrics.cpp: teleportation fidelity, Wootters concurrence and the Horodecki CHSH bound

#include "dfsqt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dfsqt/quadrature.hpp"

namespace dfsqt::metrics {

using protocol::BellOutcome;

namespace {

double overlap(const BlochAngles& input, const Matrix& rho) {
    const qlinalg::Ket psi = input.ket();
    return psi.inner(rho * psi).real();
}

double pure_formula(double mu, double lambda, Complex x) {
    return 2.0 / 3.0 + (2.0 / 3.0) * mu * lambda * x.real();
}

double werner_formula(double p, Complex x) {
    return (p / 3.0) * x.real() + p / 6.0 + 0.5;
}

// Retained-set combination from per-branch probabilities and 4×-scaled fidelities.
double combine(const std::array<double, 4>& prob, const std::array<double, 4>& paper_fid, Strategy strategy,
               Convention convention) {
    double p_sum = 0.0;
    double weighted = 0.0;
    double plain = 0.0;
    int count = 0;
    for (BellOutcome o : protocol::kOutcomes) {
        if (!protocol::retained(o, strategy)) continue;
        const auto k = static_cast<std::size_t>(o);
        p_sum += prob[k];
        weighted += 0.25 * paper_fid[k];  // p_k F_k = p_k · paper_k / (4 p_k)
        plain += paper_fid[k];
        ++count;
    }
    if (convention == Convention::Paper) return plain / count;
    if (p_sum <= protocol::kDegenerateProbability) {
        throw ContractViolation("retained outcomes have zero probability for this input");
    }
    return weighted / p_sum;
}

// Jacobi leaves exact zeros at ~1e-16; their square roots (~1e-8) would
// dominate the error for rank-deficient states, so they are treated as zero.
constexpr double kEigenNoiseFloor = 1e-14;

Matrix sqrt_snapped(const Matrix& m) {
    const auto es = qlinalg::eig_hermitian(m);
    if (es.values.front() < -qlinalg::kSpectralTol) {
        throw ContractViolation("concurrence: state has a negative eigenvalue");
    }
    const double floor = kEigenNoiseFloor * std::max(es.values.back(), 0.0);
    const int n = m.dim();
    Matrix out(n);
    for (int k = 0; k < n; ++k) {
        const double v = es.values[static_cast<std::size_t>(k)];
        if (v <= floor) continue;
        const double root = std::sqrt(v);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out(r, c) += root * es.vectors(r, k) * std::conj(es.vectors(c, k));
    }
    return out;
}

}  // namespace

double fidelity_pointwise(const BlochAngles& input, const DensityOp& output) {
    if (output.dim() != 2) throw UnsupportedDimension("fidelity_pointwise expects a one-qubit output");
    input.validate();
    return overlap(input, output.matrix());
}

double retained_fidelity(const protocol::Measurement& m, Strategy strategy, Convention convention) {
    std::array<double, 4> prob{};
    std::array<double, 4> paper{};
    for (const auto& br : m.branches) {
        const auto k = static_cast<std::size_t>(br.outcome);
        prob[k] = br.probability;
        paper[k] = br.paper_fidelity;
    }
    return combine(prob, paper, strategy, convention);
}

double average_fts_pure(double mu, double lambda, Complex b) {
    if (std::abs(mu * mu + lambda * lambda - 1.0) > qlinalg::kStructuralTol) {
        throw ContractViolation("average_fts_pure needs mu^2 + lambda^2 = 1");
    }
    return pure_formula(mu, lambda, b);
}

double average_fts_werner(double p, Complex b) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("average_fts_werner needs 0 <= p <= 1");
    return werner_formula(p, b);
}

double average_fts_werner_cm(double cm, Complex b) {
    return (1.0 / 9.0) * (cm + 0.5) * 2.0 * b.real() + (cm + 5.0) / 9.0;
}

double ohmic_damping(const noise::NoiseParams& bob, double tau) {
    const double lt = bob.cutoff * tau;
    return std::exp(-2.0 * bob.gamma * std::log1p(lt * lt));
}

double average_fts_pure_ohmic(double concurrence, const noise::NoiseParams& bob, double tau) {
    return 2.0 / 3.0 + (1.0 / 3.0) * concurrence * std::cos(bob.omega0 * tau) * ohmic_damping(bob, tau);
}

double average_fts_werner_ohmic(double p, const noise::NoiseParams& bob, double tau) {
    return (p / 3.0) * std::cos(bob.omega0 * tau) * ohmic_damping(bob, tau) + p / 6.0 + 0.5;
}

double average_fts_pure_physical(double mu, double lambda, Complex b) {
    if (std::abs(mu * mu + lambda * lambda - 1.0) > qlinalg::kStructuralTol) {
        throw ContractViolation("average_fts_pure_physical needs mu^2 + lambda^2 = 1");
    }
    const double k = mu * lambda * b.real();
    const double mu2 = mu * mu;
    const double delta = lambda * lambda - mu2;
    // N(u) = A u² + B u + C over D(u) = μ² + δu
    const double A = 1.0 - 2.0 * k;
    const double B = 2.0 * (k - mu2);
    const double C = mu2;

    if (std::abs(delta) < 1e-3) {
        // Pole far outside [0, 1]; a short Gauss rule is exact to rounding.
        static const quadrature::GaussLegendre gl = quadrature::gauss_legendre(16);
        double sum = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = 0.5 * (gl.nodes[i] + 1.0);
            sum += 0.5 * gl.weights[i] * (A * u * u + B * u + C) / (mu2 + delta * u);
        }
        return sum;
    }
    const double q1 = A / delta;
    const double q0 = (B - q1 * mu2) / delta;
    const double r = C - q0 * mu2;
    double value = 0.5 * q1 + q0;
    if (r != 0.0) value += (r / delta) * std::log(lambda * lambda / mu2);
    return value;
}

double average_fts_analytic(const ResourceSpec& resource, const noise::DecoherenceFactors& factors,
                            Strategy strategy, Convention convention) {
    const Complex b = factors.b;
    const Complex ab = factors.a * factors.b;
    if (resource.is_pure()) {
        const auto& r = resource.pure();
        if (strategy == Strategy::RetainAll) {
            return 0.5 * (pure_formula(r.mu, r.lambda, b) + pure_formula(r.mu, r.lambda, ab));
        }
        return convention == Convention::Paper ? average_fts_pure(r.mu, r.lambda, b)
                                               : average_fts_pure_physical(r.mu, r.lambda, b);
    }
    const double p = resource.werner().p;
    if (strategy == Strategy::RetainAll) return 0.5 * (werner_formula(p, b) + werner_formula(p, ab));
    return average_fts_werner(p, b);
}

kernels::BlochFn pipeline_fidelity(ResourceSpec resource, noise::DecoherenceFactors factors, Strategy strategy,
                                   Convention convention) {
    return [resource = std::move(resource), factors, strategy, convention](const BlochAngles& in) {
        const auto m = protocol::evolve_and_measure(in, resource, factors, strategy);
        return retained_fidelity(m, strategy, convention);
    };
}

kernels::BlochFn analytic_fidelity(ResourceSpec resource, noise::DecoherenceFactors factors, Strategy strategy,
                                   Convention convention) {
    return [resource = std::move(resource), factors, strategy, convention](const BlochAngles& in) {
        const auto states = protocol::analytic_branch_states(in, resource, factors);
        std::array<double, 4> prob{};
        std::array<double, 4> paper{};
        for (BellOutcome o : protocol::kOutcomes) {
            const auto k = static_cast<std::size_t>(o);
            const Matrix u = protocol::correction(o);
            prob[k] = 0.25 * states[k].trace().real();
            paper[k] = overlap(in, u * states[k] * u.adjoint());
        }
        return combine(prob, paper, strategy, convention);
    };
}

NumericAverage average_fts_numeric(const kernels::BlochFn& f, AverageMethod method, std::size_t size,
                                   std::uint64_t seed, kernels::Exec exec) {
    NumericAverage out;
    if (method == AverageMethod::Quadrature) {
        if (size < 1) throw std::invalid_argument("quadrature needs at least one node per axis");
        const int n = static_cast<int>(size);
        out.value = kernels::bloch_quadrature(f, n, n, exec);
        out.evaluations = size * size;
        if (n >= 2) {
            const int coarse = n / 2;
            out.std_error = std::abs(out.value - kernels::bloch_quadrature(f, coarse, coarse, exec));
            out.evaluations += static_cast<std::size_t>(coarse) * static_cast<std::size_t>(coarse);
        } else {
            out.std_error = std::numeric_limits<double>::infinity();
        }
        out.widened = n < kMinQuadratureNodes;
        return out;
    }

    const auto sums = kernels::bloch_montecarlo(f, size, seed, exec);
    out.value = sums.mean;
    out.std_error = sums.std_error;
    out.evaluations = size;
    if (size < kMinMonteCarloSamples) {
        out.widened = true;
        const double floor = size > 0 ? 1.0 / std::sqrt(static_cast<double>(size))
                                      : std::numeric_limits<double>::infinity();
        out.std_error = std::max(out.std_error, floor);
    }
    return out;
}

FidelityReport fidelity_report(const ResourceSpec& resource, const noise::DecoherenceFactors& factors,
                               Strategy strategy, Convention convention, const std::optional<BlochAngles>& input,
                               const ReportOptions& options) {
    FidelityReport rep;
    if (input) {
        const auto m = protocol::evolve_and_measure(*input, resource, factors, strategy);
        rep.pointwise = retained_fidelity(m, strategy, convention);
    }
    rep.average_analytic = average_fts_analytic(resource, factors, strategy, convention);
    const auto f = pipeline_fidelity(resource, factors, strategy, convention);
    rep.average_quadrature = average_fts_numeric(f, AverageMethod::Quadrature,
                                                 static_cast<std::size_t>(options.quadrature_nodes));
    if (options.montecarlo_samples > 0) {
        rep.average_montecarlo =
            average_fts_numeric(f, AverageMethod::MonteCarlo, options.montecarlo_samples, options.seed);
    }
    return rep;
}

double concurrence(const DensityOp& rho) {
    if (rho.dim() != 4) throw UnsupportedDimension("concurrence expects a two-qubit state");
    const Matrix yy = qlinalg::tensor(qlinalg::pauli_y(), qlinalg::pauli_y());
    const Matrix tilde = yy * rho.matrix().conjugate() * yy;
    const Matrix root = sqrt_snapped(rho.matrix());
    Matrix r = root * tilde * root;
    r = Complex(0.5) * (r + r.adjoint());
    const auto ev = qlinalg::eig_hermitian(r).values;  // ascending
    const double floor = kEigenNoiseFloor * std::max(ev.back(), 0.0);
    std::array<double, 4> s{};
    for (std::size_t i = 0; i < 4; ++i) s[i] = ev[i] > floor ? std::sqrt(ev[i]) : 0.0;
    return std::clamp(s[3] - s[2] - s[1] - s[0], 0.0, 1.0);
}

NonlocalityReport chsh(const DensityOp& rho) {
    if (rho.dim() != 4) throw UnsupportedDimension("chsh expects a two-qubit state");
    const std::array<Matrix, 3> sigma{qlinalg::pauli_x(), qlinalg::pauli_y(), qlinalg::pauli_z()};
    NonlocalityReport rep;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            rep.t_matrix[i][j] = (rho.matrix() * qlinalg::tensor(sigma[i], sigma[j])).trace().real();
        }
    Matrix tt(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += rep.t_matrix[k][i] * rep.t_matrix[k][j];
            tt(i, j) = acc;
        }
    const auto u = qlinalg::eig_hermitian(tt).values;
    rep.m_value = u[1] + u[2];
    rep.b_max = 2.0 * std::sqrt(std::max(0.0, rep.m_value));
    rep.violates = rep.m_value > 1.0;
    return rep;
}

}  // namespace dfsqt::metrics
