// metrics.hpp: teleportation fidelity, Wootters concurrence and the Horodecki CHSH bound
//
// Two conventions for the fidelity of a retained outcome set:
//   Physical  Born-weighted mean of unit-trace corrected outputs
//             Σ_k p_k F_k / Σ_k p_k over retained k;
//   Paper     unweighted mean of the 4×-scaled outputs' fidelities over the
//             retained outcomes, which is what the closed-form averages
//             2/3 + (1/3)(μλ*b + μ*λb*) and (p/6)(b + b*) + p/6 + 1/2 describe.
// They coincide for the Werner resource and for RetainAll.

#pragma once

#include <cstdint>
#include <optional>

#include "dfsqt/kernels.hpp"
#include "dfsqt/noise.hpp"
#include "dfsqt/protocol.hpp"
#include "dfsqt/qlinalg.hpp"

namespace dfsqt::metrics {

using qlinalg::BlochAngles;
using qlinalg::Complex;
using qlinalg::DensityOp;
using qlinalg::Matrix;
using protocol::ResourceSpec;
using protocol::Strategy;

enum class Convention { Physical, Paper };

/// ⟨ψ_in|ρ|ψ_in⟩ for a one-qubit output (either trace normalization).
double fidelity_pointwise(const BlochAngles& input, const DensityOp& output);

/// Fidelity of the retained outcomes of one measured input.
/// Physical convention throws ContractViolation if the retained set has
/// (numerically) zero probability.
double retained_fidelity(const protocol::Measurement& m, Strategy strategy, Convention convention);

// ---------------------------------------------------------------- closed forms

/// 2/3 + (1/3)(μλ*b + μ*λb*)  with real μ, λ.
double average_fts_pure(double mu, double lambda, Complex b);

/// (p/6)(b + b*) + p/6 + 1/2
double average_fts_werner(double p, Complex b);

/// average_fts_werner in terms of C_m = (3p − 1)/2: (1/9)(C_m + ½)(b + b*) + (C_m + 5)/9.
double average_fts_werner_cm(double cm, Complex b);

/// e^{−2γ ln(1 + Λ²τ²)}: |b| for a zero-temperature Ohmic bath.
double ohmic_damping(const noise::NoiseParams& bob, double tau);

/// 2/3 + (1/3) C_p cos(ω₀τ) e^{−2γ ln(1+Λ²τ²)}
double average_fts_pure_ohmic(double concurrence, const noise::NoiseParams& bob, double tau);

/// (p/3) cos(ω₀τ) e^{−2γ ln(1+Λ²τ²)} + p/6 + 1/2
double average_fts_werner_ohmic(double p, const noise::NoiseParams& bob, double tau);

/// Sphere average of the physical ψ-branch fidelity for the pure resource:
/// ∫₀¹ N(u)/D(u) du with u = |α|².
double average_fts_pure_physical(double mu, double lambda, Complex b);

/// Closed-form sphere average for any resource, strategy and convention.
double average_fts_analytic(const ResourceSpec& resource, const noise::DecoherenceFactors& factors,
                            Strategy strategy, Convention convention);

// ---------------------------------------------------------------- integrands

/// Pointwise fidelity from the full 8×8 pipeline at fixed factors.
kernels::BlochFn pipeline_fidelity(ResourceSpec resource, noise::DecoherenceFactors factors, Strategy strategy,
                                   Convention convention);

/// Pointwise fidelity from the closed-form branch states.
kernels::BlochFn analytic_fidelity(ResourceSpec resource, noise::DecoherenceFactors factors, Strategy strategy,
                                   Convention convention);

// ---------------------------------------------------------------- numeric averages

enum class AverageMethod { Quadrature, MonteCarlo };

/// Fewer nodes per axis than this and the quadrature is reported as widened.
inline constexpr int kMinQuadratureNodes = 64;
/// Fewer samples than this and the Monte-Carlo error is widened to ≥ 1/√n.
inline constexpr std::size_t kMinMonteCarloSamples = 1000;

struct NumericAverage {
    double value = 0.0;
    double std_error = 0.0;  // quadrature: |Q(n) − Q(n/2)|; Monte Carlo: standard error
    std::size_t evaluations = 0;
    bool widened = false;
};

/// `size` is nodes per axis for quadrature and the sample count for Monte Carlo.
NumericAverage average_fts_numeric(const kernels::BlochFn& f, AverageMethod method, std::size_t size,
                                   std::uint64_t seed = 0, kernels::Exec exec = kernels::Exec::Parallel);

struct FidelityReport {
    std::optional<double> pointwise;
    double average_analytic = 0.0;
    NumericAverage average_quadrature;
    std::optional<NumericAverage> average_montecarlo;
};

struct ReportOptions {
    int quadrature_nodes = kMinQuadratureNodes;
    std::size_t montecarlo_samples = 100000;  // 0 skips Monte Carlo
    std::uint64_t seed = 0;
};

FidelityReport fidelity_report(const ResourceSpec& resource, const noise::DecoherenceFactors& factors,
                               Strategy strategy, Convention convention, const std::optional<BlochAngles>& input,
                               const ReportOptions& options = {});

// ---------------------------------------------------------------- entanglement and nonlocality

/// Wootters concurrence from the eigenvalues of √ρ ρ̃ √ρ.
double concurrence(const DensityOp& rho);

struct NonlocalityReport {
    std::array<std::array<double, 3>, 3> t_matrix{};  // T_ij = Tr ρ σ_i⊗σ_j
    double m_value = 0.0;                             // two largest eigenvalues of TᵀT
    double b_max = 0.0;                               // 2√m
    bool violates = false;                            // m > 1
};

NonlocalityReport chsh(const DensityOp& rho);

}  // namespace dfsqt::metrics
