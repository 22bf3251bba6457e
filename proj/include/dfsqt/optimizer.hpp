// optimizer.hpp: choosing Alice's measurement instant τ from Bob's bath parameters

#pragma once

#include <numbers>
#include <vector>

#include "dfsqt/kernels.hpp"
#include "dfsqt/metrics.hpp"
#include "dfsqt/noise.hpp"
#include "dfsqt/protocol.hpp"

namespace dfsqt::optimizer {

enum class Objective { Analytic, Quadrature };

struct TimingProblem {
    protocol::ResourceSpec resource;
    noise::NoiseParams bob_noise;
    // Only matters for RetainAll; the ψ branches never see Alice's bath.
    noise::NoiseParams alice_noise = noise::kDefaultAliceNoise;
    double tau_lo = std::numbers::pi;  // τ = 0 is a trivial maximum of the envelope
    double tau_hi = 4.0 * std::numbers::pi;
    metrics::Convention convention = metrics::Convention::Paper;
    protocol::Strategy strategy = protocol::Strategy::RetainPsiOnly;
    Objective objective = Objective::Analytic;
    int quadrature_nodes = metrics::kMinQuadratureNodes;

    void validate() const;
};

struct CurvePoint {
    double tau = 0.0;
    double fidelity = 0.0;
};

struct TimingSolution {
    double tau_star = 0.0;
    double f_star = 0.0;
    std::vector<CurvePoint> local_maxima;  // ascending τ
    std::vector<CurvePoint> grid;
};

/// Average FTS at one τ.
double objective(const TimingProblem& problem, double tau);

/// Uniform grid over [τ_lo, τ_hi] with n_points ≥ 2.
std::vector<CurvePoint> sweep(const TimingProblem& problem, int n_points,
                              kernels::Exec exec = kernels::Exec::Parallel);

/// Largest grid step in ω₀τ used for bracketing.
inline constexpr double kMaxGridStep = std::numbers::pi / 50.0;

/// Dense grid bracketing, then golden-section refinement of each bracket to
/// tol_tau. Equal maxima (within 1e-12) resolve to the earlier τ.
TimingSolution maximize_timing(const TimingProblem& problem, double tol_tau,
                               kernels::Exec exec = kernels::Exec::Parallel);

/// Golden-section maximization of f on [lo, hi] until the bracket is below tol.
CurvePoint golden_section_max(const kernels::ScalarFn& f, double lo, double hi, double tol);

}  // namespace dfsqt::optimizer
