// noise.hpp: Ohmic dephasing baths: decay rates, phase integrals and decoherence factors
//
// Units: ω₀ = ħ = k_B = 1. Times are ω₀τ, frequencies are multiples of ω₀,
// temperatures are multiples of ħω₀/k_B.

#pragma once

#include "dfsqt/qlinalg.hpp"

namespace dfsqt::noise {

using qlinalg::Complex;

/// One wing's bath: J(ω) = γ ω e^{−ω/Λ} at temperature T.
struct NoiseParams {
    double gamma = 0.1;
    double cutoff = 0.1;       // Λ
    double temperature = 0.0;  // T
    double omega0 = 1.0;

    void validate() const;
    bool closed_form_available() const noexcept { return temperature == 0.0; }
};

/// Default bath used for Alice when nothing else is specified.
inline constexpr NoiseParams kDefaultAliceNoise{0.1, 0.1, 0.0, 1.0};

/// Decoherence factors at the measurement instant τ.
struct DecoherenceFactors {
    Complex f{1.0};
    Complex g{1.0};
    Complex a{1.0};
    Complex b{1.0};
    double tau = 0.0;
};

/// Auto picks the closed form for T = 0 and quadrature otherwise.
enum class Backend { Auto, ClosedForm, Quadrature };

double ohmic_spectral_density(const NoiseParams& p, double omega);

/// A(t) = 4∫₀^∞ J(ω) coth(ω/2T) sin(ωt)/ω dω  (coth → 1 at T = 0).
double decay_rate(const NoiseParams& p, double t, Backend backend = Backend::Auto);

/// ∫₀^τ A(t) dt.
double cumulative_decay(const NoiseParams& p, double tau, Backend backend = Backend::Auto);

/// 4∫₀^τ dt ∫₀^∞ J(ω)(1 − cos ωt)/ω dω; temperature independent.
double phase_integral(const NoiseParams& p, double tau, Backend backend = Backend::Auto);

/// Bob's factor b = exp(−iω₀τ − ∫B dt).
Complex bob_factor(const NoiseParams& bob, double tau, Backend backend = Backend::Auto);

/// Alice's common-bath factors f, g, a and Bob's b at τ.
DecoherenceFactors factors_at(const NoiseParams& alice, const NoiseParams& bob, double tau,
                              Backend backend = Backend::Auto);

/// Requested relative accuracy of every quadrature in this module.
inline constexpr double kQuadratureRelTol = 1e-10;

}  // namespace dfsqt::noise
