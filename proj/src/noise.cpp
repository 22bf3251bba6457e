// noise.cpp: Ohmic dephasing baths: decay rates, phase integrals and decoherence factors

#include "dfsqt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dfsqt/quadrature.hpp"

namespace dfsqt::noise {

namespace {

constexpr double kEnvelopeCutoffs = 40.0;  // e^{-40} ≈ 4e-18
constexpr double kAcceptRelTol = 1e-8;
constexpr int kMaxInitialSegments = 8192;

// coth(ω/2T); 1 at zero temperature.
double thermal_weight(double omega, double temperature) {
    if (temperature == 0.0) return 1.0;
    return 1.0 / std::tanh(omega / (2.0 * temperature));
}

double frequency_limit(const NoiseParams& p, double t) {
    return std::max(kEnvelopeCutoffs * p.cutoff, kEnvelopeCutoffs / t);
}

int segments_for(double omega_max, double t) {
    const double period = 2.0 * std::numbers::pi / t;
    const double n = std::ceil(omega_max / period);
    return static_cast<int>(std::clamp(n, 1.0, static_cast<double>(kMaxInitialSegments)));
}

template <class Integrand>
double integrate_frequency(const char* what, const NoiseParams& p, double t, Integrand integrand) {
    const double omega_max = frequency_limit(p, t);
    quadrature::AdaptiveOptions opts;
    opts.rel_tol = kQuadratureRelTol;
    // Absolute floor relative to the envelope scale 4γΛ; only matters for near-zero results.
    opts.abs_tol = 1e-16 * 4.0 * p.gamma * std::max(p.cutoff, 1.0) * std::max(t, 1.0);
    const auto res = quadrature::integrate_adaptive(integrand, 0.0, omega_max, segments_for(omega_max, t), opts);
    if (!res.converged && res.error > std::max(opts.abs_tol, kAcceptRelTol * std::abs(res.value))) {
        throw NumericAccuracyError(std::string(what) + ": quadrature did not converge (estimate " +
                                       std::to_string(res.value) + ", error " + std::to_string(res.error) + ")",
                                   res.value, res.error);
    }
    return res.value;
}

void check_time(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ContractViolation(std::string(what) + ": time must be finite and >= 0");
}

bool use_closed_form(const NoiseParams& p, Backend backend) {
    switch (backend) {
        case Backend::ClosedForm:
            if (!p.closed_form_available()) {
                throw std::invalid_argument("closed-form backend requires zero temperature");
            }
            return true;
        case Backend::Quadrature:
            return false;
        case Backend::Auto:
            break;
    }
    return p.closed_form_available();
}

}  // namespace

void NoiseParams::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ContractViolation("noise: gamma must be >= 0");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ContractViolation("noise: cutoff must be > 0");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw ContractViolation("noise: temperature must be >= 0");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw ContractViolation("noise: omega0 must be > 0");
}

double ohmic_spectral_density(const NoiseParams& p, double omega) {
    return p.gamma * omega * std::exp(-omega / p.cutoff);
}

double decay_rate(const NoiseParams& p, double t, Backend backend) {
    p.validate();
    check_time(t, "decay_rate");
    if (t == 0.0 || p.gamma == 0.0) return 0.0;
    if (use_closed_form(p, backend)) {
        const double l2 = p.cutoff * p.cutoff;
        return 4.0 * p.gamma * l2 * t / (1.0 + l2 * t * t);
    }
    // J(ω)/ω · coth · sin(ωt) = γ e^{-ω/Λ} coth(ω/2T) sin(ωt); → 2γTt as ω → 0.
    auto integrand = [&](double w) {
        if (w == 0.0) return p.temperature > 0.0 ? 4.0 * p.gamma * 2.0 * p.temperature * t : 0.0;
        return 4.0 * p.gamma * std::exp(-w / p.cutoff) * thermal_weight(w, p.temperature) * std::sin(w * t);
    };
    return integrate_frequency("decay_rate", p, t, integrand);
}

double cumulative_decay(const NoiseParams& p, double tau, Backend backend) {
    p.validate();
    check_time(tau, "cumulative_decay");
    if (tau == 0.0 || p.gamma == 0.0) return 0.0;
    if (use_closed_form(p, backend)) {
        const double lt = p.cutoff * tau;
        return 2.0 * p.gamma * std::log1p(lt * lt);
    }
    // Time integral taken analytically: ∫₀^τ sin(ωt) dt = 2 sin²(ωτ/2)/ω.
    auto integrand = [&](double w) {
        if (w == 0.0) return p.temperature > 0.0 ? 4.0 * p.gamma * p.temperature * tau * tau : 0.0;
        const double s = std::sin(0.5 * w * tau);
        return 4.0 * p.gamma * std::exp(-w / p.cutoff) * thermal_weight(w, p.temperature) * 2.0 * s * s / w;
    };
    return integrate_frequency("cumulative_decay", p, tau, integrand);
}

double phase_integral(const NoiseParams& p, double tau, Backend backend) {
    p.validate();
    check_time(tau, "phase_integral");
    if (tau == 0.0 || p.gamma == 0.0) return 0.0;
    // Temperature does not enter, so the Ohmic closed form is always exact;
    // ClosedForm is still rejected at T > 0 for a uniform backend contract.
    if (use_closed_form(p, backend) || (backend == Backend::Auto)) {
        const double lt = p.cutoff * tau;
        return 4.0 * p.gamma * (lt - std::atan(lt));
    }
    // ∫₀^τ (1 − cos ωt) dt = τ − sin(ωτ)/ω, series for small ωτ.
    auto integrand = [&](double w) {
        const double x = w * tau;
        double kernel;
        if (x < 1e-3) {
            const double x2 = x * x;
            kernel = tau * x2 / 6.0 * (1.0 - x2 / 20.0);
        } else {
            kernel = tau - std::sin(x) / w;
        }
        return 4.0 * p.gamma * std::exp(-w / p.cutoff) * kernel;
    };
    return integrate_frequency("phase_integral", p, tau, integrand);
}

Complex bob_factor(const NoiseParams& bob, double tau, Backend backend) {
    const double decay = cumulative_decay(bob, tau, backend);
    return std::exp(Complex(-decay, -bob.omega0 * tau));
}

DecoherenceFactors factors_at(const NoiseParams& alice, const NoiseParams& bob, double tau, Backend backend) {
    const double decay_a = cumulative_decay(alice, tau, backend);
    const double phase_a = phase_integral(alice, tau, backend);
    const double w = alice.omega0 * tau;

    DecoherenceFactors fac;
    fac.tau = tau;
    // 4∫α dt = ∫A dt − i·phase
    fac.f = std::exp(Complex(-decay_a, -w + phase_a));
    fac.g = std::exp(Complex(-decay_a, w + phase_a));
    fac.a = std::exp(Complex(-4.0 * decay_a, -2.0 * w));
    fac.b = bob_factor(bob, tau, backend);
    return fac;
}

}  // namespace dfsqt::noise
