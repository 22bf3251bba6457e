// optimizer.cpp: choosing Alice's measurement instant τ from Bob's bath parameters

#include "dfsqt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfsqt::optimizer {

namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

void TimingProblem::validate() const {
    if (!(tau_lo >= 0.0) || !(tau_hi > tau_lo) || !std::isfinite(tau_hi)) {
        throw std::invalid_argument("timing window must satisfy 0 <= tau_lo < tau_hi");
    }
    bob_noise.validate();
    alice_noise.validate();
}

double objective(const TimingProblem& problem, double tau) {
    const auto factors = noise::factors_at(problem.alice_noise, problem.bob_noise, tau);
    if (problem.objective == Objective::Analytic) {
        return metrics::average_fts_analytic(problem.resource, factors, problem.strategy, problem.convention);
    }
    const auto f = metrics::pipeline_fidelity(problem.resource, factors, problem.strategy, problem.convention);
    // Serial inside: the τ grid is already the parallel axis.
    return metrics::average_fts_numeric(f, metrics::AverageMethod::Quadrature,
                                        static_cast<std::size_t>(problem.quadrature_nodes), 0, kernels::Exec::Serial)
        .value;
}

std::vector<CurvePoint> sweep(const TimingProblem& problem, int n_points, kernels::Exec exec) {
    problem.validate();
    if (n_points < 2) throw std::invalid_argument("sweep needs at least two points");
    std::vector<double> taus(static_cast<std::size_t>(n_points));
    const double step = (problem.tau_hi - problem.tau_lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) taus[static_cast<std::size_t>(i)] = problem.tau_lo + step * i;
    taus.back() = problem.tau_hi;

    const auto values = kernels::evaluate_grid([&](double tau) { return objective(problem, tau); }, taus, exec);
    std::vector<CurvePoint> curve(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) curve[i] = {taus[i], values[i]};
    return curve;
}

CurvePoint golden_section_max(const kernels::ScalarFn& f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("golden-section tolerance must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("golden-section bracket is inverted");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {  // keep the left piece on ties
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    CurvePoint best{mid, f(mid)};
    if (fc > best.fidelity) best = {c, fc};
    if (fd > best.fidelity) best = {d, fd};
    return best;
}

TimingSolution maximize_timing(const TimingProblem& problem, double tol_tau, kernels::Exec exec) {
    problem.validate();
    if (!(tol_tau > 0.0)) throw std::invalid_argument("tol_tau must be positive");

    const double span = problem.tau_hi - problem.tau_lo;
    const int intervals = std::max(1, static_cast<int>(std::ceil(span / kMaxGridStep)));
    TimingSolution sol;
    sol.grid = sweep(problem, intervals + 1, exec);
    const auto& g = sol.grid;
    const std::size_t n = g.size();
    auto f = [&](double tau) { return objective(problem, tau); };

    for (std::size_t i = 0; i < n; ++i) {
        const bool left_ok = i == 0 || g[i].fidelity >= g[i - 1].fidelity;
        const bool right_ok = i + 1 == n || g[i].fidelity > g[i + 1].fidelity;
        if (!left_ok || !right_ok) continue;
        const double lo = i == 0 ? g[i].tau : g[i - 1].tau;
        const double hi = i + 1 == n ? g[i].tau : g[i + 1].tau;
        CurvePoint refined = lo < hi ? golden_section_max(f, lo, hi, tol_tau) : g[i];
        if (g[i].fidelity >= refined.fidelity) refined = g[i];
        sol.local_maxima.push_back(refined);
    }

    // Every curve on a compact window has at least one grid maximum.
    sol.tau_star = sol.local_maxima.front().tau;
    sol.f_star = sol.local_maxima.front().fidelity;
    for (const CurvePoint& m : sol.local_maxima) {
        if (m.fidelity > sol.f_star + kTieTolerance) {
            sol.tau_star = m.tau;
            sol.f_star = m.fidelity;
        }
    }
    return sol;
}

}  // namespace dfsqt::optimizer
