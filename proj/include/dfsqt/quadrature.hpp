// quadrature.hpp: adaptive Gauss–Kronrod and Gauss–Legendre rules

#pragma once

#include <functional>
#include <vector>

namespace dfsqt::quadrature {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // summed |K15 − G7| over the final partition
    int intervals = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 50000;
};

/// Globally adaptive G7–K15 integration of f over [a, b]. The range is first
/// split into `initial_segments` equal pieces (useful for oscillatory
/// integrands), then the piece with the largest error estimate is bisected
/// until Σerr ≤ max(abs_tol, rel_tol·|I|) or the interval budget is spent.
/// Never throws on non-convergence; inspect `converged`.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              int initial_segments = 1, const AdaptiveOptions& opts = {});

/// n-point Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

}  // namespace dfsqt::quadrature
