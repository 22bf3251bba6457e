// kernels_detail.hpp: pieces shared by the serial and OpenMP kernels

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dfsqt/kernels.hpp"
#include "dfsqt/quadrature.hpp"

namespace dfsqt::kernels::detail {

struct ThetaRule {
    std::vector<double> theta;
    std::vector<double> weight;  // GL weight · sinθ · (1/4π) · (2π/n_phi) · (π/2)
};

inline ThetaRule theta_rule(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("bloch_quadrature: node counts must be positive");
    const auto gl = quadrature::gauss_legendre(n_theta);
    ThetaRule rule;
    rule.theta.resize(gl.nodes.size());
    rule.weight.resize(gl.nodes.size());
    const double half_pi = 0.5 * std::numbers::pi;
    const double phi_w = 2.0 * std::numbers::pi / n_phi;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double th = half_pi * (gl.nodes[i] + 1.0);
        rule.theta[i] = th;
        rule.weight[i] = gl.weights[i] * half_pi * std::sin(th) * phi_w / (4.0 * std::numbers::pi);
    }
    return rule;
}

inline double phi_node(int j, int n_phi) { return 2.0 * std::numbers::pi * j / n_phi; }

// Row i of the product rule: Σ_j f(θ_i, φ_j) · w_i.
inline double theta_row(const BlochFn& f, const ThetaRule& rule, std::size_t i, int n_phi) {
    double row = 0.0;
    for (int j = 0; j < n_phi; ++j) row += f(qlinalg::BlochAngles{rule.theta[i], phi_node(j, n_phi)});
    return row * rule.weight[i];
}

struct ChunkSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

inline ChunkSums mc_chunk(const BlochFn& f, std::size_t begin, std::size_t end, std::uint64_t seed) {
    ChunkSums c;
    for (std::size_t i = begin; i < end; ++i) {
        const double v = f(haar_sample(seed, i));
        c.sum += v;
        c.sum_sq += v * v;
    }
    return c;
}

inline MonteCarloSums finish(const std::vector<ChunkSums>& chunks, std::size_t samples) {
    double s = 0.0;
    double s2 = 0.0;
    for (const ChunkSums& c : chunks) {
        s += c.sum;
        s2 += c.sum_sq;
    }
    MonteCarloSums out;
    out.samples = samples;
    if (samples == 0) return out;
    const double n = static_cast<double>(samples);
    out.mean = s / n;
    if (samples > 1) {
        const double var = std::max(0.0, (s2 - s * s / n) / (n - 1.0));
        out.std_error = std::sqrt(var / n);
    } else {
        out.std_error = std::numeric_limits<double>::infinity();
    }
    return out;
}

inline std::size_t chunk_count(std::size_t samples) { return (samples + kChunk - 1) / kChunk; }

}  // namespace dfsqt::kernels::detail
