// kernels_serial.cpp: single-threaded reference kernels

#include <algorithm>

#include "kernels_detail.hpp"

namespace dfsqt::kernels::serial {

std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
}

double bloch_quadrature(const BlochFn& f, int n_theta, int n_phi) {
    const auto rule = detail::theta_rule(n_theta, n_phi);
    std::vector<double> rows(rule.theta.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = detail::theta_row(f, rule, i, n_phi);
    double total = 0.0;
    for (double r : rows) total += r;
    return total;
}

MonteCarloSums bloch_montecarlo(const BlochFn& f, std::size_t samples, std::uint64_t seed) {
    std::vector<detail::ChunkSums> chunks(detail::chunk_count(samples));
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        const std::size_t begin = c * kChunk;
        chunks[c] = detail::mc_chunk(f, begin, std::min(samples, begin + kChunk), seed);
    }
    return detail::finish(chunks, samples);
}

}  // namespace dfsqt::kernels::serial
