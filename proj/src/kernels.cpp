// kernels.cpp: counter-based sampling and serial/OpenMP dispatch

#include "dfsqt/kernels.hpp"

#include <cmath>
#include <numbers>

namespace dfsqt::kernels {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) noexcept {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (counter * 0xD1B54A32D192ED03ULL));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

qlinalg::BlochAngles haar_sample(std::uint64_t seed, std::uint64_t index) noexcept {
    const double u = 2.0 * uniform01(seed, 2 * index) - 1.0;  // cosθ uniform on [-1, 1)
    const double v = uniform01(seed, 2 * index + 1);
    return {std::acos(u), 2.0 * std::numbers::pi * v};
}

std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs, Exec exec) {
    return exec == Exec::Serial ? serial::evaluate_grid(f, xs) : omp::evaluate_grid(f, xs);
}

double bloch_quadrature(const BlochFn& f, int n_theta, int n_phi, Exec exec) {
    return exec == Exec::Serial ? serial::bloch_quadrature(f, n_theta, n_phi) : omp::bloch_quadrature(f, n_theta, n_phi);
}

MonteCarloSums bloch_montecarlo(const BlochFn& f, std::size_t samples, std::uint64_t seed, Exec exec) {
    return exec == Exec::Serial ? serial::bloch_montecarlo(f, samples, seed) : omp::bloch_montecarlo(f, samples, seed);
}

}  // namespace dfsqt::kernels
