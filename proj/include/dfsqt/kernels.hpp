// kernels.hpp: data-parallel evaluation kernels with serial reference versions
//
// Every kernel exists twice: `serial::` is the reference used by tests, and
// `omp::` distributes the same work with OpenMP. Reductions run over fixed
// chunks in a fixed order, so both versions return bit-identical results
// regardless of thread count.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dfsqt/qlinalg.hpp"

namespace dfsqt::kernels {

using ScalarFn = std::function<double(double)>;
using BlochFn = std::function<double(const qlinalg::BlochAngles&)>;

enum class Exec { Serial, Parallel };

struct MonteCarloSums {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Samples per reduction chunk (Monte Carlo).
inline constexpr std::size_t kChunk = 4096;

/// Counter-based SplitMix64 step; sample i of stream `seed` uses
/// splitmix64(seed ^ ...) so samples are independent of scheduling.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform double in [0, 1) for (seed, counter).
double uniform01(std::uint64_t seed, std::uint64_t counter) noexcept;

/// Haar-uniform point on the Bloch sphere for sample index i.
qlinalg::BlochAngles haar_sample(std::uint64_t seed, std::uint64_t index) noexcept;

namespace serial {
std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs);
double bloch_quadrature(const BlochFn& f, int n_theta, int n_phi);
MonteCarloSums bloch_montecarlo(const BlochFn& f, std::size_t samples, std::uint64_t seed);
}  // namespace serial

namespace omp {
std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs);
double bloch_quadrature(const BlochFn& f, int n_theta, int n_phi);
MonteCarloSums bloch_montecarlo(const BlochFn& f, std::size_t samples, std::uint64_t seed);
}  // namespace omp

std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs, Exec exec = Exec::Parallel);

/// (1/4π) ∫₀^π dθ ∫₀^{2π} dφ f(θ,φ) sinθ with Gauss–Legendre in θ and the
/// trapezoid rule in φ.
double bloch_quadrature(const BlochFn& f, int n_theta, int n_phi, Exec exec = Exec::Parallel);

MonteCarloSums bloch_montecarlo(const BlochFn& f, std::size_t samples, std::uint64_t seed,
                                Exec exec = Exec::Parallel);

}  // namespace dfsqt::kernels
