// kernels_omp.cpp: OpenMP versions of the evaluation kernels

#include <algorithm>
#include <exception>
#include <mutex>

#include "kernels_detail.hpp"

namespace dfsqt::kernels::omp {

namespace {

// Exceptions may not leave an OpenMP region; keep the first and rethrow after.
class ErrorSlot {
public:
    void capture() {
        std::lock_guard<std::mutex> lock(mu_);
        if (!error_) error_ = std::current_exception();
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::mutex mu_;
    std::exception_ptr error_;
};

}  // namespace

std::vector<double> evaluate_grid(const ScalarFn& f, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
        } catch (...) {
            err.capture();
        }
    }
    err.rethrow();
    return out;
}

double bloch_quadrature(const BlochFn& f, int n_theta, int n_phi) {
    const auto rule = detail::theta_rule(n_theta, n_phi);
    std::vector<double> rows(rule.theta.size());
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = detail::theta_row(f, rule, static_cast<std::size_t>(i), n_phi);
        } catch (...) {
            err.capture();
        }
    }
    err.rethrow();
    double total = 0.0;
    for (double r : rows) total += r;
    return total;
}

MonteCarloSums bloch_montecarlo(const BlochFn& f, std::size_t samples, std::uint64_t seed) {
    std::vector<detail::ChunkSums> chunks(detail::chunk_count(samples));
    const auto n = static_cast<std::ptrdiff_t>(chunks.size());
    ErrorSlot err;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        try {
            const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
            chunks[static_cast<std::size_t>(c)] = detail::mc_chunk(f, begin, std::min(samples, begin + kChunk), seed);
        } catch (...) {
            err.capture();
        }
    }
    err.rethrow();
    return detail::finish(chunks, samples);
}

}  // namespace dfsqt::kernels::omp
