// support.hpp: random generators and comparison helpers for property tests

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dfsqt/noise.hpp"
#include "dfsqt/protocol.hpp"
#include "dfsqt/qlinalg.hpp"

namespace dfsqt::testing {

using qlinalg::Complex;
using qlinalg::Matrix;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    qlinalg::BlochAngles bloch() {
        return {std::acos(uniform(-1.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi)};
    }

    Matrix hermitian(int n) {
        Matrix m(n);
        for (int r = 0; r < n; ++r) {
            m(r, r) = normal();
            for (int c = r + 1; c < n; ++c) {
                m(r, c) = Complex(normal(), normal());
                m(c, r) = std::conj(m(r, c));
            }
        }
        return m;
    }

    /// Random full-rank density matrix G G† / Tr.
    Matrix density(int n) {
        Matrix g(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) g(r, c) = Complex(normal(), normal());
        Matrix rho = g * g.adjoint();
        return Complex(1.0 / rho.trace().real()) * rho;
    }

    /// Haar-ish random 2×2 unitary from a random Hermitian generator.
    Matrix unitary2() {
        const double a = uniform(0.0, 2.0 * std::numbers::pi);
        const double b = uniform(0.0, 2.0 * std::numbers::pi);
        const double c = uniform(0.0, 2.0 * std::numbers::pi);
        const double t = std::acos(std::sqrt(uniform(0.0, 1.0)));
        Matrix u(2);
        u(0, 0) = std::polar(std::cos(t), a);
        u(0, 1) = std::polar(std::sin(t), b);
        u(1, 0) = -std::polar(std::sin(t), -b + c);
        u(1, 1) = std::polar(std::cos(t), -a + c);
        return u;
    }

    noise::NoiseParams noise(bool allow_temperature) {
        noise::NoiseParams p;
        p.gamma = uniform(0.0, 1.0);
        p.cutoff = std::exp(uniform(std::log(0.005), std::log(5.0)));
        p.temperature = allow_temperature && uniform(0.0, 1.0) < 0.5 ? uniform(0.01, 2.0) : 0.0;
        return p;
    }

    protocol::ResourceSpec pure_resource() {
        const double t = uniform(0.05, 0.5 * std::numbers::pi - 0.05);
        return protocol::ResourceSpec(protocol::PurePair{std::cos(t), std::sin(t)});
    }

    protocol::ResourceSpec werner_resource() { return protocol::ResourceSpec(protocol::Werner{uniform(0.0, 1.0)}); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace dfsqt::testing
