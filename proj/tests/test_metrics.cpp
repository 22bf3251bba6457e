#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dfsqt/errors.hpp"
#include "dfsqt/metrics.hpp"
#include "support.hpp"

using namespace dfsqt;
using namespace dfsqt::metrics;
using dfsqt::testing::Gen;
using protocol::PurePair;
using protocol::Werner;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

DensityOp werner_state(double p) { return DensityOp(ResourceSpec(Werner{p}).density()); }

DensityOp pure_state(double mu, double lambda) { return DensityOp(ResourceSpec(PurePair{mu, lambda}).density()); }

}  // namespace

TEST_CASE("pointwise fidelity basics") {
    Gen gen(40);
    const auto in = gen.bloch();
    CHECK(fidelity_pointwise(in, DensityOp::from_ket(in.ket())) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fidelity_pointwise(in, DensityOp(Complex(0.5) * Matrix::identity(2))) == doctest::Approx(0.5));
    CHECK_THROWS_AS(fidelity_pointwise(in, DensityOp(Complex(0.25) * Matrix::identity(4))), UnsupportedDimension);
}

TEST_CASE("4x-scaled pointwise fidelity matches its closed form") {
    // f = 2λ²cos⁴(θ/2) + 2μ²sin⁴(θ/2) + 2 sin²cos² (μλ*b + μ*λb*), b real
    Gen gen(41);
    const double mu = 0.6;
    const double lambda = 0.8;
    noise::DecoherenceFactors fac;
    fac.b = 0.83;
    const ResourceSpec res(PurePair{mu, lambda});
    for (int i = 0; i < 100; ++i) {
        const auto in = gen.bloch();
        const auto m = protocol::evolve_and_measure(in, res, fac, Strategy::RetainPsiOnly);
        const double c2 = std::pow(std::cos(in.theta / 2), 2);
        const double s2 = std::pow(std::sin(in.theta / 2), 2);
        const double expected = 2 * lambda * lambda * c2 * c2 + 2 * mu * mu * s2 * s2 + 2 * s2 * c2 * 2 * mu * lambda * 0.83;
        CHECK(m.branches[2].paper_fidelity == doctest::Approx(expected).epsilon(1e-13));
        CHECK(m.branches[3].paper_fidelity == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("average FTS closed forms") {
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(average_fts_pure(s, s, 1.0) == doctest::Approx(1.0));
    CHECK(average_fts_werner(1.0, 1.0) == doctest::Approx(1.0));
    for (double tau : {0.3, 2.0, 5.5}) {
        CHECK(average_fts_pure(s, s, std::polar(1.0, -tau)) == doctest::Approx(2.0 / 3.0 + std::cos(tau) / 3.0));
    }
    const noise::NoiseParams t1{0.1, 0.01, 0.0, 1.0};
    CHECK(average_fts_pure_ohmic(0.8, t1, kTwoPi) == doctest::Approx(0.93).epsilon(0.005));
    const noise::NoiseParams t3{0.1, 0.02, 0.0, 1.0};
    CHECK(average_fts_werner_ohmic(0.9, t3, kTwoPi) == doctest::Approx(0.95).epsilon(0.002));
    CHECK(average_fts_werner_ohmic(0.5, t3, kTwoPi) == doctest::Approx(0.7495).epsilon(1e-4));
    CHECK_THROWS_AS(average_fts_pure(0.6, 0.6, 1.0), ContractViolation);
    CHECK_THROWS_AS(average_fts_werner(1.5, 1.0), ContractViolation);
}

TEST_CASE("Ohmic specializations agree with the general formulas") {
    Gen gen(42);
    for (int i = 0; i < 50; ++i) {
        const auto bob = gen.noise(false);
        const double tau = gen.uniform(0.0, 40.0);
        const Complex b = noise::bob_factor(bob, tau);
        const auto res = gen.pure_resource();
        const double c = 2.0 * res.pure().mu * res.pure().lambda;
        CHECK(average_fts_pure_ohmic(c, bob, tau) ==
              doctest::Approx(average_fts_pure(res.pure().mu, res.pure().lambda, b)).epsilon(1e-13));
        const double p = gen.uniform(0.0, 1.0);
        CHECK(average_fts_werner_ohmic(p, bob, tau) == doctest::Approx(average_fts_werner(p, b)).epsilon(1e-13));
        CHECK(average_fts_werner_cm((3 * p - 1) / 2, b) == doctest::Approx(average_fts_werner(p, b)).epsilon(1e-13));
    }
}

TEST_CASE("physical-convention pure average matches quadrature of the pipeline") {
    Gen gen(43);
    for (int i = 0; i < 10; ++i) {
        const auto res = gen.pure_resource();
        const auto fac = noise::factors_at(gen.noise(false), gen.noise(false), gen.uniform(0.0, 20.0));
        const auto f = pipeline_fidelity(res, fac, Strategy::RetainPsiOnly, Convention::Physical);
        const auto q = average_fts_numeric(f, AverageMethod::Quadrature, 96);
        CHECK(q.value == doctest::Approx(average_fts_analytic(res, fac, Strategy::RetainPsiOnly, Convention::Physical))
                             .epsilon(1e-9));
    }
    // μ ≈ λ uses the short Gauss rule; compare with the log form just outside the switch.
    const double mu = std::sqrt(0.5 + 2e-4);
    const double la = std::sqrt(0.5 - 2e-4);
    const double near = average_fts_pure_physical(mu, la, 0.7);
    const double mu2 = std::sqrt(0.5 + 6e-4);
    const double la2 = std::sqrt(0.5 - 6e-4);
    CHECK(near == doctest::Approx(average_fts_pure_physical(mu2, la2, 0.7)).epsilon(1e-5));
}

TEST_CASE("analytic and pipeline pointwise fidelities agree") {
    Gen gen(44);
    for (int i = 0; i < 100; ++i) {
        const auto res = i % 2 ? gen.pure_resource() : gen.werner_resource();
        const auto fac = noise::factors_at(gen.noise(true), gen.noise(false), gen.uniform(0.0, 20.0));
        const auto strategy = i % 3 ? Strategy::RetainPsiOnly : Strategy::RetainAll;
        const auto conv = i % 5 < 2 ? Convention::Physical : Convention::Paper;
        const auto in = gen.bloch();
        CHECK(pipeline_fidelity(res, fac, strategy, conv)(in) ==
              doctest::Approx(analytic_fidelity(res, fac, strategy, conv)(in)).epsilon(1e-12));
    }
}

TEST_CASE("convention split: 4x-scaled fidelity can exceed 1, physical cannot") {
    const double mu = std::sqrt(0.8);
    const double lambda = std::sqrt(0.2);
    const ResourceSpec res(PurePair{mu, lambda});
    noise::DecoherenceFactors fac;  // noiseless, b = 1
    const qlinalg::BlochAngles near_down{std::numbers::pi - 1e-3, 0.0};
    const auto m = protocol::evolve_and_measure(near_down, res, fac, Strategy::RetainPsiOnly);
    CHECK(retained_fidelity(m, Strategy::RetainPsiOnly, Convention::Paper) > 1.0);
    CHECK(retained_fidelity(m, Strategy::RetainPsiOnly, Convention::Physical) <= 1.0 + 1e-12);

    Gen gen(45);
    for (int i = 0; i < 30; ++i) {
        const auto r = gen.pure_resource();
        const auto f = noise::factors_at(gen.noise(false), gen.noise(false), gen.uniform(0.0, 20.0));
        CHECK(average_fts_analytic(r, f, Strategy::RetainPsiOnly, Convention::Physical) <= 1.0 + 1e-12);
    }
}

TEST_CASE("physical convention refuses a zero-probability retained set") {
    const ResourceSpec res(PurePair{1.0, 0.0});
    noise::DecoherenceFactors fac;
    const auto m = protocol::evolve_and_measure({0.0, 0.0}, res, fac, Strategy::RetainPsiOnly);
    CHECK_THROWS_AS(retained_fidelity(m, Strategy::RetainPsiOnly, Convention::Physical), ContractViolation);
}

TEST_CASE("numeric averaging") {
    const kernels::BlochFn one = [](const BlochAngles&) { return 1.0; };
    CHECK(average_fts_numeric(one, AverageMethod::Quadrature, 64).value == doctest::Approx(1.0).epsilon(1e-14));
    const auto mc = average_fts_numeric(one, AverageMethod::MonteCarlo, 5000, 3);
    CHECK(mc.value == doctest::Approx(1.0));
    CHECK_FALSE(mc.widened);

    const auto few = average_fts_numeric(one, AverageMethod::MonteCarlo, 10, 3);
    CHECK(few.widened);
    CHECK(few.std_error >= 1.0 / std::sqrt(10.0));
    const auto none = average_fts_numeric(one, AverageMethod::MonteCarlo, 0, 3);
    CHECK(none.widened);
    CHECK(std::isinf(none.std_error));
    const auto coarse = average_fts_numeric([](const BlochAngles& b) { return std::pow(std::cos(b.theta), 8); },
                                            AverageMethod::Quadrature, 4);
    CHECK(coarse.widened);
    CHECK(coarse.std_error > 0.0);
}

TEST_CASE("fidelity report bundles the three averages") {
    const auto res = ResourceSpec::werner_from_concurrence(0.8);
    const auto fac = noise::factors_at(noise::kDefaultAliceNoise, noise::NoiseParams{0.1, 0.02, 0.0, 1.0}, kTwoPi);
    ReportOptions opts;
    opts.montecarlo_samples = 20000;
    opts.seed = 9;
    const auto rep = fidelity_report(res, fac, Strategy::RetainPsiOnly, Convention::Paper, BlochAngles{1.0, 1.0}, opts);
    REQUIRE(rep.pointwise);
    REQUIRE(rep.average_montecarlo);
    CHECK(std::abs(rep.average_quadrature.value - rep.average_analytic) < 1e-8);
    CHECK(std::abs(rep.average_montecarlo->value - rep.average_analytic) < 3 * rep.average_montecarlo->std_error);
}

TEST_CASE("concurrence examples") {
    CHECK(concurrence(pure_state(0.6, 0.8)) == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(concurrence(werner_state(0.6)) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(concurrence(DensityOp(Complex(0.25) * Matrix::identity(4))) == doctest::Approx(0.0));
    CHECK_THROWS_AS(concurrence(DensityOp(Complex(0.5) * Matrix::identity(2))), UnsupportedDimension);
}

TEST_CASE("CHSH examples") {
    const auto w = chsh(werner_state(0.75));
    CHECK(w.b_max == doctest::Approx(2.0 * std::sqrt(2.0) * 0.75).epsilon(1e-12));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(chsh(pure_state(s, s)).b_max == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    const auto low = chsh(werner_state(0.4));
    CHECK(low.b_max == doctest::Approx(1.13).epsilon(0.002));
    CHECK_FALSE(low.violates);
    CHECK(w.violates);
}

TEST_CASE("Werner closed forms across a p grid") {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const auto rho = werner_state(p);
        CHECK(std::abs(concurrence(rho) - std::max(0.0, (3 * p - 1) / 2)) < 1e-10);
        const auto nl = chsh(rho);
        CHECK(std::abs(nl.m_value - 2 * p * p) < 1e-10);
        CHECK(nl.b_max == doctest::Approx(2 * std::sqrt(nl.m_value)));
        CHECK(nl.violates == (nl.m_value > 1.0));
    }
}

TEST_CASE("pure-resource CHSH value is 1 + C², not (μ + λ)²") {
    for (int i = 1; i < 50; ++i) {
        const double t = i * std::numbers::pi / 200.0;
        const double mu = std::cos(t);
        const double lambda = std::sin(t);
        const double c = 2 * mu * lambda;
        const auto nl = chsh(pure_state(mu, lambda));
        CHECK(std::abs(nl.m_value - (1 + c * c)) < 1e-10);
        // (μ + λ)² = 1 + C overshoots the Horodecki value by exactly C(1 − C).
        CHECK(std::abs(std::pow(mu + lambda, 2) - nl.m_value - c * (1 - c)) < 1e-10);
    }
}

TEST_CASE("concurrence and CHSH are local-unitary invariant") {
    Gen gen(46);
    for (int i = 0; i < 100; ++i) {
        const Matrix rho = gen.density(4);
        const Matrix u = qlinalg::tensor(gen.unitary2(), gen.unitary2());
        const DensityOp a(rho);
        const DensityOp b(u * rho * u.adjoint());
        CHECK(std::abs(concurrence(a) - concurrence(b)) < 1e-10);
        CHECK(std::abs(chsh(a).m_value - chsh(b).m_value) < 1e-10);
    }
}
