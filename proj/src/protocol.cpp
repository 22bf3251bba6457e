// protocol.cpp: three-qubit teleportation run with Bell measurement and discard strategy

#include "dfsqt/protocol.hpp"

#include <cmath>
#include <numbers>

namespace dfsqt::protocol {

using qlinalg::Complex;
using qlinalg::Ket;
using qlinalg::TraceNorm;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void validate(const PurePair& r) {
    if (!(r.mu >= 0.0) || !(r.lambda >= 0.0)) throw ContractViolation("pure resource needs mu, lambda >= 0");
    if (std::abs(r.mu * r.mu + r.lambda * r.lambda - 1.0) > qlinalg::kStructuralTol) {
        throw ContractViolation("pure resource needs mu^2 + lambda^2 = 1");
    }
}

void validate(const Werner& w) {
    if (!(w.p >= 0.0 && w.p <= 1.0)) throw ContractViolation("Werner resource needs 0 <= p <= 1");
}

double fidelity_of(const Ket& psi, const Matrix& rho) {
    return psi.inner(rho * psi).real();
}

}  // namespace

ResourceSpec::ResourceSpec(PurePair pair) : value_(pair) { validate(pair); }

ResourceSpec::ResourceSpec(Werner w) : value_(w) { validate(w); }

ResourceSpec ResourceSpec::pure_from_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw ContractViolation("concurrence must lie in [0, 1]");
    const double root = std::sqrt(1.0 - c * c);
    const double mu = std::sqrt(0.5 * (1.0 + root));
    const double lambda = c / (2.0 * mu);  // avoids cancellation in 1 − √(1 − c²)
    return ResourceSpec(PurePair{mu, lambda});
}

ResourceSpec ResourceSpec::werner_from_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw ContractViolation("concurrence must lie in [0, 1]");
    return ResourceSpec(Werner{(2.0 * c + 1.0) / 3.0});
}

Matrix ResourceSpec::density() const {
    if (is_pure()) {
        const auto& r = pure();
        const Ket chi{r.mu, 0.0, 0.0, r.lambda};
        return chi.projector();
    }
    const double p = werner().p;
    Matrix rho = p * bell_ket(BellOutcome::PhiPlus).projector();
    rho += Complex(0.25 * (1.0 - p)) * Matrix::identity(4);
    return rho;
}

std::string_view to_string(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return "phi+";
        case BellOutcome::PhiMinus: return "phi-";
        case BellOutcome::PsiPlus: return "psi+";
        case BellOutcome::PsiMinus: return "psi-";
    }
    return "?";
}

Ket bell_ket(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return Ket{kInvSqrt2, 0.0, 0.0, kInvSqrt2};
        case BellOutcome::PhiMinus: return Ket{kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
        case BellOutcome::PsiPlus: return Ket{0.0, kInvSqrt2, kInvSqrt2, 0.0};
        case BellOutcome::PsiMinus: return Ket{0.0, kInvSqrt2, -kInvSqrt2, 0.0};
    }
    throw std::invalid_argument("unknown Bell outcome");
}

Matrix correction(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return Matrix::identity(2);
        case BellOutcome::PhiMinus: return qlinalg::pauli_z();
        case BellOutcome::PsiPlus: return qlinalg::pauli_x();
        case BellOutcome::PsiMinus: return Complex(0.0, 1.0) * qlinalg::pauli_y();
    }
    throw std::invalid_argument("unknown Bell outcome");
}

DensityOp build_joint(const BlochAngles& input, const ResourceSpec& resource) {
    input.validate();
    const Matrix rho_in = input.ket().projector();
    return DensityOp(qlinalg::tensor(rho_in, resource.density()));
}

Measurement measure(const Matrix& evolved, const BlochAngles& input, Strategy strategy) {
    if (evolved.dim() != 8) throw UnsupportedDimension("measure expects an A1A2B operator of dimension 8");
    const Ket psi = input.ket();

    Measurement out;
    std::array<double, 4> probabilities{};
    for (BellOutcome o : kOutcomes) {
        const Ket k = bell_ket(o);
        // σ_{bb'} = Σ_ij k_i* ρ_{(i,b),(j,b')} k_j  =  Tr_{A₁A₂}(P_k ρ P_k)
        Matrix sigma(2);
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) {
                Complex acc = 0.0;
                for (int i = 0; i < 4; ++i) {
                    if (k[i] == Complex{}) continue;
                    for (int j = 0; j < 4; ++j) {
                        if (k[j] == Complex{}) continue;
                        acc += std::conj(k[i]) * evolved(2 * i + b, 2 * j + bp) * k[j];
                    }
                }
                sigma(b, bp) = acc;
            }

        BranchResult& br = out.branches[static_cast<std::size_t>(o)];
        br.outcome = o;
        br.retained = retained(o, strategy);
        br.probability = std::max(0.0, sigma.trace().real());
        probabilities[static_cast<std::size_t>(o)] = br.probability;

        const Matrix u = correction(o);
        const Matrix scaled = Complex(4.0) * sigma;
        br.bob_paper_scaled = DensityOp(scaled, TraceNorm::Free);
        br.paper_output = u * scaled * u.adjoint();
        br.paper_fidelity = fidelity_of(psi, br.paper_output);

        br.degenerate = br.probability <= kDegenerateProbability;
        if (!br.degenerate) {
            const Matrix cond = Complex(1.0 / br.probability) * sigma;
            br.bob_conditional = DensityOp(cond);
            const Matrix corrected = u * cond * u.adjoint();
            br.bob_output = DensityOp(corrected);
            br.fidelity = fidelity_of(psi, corrected);
        }
    }
    out.classical_bits = classical_bits(probabilities, strategy);
    return out;
}

Measurement evolve_and_measure(const BlochAngles& input, const ResourceSpec& resource,
                               const noise::DecoherenceFactors& factors, Strategy strategy) {
    // Both factors are valid states by construction, so the product needs no
    // second spectral check on this hot path.
    input.validate();
    const Matrix joint = qlinalg::tensor(input.ket().projector(), resource.density());
    const Matrix evolved = channels::joint_evolve(joint, channels::alice_factor_matrix(factors),
                                                  channels::bob_factor_matrix(factors));
    return measure(evolved, input, strategy);
}

ProtocolRun run_protocol(const RunParameters& params) {
    params.alice_noise.validate();
    params.bob_noise.validate();
    if (!(params.tau >= 0.0)) throw ContractViolation("run_protocol: tau must be >= 0");

    ProtocolRun run;
    run.params = params;
    run.factors = noise::factors_at(params.alice_noise, params.bob_noise, params.tau, params.backend);
    Measurement m = evolve_and_measure(params.input, params.resource, run.factors, params.strategy);
    run.branches = std::move(m.branches);
    run.classical_bits = m.classical_bits;
    return run;
}

std::array<Matrix, 4> analytic_branch_states(const BlochAngles& input, const ResourceSpec& resource,
                                             const noise::DecoherenceFactors& fac) {
    const Complex al = input.alpha();
    const Complex be = input.beta();
    const Complex ab = fac.a * fac.b;
    const Complex b = fac.b;
    std::array<Matrix, 4> out{Matrix(2), Matrix(2), Matrix(2), Matrix(2)};
    auto fill = [](Matrix& m, Complex uu, Complex ud, Complex du, Complex dd) {
        m(0, 0) = uu;
        m(0, 1) = ud;
        m(1, 0) = du;
        m(1, 1) = dd;
    };

    if (resource.is_pure()) {
        const Complex mu = resource.pure().mu;
        const Complex la = resource.pure().lambda;
        const double up_up = 2.0 * std::norm(mu) * std::norm(al);
        const double dn_dn = 2.0 * std::norm(la) * std::norm(be);
        const Complex phi_ud = 2.0 * mu * std::conj(la) * al * std::conj(be) * ab;
        fill(out[0], up_up, phi_ud, std::conj(phi_ud), dn_dn);
        fill(out[1], up_up, -phi_ud, -std::conj(phi_ud), dn_dn);

        const double psi_dd = 2.0 * std::norm(la) * std::norm(al);
        const double psi_uu = 2.0 * std::norm(mu) * std::norm(be);
        const Complex psi_du = 2.0 * std::conj(mu) * la * al * std::conj(be) * std::conj(b);
        const Complex psi_ud = 2.0 * mu * std::conj(la) * std::conj(al) * be * b;
        fill(out[2], psi_uu, psi_ud, psi_du, psi_dd);
        fill(out[3], psi_uu, -psi_ud, -psi_du, psi_dd);
        return out;
    }

    const double p = resource.werner().p;
    const double pol = std::norm(al) - std::norm(be);
    const double p_uu = 0.5 + 0.5 * p * pol;
    const double p_dd = 0.5 - 0.5 * p * pol;
    const Complex p_ud = p * al * std::conj(be) * ab;
    const Complex p_du = p * std::conj(al) * be * std::conj(ab);
    const double q_uu = p_dd;
    const double q_dd = p_uu;
    const Complex q_ud = p * std::conj(al) * be * b;
    const Complex q_du = p * al * std::conj(be) * std::conj(b);
    fill(out[0], p_uu, p_ud, p_du, p_dd);
    fill(out[1], p_uu, -p_ud, -p_du, p_dd);
    fill(out[2], q_uu, q_ud, q_du, q_dd);
    fill(out[3], q_uu, -q_ud, -q_du, q_dd);
    return out;
}

double classical_bits(const std::array<double, 4>& probabilities, Strategy strategy) {
    // Probabilities are only known to ~1e-12; snapping to a 2^-40 grid makes
    // dyadic distributions such as (½, ¼, ¼) give exact entropies.
    auto snap = [](double p) { return std::ldexp(std::round(std::ldexp(p, 40)), -40); };
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };

    if (strategy == Strategy::RetainAll) {
        double h = 0.0;
        for (double p : probabilities) h += term(snap(p));
        return h;
    }
    const double discard = snap(probabilities[0] + probabilities[1]);
    return term(discard) + term(snap(probabilities[2])) + term(snap(probabilities[3]));
}

}  // namespace dfsqt::protocol
