// protocol.hpp: three-qubit teleportation run with Bell measurement and discard strategy
//
// Qubit order is A₁ A₂ B. Alice's qubits share one dephasing bath, Bob's
// qubit sits in its own. Conditional Bob states are reported in two
// conventions: physical (unit trace) and 4×-scaled (4 × unnormalized
// projection, trace 4·p_k), the latter matching the ¼-weighted ensemble
// bookkeeping used for the closed-form branch states.

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <variant>

#include "dfsqt/channels.hpp"
#include "dfsqt/noise.hpp"
#include "dfsqt/qlinalg.hpp"

namespace dfsqt::protocol {

using qlinalg::BlochAngles;
using qlinalg::DensityOp;
using qlinalg::Matrix;

struct PurePair {
    double mu = 1.0 / 1.4142135623730951;
    double lambda = 1.0 / 1.4142135623730951;
};

struct Werner {
    double p = 1.0;
};

/// μ|↑↑⟩ + λ|↓↓⟩ or p|φ+⟩⟨φ+| + (1−p)I/4 shared between A₂ and B.
class ResourceSpec {
public:
    ResourceSpec() : value_(PurePair{}) {}
    ResourceSpec(PurePair pair);  // NOLINT(google-explicit-constructor)
    ResourceSpec(Werner w);       // NOLINT(google-explicit-constructor)

    /// Real μ ≥ λ ≥ 0 with concurrence 2μλ = c.
    static ResourceSpec pure_from_concurrence(double c);
    /// p = (2c + 1)/3, the inverse of C = (3p − 1)/2.
    static ResourceSpec werner_from_concurrence(double c);

    bool is_pure() const noexcept { return std::holds_alternative<PurePair>(value_); }
    const PurePair& pure() const { return std::get<PurePair>(value_); }
    const Werner& werner() const { return std::get<Werner>(value_); }
    const std::variant<PurePair, Werner>& value() const noexcept { return value_; }

    /// 4×4 density matrix on A₂B.
    Matrix density() const;

private:
    std::variant<PurePair, Werner> value_;
};

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array<BellOutcome, 4> kOutcomes = {BellOutcome::PhiPlus, BellOutcome::PhiMinus,
                                                         BellOutcome::PsiPlus, BellOutcome::PsiMinus};

std::string_view to_string(BellOutcome o);

/// ψ± live in the decoherence-free subspace of Alice's common bath.
constexpr bool in_dfs(BellOutcome o) noexcept { return o == BellOutcome::PsiPlus || o == BellOutcome::PsiMinus; }

/// Bell ket on A₁A₂.
qlinalg::Ket bell_ket(BellOutcome o);

/// Bob's correction: I, σ_z, σ_x, iσ_y.
Matrix correction(BellOutcome o);

enum class Strategy { RetainPsiOnly, RetainAll };

constexpr bool retained(BellOutcome o, Strategy s) noexcept { return s == Strategy::RetainAll || in_dfs(o); }

/// Branch probabilities at or below this are flagged degenerate and never divided through.
inline constexpr double kDegenerateProbability = 1e-14;

struct BranchResult {
    BellOutcome outcome = BellOutcome::PhiPlus;
    bool retained = false;
    double probability = 0.0;
    bool degenerate = false;
    std::optional<DensityOp> bob_conditional;  // unit trace; empty when degenerate
    DensityOp bob_paper_scaled;                // 4 × Tr_{A₁A₂}(P ρ P)
    std::optional<DensityOp> bob_output;       // corrected, unit trace
    std::optional<double> fidelity;            // ⟨ψ_in|bob_output|ψ_in⟩
    Matrix paper_output;                       // U · bob_paper_scaled · U†
    double paper_fidelity = 0.0;               // ⟨ψ_in|paper_output|ψ_in⟩
};

struct RunParameters {
    BlochAngles input;
    ResourceSpec resource;
    noise::NoiseParams alice_noise = noise::kDefaultAliceNoise;
    noise::NoiseParams bob_noise;
    double tau = 0.0;
    Strategy strategy = Strategy::RetainPsiOnly;
    noise::Backend backend = noise::Backend::Auto;
};

struct Measurement {
    std::array<BranchResult, 4> branches;
    double classical_bits = 0.0;
};

struct ProtocolRun {
    RunParameters params;
    noise::DecoherenceFactors factors;
    std::array<BranchResult, 4> branches;
    double classical_bits = 0.0;

    const BranchResult& branch(BellOutcome o) const { return branches[static_cast<std::size_t>(o)]; }
};

/// ρ_in ⊗ ρ_{A₂B} on A₁A₂B.
DensityOp build_joint(const BlochAngles& input, const ResourceSpec& resource);

/// Bell measurement on A₁A₂ of an evolved A₁A₂B state, with Bob's corrections.
Measurement measure(const Matrix& evolved, const BlochAngles& input, Strategy strategy);

/// build_joint → joint_evolve → measure, with precomputed factors.
Measurement evolve_and_measure(const BlochAngles& input, const ResourceSpec& resource,
                               const noise::DecoherenceFactors& factors, Strategy strategy);

ProtocolRun run_protocol(const RunParameters& params);

/// Closed-form conditional Bob states in outcome order φ+, φ−, ψ+, ψ− (before
/// correction). Pure resource: 4×-scaled; Werner: unit trace (the two
/// coincide there since every outcome has probability ¼).
std::array<Matrix, 4> analytic_branch_states(const BlochAngles& input, const ResourceSpec& resource,
                                             const noise::DecoherenceFactors& factors);

/// Shannon entropy (bits) of the classical message. RetainPsiOnly merges
/// φ± into one "discard" symbol; RetainAll sends all four outcomes.
double classical_bits(const std::array<double, 4>& probabilities, Strategy strategy);

}  // namespace dfsqt::protocol
