#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "j1j2/circuit.hpp"
#include "j1j2/lattice.hpp"
#include "j1j2/optim.hpp"
#include "j1j2/simulator.hpp"

namespace j1j2 {

/// Per-site Bloch angles: |psi>_k = cos(theta_k)|0> + e^{i phi_k} sin(theta_k)|1>,
/// theta in [0, 2pi], phi in [0, pi].
struct ProductAngles {
    std::vector<double> theta;
    std::vector<double> phi;

    std::size_t size() const { return theta.size(); }
    /// Bloch vector (sin 2t cos p, sin 2t sin p, cos 2t) of site k.
    std::array<double, 3> bloch(std::size_t k) const;
};

/// Closed-form mean-field energy of the product state; equals the full
/// statevector expectation. Angles outside their bounds are clamped (a
/// warning goes to stderr).
double product_energy(const ProductAngles& angles, const LatticeSpec& spec,
                      const CouplingConfig& coupling);

/// Simulated annealing over the product manifold, `runs` independent runs
/// averaged by gauge-fixed circular means.
ProductAngles warm_start(const LatticeSpec& spec, const CouplingConfig& coupling,
                         std::size_t runs = 4, uint64_t seed = 0);

/// One annealing run (exponential cooling, Gaussian single-angle proposals).
ProductAngles anneal_product_state(const LatticeSpec& spec, const CouplingConfig& coupling,
                                   uint64_t seed);

enum class AnsatzKind {
    TwoLocalRxCxLinear,
    TwoLocalRxCzCircular,
    RealAmplitudes,
    EfficientSU2,
    HMFA,
    Feulner, // the RX-CZ circular TwoLocal x3 stand-in
};

struct AnsatzSpec {
    AnsatzKind kind = AnsatzKind::TwoLocalRxCxLinear;
    int reps = 1; // 1..5 (ignored by Feulner, which pins 3)
};

/// Deterministic parameter count of the ansatz on `n` qubits.
std::size_t ansatz_parameter_count(const AnsatzSpec& spec, const LatticeSpec& lattice);

/// Parameterized circuit; a warm start prepends a fixed U(theta, phi) layer
/// that carries no trainable slots.
Circuit build_ansatz(const AnsatzSpec& spec, const LatticeSpec& lattice,
                     const ProductAngles* warm = nullptr);

enum class OptMethod { NFT, NelderMead };

struct VqeResult {
    double best_energy = 0.0;
    std::vector<double> best_params;
    std::vector<double> trace; // best-so-far energy per iteration
    std::size_t iterations = 0;
    uint64_t seed = 0;
    bool hit_iteration_cap = false;
};

VqeResult optimize(const Objective& objective, OptMethod method,
                   std::vector<double> initial_params, std::size_t max_iters, uint64_t seed);

struct VqeOptions {
    AnsatzSpec ansatz;
    bool warm = true;
    std::size_t warm_runs = 4;
    OptMethod method = OptMethod::NFT;
    std::size_t max_iters = 500;
    uint64_t seed = 0;
    uint64_t shots = 0; // 0 = exact statevector evaluation
    std::optional<NoiseModel> noise;
};

/// Full loop: warm start (optional), ansatz, energy objective, optimizer.
VqeResult run_vqe(const LatticeSpec& spec, const CouplingConfig& coupling,
                  const VqeOptions& options);

/// The optimized circuit bound with the result parameters.
Circuit bound_vqe_circuit(const LatticeSpec& spec, const CouplingConfig& coupling,
                          const VqeOptions& options, const VqeResult& result);

} // namespace j1j2
