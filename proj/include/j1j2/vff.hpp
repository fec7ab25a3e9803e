#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "j1j2/circuit.hpp"
#include "j1j2/krylov.hpp"
#include "j1j2/optim.hpp"
#include "j1j2/statevector.hpp"
#include "j1j2/vqe.hpp"

namespace j1j2 {

/**
 * Fast-forwarding model A(k) = W D(k gamma) W^dag. W stacks per-qubit
 * U(theta, phi) layers with nearest-neighbour XY couplings; D is diagonal
 * (per-qubit RZ plus per-pair ZZ). Powers share W and scale the diagonal
 * angles, so every A(k) has the same depth and A(k1) A(k2) = A(k1 + k2).
 */
struct VffModel {
    std::size_t n = 0;
    std::size_t layers = 0;
    /// coupled qubit pairs for the XY and ZZ layers; defaults to the
    /// index chain (i, i+1) when left empty
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<double> w_params; // layers * (2n + |pairs|)
    std::vector<double> gamma;    // n + |pairs|

    static std::vector<std::pair<std::size_t, std::size_t>> chain_pairs(std::size_t n);
    static std::size_t w_parameter_count(std::size_t n, std::size_t layers,
                                         std::size_t n_pairs);
    static std::size_t gamma_parameter_count(std::size_t n, std::size_t n_pairs);

    /// W as a bound circuit.
    Circuit w_circuit() const;
    /// D(k gamma) as a bound circuit.
    Circuit d_circuit(double k) const;
    /// Full W D(k gamma) W^dag circuit; depth is independent of k.
    Circuit fast_forward(double k) const;
    /// A(k)|psi>
    Statevector apply(double k, const Statevector& psi) const;
};

/// Normalized Chebyshev target states T_k(H_n)|psi0> / nu_k with the carried
/// norms nu_k, k = 1..n_powers.
struct ChebyshevTargets {
    std::vector<Statevector> states;
    std::vector<double> norms;
};

ChebyshevTargets chebyshev_targets(const NormalizedHamiltonian& hn, const Statevector& psi0,
                                   std::size_t n_powers);

/// 1 - mean_k |<target_k|A^k|psi0>|^2, evaluated exactly on the statevector.
double vff_cost(const VffModel& model, const ChebyshevTargets& targets, const Statevector& psi0);

/// Per-k fidelities |<target_k|A^k|psi0>|^2.
std::vector<double> vff_fidelities(const VffModel& model, const ChebyshevTargets& targets,
                                   const Statevector& psi0);

struct VffReport {
    double final_cost = 0.0;
    std::vector<double> fidelities;
    std::size_t iterations = 0;
};

std::pair<VffModel, VffReport> train_vff(
    const NormalizedHamiltonian& hn, const Statevector& psi0, std::size_t layers,
    std::size_t n_powers, std::size_t max_iters, uint64_t seed,
    OptMethod method = OptMethod::NFT,
    std::vector<std::pair<std::size_t, std::size_t>> pairs = {});

/// Chebyshev moments reconstructed through the trained model:
/// <T_k> ~ nu_k <psi0|A^k|psi0> (k = 0 is exactly 1).
std::vector<double> moments_via_vff(const VffModel& model, const ChebyshevTargets& targets,
                                    const Statevector& psi0, std::size_t kmax);

/**
 * Overlap <a|b> of the states prepared by two circuits from |0>, estimated
 * as on hardware: the real part from the standard ancilla test and the
 * imaginary part from the S-gate variant, each with its own shot budget
 * (shots = 0 returns the exact overlap).
 */
cdouble hadamard_test(const Circuit& prep_a, const Circuit& prep_b, uint64_t shots = 0,
                      uint64_t seed = 0);

/// Model (de)serialization: layer parameters, gamma, metadata.
std::string vff_model_to_json(const VffModel& model, const VffReport& report, uint64_t seed);
VffModel vff_model_from_json(const std::string& text);

} // namespace j1j2
