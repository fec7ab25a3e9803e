#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "j1j2/circuit.hpp"
#include "j1j2/pauli.hpp"
#include "j1j2/statevector.hpp"

namespace j1j2 {

/**
 * Stochastic Pauli-twirl noise: after each gate, with the gate-class
 * probability, a uniformly random non-identity Pauli hits the gate's
 * supports. Readout errors flip measured bits independently.
 * idle_suppression models dynamical decoupling by zeroing the idle channel.
 */
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    double readout_flip = 0.0;
    double idle_error = 0.0;
    bool idle_suppression = false;

    bool gate_noise() const { return p1 > 0.0 || p2 > 0.0 || effective_idle() > 0.0; }
    double effective_idle() const { return idle_suppression ? 0.0 : idle_error; }
    void validate() const;
};

/// One statevector trajectory. Noiseless when `noise` is absent; otherwise a
/// single Pauli-twirl trajectory, reproducible under `seed`.
Statevector run(const Circuit& circuit, const Statevector& initial,
                const std::optional<NoiseModel>& noise = std::nullopt, uint64_t seed = 0);

Statevector run_from_zero(const Circuit& circuit,
                          const std::optional<NoiseModel>& noise = std::nullopt,
                          uint64_t seed = 0);

using Histogram = std::map<std::string, uint64_t>;

/// Multinomial sample of bitstrings (qubit 0 = rightmost character), with
/// independent per-bit readout flips when noise has readout_flip > 0.
Histogram sample_counts(const Statevector& psi, uint64_t shots,
                        const std::optional<NoiseModel>& noise = std::nullopt,
                        uint64_t seed = 0);

struct ShotEstimate {
    double mean = 0.0;
    double sigma = 0.0;
};

/**
 * Shot-based expectation of a Hermitian observable on the circuit's output.
 * Terms are grouped into qubit-wise-commuting measurement bases; shots are
 * split evenly across groups (each group gets at least one shot). In noisy
 * mode the group's shots are spread over `trajectories` independent noise
 * trajectories (0 = automatic).
 */
ShotEstimate estimate_expectation(const Circuit& circuit, const PauliSum& observable,
                                  uint64_t shots,
                                  const std::optional<NoiseModel>& noise = std::nullopt,
                                  uint64_t seed = 0, uint64_t trajectories = 0);

/// Qubit-wise-commuting grouping (greedy, deterministic order).
std::vector<std::vector<PauliString>> group_qubitwise(const PauliSum& observable);

/**
 * Noise-scaling fold: whole-circuit G(G^dag G)^m repetitions plus folding of
 * the final gates to reach non-integer factors. The noiseless action is
 * unchanged; the gate count scales by lambda up to rounding.
 */
Circuit fold(const Circuit& circuit, double lambda);

std::string histogram_to_json(const Histogram& h);

} // namespace j1j2
