#pragma once

#include <functional>

#include "j1j2/lattice.hpp"
#include "j1j2/observables.hpp"
#include "j1j2/pauli.hpp"
#include "j1j2/statevector.hpp"

namespace j1j2 {

/// Spectral gap below this is treated as an (approximately) degenerate
/// ground space.
inline constexpr double kDegeneracyTol = 1e-8;

struct GroundSolution {
    double energy = 0.0;
    Statevector state;
    double gap = 0.0; // E1 - E0
    bool degeneracy_flag = false;
    double residual = 0.0;
    std::size_t iterations = 0;
};

using ApplyFn = std::function<Statevector(const Statevector&)>;

/**
 * Lowest eigenpair by full Hermitian diagonalization (<= 12 qubits). In a
 * degenerate ground space the returned vector is the representative with
 * maximal weight in the Sz ~ 0 sector.
 */
GroundSolution ground_state_dense(const PauliSum& h);

/**
 * Matrix-free Lanczos with full reorthogonalization (<= 16 qubits),
 * converged when the explicit residual drops below 1e-8 * ||H||_1.
 * Deterministic: the start vector is derived from a fixed seed.
 */
GroundSolution ground_state_lanczos(const ApplyFn& apply, std::size_t n_qubits, double h_norm,
                                    std::size_t max_iters = 400);

/// Dense up to 8 qubits, Lanczos otherwise.
GroundSolution ground_state(const PauliSum& h);
/// Same, through the fused Heisenberg kernels (fast path for sweeps).
GroundSolution ground_state(const LatticeSpec& spec, const CouplingConfig& coupling);

/// All phase diagnostics evaluated on the oracle state.
ObservableSet exact_observables(const GroundSolution& sol, const LatticeSpec& spec,
                                const CouplingConfig& coupling, const PauliSum& h);

} // namespace j1j2
