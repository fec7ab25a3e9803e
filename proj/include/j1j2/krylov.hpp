#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "j1j2/pauli.hpp"
#include "j1j2/statevector.hpp"

namespace j1j2 {

/**
 * H rescaled to unit 1-norm: alpha_i = beta_i / sum|beta|, so the rescaled
 * operator has spectral norm <= 1 and Chebyshev polynomials of it are
 * well defined. `scale` recovers the original units.
 */
struct NormalizedHamiltonian {
    PauliSum alpha;
    double scale = 1.0;

    static NormalizedHamiltonian from(const PauliSum& h);
    Statevector apply(const Statevector& psi) const { return alpha.apply(psi); }
};

/**
 * <T_k(H_n)> for k = 0..kmax through the three-term recurrence
 * |t_{k+1}> = 2 H_n |t_k> - |t_{k-1}>. When `basis_out` is given, the first
 * `basis_count` Chebyshev vectors |t_k> are stored for later observable
 * evaluation.
 */
std::vector<double> chebyshev_moments_matfree(const NormalizedHamiltonian& hn,
                                              const Statevector& psi0, std::size_t kmax,
                                              std::vector<Statevector>* basis_out = nullptr,
                                              std::size_t basis_count = 0);

/**
 * Simulated qubitized-walk register: ancillas hold the term index, G prepares
 * sum_i sqrt(alpha_i)|i>, SELECT applies sign(beta_i) P_i, and the walk
 * alternates SELECT with the reflection about |G>. Operators act directly on
 * the enlarged statevector rather than compiled gate sequences.
 */
struct WalkRegister {
    std::size_t n_system = 0;
    std::size_t n_ancilla = 0;
    std::vector<PauliString> terms; // unit-coefficient Pauli strings
    std::vector<double> signs;
    Eigen::MatrixXd g; // orthogonal completion, first column = sqrt(alpha)

    std::size_t n_total() const { return n_system + n_ancilla; }
};

WalkRegister build_walk(const NormalizedHamiltonian& hn);

/// |G>_a (x) |psi0>
Statevector walk_initial_state(const WalkRegister& w, const Statevector& psi0);
Statevector walk_apply_select(const WalkRegister& w, const Statevector& psi);
Statevector walk_apply_reflection(const WalkRegister& w, const Statevector& psi);

/**
 * <T_k> from walk iterates: even k = 2m gives <R> and odd k = 2m+1 gives
 * <SELECT> in the state (R U)^m |G>|psi0>. With shots > 0 each expectation is
 * replaced by a Hadamard-test Bernoulli estimate with that many shots.
 */
std::vector<double> chebyshev_moments_walk(const WalkRegister& w, const Statevector& psi0,
                                           std::size_t kmax, uint64_t shots = 0,
                                           uint64_t seed = 0);

enum class KrylovBasis { Chebyshev, Realtime };

struct KrylovMatrices {
    Eigen::MatrixXcd hk;
    Eigen::MatrixXcd sk;
    KrylovBasis basis_kind = KrylovBasis::Chebyshev;
    std::size_t d = 0;
};

/// Chebyshev-moment assembly of the projected (H, S) pair.
KrylovMatrices assemble(const std::vector<double>& moments, std::size_t d);

struct GevpResult {
    double lambda0 = 0.0;
    Eigen::VectorXcd coeffs;
    double epsilon_used = 0.0;
    double s_condition = 0.0;
};

/**
 * Generalized eigensolve with the epsilon ladder: S is shifted by eps*I,
 * escalating eps over {1e-12, 1e-10, ..., 1e-3, eps_cap} until the Cholesky
 * factorization succeeds, then solved as a whitened Hermitian problem.
 * `scale` converts the smallest eigenvalue back to physical units.
 */
GevpResult solve_gevp(const KrylovMatrices& km, double scale, double eps_cap = 1e-3);

/// Normalized combination sum_k c_k |basis_k>; throws when the combination is
/// numerically null (ill-conditioned coefficients).
Statevector krylov_ground_vector(const std::vector<Statevector>& basis,
                                 const Eigen::VectorXcd& coeffs);

/// Observable on the Krylov ground vector.
double krylov_observable(const Statevector& state, const PauliSum& obs);

struct RealtimeKrylov {
    KrylovMatrices matrices;
    std::vector<Statevector> basis;
};

/**
 * Real-time-evolution Krylov baseline: |phi_k> = exp(-i k dt H)|psi0>
 * computed by a Chebyshev expansion of the propagator (machine precision),
 * with the Hermitian (H, S) pair ready for the same GEVP path (scale = 1).
 * With shots > 0 every off-diagonal matrix element is replaced by a
 * Hadamard-test estimate (real and imaginary parts sampled separately, H
 * entries through the normalized block encoding).
 */
RealtimeKrylov realtime_krylov(const PauliSum& h, const Statevector& psi0, double dt,
                               std::size_t d, uint64_t shots = 0, uint64_t seed = 0);

/// exp(-i t H)|psi>, matrix-free Chebyshev propagator.
Statevector evolve(const PauliSum& h, const Statevector& psi, double t);

} // namespace j1j2
