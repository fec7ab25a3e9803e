#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "j1j2/pauli.hpp"

namespace j1j2 {

/// Largest site count the dense statevector machinery will accept.
inline constexpr std::size_t kMaxSites = 24;

/**
 * Square-lattice geometry. Site k sits at (x, y) = (k mod cols, k div cols),
 * row-major; the staggering parity used by the order parameters is
 * (-1)^{x+y} in these coordinates.
 */
struct LatticeSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool periodic = true;

    std::size_t sites() const { return rows * cols; }
    std::size_t x_of(std::size_t k) const { return k % cols; }
    std::size_t y_of(std::size_t k) const { return k / cols; }
    std::size_t site(std::size_t x, std::size_t y) const { return y * cols + x; }
    int parity(std::size_t k) const { return ((x_of(k) + y_of(k)) & 1) ? -1 : 1; }
    /// Minimal-image Manhattan distance on the torus (plain Manhattan if open).
    std::size_t torus_distance(std::size_t i, std::size_t j) const;

    void validate() const;
};

struct BondList {
    std::vector<std::pair<std::size_t, std::size_t>> nn;
    std::vector<std::pair<std::size_t, std::size_t>> nnn;
    /// Set when periodic wrapping collapsed duplicate bonds (rows or cols = 2).
    bool degeneracy_warning = false;
};

enum class SpinConvention { Half, Pauli }; // S = sigma/2 vs S = sigma
enum class BondCounting { UnorderedOnce, OrderedDouble };

struct CouplingConfig {
    double j1 = 1.0;
    double j2 = 0.0;
    SpinConvention spin = SpinConvention::Half;
    BondCounting counting = BondCounting::UnorderedOnce;

    /// Weight multiplying each X_iX_j + Y_iY_j + Z_iZ_j bond term.
    double bond_weight() const {
        double w = (spin == SpinConvention::Half) ? 0.25 : 1.0;
        if (counting == BondCounting::OrderedDouble) w *= 2.0;
        return w;
    }
};

/// Each torus bond exactly once, ordered lexicographically by (min, max).
BondList build_bonds(const LatticeSpec& spec);

/// Eq.-style J1/J2 Heisenberg Hamiltonian as a Pauli sum.
PauliSum build_hamiltonian(const LatticeSpec& spec, const CouplingConfig& coupling);

/// Heisenberg bond operator w*(X_iX_j + Y_iY_j + Z_iZ_j) as a 3-term sum.
PauliSum bond_operator(std::size_t n_sites, std::size_t i, std::size_t j, double weight);

/// Flat bond table (site pair, coupling weight) for the fused kernels below.
struct WeightedBonds {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    std::vector<double> w;
    std::size_t n_sites = 0;

    static WeightedBonds from(const LatticeSpec& spec, const CouplingConfig& coupling);
};

/// H|psi> through the bond structure; identical to PauliSum::apply on the
/// Hamiltonian but one pass per bond instead of three.
Statevector heisenberg_apply(const WeightedBonds& bonds, const Statevector& psi);
double heisenberg_expectation(const WeightedBonds& bonds, const Statevector& psi);

} // namespace j1j2
