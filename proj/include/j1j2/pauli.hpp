#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "j1j2/statevector.hpp"

namespace j1j2 {

using cdouble = std::complex<double>;

/// Coefficients with magnitude below this are dropped during simplification.
inline constexpr double kSimplifyTol = 1e-12;

/**
 * A single Pauli string c * P_{n-1} ⊗ ... ⊗ P_0 with P_k ∈ {I,X,Y,Z}.
 *
 * Qubit k's letter is stored at position k of the letter string
 * (little-endian: leftmost character = qubit 0). Internally the string is
 * kept in symplectic form (x, z bitmasks) so that the operator equals
 *   coeff * i^{#Y} * X^x Z^z
 * and products reduce to XORs plus a sign from popcount(z1 & x2).
 */
class PauliString {
  public:
    PauliString() = default;
    PauliString(std::size_t n_qubits, uint64_t x_mask, uint64_t z_mask, cdouble coeff);
    /// Parse from a letter string such as "XYIZ" (char k = qubit k).
    static PauliString from_letters(const std::string& letters, cdouble coeff = 1.0);
    /// Identity on n qubits.
    static PauliString identity(std::size_t n_qubits, cdouble coeff = 1.0);
    /// Single non-identity letter at `qubit` on an n-qubit register.
    static PauliString single(std::size_t n_qubits, char letter, std::size_t qubit,
                              cdouble coeff = 1.0);

    std::size_t n_qubits() const { return n_; }
    uint64_t x_mask() const { return x_; }
    uint64_t z_mask() const { return z_; }
    /// Coefficient in the letter convention (c such that the operator is c*P).
    cdouble coefficient() const;
    void set_coefficient(cdouble c);
    std::string letters() const;

    /// Exact product with phase folded into the coefficient.
    friend PauliString multiply(const PauliString& a, const PauliString& b);

    /// |out⟩ += (this)|psi⟩, matrix-free.
    void apply_add(const Statevector& psi, Statevector& out) const;
    Statevector apply(const Statevector& psi) const;
    /// ⟨psi| this |psi⟩ (complex in general).
    cdouble expectation(const Statevector& psi) const;

    bool is_identity_letters() const { return x_ == 0 && z_ == 0; }

  private:
    std::size_t n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
    // Coefficient of the symplectic form X^x Z^z (letter coeff times i^{#Y}).
    cdouble cxz_ = 1.0;
};

PauliString multiply(const PauliString& a, const PauliString& b);

/**
 * Weighted sum of Pauli strings, the representation used for the Hamiltonian
 * and every observable. Terms with |coeff| < kSimplifyTol are dropped.
 */
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}

    std::size_t n_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(const PauliString& p);
    void add(const std::string& letters, cdouble coeff);
    PauliSum& operator+=(const PauliSum& other);
    PauliSum operator*(cdouble scale) const;

    /// Drop negligible terms (tolerance kSimplifyTol).
    void simplify();

    bool is_hermitian(double tol = 1e-10) const;
    PauliSum adjoint() const;

    /// Sum of |coeff| over all terms (the block-encoding 1-norm).
    double one_norm() const;

    friend PauliSum multiply(const PauliSum& a, const PauliSum& b, std::size_t term_budget);

    /// h^k for k in [1,4], fully simplified. Throws if any intermediate
    /// product would exceed `term_budget` terms.
    PauliSum power(int k, std::size_t term_budget = 4'000'000) const;

    Statevector apply(const Statevector& psi) const;
    /// ⟨psi|H|psi⟩ for Hermitian H; asserts the imaginary residue < 1e-10.
    double expectation(const Statevector& psi) const;

    /// Terms sorted by (z,x) masks; deterministic across runs.
    std::vector<PauliString> sorted_terms() const;

    /// One `coeff<TAB>letters` line per term (sorted order).
    std::string to_text() const;
    static PauliSum from_text(const std::string& text, std::size_t n_qubits);

  private:
    struct KeyHash {
        std::size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
            uint64_t h = k.first * 0x9e3779b97f4a7c15ULL;
            h ^= k.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };
    std::size_t n_ = 0;
    // Key = (x, z); value = coefficient of the symplectic form X^x Z^z.
    std::unordered_map<std::pair<uint64_t, uint64_t>, cdouble, KeyHash> terms_;
};

PauliSum multiply(const PauliSum& a, const PauliSum& b, std::size_t term_budget = 4'000'000);

} // namespace j1j2
