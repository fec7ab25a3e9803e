#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace j1j2 {

/**
 * Dense complex amplitude vector over n qubits, little-endian: bit k of the
 * basis index is the state of qubit k.
 */
struct Statevector {
    std::size_t n = 0;
    std::vector<std::complex<double>> amp;

    Statevector() = default;
    explicit Statevector(std::size_t n_qubits)
        : n(n_qubits), amp(std::size_t{1} << n_qubits, 0.0) {}

    std::size_t dim() const { return amp.size(); }

    static Statevector basis(std::size_t n_qubits, uint64_t index);
    /// Haar-ish random state (Gaussian amplitudes, normalized), reproducible.
    static Statevector random(std::size_t n_qubits, uint64_t seed);

    double norm() const;
    void normalize();
    std::complex<double> inner(const Statevector& other) const;
    /// |⟨this|other⟩|^2
    double fidelity(const Statevector& other) const;

    Statevector& operator+=(const Statevector& other);
    Statevector& operator-=(const Statevector& other);
    Statevector& operator*=(std::complex<double> c);
};

} // namespace j1j2
