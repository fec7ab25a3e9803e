#include "j1j2/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace j1j2 {

Statevector Statevector::basis(std::size_t n_qubits, uint64_t index) {
    Statevector psi(n_qubits);
    if (index >= psi.dim()) throw std::invalid_argument("basis index out of range");
    psi.amp[index] = 1.0;
    return psi;
}

Statevector Statevector::random(std::size_t n_qubits, uint64_t seed) {
    Statevector psi(n_qubits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& a : psi.amp) a = {g(rng), g(rng)};
    psi.normalize();
    return psi;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

void Statevector::normalize() {
    double nrm = norm();
    if (nrm == 0.0) throw std::runtime_error("cannot normalize zero vector");
    for (auto& a : amp) a /= nrm;
}

std::complex<double> Statevector::inner(const Statevector& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) s += std::conj(amp[i]) * other.amp[i];
    return s;
}

double Statevector::fidelity(const Statevector& other) const {
    return std::norm(inner(other));
}

Statevector& Statevector::operator+=(const Statevector& other) {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] += other.amp[i];
    return *this;
}

Statevector& Statevector::operator-=(const Statevector& other) {
    if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < amp.size(); ++i) amp[i] -= other.amp[i];
    return *this;
}

Statevector& Statevector::operator*=(std::complex<double> c) {
    for (auto& a : amp) a *= c;
    return *this;
}

} // namespace j1j2
