#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace j1j2 {

enum class GateKind { RX, RY, RZ, U, H, X, CX, CZ, ZZ, XY };

bool is_two_qubit(GateKind k);
std::string gate_name(GateKind k);

/**
 * One gate application. Angles may be literal (p0/p1) or refer to a named
 * parameter slot (slot0/slot1 >= 0); binding resolves the slots.
 *
 * Conventions: RX/RY/RZ are the usual half-angle rotations exp(-i a P/2);
 * U(theta, phi) maps |0> to cos(theta)|0> + e^{i phi} sin(theta)|1>;
 * ZZ(g) = exp(-i g/2 Z@Z); XY(t) = exp(-i t/2 (XX+YY)/2) (partial iSWAP).
 */
struct Gate {
    GateKind kind;
    int q0 = -1;
    int q1 = -1;
    double p0 = 0.0;
    double p1 = 0.0;
    int slot0 = -1;
    int slot1 = -1;

    Gate inverse() const;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t n_qubits) : n_(n_qubits) {}

    std::size_t n_qubits() const { return n_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    void push(GateKind kind, int q0, double angle = 0.0);
    void push2(GateKind kind, int q0, int q1, double angle = 0.0);
    void push_u(int q0, double theta, double phi);
    /// Parameterized variants; `slot` indexes the binding vector.
    void push_param(GateKind kind, int q0, int slot);
    void push2_param(GateKind kind, int q0, int q1, int slot);
    void push_u_param(int q0, int slot_theta, int slot_phi);
    void append(const Circuit& other);

    std::size_t parameter_count() const { return n_params_; }
    bool is_bound() const { return n_params_ == 0; }
    /// Resolve every slot against `params`; result has no free parameters.
    Circuit bind(std::span<const double> params) const;

    std::size_t two_qubit_count() const;
    /// Greedy layering depth (gates on disjoint qubits share a layer).
    std::size_t depth() const;

    /// Debug dump: JSON array of gate records.
    std::string to_json() const;

  private:
    void note_slot(int slot);
    std::size_t n_ = 0;
    std::size_t n_params_ = 0;
    std::vector<Gate> gates_;
};

} // namespace j1j2
