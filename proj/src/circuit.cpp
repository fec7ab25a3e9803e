#include "j1j2/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace j1j2 {

bool is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::ZZ:
        case GateKind::XY: return true;
        default: return false;
    }
}

std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::U: return "u";
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::ZZ: return "zz";
        case GateKind::XY: return "xy";
    }
    return "?";
}

Gate Gate::inverse() const {
    if (slot0 >= 0 || slot1 >= 0)
        throw std::logic_error("cannot invert a gate with unbound parameters");
    Gate g = *this;
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::CX:
        case GateKind::CZ: break; // involutions
        default: g.p0 = -p0; break;
    }
    return g;
}

void Circuit::note_slot(int slot) {
    if (slot >= 0) n_params_ = std::max(n_params_, static_cast<std::size_t>(slot) + 1);
}

void Circuit::push(GateKind kind, int q0, double angle) {
    if (is_two_qubit(kind)) throw std::invalid_argument("two-qubit gate pushed as one-qubit");
    if (q0 < 0 || static_cast<std::size_t>(q0) >= n_) throw std::invalid_argument("qubit out of range");
    gates_.push_back({kind, q0, -1, angle, 0.0, -1, -1});
}

void Circuit::push2(GateKind kind, int q0, int q1, double angle) {
    if (!is_two_qubit(kind)) throw std::invalid_argument("one-qubit gate pushed as two-qubit");
    if (q0 == q1 || q0 < 0 || q1 < 0 || static_cast<std::size_t>(q0) >= n_ ||
        static_cast<std::size_t>(q1) >= n_)
        throw std::invalid_argument("bad qubit pair");
    gates_.push_back({kind, q0, q1, angle, 0.0, -1, -1});
}

void Circuit::push_u(int q0, double theta, double phi) {
    if (q0 < 0 || static_cast<std::size_t>(q0) >= n_) throw std::invalid_argument("qubit out of range");
    gates_.push_back({GateKind::U, q0, -1, theta, phi, -1, -1});
}

void Circuit::push_param(GateKind kind, int q0, int slot) {
    push(kind, q0, 0.0);
    gates_.back().slot0 = slot;
    note_slot(slot);
}

void Circuit::push2_param(GateKind kind, int q0, int q1, int slot) {
    push2(kind, q0, q1, 0.0);
    gates_.back().slot0 = slot;
    note_slot(slot);
}

void Circuit::push_u_param(int q0, int slot_theta, int slot_phi) {
    push_u(q0, 0.0, 0.0);
    gates_.back().slot0 = slot_theta;
    gates_.back().slot1 = slot_phi;
    note_slot(slot_theta);
    note_slot(slot_phi);
}

void Circuit::append(const Circuit& other) {
    if (other.n_ != n_) throw std::invalid_argument("qubit count mismatch");
    for (const auto& g : other.gates_) {
        gates_.push_back(g);
        note_slot(g.slot0);
        note_slot(g.slot1);
    }
}

Circuit Circuit::bind(std::span<const double> params) const {
    if (params.size() < n_params_)
        throw std::invalid_argument("binding vector shorter than parameter count");
    Circuit out(n_);
    out.gates_ = gates_;
    for (auto& g : out.gates_) {
        if (g.slot0 >= 0) g.p0 = params[static_cast<std::size_t>(g.slot0)];
        if (g.slot1 >= 0) g.p1 = params[static_cast<std::size_t>(g.slot1)];
        g.slot0 = g.slot1 = -1;
    }
    return out;
}

std::size_t Circuit::two_qubit_count() const {
    std::size_t c = 0;
    for (const auto& g : gates_) c += is_two_qubit(g.kind);
    return c;
}

std::size_t Circuit::depth() const {
    std::vector<std::size_t> ready(n_, 0);
    std::size_t d = 0;
    for (const auto& g : gates_) {
        std::size_t layer = ready[g.q0];
        if (g.q1 >= 0) layer = std::max(layer, ready[g.q1]);
        ++layer;
        ready[g.q0] = layer;
        if (g.q1 >= 0) ready[g.q1] = layer;
        d = std::max(d, layer);
    }
    return d;
}

std::string Circuit::to_json() const {
    nlohmann::json j;
    j["n_qubits"] = n_;
    j["gates"] = nlohmann::json::array();
    for (const auto& g : gates_) {
        nlohmann::json jg;
        jg["gate"] = gate_name(g.kind);
        jg["qubits"] = g.q1 >= 0 ? nlohmann::json::array({g.q0, g.q1})
                                 : nlohmann::json::array({g.q0});
        if (g.slot0 >= 0)
            jg["slot"] = g.slot0;
        else if (g.kind != GateKind::H && g.kind != GateKind::X && g.kind != GateKind::CX &&
                 g.kind != GateKind::CZ)
            jg["angle"] = g.p0;
        if (g.kind == GateKind::U) {
            if (g.slot1 >= 0)
                jg["slot_phi"] = g.slot1;
            else
                jg["phi"] = g.p1;
        }
        j["gates"].push_back(jg);
    }
    return j.dump();
}

} // namespace j1j2
