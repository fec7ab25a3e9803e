#include "j1j2/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace j1j2 {

namespace {

using Mat2 = std::array<std::array<cdouble, 2>, 2>;

void apply_1q(Statevector& psi, int q, const Mat2& m) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t dim = psi.dim();
    const double m00r = m[0][0].real(), m00i = m[0][0].imag();
    const double m01r = m[0][1].real(), m01i = m[0][1].imag();
    const double m10r = m[1][0].real(), m10i = m[1][0].imag();
    const double m11r = m[1][1].real(), m11i = m[1][1].imag();
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
        for (std::size_t s = base; s < base + bit; ++s) {
            const std::size_t t = s | bit;
            const double a0r = psi.amp[s].real(), a0i = psi.amp[s].imag();
            const double a1r = psi.amp[t].real(), a1i = psi.amp[t].imag();
            psi.amp[s] = {m00r * a0r - m00i * a0i + m01r * a1r - m01i * a1i,
                          m00r * a0i + m00i * a0r + m01r * a1i + m01i * a1r};
            psi.amp[t] = {m10r * a0r - m10i * a0i + m11r * a1r - m11i * a1i,
                          m10r * a0i + m10i * a0r + m11r * a1i + m11i * a1r};
        }
    }
}

void apply_cx(Statevector& psi, int control, int target) {
    const std::size_t cb = std::size_t{1} << control, tb = std::size_t{1} << target;
    const std::size_t dim = psi.dim();
    for (std::size_t s = 0; s < dim; ++s)
        if ((s & cb) && !(s & tb)) std::swap(psi.amp[s], psi.amp[s | tb]);
}

void apply_cz(Statevector& psi, int q0, int q1) {
    const std::size_t b0 = std::size_t{1} << q0, b1 = std::size_t{1} << q1;
    const std::size_t dim = psi.dim();
    for (std::size_t s = 0; s < dim; ++s)
        if ((s & b0) && (s & b1)) psi.amp[s] = -psi.amp[s];
}

void apply_zz(Statevector& psi, int q0, int q1, double gamma) {
    const std::size_t b0 = std::size_t{1} << q0, b1 = std::size_t{1} << q1;
    const cdouble even = std::polar(1.0, -gamma / 2.0);
    const cdouble odd = std::polar(1.0, gamma / 2.0);
    const std::size_t dim = psi.dim();
    for (std::size_t s = 0; s < dim; ++s) {
        bool parity = bool(s & b0) != bool(s & b1);
        psi.amp[s] *= parity ? odd : even;
    }
}

void apply_xy(Statevector& psi, int q0, int q1, double theta) {
    const std::size_t b0 = std::size_t{1} << q0, b1 = std::size_t{1} << q1;
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const std::size_t dim = psi.dim();
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if ((idx & b0) && !(idx & b1)) {
            const std::size_t jdx = (idx & ~b0) | b1;
            const cdouble a = psi.amp[idx], b = psi.amp[jdx];
            psi.amp[idx] = c * a + cdouble(0, -s) * b;
            psi.amp[jdx] = cdouble(0, -s) * a + c * b;
        }
    }
}

Mat2 gate_matrix_1q(const Gate& g) {
    const double t = g.p0;
    switch (g.kind) {
        case GateKind::RX: {
            double c = std::cos(t / 2), s = std::sin(t / 2);
            return {{{cdouble(c, 0), cdouble(0, -s)}, {cdouble(0, -s), cdouble(c, 0)}}};
        }
        case GateKind::RY: {
            double c = std::cos(t / 2), s = std::sin(t / 2);
            return {{{cdouble(c, 0), cdouble(-s, 0)}, {cdouble(s, 0), cdouble(c, 0)}}};
        }
        case GateKind::RZ:
            return {{{std::polar(1.0, -t / 2), 0.0}, {0.0, std::polar(1.0, t / 2)}}};
        case GateKind::U: {
            double c = std::cos(t), s = std::sin(t);
            cdouble eip = std::polar(1.0, g.p1);
            return {{{cdouble(c, 0), -std::conj(eip) * s}, {eip * s, cdouble(c, 0)}}};
        }
        case GateKind::H: {
            double r = 1.0 / std::sqrt(2.0);
            return {{{cdouble(r, 0), cdouble(r, 0)}, {cdouble(r, 0), cdouble(-r, 0)}}};
        }
        case GateKind::X:
            return {{{0.0, 1.0}, {1.0, 0.0}}};
        default: throw std::logic_error("not a one-qubit gate");
    }
}

void apply_gate(Statevector& psi, const Gate& g) {
    switch (g.kind) {
        case GateKind::CX: apply_cx(psi, g.q0, g.q1); break;
        case GateKind::CZ: apply_cz(psi, g.q0, g.q1); break;
        case GateKind::ZZ: apply_zz(psi, g.q0, g.q1, g.p0); break;
        case GateKind::XY: apply_xy(psi, g.q0, g.q1, g.p0); break;
        default: apply_1q(psi, g.q0, gate_matrix_1q(g));
    }
}

void apply_random_pauli(Statevector& psi, int q, int which) {
    // which in {1,2,3} = X, Y, Z
    static const Mat2 kX = {{{0.0, 1.0}, {1.0, 0.0}}};
    static const Mat2 kY = {{{0.0, cdouble(0, -1)}, {cdouble(0, 1), 0.0}}};
    static const Mat2 kZ = {{{1.0, 0.0}, {0.0, -1.0}}};
    apply_1q(psi, q, which == 1 ? kX : which == 2 ? kY : kZ);
}

} // namespace

void NoiseModel::validate() const {
    auto in_range = [](double p) { return p >= 0.0 && p < 1.0; };
    if (!in_range(p1) || !in_range(p2) || !in_range(readout_flip) || !in_range(idle_error))
        throw std::invalid_argument("noise probabilities must lie in [0, 1)");
}

Statevector run(const Circuit& circuit, const Statevector& initial,
                const std::optional<NoiseModel>& noise, uint64_t seed) {
    if (!circuit.is_bound()) throw std::invalid_argument("circuit has unbound parameters");
    if (initial.n != circuit.n_qubits()) throw std::invalid_argument("dimension mismatch");
    if (noise) noise->validate();

    Statevector psi = initial;
    const bool noisy = noise && noise->gate_noise();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (const auto& g : circuit.gates()) {
        apply_gate(psi, g);
        if (!noisy) continue;
        const bool two = is_two_qubit(g.kind);
        const double p = two ? noise->p2 : noise->p1;
        if (p > 0.0 && coin(rng) < p) {
            if (two) {
                // uniform non-identity two-qubit Pauli
                int idx = 1 + static_cast<int>(coin(rng) * 15.0);
                idx = std::min(idx, 15);
                if (idx % 4) apply_random_pauli(psi, g.q0, idx % 4);
                if (idx / 4) apply_random_pauli(psi, g.q1, idx / 4);
            } else {
                int idx = 1 + static_cast<int>(coin(rng) * 3.0);
                apply_random_pauli(psi, g.q0, std::min(idx, 3));
            }
        }
        const double pidle = noise->effective_idle();
        if (pidle > 0.0) {
            for (std::size_t q = 0; q < psi.n; ++q) {
                if (static_cast<int>(q) == g.q0 || static_cast<int>(q) == g.q1) continue;
                if (coin(rng) < pidle) {
                    int idx = 1 + static_cast<int>(coin(rng) * 3.0);
                    apply_random_pauli(psi, static_cast<int>(q), std::min(idx, 3));
                }
            }
        }
    }
    return psi;
}

Statevector run_from_zero(const Circuit& circuit, const std::optional<NoiseModel>& noise,
                          uint64_t seed) {
    return run(circuit, Statevector::basis(circuit.n_qubits(), 0), noise, seed);
}

namespace {

std::vector<uint64_t> sample_indices(const Statevector& psi, uint64_t shots, std::mt19937_64& rng) {
    std::vector<double> cdf(psi.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        acc += std::norm(psi.amp[i]);
        cdf[i] = acc;
    }
    std::uniform_real_distribution<double> coin(0.0, acc);
    std::vector<uint64_t> out(shots);
    for (uint64_t s = 0; s < shots; ++s) {
        double r = coin(rng);
        out[s] = std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin();
    }
    return out;
}

std::string index_to_bits(uint64_t idx, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q)
        if ((idx >> q) & 1) s[n - 1 - q] = '1'; // qubit 0 rightmost
    return s;
}

} // namespace

Histogram sample_counts(const Statevector& psi, uint64_t shots,
                        const std::optional<NoiseModel>& noise, uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (noise) noise->validate();
    std::mt19937_64 rng(seed);
    auto indices = sample_indices(psi, shots, rng);
    const double pflip = noise ? noise->readout_flip : 0.0;
    std::map<uint64_t, uint64_t> counts;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto idx : indices) {
        if (pflip > 0.0)
            for (std::size_t q = 0; q < psi.n; ++q)
                if (coin(rng) < pflip) idx ^= uint64_t{1} << q;
        ++counts[idx];
    }
    Histogram h;
    for (const auto& [idx, c] : counts) h[index_to_bits(idx, psi.n)] = c;
    return h;
}

std::vector<std::vector<PauliString>> group_qubitwise(const PauliSum& observable) {
    std::vector<std::vector<PauliString>> groups;
    std::vector<std::string> bases; // per-group letters, 'I' = free
    for (const auto& term : observable.sorted_terms()) {
        if (term.is_identity_letters()) continue;
        const std::string letters = term.letters();
        bool placed = false;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            bool ok = true;
            for (std::size_t q = 0; q < letters.size(); ++q) {
                if (letters[q] != 'I' && bases[g][q] != 'I' && bases[g][q] != letters[q]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                groups[g].push_back(term);
                for (std::size_t q = 0; q < letters.size(); ++q)
                    if (letters[q] != 'I') bases[g][q] = letters[q];
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({term});
            bases.push_back(letters);
        }
    }
    return groups;
}

ShotEstimate estimate_expectation(const Circuit& circuit, const PauliSum& observable,
                                  uint64_t shots, const std::optional<NoiseModel>& noise,
                                  uint64_t seed, uint64_t trajectories) {
    if (!observable.is_hermitian())
        throw std::invalid_argument("estimate_expectation requires a Hermitian observable");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");

    double constant = 0.0;
    for (const auto& term : observable.sorted_terms())
        if (term.is_identity_letters()) constant += term.coefficient().real();

    auto groups = group_qubitwise(observable);
    if (groups.empty()) return {constant, 0.0};

    const std::size_t n = circuit.n_qubits();
    const bool noisy = noise && noise->gate_noise();
    uint64_t ntraj = trajectories;
    if (ntraj == 0) ntraj = noisy ? std::min<uint64_t>(shots, 64) : 1;

    double mean = constant, var = 0.0;
    const uint64_t shots_per_group = std::max<uint64_t>(1, shots / groups.size());

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& group = groups[gi];
        std::string basis(n, 'I');
        for (const auto& term : group) {
            const std::string letters = term.letters();
            for (std::size_t q = 0; q < n; ++q)
                if (letters[q] != 'I') basis[q] = letters[q];
        }
        Circuit rotated = circuit;
        for (std::size_t q = 0; q < n; ++q) {
            if (basis[q] == 'X') {
                rotated.push(GateKind::H, static_cast<int>(q));
            } else if (basis[q] == 'Y') {
                rotated.push(GateKind::RZ, static_cast<int>(q), -M_PI / 2.0);
                rotated.push(GateKind::H, static_cast<int>(q));
            }
        }

        struct TermInfo {
            uint64_t support;
            double coeff;
        };
        std::vector<TermInfo> infos;
        infos.reserve(group.size());
        for (const auto& term : group)
            infos.push_back({term.x_mask() | term.z_mask(), term.coefficient().real()});

        double sum = 0.0, sum2 = 0.0;
        uint64_t total = 0;
        const uint64_t per_traj = std::max<uint64_t>(1, shots_per_group / ntraj);
        for (uint64_t t = 0; t < ntraj && total < shots_per_group; ++t) {
            const uint64_t traj_seed = seed + 0x9e3779b9ULL * (gi + 1) + t;
            Statevector psi = run_from_zero(rotated, noise, traj_seed);
            std::mt19937_64 rng(traj_seed ^ 0xabcdef1234567890ULL);
            uint64_t want = std::min(per_traj, shots_per_group - total);
            auto indices = sample_indices(psi, want, rng);
            const double pflip = noise ? noise->readout_flip : 0.0;
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            for (auto idx : indices) {
                if (pflip > 0.0)
                    for (std::size_t q = 0; q < n; ++q)
                        if (coin(rng) < pflip) idx ^= uint64_t{1} << q;
                double v = 0.0;
                for (const auto& info : infos) {
                    int par = std::popcount(idx & info.support) & 1;
                    v += par ? -info.coeff : info.coeff;
                }
                sum += v;
                sum2 += v * v;
                ++total;
            }
        }
        const double g_mean = sum / static_cast<double>(total);
        mean += g_mean;
        if (total > 1) {
            double g_var = (sum2 / total - g_mean * g_mean) / static_cast<double>(total - 1);
            var += std::max(0.0, g_var);
        }
    }
    return {mean, std::sqrt(var)};
}

Circuit fold(const Circuit& circuit, double lambda) {
    if (lambda < 1.0) throw std::invalid_argument("fold requires lambda >= 1");
    if (!circuit.is_bound()) throw std::invalid_argument("fold requires a bound circuit");
    const auto& gates = circuit.gates();
    const std::size_t n_gates = gates.size();
    Circuit out(circuit.n_qubits());
    out.append(circuit);
    if (n_gates == 0) return out;

    auto append_inverse_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = end; i-- > begin;) {
            Gate inv = gates[i].inverse();
            if (inv.q1 >= 0)
                out.push2(inv.kind, inv.q0, inv.q1, inv.p0);
            else if (inv.kind == GateKind::U)
                out.push_u(inv.q0, inv.p0, inv.p1);
            else
                out.push(inv.kind, inv.q0, inv.p0);
        }
    };
    auto append_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Gate& g = gates[i];
            if (g.q1 >= 0)
                out.push2(g.kind, g.q0, g.q1, g.p0);
            else if (g.kind == GateKind::U)
                out.push_u(g.q0, g.p0, g.p1);
            else
                out.push(g.kind, g.q0, g.p0);
        }
    };

    const std::size_t m = static_cast<std::size_t>((lambda - 1.0) / 2.0);
    for (std::size_t r = 0; r < m; ++r) {
        append_inverse_range(0, n_gates);
        append_range(0, n_gates);
    }
    const double remainder = (lambda - 1.0 - 2.0 * static_cast<double>(m)) / 2.0;
    const std::size_t tail =
        std::min(n_gates, static_cast<std::size_t>(std::ceil(remainder * n_gates - 1e-12)));
    if (tail > 0) {
        append_inverse_range(n_gates - tail, n_gates);
        append_range(n_gates - tail, n_gates);
    }
    return out;
}

std::string histogram_to_json(const Histogram& h) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [bits, count] : h) j[bits] = count;
    return j.dump();
}

} // namespace j1j2
