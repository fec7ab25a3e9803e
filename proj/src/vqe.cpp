#include "j1j2/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <iostream>
#include <random>
#include <stdexcept>

namespace j1j2 {

std::array<double, 3> ProductAngles::bloch(std::size_t k) const {
    const double t2 = 2.0 * theta[k];
    return {std::sin(t2) * std::cos(phi[k]), std::sin(t2) * std::sin(phi[k]), std::cos(t2)};
}

namespace {

double clamp_warn(double v, double lo, double hi, bool& warned) {
    if (v < lo || v > hi) {
        if (!warned) {
            std::cerr << "product angles outside bounds were clamped\n";
            warned = true;
        }
        return std::clamp(v, lo, hi);
    }
    return v;
}

ProductAngles clamped(const ProductAngles& angles) {
    static bool warned = false;
    ProductAngles out = angles;
    for (auto& t : out.theta) t = clamp_warn(t, 0.0, 2.0 * M_PI, warned);
    for (auto& p : out.phi) p = clamp_warn(p, 0.0, M_PI, warned);
    return out;
}

} // namespace

double product_energy(const ProductAngles& angles, const LatticeSpec& spec,
                      const CouplingConfig& coupling) {
    if (angles.size() != spec.sites() || angles.phi.size() != spec.sites())
        throw std::invalid_argument("angle count does not match the lattice");
    ProductAngles a = clamped(angles);
    std::vector<std::array<double, 3>> n(spec.sites());
    for (std::size_t k = 0; k < spec.sites(); ++k) n[k] = a.bloch(k);
    auto bonds = WeightedBonds::from(spec, coupling);
    double e = 0.0;
    for (std::size_t b = 0; b < bonds.a.size(); ++b) {
        const auto &ni = n[bonds.a[b]], &nj = n[bonds.b[b]];
        e += bonds.w[b] * (ni[0] * nj[0] + ni[1] * nj[1] + ni[2] * nj[2]);
    }
    return e;
}

ProductAngles anneal_product_state(const LatticeSpec& spec, const CouplingConfig& coupling,
                                   uint64_t seed) {
    const std::size_t n = spec.sites();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 0.3);

    ProductAngles a;
    a.theta.resize(n);
    a.phi.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        a.theta[k] = u01(rng) * 2.0 * M_PI;
        a.phi[k] = u01(rng) * M_PI;
    }
    double e = product_energy(a, spec, coupling);

    const double t0 = 2.0 * std::hypot(coupling.j1, coupling.j2);
    for (double t = t0; t > 1e-3 * t0; t *= 0.95) {
        for (int move = 0; move < 500; ++move) {
            const std::size_t k = rng() % n;
            const bool pick_theta = rng() & 1;
            const double old_angle = pick_theta ? a.theta[k] : a.phi[k];
            double next = old_angle + gauss(rng);
            next = pick_theta ? std::clamp(next, 0.0, 2.0 * M_PI) : std::clamp(next, 0.0, M_PI);
            (pick_theta ? a.theta[k] : a.phi[k]) = next;
            const double e_next = product_energy(a, spec, coupling);
            if (e_next <= e || u01(rng) < std::exp(-(e_next - e) / t)) {
                e = e_next;
            } else {
                (pick_theta ? a.theta[k] : a.phi[k]) = old_angle;
            }
        }
    }
    return a;
}

ProductAngles warm_start(const LatticeSpec& spec, const CouplingConfig& coupling,
                         std::size_t runs, uint64_t seed) {
    if (runs < 1) throw std::invalid_argument("warm_start needs runs >= 1");
    const std::size_t n = spec.sites();
    if (runs == 1) return anneal_product_state(spec, coupling, seed);
    std::vector<ProductAngles> all;
    all.reserve(runs);
    for (std::size_t r = 0; r < runs; ++r) {
        ProductAngles a = anneal_product_state(spec, coupling, seed + 0x77 * r);
        // gauge-fix the global spin flip by the sign of site 0's Z component,
        // then fold theta into [0, pi): |psi(theta + pi)> = -|psi(theta)>,
        // so the fold changes nothing physical but keeps equivalent runs
        // from averaging to garbage.
        if (a.bloch(0)[2] < 0.0)
            for (auto& t : a.theta) t = std::fmod(t + M_PI / 2.0, 2.0 * M_PI);
        for (auto& t : a.theta) t = std::fmod(std::fmod(t, M_PI) + M_PI, M_PI);
        all.push_back(std::move(a));
    }

    ProductAngles avg;
    avg.theta.resize(n);
    avg.phi.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        double ts = 0.0, tc = 0.0, ps = 0.0, pc = 0.0;
        for (const auto& a : all) {
            // theta lives on a pi-periodic circle after the fold
            ts += std::sin(2.0 * a.theta[k]);
            tc += std::cos(2.0 * a.theta[k]);
            ps += std::sin(a.phi[k]);
            pc += std::cos(a.phi[k]);
        }
        double t = 0.5 * std::atan2(ts, tc);
        if (t < 0) t += M_PI;
        avg.theta[k] = t;
        avg.phi[k] = std::clamp(std::atan2(ps, pc), 0.0, M_PI);
    }
    return avg;
}

std::size_t ansatz_parameter_count(const AnsatzSpec& spec, const LatticeSpec& lattice) {
    const std::size_t n = lattice.sites();
    const std::size_t reps = static_cast<std::size_t>(spec.reps);
    switch (spec.kind) {
        case AnsatzKind::TwoLocalRxCxLinear:
        case AnsatzKind::TwoLocalRxCzCircular:
        case AnsatzKind::RealAmplitudes: return n * (reps + 1);
        case AnsatzKind::Feulner: return n * 4; // pinned 3 reps
        case AnsatzKind::EfficientSU2: return 2 * n * (reps + 1);
        case AnsatzKind::HMFA: {
            auto bonds = build_bonds(lattice);
            return reps * (2 * (bonds.nn.size() + bonds.nnn.size()) + n);
        }
    }
    throw std::invalid_argument("unknown ansatz kind");
}

namespace {

void rotation_layer(Circuit& c, GateKind kind, int& slot) {
    for (std::size_t q = 0; q < c.n_qubits(); ++q)
        c.push_param(kind, static_cast<int>(q), slot++);
}

void cx_linear(Circuit& c) {
    for (std::size_t q = 0; q + 1 < c.n_qubits(); ++q)
        c.push2(GateKind::CX, static_cast<int>(q), static_cast<int>(q + 1));
}

void cz_ring(Circuit& c) {
    const std::size_t n = c.n_qubits();
    for (std::size_t q = 0; q < n; ++q) {
        std::size_t r = (q + 1) % n;
        if (r == q || (n == 2 && q == 1)) continue; // avoid the duplicate pair on 2 qubits
        c.push2(GateKind::CZ, static_cast<int>(q), static_cast<int>(r));
    }
}

} // namespace

Circuit build_ansatz(const AnsatzSpec& spec, const LatticeSpec& lattice,
                     const ProductAngles* warm) {
    if (spec.reps < 1 || spec.reps > 5) throw std::invalid_argument("reps must lie in 1..5");
    const std::size_t n = lattice.sites();
    Circuit c(n);
    if (warm) {
        if (warm->size() != n) throw std::invalid_argument("warm-start size mismatch");
        for (std::size_t q = 0; q < n; ++q)
            c.push_u(static_cast<int>(q), warm->theta[q], warm->phi[q]);
    }
    int slot = 0;
    const int reps = spec.kind == AnsatzKind::Feulner ? 3 : spec.reps;
    switch (spec.kind) {
        case AnsatzKind::TwoLocalRxCxLinear:
            for (int r = 0; r < reps; ++r) {
                rotation_layer(c, GateKind::RX, slot);
                cx_linear(c);
            }
            rotation_layer(c, GateKind::RX, slot);
            break;
        case AnsatzKind::TwoLocalRxCzCircular:
        case AnsatzKind::Feulner:
            for (int r = 0; r < reps; ++r) {
                rotation_layer(c, GateKind::RX, slot);
                cz_ring(c);
            }
            rotation_layer(c, GateKind::RX, slot);
            break;
        case AnsatzKind::RealAmplitudes:
            for (int r = 0; r < reps; ++r) {
                rotation_layer(c, GateKind::RY, slot);
                cx_linear(c);
            }
            rotation_layer(c, GateKind::RY, slot);
            break;
        case AnsatzKind::EfficientSU2:
            for (int r = 0; r < reps; ++r) {
                rotation_layer(c, GateKind::RY, slot);
                rotation_layer(c, GateKind::RZ, slot);
                cx_linear(c);
            }
            rotation_layer(c, GateKind::RY, slot);
            rotation_layer(c, GateKind::RZ, slot);
            break;
        case AnsatzKind::HMFA: {
            // Neel-preparing X layer, then per-bond ZZ and XY plus a Z layer
            auto bonds = build_bonds(lattice);
            for (std::size_t q = 0; q < n; ++q)
                if (lattice.parity(q) < 0) c.push(GateKind::X, static_cast<int>(q));
            auto bond_layers = [&](const std::vector<std::pair<std::size_t, std::size_t>>& list) {
                for (const auto& [i, j] : list)
                    c.push2_param(GateKind::ZZ, static_cast<int>(i), static_cast<int>(j), slot++);
                for (const auto& [i, j] : list)
                    c.push2_param(GateKind::XY, static_cast<int>(i), static_cast<int>(j), slot++);
            };
            for (int r = 0; r < reps; ++r) {
                bond_layers(bonds.nn);
                bond_layers(bonds.nnn);
                rotation_layer(c, GateKind::RZ, slot);
            }
            break;
        }
    }
    return c;
}

VqeResult optimize(const Objective& objective, OptMethod method,
                   std::vector<double> initial_params, std::size_t max_iters, uint64_t seed) {
    OptimResult r = method == OptMethod::NFT
                        ? nft_minimize(objective, std::move(initial_params), max_iters)
                        : nelder_mead(objective, std::move(initial_params), max_iters);
    VqeResult out;
    out.best_energy = r.best_value;
    out.best_params = std::move(r.best_params);
    out.iterations = r.iterations;
    out.hit_iteration_cap = r.hit_iteration_cap;
    out.seed = seed;
    // best-so-far trace
    out.trace.reserve(r.trace.size());
    double best = std::numeric_limits<double>::infinity();
    for (double v : r.trace) {
        best = std::min(best, v);
        out.trace.push_back(best);
    }
    return out;
}

namespace {

Objective make_energy_objective(const Circuit& ansatz, const LatticeSpec& spec,
                                const CouplingConfig& coupling, const VqeOptions& options) {
    auto bonds = std::make_shared<WeightedBonds>(WeightedBonds::from(spec, coupling));
    auto circuit = std::make_shared<Circuit>(ansatz);
    if (options.shots == 0) {
        return [bonds, circuit](const std::vector<double>& params) {
            Circuit bound = circuit->bind(params);
            Statevector psi = run_from_zero(bound);
            return heisenberg_expectation(*bonds, psi);
        };
    }
    auto h = std::make_shared<PauliSum>(build_hamiltonian(spec, coupling));
    auto counter = std::make_shared<uint64_t>(0);
    auto noise = options.noise;
    auto shots = options.shots;
    auto seed = options.seed;
    return [h, circuit, counter, noise, shots, seed](const std::vector<double>& params) {
        Circuit bound = circuit->bind(params);
        return estimate_expectation(bound, *h, shots, noise, seed + 7919 * (*counter)++).mean;
    };
}

} // namespace

VqeResult run_vqe(const LatticeSpec& spec, const CouplingConfig& coupling,
                  const VqeOptions& options) {
    ProductAngles warm;
    const ProductAngles* warm_ptr = nullptr;
    if (options.warm) {
        warm = warm_start(spec, coupling, options.warm_runs, options.seed);
        warm_ptr = &warm;
    }
    Circuit ansatz = build_ansatz(options.ansatz, spec, warm_ptr);
    auto objective = make_energy_objective(ansatz, spec, coupling, options);

    std::vector<double> init(ansatz.parameter_count(), 0.0);
    if (!options.warm) {
        std::mt19937_64 rng(options.seed ^ 0xf00d);
        std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
        for (auto& v : init) v = u(rng);
    }
    return optimize(objective, options.method, std::move(init), options.max_iters, options.seed);
}

Circuit bound_vqe_circuit(const LatticeSpec& spec, const CouplingConfig& coupling,
                          const VqeOptions& options, const VqeResult& result) {
    ProductAngles warm;
    const ProductAngles* warm_ptr = nullptr;
    if (options.warm) {
        warm = warm_start(spec, coupling, options.warm_runs, options.seed);
        warm_ptr = &warm;
    }
    Circuit ansatz = build_ansatz(options.ansatz, spec, warm_ptr);
    return ansatz.bind(result.best_params);
}

} // namespace j1j2
