#include "j1j2/vff.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "j1j2/simulator.hpp"

namespace j1j2 {

std::vector<std::pair<std::size_t, std::size_t>> VffModel::chain_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t q = 0; q + 1 < n; ++q) out.emplace_back(q, q + 1);
    return out;
}

std::size_t VffModel::w_parameter_count(std::size_t n, std::size_t layers, std::size_t n_pairs) {
    return layers * (2 * n + n_pairs);
}

std::size_t VffModel::gamma_parameter_count(std::size_t n, std::size_t n_pairs) {
    return n + n_pairs;
}

Circuit VffModel::w_circuit() const {
    const auto& pp = pairs.empty() ? chain_pairs(n) : pairs;
    Circuit c(n);
    std::size_t p = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < n; ++q) {
            c.push_u(static_cast<int>(q), w_params[p], w_params[p + 1]);
            p += 2;
        }
        for (const auto& [i, j] : pp)
            c.push2(GateKind::XY, static_cast<int>(i), static_cast<int>(j), w_params[p++]);
    }
    return c;
}

Circuit VffModel::d_circuit(double k) const {
    const auto& pp = pairs.empty() ? chain_pairs(n) : pairs;
    Circuit c(n);
    std::size_t p = 0;
    for (std::size_t q = 0; q < n; ++q) c.push(GateKind::RZ, static_cast<int>(q), k * gamma[p++]);
    for (const auto& [i, j] : pp)
        c.push2(GateKind::ZZ, static_cast<int>(i), static_cast<int>(j), k * gamma[p++]);
    return c;
}

Circuit VffModel::fast_forward(double k) const {
    Circuit out(n);
    Circuit w = w_circuit();
    const auto& gates = w.gates();
    for (std::size_t i = gates.size(); i-- > 0;) {
        Gate inv = gates[i].inverse();
        if (inv.q1 >= 0)
            out.push2(inv.kind, inv.q0, inv.q1, inv.p0);
        else if (inv.kind == GateKind::U)
            out.push_u(inv.q0, inv.p0, inv.p1);
        else
            out.push(inv.kind, inv.q0, inv.p0);
    }
    out.append(d_circuit(k));
    out.append(w);
    return out;
}

Statevector VffModel::apply(double k, const Statevector& psi) const {
    return run(fast_forward(k), psi);
}

ChebyshevTargets chebyshev_targets(const NormalizedHamiltonian& hn, const Statevector& psi0,
                                   std::size_t n_powers) {
    if (n_powers < 1) throw std::invalid_argument("need at least one power");
    ChebyshevTargets out;
    Statevector prev = psi0;
    Statevector curr = hn.apply(psi0);
    for (std::size_t k = 1; k <= n_powers; ++k) {
        Statevector tk = curr;
        const double nu = tk.norm();
        if (nu < 1e-14) throw std::runtime_error("Chebyshev target vanished");
        for (auto& a : tk.amp) a /= nu;
        out.states.push_back(std::move(tk));
        out.norms.push_back(nu);
        if (k == n_powers) break;
        Statevector next = hn.apply(curr);
        for (std::size_t s = 0; s < next.dim(); ++s)
            next.amp[s] = 2.0 * next.amp[s] - prev.amp[s];
        prev = std::move(curr);
        curr = std::move(next);
    }
    return out;
}

std::vector<double> vff_fidelities(const VffModel& model, const ChebyshevTargets& targets,
                                   const Statevector& psi0) {
    std::vector<double> fid;
    fid.reserve(targets.states.size());
    // A^k |psi0> via repeated application of the shared W D W^dag blocks:
    // equivalent to A(k) by the additivity of the diagonal angles
    for (std::size_t k = 1; k <= targets.states.size(); ++k) {
        Statevector ak = model.apply(static_cast<double>(k), psi0);
        fid.push_back(std::norm(targets.states[k - 1].inner(ak)));
    }
    return fid;
}

double vff_cost(const VffModel& model, const ChebyshevTargets& targets, const Statevector& psi0) {
    auto fid = vff_fidelities(model, targets, psi0);
    double mean = 0.0;
    for (double f : fid) mean += f;
    return 1.0 - mean / static_cast<double>(fid.size());
}

std::pair<VffModel, VffReport> train_vff(const NormalizedHamiltonian& hn,
                                         const Statevector& psi0, std::size_t layers,
                                         std::size_t n_powers, std::size_t max_iters,
                                         uint64_t seed, OptMethod method,
                                         std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    if (n_powers < 2) throw std::invalid_argument("train_vff needs n_powers >= 2");
    const std::size_t n = hn.alpha.n_qubits();
    auto targets = chebyshev_targets(hn, psi0, n_powers);

    VffModel model;
    model.n = n;
    model.layers = layers;
    model.pairs = pairs;
    const std::size_t n_pairs = (pairs.empty() ? VffModel::chain_pairs(n) : pairs).size();
    const std::size_t nw = VffModel::w_parameter_count(n, layers, n_pairs);
    const std::size_t ng = VffModel::gamma_parameter_count(n, n_pairs);
    std::vector<double> params(nw + ng, 0.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> init(0.0, 0.2);
    for (auto& p : params) p = init(rng);

    auto unpack = [&](const std::vector<double>& p, VffModel& m) {
        m.w_params.assign(p.begin(), p.begin() + nw);
        m.gamma.assign(p.begin() + nw, p.end());
    };
    auto objective = [&](const std::vector<double>& p) {
        VffModel m;
        m.n = n;
        m.layers = layers;
        m.pairs = pairs;
        unpack(p, m);
        return vff_cost(m, targets, psi0);
    };

    OptimResult r = method == OptMethod::NFT ? nft_minimize(objective, params, max_iters)
                                             : nelder_mead(objective, params, max_iters);
    unpack(r.best_params, model);
    VffReport report;
    report.final_cost = r.best_value;
    report.iterations = r.iterations;
    report.fidelities = vff_fidelities(model, targets, psi0);
    return {model, report};
}

std::vector<double> moments_via_vff(const VffModel& model, const ChebyshevTargets& targets,
                                    const Statevector& psi0, std::size_t kmax) {
    if (kmax > targets.states.size())
        throw std::invalid_argument("not enough targets for the requested moment order");
    std::vector<double> moments;
    moments.reserve(kmax + 1);
    moments.push_back(1.0);
    for (std::size_t k = 1; k <= kmax; ++k) {
        Statevector ak = model.apply(static_cast<double>(k), psi0);
        // The cost function is phase-blind, so A^k reproduces the target only
        // up to a phase. The targets are classical (they parameterized the
        // training), so that phase is classically known and gauged away here;
        // the carried norm then restores <T_k> from the normalized overlap.
        cdouble phase_ref = targets.states[k - 1].inner(ak);
        cdouble gauge =
            std::abs(phase_ref) > 1e-12 ? phase_ref / std::abs(phase_ref) : cdouble(1.0);
        moments.push_back(targets.norms[k - 1] *
                          (psi0.inner(ak) / gauge).real());
    }
    return moments;
}

cdouble hadamard_test(const Circuit& prep_a, const Circuit& prep_b, uint64_t shots,
                      uint64_t seed) {
    if (prep_a.n_qubits() != prep_b.n_qubits())
        throw std::invalid_argument("register size mismatch");
    Statevector a = run_from_zero(prep_a);
    Statevector b = run_from_zero(prep_b);
    const cdouble exact = a.inner(b);
    if (shots == 0) return exact;
    // ancilla statistics of the two test variants: P(0) = (1 +- Re/Im)/2
    std::mt19937_64 rng(seed);
    auto sample = [&](double v) {
        std::binomial_distribution<uint64_t> binom(shots,
                                                   std::clamp(0.5 * (1.0 + v), 0.0, 1.0));
        return 2.0 * static_cast<double>(binom(rng)) / static_cast<double>(shots) - 1.0;
    };
    return {sample(std::clamp(exact.real(), -1.0, 1.0)),
            sample(std::clamp(exact.imag(), -1.0, 1.0))};
}

std::string vff_model_to_json(const VffModel& model, const VffReport& report, uint64_t seed) {
    nlohmann::json j;
    j["n_qubits"] = model.n;
    j["layers"] = model.layers;
    j["w_params"] = model.w_params;
    j["gamma"] = model.gamma;
    j["pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : model.pairs) j["pairs"].push_back({a, b});
    j["cost"] = report.final_cost;
    j["fidelities"] = report.fidelities;
    j["iterations"] = report.iterations;
    j["seed"] = seed;
    return j.dump(2);
}

VffModel vff_model_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    VffModel m;
    m.n = j.at("n_qubits").get<std::size_t>();
    m.layers = j.at("layers").get<std::size_t>();
    m.w_params = j.at("w_params").get<std::vector<double>>();
    m.gamma = j.at("gamma").get<std::vector<double>>();
    if (j.contains("pairs"))
        for (const auto& pr : j.at("pairs"))
            m.pairs.emplace_back(pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>());
    const std::size_t n_pairs =
        (m.pairs.empty() ? VffModel::chain_pairs(m.n) : m.pairs).size();
    if (m.w_params.size() != VffModel::w_parameter_count(m.n, m.layers, n_pairs) ||
        m.gamma.size() != VffModel::gamma_parameter_count(m.n, n_pairs))
        throw std::invalid_argument("inconsistent model dimensions");
    return m;
}

} // namespace j1j2
