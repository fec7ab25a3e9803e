#include <doctest.h>

#include <cmath>

#include "j1j2/oracle.hpp"
#include "j1j2/vqe.hpp"

using namespace j1j2;

namespace {

ProductAngles neel_angles(const LatticeSpec& spec) {
    ProductAngles a;
    a.theta.assign(spec.sites(), 0.0);
    a.phi.assign(spec.sites(), 0.0);
    for (std::size_t k = 0; k < spec.sites(); ++k)
        if (spec.parity(k) < 0) a.theta[k] = M_PI / 2.0;
    return a;
}

} // namespace

TEST_CASE("product energy endpoints at J2 = 0") {
    LatticeSpec spec{4, 4, true};
    CouplingConfig c;
    ProductAngles up;
    up.theta.assign(16, 0.0);
    up.phi.assign(16, 0.0);
    const double e_up = product_energy(up, spec, c);
    CHECK(e_up == doctest::Approx(8.0)); // every bond aligned, 32 * 1/4

    const double e_neel = product_energy(neel_angles(spec), spec, c);
    CHECK(e_neel == doctest::Approx(-8.0)); // antiparallel bonds

    // classical extremes bound random configurations
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        ProductAngles a;
        for (int k = 0; k < 16; ++k) {
            a.theta.push_back(u(rng) * 2 * M_PI);
            a.phi.push_back(u(rng) * M_PI);
        }
        const double e = product_energy(a, spec, c);
        CHECK(e <= e_up + 1e-12);
        CHECK(e >= e_neel - 1e-12);
    }
}

TEST_CASE("product energy equals the statevector expectation") {
    LatticeSpec spec{2, 3, true};
    CouplingConfig c;
    c.j2 = 0.37;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ProductAngles a;
    for (std::size_t k = 0; k < 6; ++k) {
        a.theta.push_back(u(rng) * 2 * M_PI);
        a.phi.push_back(u(rng) * M_PI);
    }
    Circuit prep(6);
    for (std::size_t q = 0; q < 6; ++q)
        prep.push_u(static_cast<int>(q), a.theta[q], a.phi[q]);
    auto psi = run_from_zero(prep);
    auto h = build_hamiltonian(spec, c);
    CHECK(product_energy(a, spec, c) == doctest::Approx(h.expectation(psi)).epsilon(1e-10));
}

TEST_CASE("annealing finds the staggered optimum at J2 = 0") {
    LatticeSpec spec{4, 4, true};
    CouplingConfig c;
    auto a = anneal_product_state(spec, c, 11);
    CHECK(product_energy(a, spec, c) < -7.9);
    auto bonds = build_bonds(spec);
    for (const auto& [i, j] : bonds.nn) {
        auto ni = a.bloch(i), nj = a.bloch(j);
        CHECK(ni[0] * nj[0] + ni[1] * nj[1] + ni[2] * nj[2] < -0.95);
    }
}

TEST_CASE("warm start averages stay near the optimum and cluster at poles") {
    LatticeSpec spec{4, 4, true};
    CouplingConfig c;
    auto w = warm_start(spec, c, 4, 21);
    CHECK(product_energy(w, spec, c) < -7.9);
    // annealed parameters sit near multiples of pi/2 (the +-z poles)
    for (double t : w.theta) {
        double frac = std::fmod(t, M_PI / 2.0);
        double dist = std::min(frac, M_PI / 2.0 - frac);
        CHECK(dist < 0.1);
    }
}

TEST_CASE("warm start with runs = 1 is a single annealing output") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig c;
    auto w = warm_start(spec, c, 1, 77);
    auto a = anneal_product_state(spec, c, 77);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(w.theta[k] == a.theta[k]);
        CHECK(w.phi[k] == a.phi[k]);
    }
}

TEST_CASE("ansatz structures") {
    LatticeSpec small{1, 4, false};
    auto c = build_ansatz({AnsatzKind::TwoLocalRxCxLinear, 1}, small);
    CHECK(c.parameter_count() == 8);
    CHECK(c.two_qubit_count() == 3);
    CHECK(ansatz_parameter_count({AnsatzKind::TwoLocalRxCxLinear, 1}, small) == 8);

    LatticeSpec big{4, 4, true};
    CHECK(ansatz_parameter_count({AnsatzKind::EfficientSU2, 1}, big) == 64);
    auto e = build_ansatz({AnsatzKind::EfficientSU2, 1}, big);
    CHECK(e.parameter_count() == 64);

    // Feulner pins three repetitions of the RX-CZ ring
    auto f = build_ansatz({AnsatzKind::Feulner, 1}, big);
    CHECK(f.parameter_count() == 64); // 4 rotation layers x 16
    CHECK(f.two_qubit_count() == 48);

    CHECK_THROWS(build_ansatz({AnsatzKind::RealAmplitudes, 0}, big));
    CHECK_THROWS(build_ansatz({AnsatzKind::RealAmplitudes, 6}, big));
}

TEST_CASE("HMFA starts from the Neel state") {
    LatticeSpec spec{2, 2, true};
    auto c = build_ansatz({AnsatzKind::HMFA, 1}, spec);
    std::vector<double> zeros(c.parameter_count(), 0.0);
    auto psi = run_from_zero(c.bind(zeros));
    PauliSum mz(4);
    for (std::size_t q = 0; q < 4; ++q) mz.add(PauliString::single(4, 'Z', q));
    CHECK(mz.expectation(psi) == doctest::Approx(0.0));
}

TEST_CASE("warm prefix reproduces the product state at zero parameters") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig c;
    auto w = warm_start(spec, c, 2, 5);
    auto circ = build_ansatz({AnsatzKind::TwoLocalRxCxLinear, 1}, spec, &w);
    std::vector<double> zeros(circ.parameter_count(), 0.0);
    auto psi = run_from_zero(circ.bind(zeros));
    // the CX ladder permutes basis states, so compare energies through the
    // pure product prep instead
    Circuit prep(4);
    for (std::size_t q = 0; q < 4; ++q) prep.push_u(static_cast<int>(q), w.theta[q], w.phi[q]);
    auto direct = run_from_zero(prep);
    CHECK(std::abs(product_energy(w, spec, c) -
                   build_hamiltonian(spec, c).expectation(direct)) < 1e-10);
    CHECK(psi.norm() == doctest::Approx(1.0));
}

TEST_CASE("Nelder-Mead solves the quadratic bowl") {
    auto f = [](const std::vector<double>& x) { return (x[0] - 1.0) * (x[0] - 1.0); };
    auto r = nelder_mead(f, {5.0}, 500);
    CHECK(std::abs(r.best_params[0] - 1.0) < 1e-6);
    CHECK(!r.hit_iteration_cap);
}

TEST_CASE("NFT lands on the sinusoid minimum in one update") {
    // <Z> of RX(theta)|0> = cos(theta)
    Circuit c(1);
    c.push_param(GateKind::RX, 0, 0);
    PauliSum z(1);
    z.add("Z", 1.0);
    auto f = [&](const std::vector<double>& x) {
        return z.expectation(run_from_zero(c.bind(x)));
    };
    auto r = nft_minimize(f, {0.0}, 1);
    CHECK(std::abs(std::remainder(r.best_params[0] - M_PI, 2 * M_PI)) < 1e-9);
    CHECK(r.best_value == doctest::Approx(-1.0));
}

TEST_CASE("NFT trace is non-increasing in exact mode") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig c;
    c.j2 = 0.5;
    VqeOptions opt;
    opt.ansatz = {AnsatzKind::EfficientSU2, 1};
    opt.max_iters = 60;
    opt.seed = 9;
    auto res = run_vqe(spec, c, opt);
    REQUIRE(!res.trace.empty());
    for (std::size_t i = 1; i < res.trace.size(); ++i)
        CHECK(res.trace[i] <= res.trace[i - 1] + 1e-12);
    // variational bound
    auto sol = ground_state(build_hamiltonian(spec, c));
    CHECK(res.best_energy >= sol.energy - 1e-9);
}

TEST_CASE("shot-based objective runs and stays near the exact one") {
    LatticeSpec spec{1, 2, false};
    CouplingConfig c;
    VqeOptions opt;
    opt.ansatz = {AnsatzKind::RealAmplitudes, 1};
    opt.max_iters = 10;
    opt.shots = 4000;
    opt.warm = false;
    opt.seed = 4;
    auto res = run_vqe(spec, c, opt);
    CHECK(res.best_energy < 0.1); // found a direction below the mixed state
    CHECK(res.iterations == 10);
}
