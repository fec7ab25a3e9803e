#include <doctest.h>

#include <cmath>

#include "j1j2/lattice.hpp"
#include "j1j2/simulator.hpp"
#include "test_helpers.hpp"

using namespace j1j2;

namespace {

Circuit singlet_circuit() {
    Circuit c(2);
    c.push(GateKind::X, 1);
    c.push(GateKind::H, 0);
    c.push2(GateKind::CX, 0, 1);
    c.push(GateKind::RZ, 0, M_PI);
    return c;
}

PauliSum heisenberg_bond() { return bond_operator(2, 0, 1, 0.25); }

// Exact density-matrix evolution of the Pauli-twirl channel, the reference
// for the stochastic trajectories on tiny systems.
testutil::Mat dm_after_twirl(const testutil::Mat& rho, const std::vector<std::string>& paulis,
                             double p) {
    testutil::Mat out = (1.0 - p) * rho;
    for (const auto& s : paulis) {
        auto pm = testutil::dense_from_letters(s);
        out += (p / static_cast<double>(paulis.size())) * pm * rho * pm.adjoint();
    }
    return out;
}

} // namespace

TEST_CASE("run basics") {
    auto psi0 = Statevector::random(3, 11);
    Circuit empty(3);
    auto same = run(empty, psi0);
    for (std::size_t i = 0; i < psi0.dim(); ++i) CHECK(std::abs(same.amp[i] - psi0.amp[i]) == 0.0);

    Circuit h1(1);
    h1.push(GateKind::H, 0);
    auto plus = run_from_zero(h1);
    CHECK(std::abs(plus.amp[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(plus.amp[1] - 1.0 / std::sqrt(2.0)) < 1e-15);

    Circuit rx(1);
    rx.push(GateKind::RX, 0, M_PI);
    auto minus_i_one = run_from_zero(rx);
    CHECK(std::abs(minus_i_one.amp[0]) < 1e-15);
    CHECK(std::abs(minus_i_one.amp[1] - cdouble(0, -1)) < 1e-15);
}

TEST_CASE("unbound parameters are rejected") {
    Circuit c(1);
    c.push_param(GateKind::RX, 0, 0);
    CHECK_THROWS(run_from_zero(c));
    double theta = M_PI / 3;
    auto bound = c.bind(std::span(&theta, 1));
    CHECK_NOTHROW(run_from_zero(bound));
}

TEST_CASE("every gate preserves the norm") {
    Circuit c(3);
    c.push(GateKind::H, 0);
    c.push(GateKind::RX, 1, 0.7);
    c.push(GateKind::RY, 2, -1.2);
    c.push(GateKind::RZ, 0, 2.1);
    c.push_u(1, 0.4, 1.9);
    c.push2(GateKind::CX, 0, 1);
    c.push2(GateKind::CZ, 1, 2);
    c.push2(GateKind::ZZ, 0, 2, 0.851);
    c.push2(GateKind::XY, 1, 2, 1.3);
    c.push(GateKind::X, 0);
    auto psi = Statevector::random(3, 3);
    for (std::size_t k = 1; k <= c.size(); ++k) {
        Circuit prefix(3);
        for (std::size_t i = 0; i < k; ++i) {
            Circuit one(3);
            // replay gate-by-gate through the public API
            prefix = Circuit(3);
            for (std::size_t j = 0; j <= i; ++j) {
                const Gate& g = c.gates()[j];
                if (g.q1 >= 0)
                    prefix.push2(g.kind, g.q0, g.q1, g.p0);
                else if (g.kind == GateKind::U)
                    prefix.push_u(g.q0, g.p0, g.p1);
                else
                    prefix.push(g.kind, g.q0, g.p0);
            }
        }
        CHECK(run(prefix, psi).norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("gate matrices match their dense definitions") {
    // U(theta, phi)|0> = cos(theta)|0> + e^{i phi} sin(theta)|1>
    Circuit c(1);
    c.push_u(0, 0.3, 1.1);
    auto psi = run_from_zero(c);
    CHECK(std::abs(psi.amp[0] - std::cos(0.3)) < 1e-14);
    CHECK(std::abs(psi.amp[1] - std::polar(std::sin(0.3), 1.1)) < 1e-14);

    // XY on the odd-parity block only
    Circuit xy(2);
    xy.push2(GateKind::XY, 0, 1, 0.9);
    auto kept = run(xy, Statevector::basis(2, 0b00));
    CHECK(std::abs(kept.amp[0] - 1.0) < 1e-14);
    auto rotated = run(xy, Statevector::basis(2, 0b01));
    CHECK(std::abs(rotated.amp[0b01] - std::cos(0.45)) < 1e-14);
    CHECK(std::abs(rotated.amp[0b10] - cdouble(0, -std::sin(0.45))) < 1e-14);

    // ZZ is diagonal with parity-dependent phases
    Circuit zz(2);
    zz.push2(GateKind::ZZ, 0, 1, 0.7);
    auto even = run(zz, Statevector::basis(2, 0b11));
    CHECK(std::abs(even.amp[0b11] - std::polar(1.0, -0.35)) < 1e-14);
    auto odd = run(zz, Statevector::basis(2, 0b01));
    CHECK(std::abs(odd.amp[0b01] - std::polar(1.0, 0.35)) < 1e-14);
}

TEST_CASE("circuit bookkeeping: depth, two-qubit count, json") {
    Circuit c(3);
    c.push(GateKind::H, 0);
    c.push(GateKind::H, 1);
    c.push2(GateKind::CX, 0, 1);
    c.push2(GateKind::CZ, 1, 2);
    CHECK(c.two_qubit_count() == 2);
    CHECK(c.depth() == 3); // H||H, CX, CZ
    auto js = c.to_json();
    CHECK(js.find("\"cx\"") != std::string::npos);
}

TEST_CASE("sample_counts basics and determinism") {
    auto zero = Statevector::basis(1, 0);
    auto h = sample_counts(zero, 100);
    REQUIRE(h.size() == 1);
    CHECK(h.at("0") == 100);

    Circuit bell(2);
    bell.push(GateKind::H, 0);
    bell.push2(GateKind::CX, 0, 1);
    auto psi = run_from_zero(bell);
    const uint64_t shots = 1'000'000;
    auto counts = sample_counts(psi, shots, std::nullopt, 99);
    REQUIRE(counts.size() == 2);
    const double sigma = std::sqrt(shots * 0.25);
    CHECK(std::abs(double(counts.at("00")) - shots / 2.0) < 5 * sigma);
    CHECK(counts.at("00") + counts.at("11") == shots);

    auto again = sample_counts(psi, shots, std::nullopt, 99);
    CHECK(again == counts);
    auto different = sample_counts(psi, shots, std::nullopt, 100);
    CHECK(different != counts);
}

TEST_CASE("readout flips follow the binomial rate") {
    NoiseModel noise;
    noise.readout_flip = 0.1;
    auto zero = Statevector::basis(1, 0);
    const uint64_t shots = 100'000;
    auto h = sample_counts(zero, shots, noise, 7);
    double freq = double(h.count("1") ? h.at("1") : 0) / double(shots);
    CHECK(freq == doctest::Approx(0.1).epsilon(0.05));
    CHECK(std::abs(freq - 0.1) < 0.005);
}

TEST_CASE("estimate_expectation: noiseless convergence") {
    Circuit plus(1);
    plus.push(GateKind::H, 0);
    PauliSum z(1);
    z.add("Z", 1.0);
    auto est = estimate_expectation(plus, z, 40'000, std::nullopt, 5);
    CHECK(std::abs(est.mean) < 4 * est.sigma + 1e-9);

    auto singlet = singlet_circuit();
    auto bond = heisenberg_bond();
    auto e = estimate_expectation(singlet, bond, 100'000, std::nullopt, 6);
    CHECK(e.mean == doctest::Approx(-0.75).epsilon(0.0134)); // within 0.01 absolute
    CHECK(std::abs(e.mean + 0.75) < 0.01);
}

TEST_CASE("estimate_expectation matches the density-matrix oracle under noise") {
    auto singlet = singlet_circuit();
    auto bond = heisenberg_bond();

    // exact channel value: twirl after the CX only (p1 = 0)
    const double p2 = 0.01;
    std::vector<std::string> paulis2;
    const char L[] = {'I', 'X', 'Y', 'Z'};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a || b) paulis2.push_back({L[a], L[b]});
    testutil::Vec ideal = testutil::to_eigen(run_from_zero(singlet));
    testutil::Mat rho = ideal * ideal.adjoint();
    rho = dm_after_twirl(rho, paulis2, p2);
    // the RZ after the CX is noise-free here and commutes with nothing we measure incorrectly:
    // twirl already applied after CX; RZ itself is unitary so conjugate rho.
    // (singlet_circuit applies RZ last; redo exactly)
    {
        Circuit pre(2);
        pre.push(GateKind::X, 1);
        pre.push(GateKind::H, 0);
        pre.push2(GateKind::CX, 0, 1);
        testutil::Vec v = testutil::to_eigen(run_from_zero(pre));
        rho = v * v.adjoint();
        rho = dm_after_twirl(rho, paulis2, p2);
        Circuit rz(2);
        rz.push(GateKind::RZ, 0, M_PI);
        testutil::Mat u = testutil::Mat::Zero(4, 4);
        for (int col = 0; col < 4; ++col) {
            auto basis = Statevector::basis(2, col);
            auto out = run(rz, basis);
            for (int row = 0; row < 4; ++row) u(row, col) = out.amp[row];
        }
        rho = u * rho * u.adjoint();
    }
    auto hmat = testutil::dense_from_sum(bond);
    const double exact_noisy = (hmat * rho).trace().real();
    CHECK(exact_noisy > -0.75);  // depolarizing contraction
    CHECK(exact_noisy < -0.70);

    NoiseModel noise;
    noise.p2 = p2;
    const uint64_t shots = 100'000;
    auto est = estimate_expectation(singlet, bond, shots, noise, 17, shots);
    CHECK(std::abs(est.mean - exact_noisy) < 0.01);
    CHECK(est.mean > -0.75); // magnitude strictly shrunk toward 0
}

TEST_CASE("fold structure and unitary identity") {
    Circuit c(2);
    for (int i = 0; i < 5; ++i) {
        c.push(GateKind::RX, i % 2, 0.1 * (i + 1));
        c.push2(GateKind::CX, 0, 1);
    }
    REQUIRE(c.size() == 10);

    auto same = fold(c, 1.0);
    CHECK(same.size() == 10);

    auto tripled = fold(c, 3.0);
    CHECK(tripled.size() == 30);

    auto half = fold(c, 1.5);
    CHECK(half.size() >= 14);
    CHECK(half.size() <= 16);

    auto base = run_from_zero(c);
    for (double lambda : {1.0, 1.25, 1.5, 1.75, 2.0, 3.0}) {
        auto folded = fold(c, lambda);
        CHECK(double(folded.size()) == doctest::Approx(lambda * 10).epsilon(0.11));
        auto out = run_from_zero(folded);
        CHECK(out.fidelity(base) >= 1.0 - 1e-10);
    }
    CHECK_THROWS(fold(c, 0.9));
}

TEST_CASE("noisy expectation magnitudes shrink monotonically with folding") {
    auto singlet = singlet_circuit();
    auto bond = heisenberg_bond();
    NoiseModel noise;
    noise.p1 = 0.002;
    noise.p2 = 0.01;

    std::vector<double> lambdas = {1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<double> values;
    const uint64_t shots = 100'000;
    for (double l : lambdas) {
        auto folded = fold(singlet, l);
        values.push_back(estimate_expectation(folded, bond, shots, noise, 23, shots).mean);
    }
    // Kendall tau between lambda and the (negative) energy: all pairs should
    // move toward zero. Critical value at 95% for n = 5 is 0.8.
    int concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            (values[j] > values[i] ? concordant : discordant)++;
    double tau = double(concordant - discordant) / 10.0;
    CHECK(tau >= 0.8);
}

TEST_CASE("trajectory determinism") {
    Circuit c(2);
    c.push(GateKind::H, 0);
    c.push2(GateKind::CX, 0, 1);
    NoiseModel noise;
    noise.p1 = 0.05;
    noise.p2 = 0.05;
    auto a = run_from_zero(c, noise, 1234);
    auto b = run_from_zero(c, noise, 1234);
    for (std::size_t i = 0; i < a.dim(); ++i) CHECK(a.amp[i] == b.amp[i]);

    auto ha = sample_counts(a, 5000, noise, 55);
    auto hb = sample_counts(b, 5000, noise, 55);
    CHECK(ha == hb);
}

TEST_CASE("qubit-wise commuting grouping covers all terms") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig coupling;
    coupling.j2 = 0.5;
    auto h = build_hamiltonian(spec, coupling);
    auto groups = group_qubitwise(h);
    std::size_t total = 0;
    for (const auto& g : groups) {
        total += g.size();
        // within a group, letters agree wherever both are non-identity
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = a + 1; b < g.size(); ++b) {
                auto la = g[a].letters(), lb = g[b].letters();
                for (std::size_t q = 0; q < la.size(); ++q)
                    if (la[q] != 'I' && lb[q] != 'I') CHECK(la[q] == lb[q]);
            }
    }
    CHECK(total == h.size());
    CHECK(groups.size() < h.size()); // grouping actually merges bases
}
