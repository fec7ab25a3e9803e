#include <doctest.h>

#include <cmath>

#include "j1j2/lattice.hpp"
#include "j1j2/pauli.hpp"
#include "test_helpers.hpp"

using namespace j1j2;
using testutil::dense_from_letters;
using testutil::dense_from_sum;

TEST_CASE("single-qubit products carry the right phase") {
    auto x = PauliString::from_letters("X");
    auto y = PauliString::from_letters("Y");
    auto z = PauliString::from_letters("Z");

    auto xy = multiply(x, y); // X*Y = iZ
    CHECK(xy.letters() == "Z");
    CHECK(xy.coefficient().real() == doctest::Approx(0.0));
    CHECK(xy.coefficient().imag() == doctest::Approx(1.0));

    auto zz = multiply(z, z);
    CHECK(zz.letters() == "I");
    CHECK(zz.coefficient().real() == doctest::Approx(1.0));

    CHECK_THROWS(multiply(x, PauliString::from_letters("XX")));
}

TEST_CASE("two-qubit product matches the dense oracle") {
    auto a = PauliString::from_letters("XZ", 1.0);
    auto b = PauliString::from_letters("ZX", 1.0);
    auto ab = multiply(a, b);
    auto dense = testutil::Mat(dense_from_letters("XZ") * dense_from_letters("ZX"));
    auto got = dense_from_letters(ab.letters(), ab.coefficient());
    CHECK((dense - got).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("product of random strings matches the dense oracle on 3 qubits") {
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::string la, lb;
        for (int q = 0; q < 3; ++q) {
            la += letters[rng() % 4];
            lb += letters[rng() % 4];
        }
        auto ab = multiply(PauliString::from_letters(la), PauliString::from_letters(lb));
        auto dense = testutil::Mat(dense_from_letters(la) * dense_from_letters(lb));
        auto got = dense_from_letters(ab.letters(), ab.coefficient());
        CHECK((dense - got).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(std::abs(ab.coefficient()) == doctest::Approx(1.0));
    }
}

TEST_CASE("associativity and coefficient magnitudes") {
    auto a = PauliString::from_letters("XY", {0.0, 2.0});
    auto b = PauliString::from_letters("YZ", {1.5, 0.0});
    auto c = PauliString::from_letters("ZZ", {0.0, -1.0});
    auto left = multiply(multiply(a, b), c);
    auto right = multiply(a, multiply(b, c));
    CHECK(left.letters() == right.letters());
    CHECK(std::abs(left.coefficient() - right.coefficient()) < 1e-14);
    CHECK(std::abs(left.coefficient()) ==
          doctest::Approx(std::abs(a.coefficient()) * std::abs(b.coefficient()) *
                          std::abs(c.coefficient())));
}

TEST_CASE("powers of simple sums") {
    PauliSum z0(1);
    z0.add("Z", 1.0);
    auto sq = z0.power(2);
    REQUIRE(sq.size() == 1);
    CHECK(sq.sorted_terms()[0].letters() == "I");
    CHECK(sq.sorted_terms()[0].coefficient().real() == doctest::Approx(1.0));

    PauliSum xz(1);
    xz.add("X", 1.0);
    xz.add("Z", 1.0);
    auto xz2 = xz.power(2); // XZ + ZX cancel, X^2 + Z^2 = 2I
    REQUIRE(xz2.size() == 1);
    CHECK(xz2.sorted_terms()[0].letters() == "I");
    CHECK(xz2.sorted_terms()[0].coefficient().real() == doctest::Approx(2.0));

    CHECK_THROWS(z0.power(5));
    CHECK_THROWS(z0.power(0));
}

TEST_CASE("3x3 Hamiltonian power term counts") {
    LatticeSpec spec{3, 3, true};
    CouplingConfig coupling;
    coupling.j2 = 0.5;
    PauliSum h = build_hamiltonian(spec, coupling);
    CHECK(h.size() == 108);
    CHECK(h.power(2).size() == 2755);
    CHECK(h.power(3).size() == 18127);
    CHECK(h.power(4).size() == 32896);
}

TEST_CASE("power respects the term budget") {
    LatticeSpec spec{3, 3, true};
    CouplingConfig coupling;
    coupling.j2 = 0.5;
    PauliSum h = build_hamiltonian(spec, coupling);
    CHECK_THROWS_WITH_AS(h.power(3, 10'000), doctest::Contains("10000"), std::runtime_error);
}

TEST_CASE("power equals expanded multiply term-for-term") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig coupling;
    coupling.j2 = 0.7;
    PauliSum h = build_hamiltonian(spec, coupling);
    auto a = h.power(2);
    auto b = multiply(h, h);
    CHECK(a.size() == b.size());
    auto ta = a.sorted_terms(), tb = b.sorted_terms();
    for (std::size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].letters() == tb[i].letters());
        CHECK(std::abs(ta[i].coefficient() - tb[i].coefficient()) < 1e-12);
    }
}

TEST_CASE("apply basics") {
    auto psi = Statevector::basis(2, 0b00);
    PauliSum id(2);
    id.add("II", 1.0);
    auto same = id.apply(psi);
    CHECK(std::abs(same.amp[0] - 1.0) < 1e-15);

    auto x0 = PauliString::single(2, 'X', 0);
    auto flipped = x0.apply(psi);
    CHECK(std::abs(flipped.amp[0b01] - 1.0) < 1e-15); // qubit-0 flip, little-endian
}

TEST_CASE("apply matches the dense oracle on a 4-site Hamiltonian") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig coupling;
    coupling.j2 = 0.31;
    PauliSum h = build_hamiltonian(spec, coupling);
    auto psi = Statevector::random(4, 42);
    auto fast = h.apply(psi);
    testutil::Vec dense = dense_from_sum(h) * testutil::to_eigen(psi);
    for (std::size_t i = 0; i < fast.dim(); ++i)
        CHECK(std::abs(fast.amp[i] - dense[static_cast<Eigen::Index>(i)]) < 1e-12);
}

TEST_CASE("apply is linear and norm-preserving for unit-coefficient strings") {
    auto p = PauliString::from_letters("XYZ");
    auto psi = Statevector::random(3, 5);
    CHECK(p.apply(psi).norm() == doctest::Approx(1.0).epsilon(1e-12));

    auto phi = Statevector::random(3, 6);
    Statevector combo(3);
    for (std::size_t i = 0; i < combo.dim(); ++i)
        combo.amp[i] = 0.3 * psi.amp[i] + cdouble(0, 0.4) * phi.amp[i];
    auto lhs = p.apply(combo);
    auto rp = p.apply(psi), rq = p.apply(phi);
    for (std::size_t i = 0; i < combo.dim(); ++i)
        CHECK(std::abs(lhs.amp[i] - (0.3 * rp.amp[i] + cdouble(0, 0.4) * rq.amp[i])) < 1e-13);
}

TEST_CASE("expectation basics") {
    auto zero3 = Statevector::basis(3, 0);
    for (std::size_t q = 0; q < 3; ++q) {
        PauliSum z(3);
        z.add(PauliString::single(3, 'Z', q));
        CHECK(z.expectation(zero3) == doctest::Approx(1.0));
    }

    // singlet of a 2-site Heisenberg bond, half convention
    Statevector singlet(2);
    singlet.amp[0b01] = 1.0 / std::sqrt(2.0);
    singlet.amp[0b10] = -1.0 / std::sqrt(2.0);
    auto bond = bond_operator(2, 0, 1, 0.25);
    CHECK(bond.expectation(singlet) == doctest::Approx(-0.75));

    PauliSum skew(1);
    skew.add("X", cdouble(0, 1));
    CHECK_THROWS(skew.expectation(Statevector::basis(1, 0)));
}

TEST_CASE("expectation respects the variational bound on small instances") {
    LatticeSpec spec{2, 2, true};
    CouplingConfig coupling;
    coupling.j2 = 0.5;
    PauliSum h = build_hamiltonian(spec, coupling);
    Eigen::SelfAdjointEigenSolver<testutil::Mat> es(dense_from_sum(h));
    const double lambda_min = es.eigenvalues().minCoeff();
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto psi = Statevector::random(4, seed);
        CHECK(h.expectation(psi) >= lambda_min - 1e-10);
    }
}

TEST_CASE("multiply distributes over addition") {
    PauliSum a(2), b(2), c(2);
    a.add("XI", 0.5);
    a.add("ZY", cdouble(0, -0.25));
    b.add("YI", 1.0);
    b.add("IZ", -0.75);
    c.add("ZZ", 0.3);
    PauliSum bc = b;
    bc += c;
    auto lhs = multiply(a, bc);
    PauliSum rhs = multiply(a, b);
    rhs += multiply(a, c);
    auto tl = lhs.sorted_terms(), tr = rhs.sorted_terms();
    REQUIRE(tl.size() == tr.size());
    for (std::size_t i = 0; i < tl.size(); ++i) {
        CHECK(tl[i].letters() == tr[i].letters());
        CHECK(std::abs(tl[i].coefficient() - tr[i].coefficient()) < 1e-14);
    }
}

TEST_CASE("hermiticity and adjoint") {
    PauliSum h(2);
    h.add("XY", 0.5);
    CHECK(h.is_hermitian());
    h.add("ZI", cdouble(0, 0.1));
    CHECK(!h.is_hermitian());

    auto dense = dense_from_sum(h);
    auto adj = dense_from_sum(h.adjoint());
    CHECK((adj - testutil::Mat(dense.adjoint())).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("text round trip") {
    PauliSum h(4);
    h.add("XXII", 0.25);
    h.add("IZZI", -1.5);
    auto text = h.to_text();
    CHECK(text.find("XXII") != std::string::npos);
    auto back = PauliSum::from_text(text, 4);
    CHECK(back.size() == h.size());
    auto ta = h.sorted_terms(), tb = back.sorted_terms();
    for (std::size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].letters() == tb[i].letters());
        CHECK(std::abs(ta[i].coefficient() - tb[i].coefficient()) < 1e-15);
    }
}
