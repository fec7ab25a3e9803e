#include "j1j2/krylov.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace j1j2 {

NormalizedHamiltonian NormalizedHamiltonian::from(const PauliSum& h) {
    if (!h.is_hermitian()) throw std::invalid_argument("Hamiltonian must be Hermitian");
    const double norm = h.one_norm();
    if (norm == 0.0) throw std::invalid_argument("empty Hamiltonian");
    NormalizedHamiltonian hn;
    hn.alpha = h * (1.0 / norm);
    hn.scale = norm;
    return hn;
}

std::vector<double> chebyshev_moments_matfree(const NormalizedHamiltonian& hn,
                                              const Statevector& psi0, std::size_t kmax,
                                              std::vector<Statevector>* basis_out,
                                              std::size_t basis_count) {
    std::vector<double> moments;
    moments.reserve(kmax + 1);
    auto record = [&](const Statevector& tk, std::size_t k) {
        cdouble m = psi0.inner(tk);
        if (std::abs(m.imag()) > 1e-9)
            throw std::runtime_error("Chebyshev moment has an imaginary residue");
        moments.push_back(m.real());
        if (basis_out && k < basis_count) basis_out->push_back(tk);
    };

    Statevector prev = psi0;
    record(prev, 0);
    if (kmax == 0) return moments;
    Statevector curr = hn.apply(psi0);
    record(curr, 1);
    for (std::size_t k = 2; k <= kmax; ++k) {
        Statevector next = hn.apply(curr);
        for (std::size_t s = 0; s < next.dim(); ++s)
            next.amp[s] = 2.0 * next.amp[s] - prev.amp[s];
        prev = std::move(curr);
        curr = std::move(next);
        record(curr, k);
    }
    return moments;
}

WalkRegister build_walk(const NormalizedHamiltonian& hn) {
    WalkRegister w;
    w.n_system = hn.alpha.n_qubits();
    auto terms = hn.alpha.sorted_terms();
    const std::size_t t_count = terms.size();
    if (t_count == 0) throw std::invalid_argument("empty Hamiltonian");
    std::size_t a = 0;
    while ((std::size_t{1} << a) < t_count) ++a;
    w.n_ancilla = a;
    if (w.n_total() > 24) throw std::invalid_argument("walk register exceeds 24 qubits");

    const std::size_t adim = std::size_t{1} << a;
    Eigen::VectorXd g0 = Eigen::VectorXd::Zero(adim);
    for (std::size_t i = 0; i < t_count; ++i) {
        const cdouble c = terms[i].coefficient();
        if (std::abs(c.imag()) > 1e-12)
            throw std::invalid_argument("walk construction needs real coefficients");
        w.signs.push_back(c.real() < 0 ? -1.0 : 1.0);
        g0[i] = std::sqrt(std::abs(c.real()));
        w.terms.push_back(PauliString(w.n_system, terms[i].x_mask(), terms[i].z_mask(), 1.0));
    }
    // Householder completion: an orthogonal G with G e0 = g0
    Eigen::VectorXd u = g0 - Eigen::VectorXd::Unit(adim, 0);
    const double unorm = u.norm();
    if (unorm < 1e-14) {
        w.g = Eigen::MatrixXd::Identity(adim, adim);
    } else {
        w.g = Eigen::MatrixXd::Identity(adim, adim) - (2.0 / (unorm * unorm)) * (u * u.transpose());
    }
    return w;
}

Statevector walk_initial_state(const WalkRegister& w, const Statevector& psi0) {
    if (psi0.n != w.n_system) throw std::invalid_argument("system size mismatch");
    const std::size_t sdim = psi0.dim();
    const std::size_t adim = std::size_t{1} << w.n_ancilla;
    Statevector out(w.n_total());
    for (std::size_t anc = 0; anc < adim; ++anc) {
        const double ga = w.g(anc, 0);
        if (ga == 0.0) continue;
        for (std::size_t s = 0; s < sdim; ++s) out.amp[(anc << psi0.n) | s] = ga * psi0.amp[s];
    }
    return out;
}

Statevector walk_apply_select(const WalkRegister& w, const Statevector& psi) {
    if (psi.n != w.n_total()) throw std::invalid_argument("register size mismatch");
    const std::size_t sdim = std::size_t{1} << w.n_system;
    const std::size_t adim = std::size_t{1} << w.n_ancilla;
    Statevector out(psi.n);
    Statevector slice(w.n_system), res(w.n_system);
    for (std::size_t anc = 0; anc < adim; ++anc) {
        const std::size_t base = anc << w.n_system;
        if (anc < w.terms.size()) {
            for (std::size_t s = 0; s < sdim; ++s) slice.amp[s] = psi.amp[base | s];
            std::fill(res.amp.begin(), res.amp.end(), cdouble(0));
            w.terms[anc].apply_add(slice, res);
            const double sg = w.signs[anc];
            for (std::size_t s = 0; s < sdim; ++s) out.amp[base | s] = sg * res.amp[s];
        } else {
            for (std::size_t s = 0; s < sdim; ++s) out.amp[base | s] = psi.amp[base | s];
        }
    }
    return out;
}

Statevector walk_apply_reflection(const WalkRegister& w, const Statevector& psi) {
    if (psi.n != w.n_total()) throw std::invalid_argument("register size mismatch");
    const std::size_t sdim = std::size_t{1} << w.n_system;
    const std::size_t adim = std::size_t{1} << w.n_ancilla;
    Statevector out(psi.n);
    // per system index: v -> 2 <g0|v> g0 - v over the ancilla register
    for (std::size_t s = 0; s < sdim; ++s) {
        cdouble overlap = 0.0;
        for (std::size_t anc = 0; anc < adim; ++anc)
            overlap += w.g(anc, 0) * psi.amp[(anc << w.n_system) | s];
        overlap *= 2.0;
        for (std::size_t anc = 0; anc < adim; ++anc) {
            const std::size_t idx = (anc << w.n_system) | s;
            out.amp[idx] = overlap * w.g(anc, 0) - psi.amp[idx];
        }
    }
    return out;
}

namespace {

double hermitian_expectation(const Statevector& psi, const Statevector& opsi) {
    cdouble v = psi.inner(opsi);
    if (std::abs(v.imag()) > 1e-9)
        throw std::runtime_error("walk expectation has an imaginary residue");
    return v.real();
}

// Hadamard-test sample of a (+-1)-valued observable expectation.
double hadamard_test_sample(double exact, uint64_t shots, std::mt19937_64& rng) {
    std::binomial_distribution<uint64_t> binom(shots, std::clamp(0.5 * (1.0 + exact), 0.0, 1.0));
    const uint64_t plus = binom(rng);
    return 2.0 * static_cast<double>(plus) / static_cast<double>(shots) - 1.0;
}

} // namespace

std::vector<double> chebyshev_moments_walk(const WalkRegister& w, const Statevector& psi0,
                                           std::size_t kmax, uint64_t shots, uint64_t seed) {
    std::vector<double> moments(kmax + 1, 0.0);
    std::mt19937_64 rng(seed);
    Statevector psi = walk_initial_state(w, psi0);
    for (std::size_t m = 0; 2 * m <= kmax; ++m) {
        Statevector rpsi = walk_apply_reflection(w, psi);
        double even = hermitian_expectation(psi, rpsi);
        Statevector upsi = walk_apply_select(w, psi);
        double odd = hermitian_expectation(psi, upsi);
        if (shots > 0) {
            even = hadamard_test_sample(even, shots, rng);
            odd = hadamard_test_sample(odd, shots, rng);
        }
        moments[2 * m] = even;
        if (2 * m + 1 <= kmax) moments[2 * m + 1] = odd;
        if (2 * m + 2 <= kmax) {
            // advance |psi_{m+1}> = R U |psi_m>
            psi = walk_apply_reflection(w, upsi);
        }
    }
    return moments;
}

KrylovMatrices assemble(const std::vector<double>& moments, std::size_t d) {
    if (moments.size() < 2 * d)
        throw std::invalid_argument("need at least 2d moments to assemble d Krylov vectors");
    KrylovMatrices km;
    km.d = d;
    km.basis_kind = KrylovBasis::Chebyshev;
    km.sk.resize(d, d);
    km.hk.resize(d, d);
    auto m = [&](std::size_t k) { return moments[k]; };
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const long li = static_cast<long>(i), lj = static_cast<long>(j);
            km.sk(i, j) = 0.5 * (m(i + j) + m(std::labs(li - lj)));
            km.hk(i, j) = 0.25 * (m(i + j + 1) + m(std::labs(li + lj - 1)) +
                                  m(std::labs(li - lj + 1)) + m(std::labs(li - lj - 1)));
        }
    }
    return km;
}

GevpResult solve_gevp(const KrylovMatrices& km, double scale, double eps_cap) {
    const Eigen::Index d = km.sk.rows();
    if (km.sk.cols() != d || km.hk.rows() != d || km.hk.cols() != d)
        throw std::invalid_argument("Krylov matrices must be square and consistent");
    // symmetrize defensively against fp roundoff
    Eigen::MatrixXcd s = 0.5 * (km.sk + km.sk.adjoint());
    Eigen::MatrixXcd h = 0.5 * (km.hk + km.hk.adjoint());

    std::vector<double> ladder = {1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-3};
    if (eps_cap > ladder.back()) ladder.push_back(eps_cap);
    for (double eps : ladder) {
        if (eps > eps_cap && eps != ladder.back()) continue;
        Eigen::MatrixXcd sp = s + eps * Eigen::MatrixXcd::Identity(d, d);
        Eigen::LLT<Eigen::MatrixXcd> llt(sp);
        if (llt.info() != Eigen::Success) continue;
        Eigen::MatrixXcd l = llt.matrixL();
        Eigen::MatrixXcd a =
            l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd(h)).eval();
        a = l.triangularView<Eigen::Lower>()
                .solve(Eigen::MatrixXcd(a.adjoint()))
                .eval()
                .adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (a + a.adjoint()));
        if (es.info() != Eigen::Success) continue;
        GevpResult out;
        out.lambda0 = es.eigenvalues()[0] * scale;
        Eigen::VectorXcd y = es.eigenvectors().col(0);
        out.coeffs = l.adjoint().triangularView<Eigen::Upper>().solve(y);
        out.epsilon_used = eps;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ses(sp);
        out.s_condition = ses.eigenvalues()[d - 1] / std::max(1e-300, ses.eigenvalues()[0]);
        return out;
    }
    throw std::runtime_error("overlap matrix not positive definite below the epsilon cap");
}

Statevector krylov_ground_vector(const std::vector<Statevector>& basis,
                                 const Eigen::VectorXcd& coeffs) {
    if (basis.empty() || static_cast<std::size_t>(coeffs.size()) != basis.size())
        throw std::invalid_argument("coefficient/basis size mismatch");
    Statevector out(basis[0].n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const cdouble c = coeffs[static_cast<Eigen::Index>(k)];
        for (std::size_t s = 0; s < out.dim(); ++s) out.amp[s] += c * basis[k].amp[s];
    }
    const double nrm = out.norm();
    if (nrm < 1e-8)
        throw std::runtime_error("Krylov combination is numerically null (norm " +
                                 std::to_string(nrm) + "); coefficients are ill-conditioned");
    for (auto& a : out.amp) a /= nrm;
    return out;
}

double krylov_observable(const Statevector& state, const PauliSum& obs) {
    return obs.expectation(state);
}

Statevector evolve(const PauliSum& h, const Statevector& psi, double t) {
    // Chebyshev expansion: e^{-i t H} = sum_k (2 - delta_k0)(-i)^k J_k(theta) T_k(H_n)
    // with theta = t * scale.
    NormalizedHamiltonian hn = NormalizedHamiltonian::from(h);
    const double theta = t * hn.scale;
    Statevector out(psi.n);
    Statevector prev = psi;
    Statevector curr = hn.apply(psi);

    auto axpy = [](Statevector& acc, cdouble c, const Statevector& v) {
        for (std::size_t s = 0; s < acc.dim(); ++s) acc.amp[s] += c * v.amp[s];
    };
    const std::size_t kmax = static_cast<std::size_t>(std::abs(theta)) + 48;
    axpy(out, std::cyl_bessel_j(0, std::abs(theta)), prev);
    for (std::size_t k = 1; k <= kmax; ++k) {
        double jk = std::cyl_bessel_j(static_cast<double>(k), std::abs(theta));
        cdouble phase;
        switch (k % 4) { // (-i)^k for theta > 0, (+i)^k for theta < 0
            case 0: phase = 1.0; break;
            case 1: phase = cdouble(0, -1); break;
            case 2: phase = -1.0; break;
            default: phase = cdouble(0, 1); break;
        }
        if (theta < 0 && (k % 2)) phase = -phase;
        axpy(out, 2.0 * jk * phase, curr);
        if (k == kmax) break;
        Statevector next = hn.apply(curr);
        for (std::size_t s = 0; s < next.dim(); ++s)
            next.amp[s] = 2.0 * next.amp[s] - prev.amp[s];
        prev = std::move(curr);
        curr = std::move(next);
    }
    const double nrm = out.norm();
    if (std::abs(nrm - 1.0) > 1e-9)
        throw std::runtime_error("propagator truncation error too large (norm " +
                                 std::to_string(nrm) + ")");
    for (auto& a : out.amp) a /= nrm;
    return out;
}

RealtimeKrylov realtime_krylov(const PauliSum& h, const Statevector& psi0, double dt,
                               std::size_t d, uint64_t shots, uint64_t seed) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    RealtimeKrylov out;
    out.basis.reserve(d);
    out.basis.push_back(psi0);
    for (std::size_t k = 1; k < d; ++k) out.basis.push_back(evolve(h, out.basis.back(), dt));

    const double scale = h.one_norm();
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto sampled = [&](cdouble exact, double magnitude) {
        if (shots == 0) return exact;
        // separate Hadamard tests for the real and imaginary components,
        // each a (+-1)-valued observable after normalization by `magnitude`
        const double re = hadamard_test_sample(
            std::clamp(exact.real() / magnitude, -1.0, 1.0), shots, rng);
        const double im = hadamard_test_sample(
            std::clamp(exact.imag() / magnitude, -1.0, 1.0), shots, rng);
        return cdouble(re, im) * magnitude;
    };

    out.matrices.d = d;
    out.matrices.basis_kind = KrylovBasis::Realtime;
    out.matrices.sk.resize(d, d);
    out.matrices.hk.resize(d, d);
    std::vector<Statevector> hphi;
    hphi.reserve(d);
    for (std::size_t k = 0; k < d; ++k) hphi.push_back(h.apply(out.basis[k]));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            cdouble s = out.basis[i].inner(out.basis[j]);
            cdouble hh = out.basis[i].inner(hphi[j]);
            if (i != j) {
                s = sampled(s, 1.0);
                hh = sampled(hh, scale);
            } else {
                hh = cdouble(sampled(hh, scale).real(), 0.0);
            }
            out.matrices.sk(i, j) = s;
            out.matrices.sk(j, i) = std::conj(s);
            out.matrices.hk(i, j) = hh;
            out.matrices.hk(j, i) = std::conj(hh);
        }
    }
    return out;
}

} // namespace j1j2
