#include "j1j2/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

namespace j1j2 {

namespace {

// Among near-degenerate candidates pick the combination with maximal
// Sz ~ 0 weight: dominant eigenvector of the projected Gram matrix.
Statevector symmetric_sector_representative(const std::vector<Statevector>& basis) {
    const int n = static_cast<int>(basis[0].n);
    const std::size_t dim = basis[0].dim();
    const std::size_t d = basis.size();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t s = 0; s < dim; ++s) {
        int m = 2 * std::popcount(s) - n;
        if (std::abs(m) > 1) continue;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                gram(a, b) += std::conj(basis[a].amp[s]) * basis[b].amp[s];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    Eigen::VectorXcd c = es.eigenvectors().col(d - 1);
    Statevector out(basis[0].n);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t s = 0; s < dim; ++s) out.amp[s] += c[a] * basis[a].amp[s];
    out.normalize();
    return out;
}

} // namespace

GroundSolution ground_state_dense(const PauliSum& h) {
    if (!h.is_hermitian()) throw std::invalid_argument("ground_state requires a Hermitian sum");
    const std::size_t n = h.n_qubits();
    if (n > 12) throw std::invalid_argument("dense mode supports at most 12 qubits");
    const std::size_t dim = std::size_t{1} << n;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& term : h.sorted_terms()) {
        const uint64_t x = term.x_mask(), z = term.z_mask();
        const cdouble c = term.coefficient() *
                          (std::popcount(x & z) % 4 == 1   ? cdouble(0, 1)
                           : std::popcount(x & z) % 4 == 2 ? cdouble(-1, 0)
                           : std::popcount(x & z) % 4 == 3 ? cdouble(0, -1)
                                                           : cdouble(1, 0));
        for (std::size_t s = 0; s < dim; ++s) {
            double sign = (std::popcount(z & s) & 1) ? -1.0 : 1.0;
            m(s ^ x, s) += c * sign;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    GroundSolution sol;
    sol.energy = es.eigenvalues()[0];
    sol.gap = es.eigenvalues()[1] - es.eigenvalues()[0];
    sol.degeneracy_flag = sol.gap < kDegeneracyTol;

    std::vector<Statevector> candidates;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        if (es.eigenvalues()[k] - sol.energy > kDegeneracyTol && k > 0) break;
        Statevector v(n);
        for (std::size_t s = 0; s < dim; ++s) v.amp[s] = es.eigenvectors()(s, k);
        candidates.push_back(std::move(v));
    }
    sol.state = candidates.size() == 1 ? std::move(candidates[0])
                                       : symmetric_sector_representative(candidates);
    Eigen::VectorXcd v(dim);
    for (std::size_t s = 0; s < dim; ++s) v[s] = sol.state.amp[s];
    sol.residual = (m * v - sol.energy * v).norm();
    return sol;
}

namespace {

struct LanczosResult {
    double energy = 0.0;
    Statevector state;
    std::size_t iterations = 0;
    bool converged = false;
};

// One Lanczos pass with full (two-sweep) reorthogonalization. Vectors in
// `deflate` are projected out at every step, so the pass solves in their
// orthogonal complement.
LanczosResult lanczos_lowest(const ApplyFn& apply, std::size_t n_qubits, double tol,
                             std::size_t max_iters, uint64_t seed,
                             const std::vector<const Statevector*>& deflate) {
    std::vector<Statevector> basis;
    std::vector<double> alpha, beta;
    {
        Statevector v0 = Statevector::random(n_qubits, seed);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto* d : deflate) {
                cdouble ov = d->inner(v0);
                for (std::size_t s = 0; s < v0.dim(); ++s) v0.amp[s] -= ov * d->amp[s];
            }
        v0.normalize();
        basis.push_back(std::move(v0));
    }

    Eigen::VectorXd ritz_vec;
    double theta0 = 0.0;
    std::size_t iters = 0;
    for (std::size_t it = 0; it < max_iters; ++it) {
        iters = it + 1;
        Statevector w = apply(basis.back());
        alpha.push_back(basis.back().inner(w).real());
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto* d : deflate) {
                cdouble ov = d->inner(w);
                for (std::size_t s = 0; s < w.dim(); ++s) w.amp[s] -= ov * d->amp[s];
            }
            for (const auto& v : basis) {
                cdouble ov = v.inner(w);
                for (std::size_t s = 0; s < w.dim(); ++s) w.amp[s] -= ov * v.amp[s];
            }
        }
        const double b = w.norm();

        const std::size_t m = alpha.size();
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        theta0 = es.eigenvalues()[0];
        ritz_vec = es.eigenvectors().col(0);

        const double residual_est = b * std::abs(ritz_vec[m - 1]);
        if ((residual_est < 0.1 * tol && m > 2) || b < 1e-14 || it + 1 == max_iters) break;

        beta.push_back(b);
        for (auto& ampl : w.amp) ampl /= b;
        basis.push_back(std::move(w));
    }

    LanczosResult out;
    out.energy = theta0;
    out.iterations = iters;
    Statevector x(n_qubits);
    for (std::size_t k = 0; k < alpha.size() && k < basis.size(); ++k)
        for (std::size_t s = 0; s < x.dim(); ++s) x.amp[s] += ritz_vec[k] * basis[k].amp[s];
    x.normalize();
    Statevector hx = apply(x);
    double r = 0.0;
    for (std::size_t s = 0; s < hx.dim(); ++s) r += std::norm(hx.amp[s] - theta0 * x.amp[s]);
    out.converged = std::sqrt(r) < tol;
    out.state = std::move(x);
    return out;
}

} // namespace

GroundSolution ground_state_lanczos(const ApplyFn& apply, std::size_t n_qubits, double h_norm,
                                    std::size_t max_iters) {
    if (n_qubits > 16) throw std::invalid_argument("iterative mode supports at most 16 qubits");
    const double tol = 1e-8 * std::max(1.0, h_norm);

    auto first = lanczos_lowest(apply, n_qubits, tol, max_iters, 0x5eed0001, {});
    if (!first.converged)
        throw std::runtime_error("Lanczos failed to converge after " +
                                 std::to_string(first.iterations) + " iterations");
    // deflated pass in the orthogonal complement gives the true E1 even when
    // the ground level is multiple (a single Krylov pass cannot see that)
    auto second =
        lanczos_lowest(apply, n_qubits, tol, max_iters, 0x5eed0002, {&first.state});

    GroundSolution sol;
    sol.iterations = first.iterations + second.iterations;
    sol.energy = first.energy;
    sol.gap = second.energy - first.energy;
    sol.degeneracy_flag = sol.gap < kDegeneracyTol;
    Statevector x = first.state;
    if (sol.degeneracy_flag) x = symmetric_sector_representative({first.state, second.state});

    Statevector hx = apply(x);
    double r = 0.0;
    for (std::size_t s = 0; s < hx.dim(); ++s) r += std::norm(hx.amp[s] - sol.energy * x.amp[s]);
    sol.residual = std::sqrt(r);
    if (sol.residual > tol)
        throw std::runtime_error("Lanczos residual " + std::to_string(sol.residual) +
                                 " exceeds tolerance after " + std::to_string(sol.iterations) +
                                 " iterations");
    sol.state = std::move(x);
    // keep the dominant amplitude's phase real and positive for determinism
    std::size_t imax = 0;
    for (std::size_t s = 1; s < sol.state.dim(); ++s)
        if (std::norm(sol.state.amp[s]) > std::norm(sol.state.amp[imax])) imax = s;
    cdouble phase = sol.state.amp[imax] / std::abs(sol.state.amp[imax]);
    for (auto& a : sol.state.amp) a /= phase;
    return sol;
}

GroundSolution ground_state(const PauliSum& h) {
    if (!h.is_hermitian()) throw std::invalid_argument("ground_state requires a Hermitian sum");
    if (h.n_qubits() <= 8) return ground_state_dense(h);
    return ground_state_lanczos([&h](const Statevector& v) { return h.apply(v); }, h.n_qubits(),
                                h.one_norm());
}

GroundSolution ground_state(const LatticeSpec& spec, const CouplingConfig& coupling) {
    auto bonds = WeightedBonds::from(spec, coupling);
    double norm = 0.0;
    for (double w : bonds.w) norm += 3.0 * std::abs(w);
    return ground_state_lanczos(
        [&bonds](const Statevector& v) { return heisenberg_apply(bonds, v); }, spec.sites(),
        norm);
}

ObservableSet exact_observables(const GroundSolution& sol, const LatticeSpec& spec,
                                const CouplingConfig& coupling, const PauliSum& h) {
    ObservableSet obs = evaluate_observables(sol.state, spec, h, coupling.spin);
    obs.energy = sol.energy;
    return obs;
}

} // namespace j1j2
