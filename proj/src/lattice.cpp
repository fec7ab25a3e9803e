#include "j1j2/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace j1j2 {

std::size_t LatticeSpec::torus_distance(std::size_t i, std::size_t j) const {
    auto axis = [](std::size_t a, std::size_t b, std::size_t len, bool wrap) {
        std::size_t d = a > b ? a - b : b - a;
        if (wrap) d = std::min(d, len - d);
        return d;
    };
    return axis(x_of(i), x_of(j), cols, periodic) + axis(y_of(i), y_of(j), rows, periodic);
}

void LatticeSpec::validate() const {
    if (rows == 0 || cols == 0) throw std::invalid_argument("lattice dimensions must be positive");
    if (sites() > kMaxSites)
        throw std::invalid_argument("lattice exceeds the " + std::to_string(kMaxSites) +
                                    "-site simulability guard");
    if (periodic && (rows < 2 || cols < 2))
        throw std::invalid_argument("periodic lattice requires rows >= 2 and cols >= 2");
}

BondList build_bonds(const LatticeSpec& spec) {
    spec.validate();
    BondList bonds;
    std::set<std::pair<std::size_t, std::size_t>> nn_set, nnn_set;
    bool duplicate = false;

    auto insert = [&](std::set<std::pair<std::size_t, std::size_t>>& set, std::size_t a,
                      std::size_t b) {
        if (a == b) return; // periodic 1xN style self-loop, excluded by validate()
        auto pair = std::minmax(a, b);
        if (!set.emplace(pair.first, pair.second).second) duplicate = true;
    };

    const long R = static_cast<long>(spec.rows), C = static_cast<long>(spec.cols);
    auto wrap = [](long v, long len) { return ((v % len) + len) % len; };
    for (long y = 0; y < R; ++y) {
        for (long x = 0; x < C; ++x) {
            std::size_t k = spec.site(x, y);
            // emit +x, +y, and the two forward diagonals from every site
            const long steps_nn[2][2] = {{1, 0}, {0, 1}};
            const long steps_nnn[2][2] = {{1, 1}, {1, -1}};
            for (auto& s : steps_nn) {
                long nx = x + s[0], ny = y + s[1];
                if (spec.periodic) {
                    insert(nn_set, k, spec.site(wrap(nx, C), wrap(ny, R)));
                } else if (nx < C && ny < R) {
                    insert(nn_set, k, spec.site(nx, ny));
                }
            }
            for (auto& s : steps_nnn) {
                long nx = x + s[0], ny = y + s[1];
                if (spec.periodic) {
                    insert(nnn_set, k, spec.site(wrap(nx, C), wrap(ny, R)));
                } else if (nx >= 0 && nx < C && ny >= 0 && ny < R) {
                    insert(nnn_set, k, spec.site(nx, ny));
                }
            }
        }
    }
    bonds.nn.assign(nn_set.begin(), nn_set.end());
    bonds.nnn.assign(nnn_set.begin(), nnn_set.end());
    bonds.degeneracy_warning = duplicate;
    return bonds;
}

PauliSum bond_operator(std::size_t n_sites, std::size_t i, std::size_t j, double weight) {
    PauliSum op(n_sites);
    for (char letter : {'X', 'Y', 'Z'}) {
        std::string s(n_sites, 'I');
        s[i] = letter;
        s[j] = letter;
        op.add(s, weight);
    }
    return op;
}

WeightedBonds WeightedBonds::from(const LatticeSpec& spec, const CouplingConfig& coupling) {
    BondList bonds = build_bonds(spec);
    const double w = coupling.bond_weight();
    WeightedBonds out;
    out.n_sites = spec.sites();
    auto push = [&](const std::vector<std::pair<std::size_t, std::size_t>>& list, double coeff) {
        for (const auto& [i, j] : list) {
            out.a.push_back(i);
            out.b.push_back(j);
            out.w.push_back(coeff);
        }
    };
    push(bonds.nn, coupling.j1 * w);
    if (coupling.j2 != 0.0) push(bonds.nnn, coupling.j2 * w);
    return out;
}

Statevector heisenberg_apply(const WeightedBonds& bonds, const Statevector& psi) {
    if (psi.n != bonds.n_sites) throw std::invalid_argument("dimension mismatch");
    Statevector out(psi.n);
    const std::size_t dim = psi.dim();
    for (std::size_t k = 0; k < bonds.a.size(); ++k) {
        const std::size_t ba = std::size_t{1} << bonds.a[k];
        const std::size_t bb = std::size_t{1} << bonds.b[k];
        const std::size_t mask = ba | bb;
        const double w = bonds.w[k];
        const double w2 = 2.0 * w;
        for (std::size_t s = 0; s < dim; ++s) {
            const bool same = bool(s & ba) == bool(s & bb);
            if (same) {
                out.amp[s] += w * psi.amp[s]; // ZZ on aligned bits
            } else {
                out.amp[s] -= w * psi.amp[s];
                out.amp[s ^ mask] += w2 * psi.amp[s]; // XX + YY spin flip
            }
        }
    }
    return out;
}

double heisenberg_expectation(const WeightedBonds& bonds, const Statevector& psi) {
    if (psi.n != bonds.n_sites) throw std::invalid_argument("dimension mismatch");
    const std::size_t dim = psi.dim();
    double acc = 0.0;
    for (std::size_t k = 0; k < bonds.a.size(); ++k) {
        const std::size_t ba = std::size_t{1} << bonds.a[k];
        const std::size_t bb = std::size_t{1} << bonds.b[k];
        const std::size_t mask = ba | bb;
        const double w = bonds.w[k];
        double zz = 0.0, flip = 0.0;
        for (std::size_t s = 0; s < dim; ++s) {
            const double p = std::norm(psi.amp[s]);
            if (bool(s & ba) == bool(s & bb)) {
                zz += p;
            } else {
                zz -= p;
                const auto& u = psi.amp[s ^ mask];
                const auto& v = psi.amp[s];
                flip += u.real() * v.real() + u.imag() * v.imag();
            }
        }
        acc += w * zz + 2.0 * w * flip;
    }
    return acc;
}

PauliSum build_hamiltonian(const LatticeSpec& spec, const CouplingConfig& coupling) {
    BondList bonds = build_bonds(spec);
    const double w = coupling.bond_weight();
    PauliSum h(spec.sites());
    for (const auto& [i, j] : bonds.nn) h += bond_operator(spec.sites(), i, j, coupling.j1 * w);
    if (coupling.j2 != 0.0)
        for (const auto& [i, j] : bonds.nnn)
            h += bond_operator(spec.sites(), i, j, coupling.j2 * w);
    return h;
}

} // namespace j1j2
