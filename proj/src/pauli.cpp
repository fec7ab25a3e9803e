#include "j1j2/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace j1j2 {

namespace {

// Exact multiplication by i^k, k mod 4.
cdouble ipow(int k, cdouble c) {
    switch (((k % 4) + 4) % 4) {
        case 0: return c;
        case 1: return {-c.imag(), c.real()};
        case 2: return -c;
        default: return {c.imag(), -c.real()};
    }
}

int popcount64(uint64_t v) { return std::popcount(v); }

} // namespace

PauliString::PauliString(std::size_t n_qubits, uint64_t x_mask, uint64_t z_mask, cdouble coeff)
    : n_(n_qubits), x_(x_mask), z_(z_mask) {
    if (n_qubits > 60) throw std::invalid_argument("PauliString supports at most 60 qubits");
    // letter coefficient -> symplectic coefficient via Y = i X Z
    cxz_ = ipow(popcount64(x_ & z_), coeff);
}

PauliString PauliString::from_letters(const std::string& letters, cdouble coeff) {
    uint64_t x = 0, z = 0;
    for (std::size_t k = 0; k < letters.size(); ++k) {
        switch (letters[k]) {
            case 'I': break;
            case 'X': x |= uint64_t{1} << k; break;
            case 'Y': x |= uint64_t{1} << k; z |= uint64_t{1} << k; break;
            case 'Z': z |= uint64_t{1} << k; break;
            default: throw std::invalid_argument("bad Pauli letter");
        }
    }
    return PauliString(letters.size(), x, z, coeff);
}

PauliString PauliString::identity(std::size_t n_qubits, cdouble coeff) {
    return PauliString(n_qubits, 0, 0, coeff);
}

PauliString PauliString::single(std::size_t n_qubits, char letter, std::size_t qubit,
                                cdouble coeff) {
    std::string s(n_qubits, 'I');
    s.at(qubit) = letter;
    return from_letters(s, coeff);
}

cdouble PauliString::coefficient() const { return ipow(-popcount64(x_ & z_), cxz_); }

void PauliString::set_coefficient(cdouble c) { cxz_ = ipow(popcount64(x_ & z_), c); }

std::string PauliString::letters() const {
    std::string s(n_, 'I');
    for (std::size_t k = 0; k < n_; ++k) {
        bool bx = (x_ >> k) & 1, bz = (z_ >> k) & 1;
        s[k] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return s;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("PauliString length mismatch");
    PauliString r;
    r.n_ = a.n_;
    r.x_ = a.x_ ^ b.x_;
    r.z_ = a.z_ ^ b.z_;
    // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
    double sign = (popcount64(a.z_ & b.x_) & 1) ? -1.0 : 1.0;
    r.cxz_ = a.cxz_ * b.cxz_ * sign;
    return r;
}

void PauliString::apply_add(const Statevector& psi, Statevector& out) const {
    if (psi.n != n_ || out.n != n_) throw std::invalid_argument("dimension mismatch");
    const std::size_t dim = psi.dim();
    // c * X^x Z^z |s> = c * (-1)^{|z & s|} |s ^ x>
    for (std::size_t s = 0; s < dim; ++s) {
        double sign = (popcount64(z_ & s) & 1) ? -1.0 : 1.0;
        out.amp[s ^ x_] += cxz_ * sign * psi.amp[s];
    }
}

Statevector PauliString::apply(const Statevector& psi) const {
    Statevector out(n_);
    apply_add(psi, out);
    return out;
}

cdouble PauliString::expectation(const Statevector& psi) const {
    if (psi.n != n_) throw std::invalid_argument("dimension mismatch");
    const std::size_t dim = psi.dim();
    cdouble acc = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
        double sign = (popcount64(z_ & s) & 1) ? -1.0 : 1.0;
        acc += std::conj(psi.amp[s ^ x_]) * (sign * psi.amp[s]);
    }
    return cxz_ * acc;
}

void PauliSum::add(const PauliString& p) {
    if (n_ == 0) n_ = p.n_qubits();
    if (p.n_qubits() != n_) throw std::invalid_argument("PauliSum length mismatch");
    auto key = std::make_pair(p.x_mask(), p.z_mask());
    // accumulate in symplectic convention to keep products cheap
    cdouble cxz = ipow(popcount64(key.first & key.second), p.coefficient());
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (std::abs(cxz) > kSimplifyTol) terms_.emplace(key, cxz);
    } else {
        it->second += cxz;
        if (std::abs(it->second) <= kSimplifyTol) terms_.erase(it);
    }
}

void PauliSum::add(const std::string& letters, cdouble coeff) {
    add(PauliString::from_letters(letters, coeff));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
    if (n_ == 0) n_ = other.n_;
    if (other.n_ != n_) throw std::invalid_argument("PauliSum length mismatch");
    for (const auto& [key, c] : other.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (std::abs(it->second) <= kSimplifyTol) terms_.erase(it);
        }
    }
    return *this;
}

PauliSum PauliSum::operator*(cdouble scale) const {
    PauliSum r(n_);
    for (const auto& [key, c] : terms_) {
        cdouble v = c * scale;
        if (std::abs(v) > kSimplifyTol) r.terms_.emplace(key, v);
    }
    return r;
}

void PauliSum::simplify() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= kSimplifyTol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

bool PauliSum::is_hermitian(double tol) const {
    // letter coefficient = i^{-#Y} cxz must be real
    for (const auto& [key, c] : terms_) {
        cdouble letter_c = ipow(-popcount64(key.first & key.second), c);
        if (std::abs(letter_c.imag()) > tol) return false;
    }
    return true;
}

PauliSum PauliSum::adjoint() const {
    PauliSum r(n_);
    for (const auto& [key, c] : terms_) {
        // (c X^x Z^z)^† = conj(c) Z^z X^x = conj(c) (-1)^{|x&z|} X^x Z^z
        double sign = (popcount64(key.first & key.second) & 1) ? -1.0 : 1.0;
        r.terms_.emplace(key, std::conj(c) * sign);
    }
    return r;
}

double PauliSum::one_norm() const {
    double s = 0.0;
    for (const auto& [key, c] : terms_) s += std::abs(c);
    return s;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b, std::size_t term_budget) {
    if (a.n_ != b.n_) throw std::invalid_argument("PauliSum length mismatch");
    PauliSum r(a.n_);
    r.terms_.reserve(std::min(term_budget, a.terms_.size() * b.terms_.size()));
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            double sign = (popcount64(ka.second & kb.first) & 1) ? -1.0 : 1.0;
            auto key = std::make_pair(ka.first ^ kb.first, ka.second ^ kb.second);
            cdouble c = ca * cb * sign;
            auto it = r.terms_.find(key);
            if (it == r.terms_.end()) {
                r.terms_.emplace(key, c);
                if (r.terms_.size() > term_budget)
                    throw std::runtime_error("pauli product exceeded term budget of " +
                                             std::to_string(term_budget) + " terms");
            } else {
                it->second += c;
            }
        }
    }
    r.simplify();
    return r;
}

PauliSum PauliSum::power(int k, std::size_t term_budget) const {
    if (k < 1 || k > 4) throw std::invalid_argument("power supports k in [1,4]");
    PauliSum r = *this;
    for (int i = 1; i < k; ++i) r = multiply(r, *this, term_budget);
    return r;
}

Statevector PauliSum::apply(const Statevector& psi) const {
    if (psi.n != n_) throw std::invalid_argument("dimension mismatch");
    Statevector out(n_);
    const std::size_t dim = psi.dim();
    for (const auto& [key, c] : terms_) {
        const uint64_t x = key.first, z = key.second;
        for (std::size_t s = 0; s < dim; ++s) {
            double sign = (popcount64(z & s) & 1) ? -1.0 : 1.0;
            out.amp[s ^ x] += c * sign * psi.amp[s];
        }
    }
    return out;
}

double PauliSum::expectation(const Statevector& psi) const {
    if (!is_hermitian()) throw std::invalid_argument("expectation requires a Hermitian PauliSum");
    if (psi.n != n_) throw std::invalid_argument("dimension mismatch");
    const std::size_t dim = psi.dim();
    cdouble acc = 0.0;
    for (const auto& [key, c] : terms_) {
        const uint64_t x = key.first, z = key.second;
        cdouble term = 0.0;
        for (std::size_t s = 0; s < dim; ++s) {
            double sign = (popcount64(z & s) & 1) ? -1.0 : 1.0;
            term += std::conj(psi.amp[s ^ x]) * (sign * psi.amp[s]);
        }
        acc += c * term;
    }
    if (std::abs(acc.imag()) > 1e-10)
        throw std::runtime_error("expectation has imaginary residue " +
                                 std::to_string(acc.imag()));
    return acc.real();
}

std::vector<PauliString> PauliSum::sorted_terms() const {
    std::vector<std::pair<uint64_t, uint64_t>> keys;
    keys.reserve(terms_.size());
    for (const auto& [key, c] : terms_) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    std::vector<PauliString> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        cdouble letter_c = ipow(-popcount64(key.first & key.second), terms_.at(key));
        PauliString p(n_, key.first, key.second, letter_c);
        out.push_back(p);
    }
    return out;
}

std::string PauliSum::to_text() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& p : sorted_terms()) {
        cdouble c = p.coefficient();
        if (std::abs(c.imag()) > kSimplifyTol)
            os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
        else
            os << c.real();
        os << '\t' << p.letters() << '\n';
    }
    return os.str();
}

PauliSum PauliSum::from_text(const std::string& text, std::size_t n_qubits) {
    PauliSum r(n_qubits);
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw std::invalid_argument("bad PauliSum line: " + line);
        double c = std::stod(line.substr(0, tab));
        r.add(line.substr(tab + 1), c);
    }
    return r;
}

} // namespace j1j2
