#include "j1j2/mitigation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "j1j2/optim.hpp"

namespace j1j2 {

void ZneSeries::validate() const {
    if (factors.size() != values.size()) throw std::invalid_argument("series length mismatch");
    if (!sigmas.empty() && sigmas.size() != values.size())
        throw std::invalid_argument("sigma length mismatch");
    if (factors.empty() || factors[0] != 1.0)
        throw std::invalid_argument("factors must start at 1");
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i] <= factors[i - 1])
            throw std::invalid_argument("factors must be strictly increasing");
}

double zne_extrapolate(const ZneSeries& series, ZneModel model) {
    series.validate();
    const std::size_t degree = model == ZneModel::Linear ? 1 : 2;
    const std::size_t npts = series.factors.size();
    if (npts < degree + 1)
        throw std::invalid_argument("not enough points for the requested model");

    Eigen::MatrixXd a(npts, degree + 1);
    Eigen::VectorXd y(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        double w = 1.0;
        if (!series.sigmas.empty() && series.sigmas[i] > 0.0) w = 1.0 / series.sigmas[i];
        double pw = 1.0;
        for (std::size_t k = 0; k <= degree; ++k) {
            a(i, k) = w * pw;
            pw *= series.factors[i];
        }
        y(i) = w * series.values[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.rank() < static_cast<Eigen::Index>(degree + 1))
        throw std::runtime_error("degenerate ZNE design matrix");
    Eigen::VectorXd coeff = svd.solve(y);
    return coeff[0]; // value at lambda = 0
}

void finite_differences(const std::vector<double>& x, const std::vector<double>& y,
                        std::vector<double>& d1, std::vector<double>& d2) {
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("finite differences need at least 3 points");
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    auto stencil = [&](std::size_t i0, std::size_t i1, std::size_t i2, double at, double& g1,
                       double& g2) {
        // exact derivatives of the quadratic through the three points
        const double x0 = x[i0], x1 = x[i1], x2 = x[i2];
        const double l0 = y[i0] / ((x0 - x1) * (x0 - x2));
        const double l1 = y[i1] / ((x1 - x0) * (x1 - x2));
        const double l2 = y[i2] / ((x2 - x0) * (x2 - x1));
        g1 = l0 * (2 * at - x1 - x2) + l1 * (2 * at - x0 - x2) + l2 * (2 * at - x0 - x1);
        g2 = 2.0 * (l0 + l1 + l2);
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t i0 = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
        stencil(i0, i0 + 1, i0 + 2, x[i], d1[i], d2[i]);
    }
}

namespace {

double anchor_weight(const CrZneOptions& opt) {
    switch (opt.weighting) {
        case AnchorWeighting::ViolationOverBeta: return 1.0 / (opt.beta * opt.beta);
        case AnchorWeighting::InverseBeta: return 1.0 / opt.beta;
        case AnchorWeighting::Beta: return opt.beta;
    }
    return 1.0;
}

} // namespace

CrZneParams crzne_fit(const std::vector<CurvePoint>& curve, const std::vector<CurvePoint>& anchors,
                      const CrZneOptions& options) {
    if (curve.size() < 4) throw std::invalid_argument("crzne_fit needs at least 4 curve points");
    if (anchors.empty()) throw std::invalid_argument("crzne_fit needs at least one anchor");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].x <= curve[i - 1].x)
            throw std::invalid_argument("curve must be sorted in x");

    std::vector<double> xs, fs;
    for (const auto& p : curve) {
        xs.push_back(p.x);
        fs.push_back(p.value);
    }
    std::vector<double> d1, d2;
    finite_differences(xs, fs, d1, d2);

    // anchor values of the raw curve, linearly interpolated when off-grid
    std::vector<std::pair<double, double>> anchor_fv; // (f(x_a), target)
    for (const auto& a : anchors) {
        auto it = std::lower_bound(xs.begin(), xs.end(), a.x);
        double fx;
        if (it == xs.begin()) {
            fx = fs.front();
        } else if (it == xs.end()) {
            fx = fs.back();
        } else {
            std::size_t hi = it - xs.begin(), lo = hi - 1;
            double t = (a.x - xs[lo]) / (xs[hi] - xs[lo]);
            fx = (1 - t) * fs[lo] + t * fs[hi];
        }
        anchor_fv.emplace_back(fx, a.value);
    }

    // The derivative targets are the input's profile carried to the anchor
    // scale: with two or more anchors the implied slope alpha rescales D1/D2
    // (offsets drop out of the stencils). A single anchor leaves alpha = 1.
    if (anchor_fv.size() >= 2) {
        Eigen::MatrixXd a(anchor_fv.size(), 2);
        Eigen::VectorXd rhs(anchor_fv.size());
        for (std::size_t k = 0; k < anchor_fv.size(); ++k) {
            a(k, 0) = anchor_fv[k].first;
            a(k, 1) = 1.0;
            rhs(k) = anchor_fv[k].second;
        }
        Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
        const double alpha = sol[0];
        if (std::isfinite(alpha) && alpha != 0.0) {
            for (auto& v : d1) v *= alpha;
            for (auto& v : d2) v *= alpha;
        }
    }

    const double w_anchor = anchor_weight(options);
    const double npts = static_cast<double>(curve.size());
    std::vector<double> gy(curve.size()), g1(curve.size()), g2(curve.size());
    auto objective = [&](const std::vector<double>& p) {
        CrZneParams q{p[0], p[1], p[2], p[3]};
        if (std::abs(q.c) < 1e-8) return 1e12 * (1e-8 - std::abs(q.c) + 1.0);
        for (std::size_t i = 0; i < gy.size(); ++i) gy[i] = q.apply_one(fs[i]);
        finite_differences(xs, gy, g1, g2);
        double loss = 0.0;
        for (std::size_t i = 0; i < gy.size(); ++i) {
            const double e1 = g1[i] - d1[i];
            const double e2 = g2[i] - d2[i];
            loss += (e1 * e1 + e2 * e2) / npts;
        }
        for (const auto& [fx, target] : anchor_fv) {
            const double viol = q.apply_one(fx) - target;
            loss += w_anchor * viol * viol;
        }
        return loss;
    };

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> jitter(0.0, 0.25);
    CrZneParams best;
    best.beta = options.beta;
    double best_loss = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r <= options.restarts; ++r) {
        std::vector<double> p0 = {0.0, 1.0, 1.0, 0.0};
        if (r > 0)
            for (auto& v : p0) v += jitter(rng);
        auto res = nelder_mead(objective, p0, options.max_iters, 1e-14, 0.2);
        if (res.best_value < best_loss) {
            best_loss = res.best_value;
            best.a = res.best_params[0];
            best.b = res.best_params[1];
            best.c = res.best_params[2];
            best.d = res.best_params[3];
            best.converged = !res.hit_iteration_cap;
        }
    }
    best.residual = best_loss;
    return best;
}

std::vector<double> crzne_apply(const CrZneParams& params, const std::vector<double>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(params.apply_one(v));
    return out;
}

Statevector anchor_product_state(const LatticeSpec& spec, double j2_over_j1) {
    uint64_t idx = 0;
    if (j2_over_j1 == 0.0) {
        for (std::size_t k = 0; k < spec.sites(); ++k)
            if (spec.parity(k) < 0) idx |= uint64_t{1} << k;
    } else if (j2_over_j1 == 1.0) {
        // horizontal stripes: <Z_i Z_{i+e_x}> = +1, vertical neighbours -1
        for (std::size_t k = 0; k < spec.sites(); ++k)
            if (spec.y_of(k) & 1) idx |= uint64_t{1} << k;
    } else {
        throw std::invalid_argument("classical anchors exist only at J2/J1 = 0 and 1");
    }
    return Statevector::basis(spec.sites(), idx);
}

ReferenceAnchors classical_anchor(const LatticeSpec& spec, const CouplingConfig& endpoint) {
    if (endpoint.j1 == 0.0) throw std::invalid_argument("j1 must be nonzero");
    const double ratio = endpoint.j2 / endpoint.j1;
    Statevector psi = anchor_product_state(spec, ratio);
    auto h = build_hamiltonian(spec, endpoint);
    ObservableSet obs = evaluate_observables(psi, spec, h, endpoint.spin);
    return {
        {ratio, "energy", obs.energy},     {ratio, "neel", obs.neel},
        {ratio, "dimer", obs.dimer},       {ratio, "local_z", obs.local_z},
        {ratio, "global_z", obs.global_z},
    };
}

} // namespace j1j2
