#include "j1j2/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace j1j2 {

OptimResult nft_minimize(const Objective& f, std::vector<double> initial,
                         std::size_t max_iters) {
    if (initial.empty()) throw std::invalid_argument("no parameters to optimize");
    OptimResult out;
    std::vector<double> x = std::move(initial);
    double fx = f(x);
    out.trace.reserve(max_iters);

    const double shift = 2.0 * M_PI / 3.0;
    for (std::size_t it = 0; it < max_iters; ++it) {
        const std::size_t p = it % x.size();
        const double x0 = x[p];
        const double z1 = fx;
        x[p] = x0 + shift;
        const double z2 = f(x);
        x[p] = x0 - shift;
        const double z3 = f(x);

        // z(t) = a cos(t - b) + c through the three samples;
        // b = x0 - atan2(a sin(x0-b), a cos(x0-b)), minimizer at b + pi
        const double c = (z1 + z2 + z3) / 3.0;
        const double cos_part = z1 - c;
        const double sin_part = (z3 - z2) / std::sqrt(3.0);
        const double xstar = x0 - std::atan2(sin_part, cos_part) + M_PI;

        x[p] = xstar;
        double fstar = f(x);
        // guard: keep the best of the four evaluated points
        double best = fstar;
        double best_x = xstar;
        if (z1 < best) best = z1, best_x = x0;
        if (z2 < best) best = z2, best_x = x0 + shift;
        if (z3 < best) best = z3, best_x = x0 - shift;
        x[p] = best_x;
        fx = best;
        out.trace.push_back(fx);
        out.iterations = it + 1;
    }
    out.hit_iteration_cap = true;
    out.best_params = std::move(x);
    out.best_value = fx;
    return out;
}

OptimResult nelder_mead(const Objective& f, std::vector<double> initial, std::size_t max_iters,
                        double spread_tol, double initial_step) {
    const std::size_t n = initial.size();
    if (n == 0) throw std::invalid_argument("no parameters to optimize");
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, initial);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

    OptimResult out;
    std::vector<std::size_t> order(n + 1);
    for (std::size_t it = 0; it < max_iters; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0], worst = order[n];
        out.iterations = it + 1;
        out.trace.push_back(values[best]);
        double param_spread = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t d = 0; d < n; ++d)
                param_spread =
                    std::max(param_spread, std::abs(simplex[i][d] - simplex[best][d]));
        if (values[worst] - values[best] < spread_tol && param_spread < std::sqrt(spread_tol)) {
            out.best_params = simplex[best];
            out.best_value = values[best];
            return out;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
        }
        for (auto& cd : centroid) cd /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d)
                p[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
            return p;
        };

        auto reflected = blend(-kReflect);
        double fr = f(reflected);
        if (fr < values[order[0]]) {
            auto expanded = blend(-kReflect * kExpand);
            double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[order[n - 1]]) {
            simplex[worst] = std::move(reflected);
            values[worst] = fr;
            continue;
        }
        auto contracted = blend(fr < values[worst] ? -kContract : kContract);
        double fc = f(contracted);
        if (fc < std::min(fr, values[worst])) {
            simplex[worst] = std::move(contracted);
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d)
                simplex[i][d] = simplex[best][d] + kShrink * (simplex[i][d] - simplex[best][d]);
            values[i] = f(simplex[i]);
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (values[i] < values[best]) best = i;
    out.best_params = simplex[best];
    out.best_value = values[best];
    out.hit_iteration_cap = true;
    return out;
}

} // namespace j1j2
