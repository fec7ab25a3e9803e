#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace j1j2 {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
    std::vector<double> best_params;
    double best_value = 0.0;
    /// best-so-far value after each iteration
    std::vector<double> trace;
    std::size_t iterations = 0;
    bool hit_iteration_cap = false;
};

/**
 * Nakanishi-Fujii-Todo sequential minimizer. Parameters are updated
 * cyclically; each update samples the objective at offsets {0, +-2pi/3},
 * fits a*cos(theta - b) + c exactly, and jumps to the sinusoid's minimizer.
 * The landing value is re-evaluated and guarded against the sampled points,
 * so the best-so-far trace is non-increasing even off the sinusoidal family.
 * One iteration = one parameter update.
 */
OptimResult nft_minimize(const Objective& f, std::vector<double> initial,
                         std::size_t max_iters);

/**
 * Nelder-Mead simplex with reflection/expansion/contraction/shrink
 * coefficients (1, 2, 0.5, 0.5); stops when the simplex value spread falls
 * below `spread_tol` or after `max_iters` iterations.
 */
OptimResult nelder_mead(const Objective& f, std::vector<double> initial, std::size_t max_iters,
                        double spread_tol = 1e-8, double initial_step = 0.1);

} // namespace j1j2
