#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "j1j2/lattice.hpp"
#include "j1j2/observables.hpp"

namespace j1j2 {

/// Expectation estimates over increasing noise-scale factors.
struct ZneSeries {
    std::vector<double> factors; // strictly increasing, factors[0] = 1
    std::vector<double> values;
    std::vector<double> sigmas; // optional, same length when non-empty

    void validate() const;
};

enum class ZneModel { Linear, Quadratic };

/// Weighted least-squares polynomial fit in the noise factor, evaluated at 0.
double zne_extrapolate(const ZneSeries& series, ZneModel model);

/**
 * Quadratic inverse-distortion parameters: the corrected curve is
 * g(v) = a (v/c)^2 + b (v/c) + d. Only g's values are meaningful --
 * (a, b, c, d) carry a joint rescaling gauge.
 */
struct CrZneParams {
    double a = 0.0;
    double b = 1.0;
    double c = 1.0;
    double d = 0.0;
    double beta = 0.01;
    double residual = 0.0;
    bool converged = false;

    double apply_one(double v) const { return a * (v / c) * (v / c) + b * (v / c) + d; }
};

/// How the anchor-violation term enters the fit objective relative to the
/// derivative-matching terms. ViolationOverBeta squares (g - v)/beta, the
/// reading where anchors are the hard part; the alternates keep the other
/// readings available.
enum class AnchorWeighting { ViolationOverBeta, InverseBeta, Beta };

struct CrZneOptions {
    AnchorWeighting weighting = AnchorWeighting::ViolationOverBeta;
    double beta = 0.01;
    std::size_t restarts = 4;
    std::size_t max_iters = 6000;
    uint64_t seed = 2718;
};

struct CurvePoint {
    double x;
    double value;
};

/// Nelder-Mead fit of the inverse distortion: derivative profiles of the
/// transformed curve are matched to finite differences of the input, and
/// anchors pin the absolute values.
CrZneParams crzne_fit(const std::vector<CurvePoint>& curve,
                      const std::vector<CurvePoint>& anchors,
                      const CrZneOptions& options = {});

std::vector<double> crzne_apply(const CrZneParams& params, const std::vector<double>& values);

/// First/second derivative estimates on a (possibly nonuniform) grid:
/// three-point central stencils inside, one-sided second order at the ends.
void finite_differences(const std::vector<double>& x, const std::vector<double>& y,
                        std::vector<double>& d1, std::vector<double>& d2);

struct Anchor {
    double x; // J2/J1 endpoint
    std::string observable;
    double value;
};
using ReferenceAnchors = std::vector<Anchor>;

/// Product-state endpoint anchors: checkerboard Neel at J2/J1 = 0, horizontal
/// stripes at J2/J1 = 1, every observable evaluated classically.
ReferenceAnchors classical_anchor(const LatticeSpec& spec, const CouplingConfig& endpoint);

/// The endpoint product state itself (checkerboard or row stripes).
Statevector anchor_product_state(const LatticeSpec& spec, double j2_over_j1);

} // namespace j1j2
