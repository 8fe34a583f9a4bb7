#pragma once

#include <string>
#include <vector>

#include "copulab/copula.hpp"

namespace copulab {

struct MetricReport {
    std::string metric; // "d_inf" or "d_p"
    double p = 0.0;     // exponent for d_p (may be infinity); unused for d_inf
    double value = 0.0;
    int grid_n = 0;
};

// Uniform distance max |C_a - C_b| over the (grid_n+1)^2 lattice.
MetricReport d_inf(const Copula& a, const Copula& b, int grid_n = 512);

// Kernel distance between the conditional distributions:
//   finite p:  ( integral |K_a - K_b|^p d(x,y) )^(1/p), midpoint product rule
//              with grid_n panels per axis;
//   p = inf:   sup_y integral |K_a - K_b| dx over a 1025-point y-grid with a
//              grid_n-panel midpoint rule in x.
// Unlike d_inf this metrizes convergence of the conditionals themselves and
// separates copulas that are close in cdf but conditionally far apart.
MetricReport d_p(const Copula& a, const Copula& b, double p, int grid_n = 1024);

enum class Side { plus, minus };

// One-sided difference quotients of x -> C(x,y) along a shrinking step
// sequence.  estimate is the quotient at the smallest usable step.
struct DerivativeProbe {
    double x = 0.0;
    double y = 0.0;
    std::vector<double> steps;
    std::vector<double> quotients;
    double estimate = 0.0;
};

extern const std::vector<double> kDefaultSteps; // 1e-4 down to 1e-7

DerivativeProbe one_sided_partial(const Copula& c, double x, double y, Side side,
                                  const std::vector<double>& steps = kDefaultSteps);

// Both one-sided estimates and their gap at a point.
struct DerivativeGap {
    DerivativeProbe plus;
    DerivativeProbe minus;
    double gap = 0.0;
};

DerivativeGap derivative_gap(const Copula& c, double x, double y,
                             const std::vector<double>& steps = kDefaultSteps);

struct NondiffPoint {
    double y = 0.0;
    double gap = 0.0;
    bool analytic = false; // located by the family's jump enumerator
};

// Scan the section x = const for points where the one-sided partials of C in
// x disagree: finite differences over an interior y-grid, merged with the
// analytically known kernel jump locations of the family.
std::vector<NondiffPoint> nondiff_scan(const Copula& c, double x, int y_grid_n,
                                       double threshold = 1e-2);

// max over an interior y-grid of |central difference of C in x - K(x,[0,y])|.
// Small wherever the conditional distribution is continuous in x; O(jump) at
// kernel discontinuities.
double kernel_derivative_consistency(const Copula& c, double x, int y_grid_n,
                                     double h = 1e-5);

// Mixed second partials computed from the two kernels: central differences of
// y -> K_C(x,[0,y]) and of x -> K_{C^t}(y,[0,x]) estimate the same density
// f(x,y) almost everywhere.  Returns the max discrepancy over an interior
// grid; meaningful for absolutely continuous copulas.
double schwarz_check(const Copula& c, int grid_n, double h = 1e-4);

} // namespace copulab
