#include "copulab/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "copulab/errors.hpp"

namespace copulab {

MetricReport d_inf(const Copula& a, const Copula& b, int grid_n) {
    if (grid_n < 1) throw DomainError("d_inf needs grid_n >= 1");
    double worst = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
        double x = static_cast<double>(i) / grid_n;
        for (int j = 0; j <= grid_n; ++j) {
            double y = static_cast<double>(j) / grid_n;
            worst = std::max(worst, std::fabs(a.cdf(x, y) - b.cdf(x, y)));
        }
    }
    return {"d_inf", 0.0, worst, grid_n};
}

MetricReport d_p(const Copula& a, const Copula& b, double p, int grid_n) {
    if (grid_n < 1) throw DomainError("d_p needs grid_n >= 1");
    if (!(p >= 1.0)) throw DomainError("d_p needs p >= 1 (or infinity)");

    if (std::isinf(p)) {
        const int y_pts = 1025;
        double worst = 0.0;
        for (int j = 0; j < y_pts; ++j) {
            double y = static_cast<double>(j) / (y_pts - 1);
            double acc = 0.0;
            for (int i = 0; i < grid_n; ++i) {
                double x = (i + 0.5) / grid_n;
                acc += std::fabs(a.kernel_cdf(x, y) - b.kernel_cdf(x, y));
            }
            worst = std::max(worst, acc / grid_n);
        }
        return {"d_p", p, worst, grid_n};
    }

    double acc = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        double x = (i + 0.5) / grid_n;
        for (int j = 0; j < grid_n; ++j) {
            double y = (j + 0.5) / grid_n;
            acc += std::pow(std::fabs(a.kernel_cdf(x, y) - b.kernel_cdf(x, y)), p);
        }
    }
    double cell = 1.0 / (static_cast<double>(grid_n) * grid_n);
    return {"d_p", p, std::pow(acc * cell, 1.0 / p), grid_n};
}

const std::vector<double> kDefaultSteps = {1e-4, 1e-5, 1e-6, 1e-7};

DerivativeProbe one_sided_partial(const Copula& c, double x, double y, Side side,
                                  const std::vector<double>& steps) {
    DerivativeProbe probe;
    probe.x = x;
    probe.y = y;
    double base = c.cdf(x, y);
    for (double h : steps) {
        double xs = (side == Side::plus) ? x + h : x - h;
        if (xs <= 0.0 || xs >= 1.0) continue; // step leaves the open square
        double quotient = (side == Side::plus) ? (c.cdf(xs, y) - base) / h
                                               : (base - c.cdf(xs, y)) / h;
        probe.steps.push_back(h);
        probe.quotients.push_back(quotient);
    }
    if (probe.quotients.empty())
        throw StepUnderflow("no usable finite-difference step at this x");
    probe.estimate = probe.quotients.back();
    return probe;
}

DerivativeGap derivative_gap(const Copula& c, double x, double y,
                             const std::vector<double>& steps) {
    DerivativeGap g;
    g.plus = one_sided_partial(c, x, y, Side::plus, steps);
    g.minus = one_sided_partial(c, x, y, Side::minus, steps);
    g.gap = std::fabs(g.plus.estimate - g.minus.estimate);
    return g;
}

std::vector<NondiffPoint> nondiff_scan(const Copula& c, double x, int y_grid_n,
                                       double threshold) {
    if (y_grid_n < 2) throw DomainError("nondiff_scan needs y_grid_n >= 2");
    std::vector<NondiffPoint> found;
    for (int j = 1; j < y_grid_n; ++j) {
        double y = static_cast<double>(j) / y_grid_n;
        DerivativeGap g = derivative_gap(c, x, y);
        if (g.gap > threshold) found.push_back({y, g.gap, false});
    }
    // attach the family's own jump locations, replacing grid hits that landed
    // on the same point
    for (const auto& jump : c.kernel_jumps(x)) {
        if (!(jump.mass > threshold)) continue;
        bool merged = false;
        for (auto& pt : found) {
            if (std::fabs(pt.y - jump.y) <= 1e-9) {
                pt = {jump.y, jump.mass, true};
                merged = true;
                break;
            }
        }
        if (!merged) found.push_back({jump.y, jump.mass, true});
    }
    std::sort(found.begin(), found.end(),
              [](const NondiffPoint& a, const NondiffPoint& b) { return a.y < b.y; });
    return found;
}

double kernel_derivative_consistency(const Copula& c, double x, int y_grid_n,
                                     double h) {
    if (y_grid_n < 1) throw DomainError("kernel_derivative_consistency needs a y grid");
    if (!(x - h > 0.0 && x + h < 1.0))
        throw StepUnderflow("central difference step leaves the open square");
    double worst = 0.0;
    for (int j = 1; j <= y_grid_n; ++j) {
        double y = static_cast<double>(j) / (y_grid_n + 1);
        double quotient = (c.cdf(x + h, y) - c.cdf(x - h, y)) / (2.0 * h);
        worst = std::max(worst, std::fabs(quotient - c.kernel_cdf(x, y)));
    }
    return worst;
}

double schwarz_check(const Copula& c, int grid_n, double h) {
    if (grid_n < 1) throw DomainError("schwarz_check needs grid_n >= 1");
    Copula ct = c.transposed();
    double worst = 0.0;
    for (int i = 1; i <= grid_n; ++i) {
        double x = static_cast<double>(i) / (grid_n + 1);
        for (int j = 1; j <= grid_n; ++j) {
            double y = static_cast<double>(j) / (grid_n + 1);
            double dy_k = (c.kernel_cdf(x, y + h) - c.kernel_cdf(x, y - h)) / (2.0 * h);
            double dx_kt = (ct.kernel_cdf(y, x + h) - ct.kernel_cdf(y, x - h)) / (2.0 * h);
            worst = std::max(worst, std::fabs(dy_k - dx_kt));
        }
    }
    return worst;
}

} // namespace copulab
