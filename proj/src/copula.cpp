#include "copulab/copula.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "copulab/errors.hpp"
#include "copulab/rng.hpp"

namespace copulab {

namespace {

class Minimum final : public CopulaImpl {
public:
    double cdf_interior(double x, double y) const override { return std::min(x, y); }
    double kernel_interior(double x, double y) const override {
        if (x <= 0.0 || x >= 1.0) return y;
        return y >= x ? 1.0 : 0.0;
    }
    std::vector<KernelJump> kernel_jumps(double x) const override {
        if (x <= 0.0 || x >= 1.0) return {};
        return {{x, 1.0}};
    }
    std::shared_ptr<const CopulaImpl> transposed() const override {
        return std::make_shared<Minimum>();
    }
    std::string family() const override { return "M"; }
};

class Countermonotone final : public CopulaImpl {
public:
    double cdf_interior(double x, double y) const override {
        return std::max(x + y - 1.0, 0.0);
    }
    double kernel_interior(double x, double y) const override {
        if (x <= 0.0 || x >= 1.0) return y;
        return y >= 1.0 - x ? 1.0 : 0.0;
    }
    std::vector<KernelJump> kernel_jumps(double x) const override {
        if (x <= 0.0 || x >= 1.0) return {};
        return {{1.0 - x, 1.0}};
    }
    std::shared_ptr<const CopulaImpl> transposed() const override {
        return std::make_shared<Countermonotone>();
    }
    std::string family() const override { return "W"; }
};

class Independence final : public CopulaImpl {
public:
    double cdf_interior(double x, double y) const override { return x * y; }
    double kernel_interior(double, double y) const override { return y; }
    std::shared_ptr<const CopulaImpl> transposed() const override {
        return std::make_shared<Independence>();
    }
    std::string family() const override { return "Pi"; }
};

} // namespace

Copula minimum_copula() { return Copula(std::make_shared<Minimum>()); }
Copula countermonotone() { return Copula(std::make_shared<Countermonotone>()); }
Copula independence() { return Copula(std::make_shared<Independence>()); }

double CopulaValidation::worst() const {
    return std::max({boundary.residual, rectangle.residual, lipschitz.residual});
}

CopulaValidation validate_copula(const Copula& c, int grid_n) {
    if (grid_n < 1) throw DomainError("validate_copula needs grid_n >= 1");
    CopulaValidation v;
    v.grid_n = grid_n;
    const int n = grid_n;

    std::vector<double> ticks(n + 1);
    for (int i = 0; i <= n; ++i) ticks[i] = static_cast<double>(i) / n;

    // full grid of cdf values, evaluated once
    std::vector<double> grid((n + 1) * (n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            grid[i * (n + 1) + j] = c.cdf(ticks[i], ticks[j]);
    auto at = [&](int i, int j) { return grid[i * (n + 1) + j]; };

    for (int i = 0; i <= n; ++i) {
        v.boundary.update(std::fabs(at(i, 0)), ticks[i], 0.0);
        v.boundary.update(std::fabs(at(0, i)), 0.0, ticks[i]);
        v.boundary.update(std::fabs(at(i, n) - ticks[i]), ticks[i], 1.0);
        v.boundary.update(std::fabs(at(n, i) - ticks[i]), 1.0, ticks[i]);
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double vol = at(i + 1, j + 1) - at(i + 1, j) - at(i, j + 1) + at(i, j);
            v.rectangle.update(-vol, ticks[i], ticks[j]);
        }
    }

    // Lipschitz along single grid steps; general pairs follow by chaining.
    double step = 1.0 / n;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < n; ++j) {
            double dy = std::fabs(at(i, j + 1) - at(i, j));
            v.lipschitz.update(dy - step, ticks[i], ticks[j]);
            double dx = std::fabs(at(j + 1, i) - at(j, i));
            v.lipschitz.update(dx - step, ticks[j], ticks[i]);
        }
    }

    v.boundary.residual = std::max(v.boundary.residual, 0.0);
    v.rectangle.residual = std::max(v.rectangle.residual, 0.0);
    v.lipschitz.residual = std::max(v.lipschitz.residual, 0.0);
    return v;
}

double disintegration_residual(const Copula& c, double x, double y, int quad_n) {
    if (quad_n < 1) throw DomainError("disintegration_residual needs quad_n >= 1");
    double w = x / quad_n;
    double acc = 0.0;
    for (int i = 0; i < quad_n; ++i) {
        double s = (i + 0.5) * w;
        acc += c.kernel_cdf(s, y);
    }
    return std::fabs(acc * w - c.cdf(x, y));
}

double kernel_quantile(const Copula& c, double x, double u,
                       double tol, int max_iter) {
    if (u <= c.kernel_cdf(x, 0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (c.kernel_cdf(x, mid) >= u)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

SampleSet sample(const Copula& c, int n, std::uint64_t seed) {
    if (n < 0) throw DomainError("sample needs n >= 0");
    SampleSet s;
    s.seed = seed;
    s.points.reserve(static_cast<std::size_t>(n));
    CounterRng rng(seed);
    for (int i = 0; i < n; ++i) {
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        s.points.push_back({u1, kernel_quantile(c, u1, u2)});
    }
    return s;
}

EmpiricalCdf::EmpiricalCdf(const SampleSet& s) {
    const std::size_t n = s.points.size();
    if (n == 0) throw EmptySample("empirical copula needs a non-empty sample");
    std::vector<std::size_t> order(n);
    rank_points_.assign(n, {0.0, 0.0});
    for (int coord = 0; coord < 2; ++coord) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return s.points[a][coord] < s.points[b][coord];
                         });
        for (std::size_t r = 0; r < n; ++r)
            rank_points_[order[r]][coord] =
                static_cast<double>(r + 1) / static_cast<double>(n);
    }
}

double EmpiricalCdf::operator()(double x, double y) const {
    std::size_t hits = 0;
    for (const auto& p : rank_points_)
        if (p[0] <= x && p[1] <= y) ++hits;
    return static_cast<double>(hits) / static_cast<double>(rank_points_.size());
}

double empirical_copula(const SampleSet& s, double x, double y) {
    return EmpiricalCdf(s)(x, y);
}

} // namespace copulab
