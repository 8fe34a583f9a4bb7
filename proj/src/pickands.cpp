#include "copulab/pickands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "copulab/cantor.hpp"
#include "copulab/errors.hpp"

namespace copulab {

namespace {

double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

bool density_shape_ok(const StepDensity& d) {
    if (d.empty()) return d.values.empty();
    if (d.breaks.size() < 2) return false;
    return d.values.size() == d.breaks.size() - 1;
}

} // namespace

PickandsMeasure::PickandsMeasure(std::vector<PickandsAtom> atoms, StepDensity density,
                                 double singular_weight)
    : atoms_(std::move(atoms)), density_(std::move(density)),
      singular_weight_(singular_weight) {}

double PickandsMeasure::total_mass() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.w;
    if (density_shape_ok(density_) && !density_.empty()) {
        for (std::size_t i = 0; i + 1 < density_.breaks.size(); ++i)
            s += density_.values[i] * (density_.breaks[i + 1] - density_.breaks[i]);
    }
    s += singular_weight_;
    return s;
}

double PickandsMeasure::mean() const {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.w * a.t;
    if (density_shape_ok(density_) && !density_.empty()) {
        for (std::size_t i = 0; i + 1 < density_.breaks.size(); ++i) {
            double lo = density_.breaks[i], hi = density_.breaks[i + 1];
            s += density_.values[i] * 0.5 * (hi * hi - lo * lo);
        }
    }
    s += singular_weight_ * 0.5;
    return s;
}

double PickandsMeasure::cdf(double t) const {
    double s = 0.0;
    for (const auto& a : atoms_)
        if (a.t <= t) s += a.w;
    if (density_shape_ok(density_) && !density_.empty()) {
        for (std::size_t i = 0; i + 1 < density_.breaks.size(); ++i) {
            double lo = density_.breaks[i], hi = density_.breaks[i + 1];
            if (t <= lo) break;
            s += density_.values[i] * (std::min(t, hi) - lo);
        }
    }
    if (singular_weight_ > 0.0) s += singular_weight_ * cantor_cdf(t);
    return s;
}

double PickandsMeasure::cdf_left(double t) const {
    double s = 0.0;
    for (const auto& a : atoms_)
        if (a.t < t) s += a.w;
    if (density_shape_ok(density_) && !density_.empty()) {
        for (std::size_t i = 0; i + 1 < density_.breaks.size(); ++i) {
            double lo = density_.breaks[i], hi = density_.breaks[i + 1];
            if (t <= lo) break;
            s += density_.values[i] * (std::min(t, hi) - lo);
        }
    }
    if (singular_weight_ > 0.0) s += singular_weight_ * cantor_cdf(t);
    return s;
}

double PickandsMeasure::integral_cdf(double t) const {
    t = clamp01(t);
    double s = 0.0;
    for (const auto& a : atoms_)
        if (t > a.t) s += a.w * (t - a.t);
    if (density_shape_ok(density_) && !density_.empty()) {
        double mass = 0.0; // density mass accumulated up to the current break
        for (std::size_t i = 0; i + 1 < density_.breaks.size(); ++i) {
            double lo = density_.breaks[i], hi = density_.breaks[i + 1];
            if (t <= lo) break;
            double dt = std::min(t, hi) - lo;
            s += mass * dt + 0.5 * density_.values[i] * dt * dt;
            mass += density_.values[i] * (hi - lo);
        }
    }
    if (singular_weight_ > 0.0) s += singular_weight_ * cantor_integral(t);
    return s;
}

double PickandsMeasure::atom_mass(double t) const {
    for (const auto& a : atoms_)
        if (a.t == t) return a.w;
    return 0.0;
}

MeasureValidation validate_measure(const PickandsMeasure& m) {
    MeasureValidation v;
    const auto& atoms = m.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i].w > 0.0)) {
            v.structure_ok = false;
            v.structure_error = "atom weights must be positive";
            break;
        }
        if (atoms[i].t < 0.0 || atoms[i].t > 1.0) {
            v.structure_ok = false;
            v.structure_error = "atom locations must lie in [0,1]";
            break;
        }
        if (i > 0 && !(atoms[i - 1].t < atoms[i].t)) {
            v.structure_ok = false;
            v.structure_error = "atom locations must be strictly increasing";
            break;
        }
    }
    const auto& d = m.density();
    if (v.structure_ok && !d.empty()) {
        if (!density_shape_ok(d)) {
            v.structure_ok = false;
            v.structure_error = "density needs one value per break interval";
        } else if (d.breaks.front() != 0.0 || d.breaks.back() != 1.0) {
            v.structure_ok = false;
            v.structure_error = "density breaks must start at 0 and end at 1";
        } else {
            for (std::size_t i = 0; i + 1 < d.breaks.size(); ++i)
                if (!(d.breaks[i] < d.breaks[i + 1])) {
                    v.structure_ok = false;
                    v.structure_error = "density breaks must be strictly increasing";
                    break;
                }
            for (double val : d.values)
                if (!(val >= 0.0)) {
                    v.structure_ok = false;
                    v.structure_error = "density values must be non-negative";
                    break;
                }
        }
    }
    if (v.structure_ok && m.singular_weight() < 0.0) {
        v.structure_ok = false;
        v.structure_error = "singular weight must be non-negative";
    }
    if (!density_shape_ok(d)) {
        v.mass_residual = std::numeric_limits<double>::infinity();
        v.mean_residual = std::numeric_limits<double>::infinity();
        return v;
    }
    v.mass_residual = std::fabs(m.total_mass() - 1.0);
    v.mean_residual = std::fabs(m.mean() - 0.5);
    return v;
}

std::pair<double, double> endpoints(const PickandsMeasure& m) {
    double lo = 1.0, hi = 0.0;
    bool any = false;
    for (const auto& a : m.atoms()) {
        lo = std::min(lo, a.t);
        hi = std::max(hi, a.t);
        any = true;
    }
    const auto& d = m.density();
    if (density_shape_ok(d) && !d.empty()) {
        for (std::size_t i = 0; i + 1 < d.breaks.size(); ++i) {
            if (d.values[i] > 0.0) {
                lo = std::min(lo, d.breaks[i]);
                hi = std::max(hi, d.breaks[i + 1]);
                any = true;
            }
        }
    }
    if (m.singular_weight() > 0.0) {
        lo = 0.0;
        hi = 1.0;
        any = true;
    }
    if (!any) return {1.0, 1.0};
    return {lo, hi};
}

PickandsMeasure normalize(const PickandsMeasure& m) {
    double mass = m.total_mass();
    if (std::fabs(mass - 1.0) > 1e-12)
        throw InvalidMeasure("normalize requires total mass 1");
    double mean = m.mean();
    if (mean == 0.5) return m;

    double scale;
    PickandsAtom boundary;
    if (mean > 0.5) {
        scale = 1.0 / (2.0 * mean);
        boundary = {0.0, 1.0 - scale};
    } else {
        scale = 1.0 / (2.0 * (1.0 - mean));
        boundary = {1.0, 1.0 - scale};
    }

    std::vector<PickandsAtom> atoms;
    atoms.reserve(m.atoms().size() + 1);
    for (const auto& a : m.atoms()) atoms.push_back({a.t, scale * a.w});
    if (boundary.w > 0.0) {
        bool merged = false;
        for (auto& a : atoms)
            if (a.t == boundary.t) {
                a.w += boundary.w;
                merged = true;
                break;
            }
        if (!merged) atoms.push_back(boundary);
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const PickandsAtom& a, const PickandsAtom& b) { return a.t < b.t; });

    StepDensity density = m.density();
    for (double& val : density.values) val *= scale;
    return PickandsMeasure(std::move(atoms), std::move(density),
                           scale * m.singular_weight());
}

PickandsMeasure reflect(const PickandsMeasure& m) {
    std::vector<PickandsAtom> atoms;
    atoms.reserve(m.atoms().size());
    for (auto it = m.atoms().rbegin(); it != m.atoms().rend(); ++it)
        atoms.push_back({1.0 - it->t, it->w});

    StepDensity density;
    if (!m.density().empty()) {
        const auto& d = m.density();
        density.breaks.reserve(d.breaks.size());
        for (auto it = d.breaks.rbegin(); it != d.breaks.rend(); ++it)
            density.breaks.push_back(1.0 - *it);
        density.values.assign(d.values.rbegin(), d.values.rend());
    }
    return PickandsMeasure(std::move(atoms), std::move(density), m.singular_weight());
}

namespace {

class MeasureBacked final : public PickandsFunction::Impl {
public:
    explicit MeasureBacked(PickandsMeasure m) : m_(std::move(m)) {}

    double value(double t) const override {
        t = clamp01(t);
        return 1.0 - t + 2.0 * m_.integral_cdf(t);
    }

    double d_plus(double t) const override {
        if (t >= 1.0) return d_minus(1.0);
        return 2.0 * m_.cdf(std::max(0.0, t)) - 1.0;
    }

    double d_minus(double t) const override {
        if (t <= 0.0) return -1.0;
        return 2.0 * m_.cdf_left(std::min(1.0, t)) - 1.0;
    }

    const PickandsMeasure* measure() const override { return &m_; }

    std::shared_ptr<const Impl> reflected() const override {
        return std::make_shared<MeasureBacked>(reflect(m_));
    }

    std::string describe() const override { return "from-measure"; }

private:
    PickandsMeasure m_;
};

} // namespace

GumbelFunction::GumbelFunction(double theta) : theta_(theta) {
    if (!(theta >= 1.0))
        throw DomainError("gumbel_function requires theta >= 1");
}

double GumbelFunction::value(double t) const {
    if (t <= 0.0 || t >= 1.0) return 1.0;
    double hi = std::max(t, 1.0 - t);
    double r = std::min(t, 1.0 - t) / hi;
    return hi * std::exp(std::log1p(std::pow(r, theta_)) / theta_);
}

std::shared_ptr<const PickandsFunction::Impl> GumbelFunction::reflected() const {
    // symmetric in t <-> 1-t
    return std::make_shared<GumbelFunction>(theta_);
}

double GumbelFunction::slope(double t) const {
    t = clamp01(t);
    double hi = std::max(t, 1.0 - t);
    double a = t / hi, b = (1.0 - t) / hi;
    double num = std::pow(a, theta_ - 1.0) - std::pow(b, theta_ - 1.0);
    double den = hi * (std::pow(a, theta_) + std::pow(b, theta_));
    return value(t) * num / den;
}

PickandsFunction upsilon(const PickandsMeasure& m) {
    MeasureValidation v = validate_measure(m);
    if (!v.pass()) {
        char buf[160];
        if (!v.structure_ok) {
            std::snprintf(buf, sizeof(buf), "invalid measure: %s",
                          v.structure_error.c_str());
        } else {
            std::snprintf(buf, sizeof(buf),
                          "invalid measure: mass residual %.3e, mean residual %.3e",
                          v.mass_residual, v.mean_residual);
        }
        throw InvalidMeasure(buf);
    }
    return PickandsFunction(std::make_shared<MeasureBacked>(m));
}

PickandsFunction gumbel_function(double theta) {
    return PickandsFunction(std::make_shared<GumbelFunction>(theta));
}

double g_a(const PickandsFunction& a, double t) {
    if (t >= 1.0) return 1.0;
    t = std::max(0.0, t);
    return a(t) + a.d_plus(t) * (1.0 - t);
}

FunctionValidation validate_function(const PickandsFunction& a, int grid_n) {
    FunctionValidation v;
    double prev_dp = -1.0;
    for (int i = 0; i <= grid_n; ++i) {
        double t = static_cast<double>(i) / grid_n;
        double at = a(t);
        double lower = std::max(1.0 - t, t);
        v.bound_residual = std::max(v.bound_residual,
                                    std::max(lower - at, at - 1.0));
        double dp = (i < grid_n) ? a.d_plus(t) : a.d_minus(1.0);
        double dm = (i > 0) ? a.d_minus(t) : a.d_plus(0.0);
        v.derivative_residual = std::max(v.derivative_residual,
                                         std::max({-1.0 - dm, dm - dp, dp - 1.0}));
        v.convexity_residual = std::max(v.convexity_residual, prev_dp - dp);
        prev_dp = dp;
    }
    v.bound_residual = std::max(v.bound_residual, 0.0);
    v.derivative_residual = std::max(v.derivative_residual, 0.0);
    v.convexity_residual = std::max(v.convexity_residual, 0.0);
    v.end_residual = std::max(std::fabs(a(0.0) - 1.0), std::fabs(a(1.0) - 1.0));
    return v;
}

} // namespace copulab
