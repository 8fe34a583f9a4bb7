#include "copulab/evc.hpp"

#include <algorithm>
#include <cmath>

#include "copulab/errors.hpp"

namespace copulab {

namespace {

const ExtremeValueCopula& as_evc(const Copula& c, const char* op) {
    const auto* evc = dynamic_cast<const ExtremeValueCopula*>(&c.impl());
    if (!evc)
        throw DomainError(std::string(op) + " needs an extreme value copula");
    return *evc;
}

const PickandsMeasure& require_measure(const ExtremeValueCopula& evc, const char* op) {
    const PickandsMeasure* m = evc.dependence_function().measure();
    if (!m)
        throw MeasureUnavailable(std::string(op) +
                                 " needs a measure-backed dependence function");
    return *m;
}

} // namespace

double ExtremeValueCopula::cdf_interior(double x, double y) const {
    double lx = std::log(x), ly = std::log(y);
    double s = lx + ly;
    return std::exp(a_(lx / s) * s);
}

double ExtremeValueCopula::kernel_interior(double x, double y) const {
    if (x <= 0.0 || x >= 1.0) return 1.0;
    if (y <= 0.0) return 0.0;
    double lx = std::log(x), ly = std::log(y);
    double s = lx + ly;
    double t = lx / s;
    double k = std::exp(a_(t) * s - lx) * g_a(a_, t);
    return std::min(1.0, std::max(0.0, k));
}

std::vector<KernelJump> ExtremeValueCopula::kernel_jumps(double x) const {
    std::vector<KernelJump> jumps;
    const PickandsMeasure* m = a_.measure();
    if (!m || x <= 0.0 || x >= 1.0) return jumps;
    for (const auto& atom : m->atoms()) {
        if (!(atom.t > 0.0 && atom.t < 1.0)) continue;
        double y = graph_function(atom.t, x);
        // C(x, f_t(x)) = x^(A(t)/t), so mass = 2 w (1-t) x^(A(t)/t - 1)
        double mass = 2.0 * atom.w * (1.0 - atom.t) *
                      std::pow(x, a_(atom.t) / atom.t - 1.0);
        jumps.push_back({y, mass});
    }
    std::sort(jumps.begin(), jumps.end(),
              [](const KernelJump& a, const KernelJump& b) { return a.y < b.y; });
    return jumps;
}

std::shared_ptr<const CopulaImpl> ExtremeValueCopula::transposed() const {
    return std::make_shared<ExtremeValueCopula>(a_.reflected());
}

std::string ExtremeValueCopula::family() const {
    return a_.describe() == "gumbel" ? "gumbel" : "evc";
}

Copula evc_from_measure(const PickandsMeasure& m) {
    return Copula(std::make_shared<ExtremeValueCopula>(upsilon(m)));
}

Copula evc_from_function(PickandsFunction a) {
    return Copula(std::make_shared<ExtremeValueCopula>(std::move(a)));
}

double graph_function(double t, double x) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::pow(x, 1.0 / t - 1.0);
}

double graph_mass(const Copula& c, double t) {
    const auto& evc = as_evc(c, "graph_mass");
    const auto& m = require_measure(evc, "graph_mass");
    if (!(t > 0.0 && t < 1.0)) return 0.0;
    double w = m.atom_mass(t);
    if (w == 0.0) return 0.0;
    return 2.0 * t * (1.0 - t) / evc.dependence_function()(t) * w;
}

MassDecomposition component_masses(const Copula& c) {
    const auto& evc = as_evc(c, "component_masses");
    MassDecomposition d;
    const PickandsMeasure* mp = evc.dependence_function().measure();
    if (!mp) {
        // Function-backed instances carry no atoms (the closed-form family
        // is smooth), so the discrete part is empty.
        d.rest = 1.0;
        return d;
    }
    const PickandsMeasure& m = *mp;
    for (const auto& atom : m.atoms()) {
        if (!(atom.t > 0.0 && atom.t < 1.0)) continue;
        double mass = 2.0 * atom.t * (1.0 - atom.t) /
                      evc.dependence_function()(atom.t) * atom.w;
        d.per_atom.push_back({atom.t, mass});
        d.discrete += mass;
    }
    d.rest = 1.0 - d.discrete;
    return d;
}

SupportBand support_bounds(const Copula& c, double x) {
    const auto& evc = as_evc(c, "support_bounds");
    const auto& m = require_measure(evc, "support_bounds");
    auto [lo, hi] = endpoints(m);
    SupportBand band;
    band.lo = lo;
    band.hi = hi;
    band.y_lo = graph_function(lo, x);
    band.y_hi = graph_function(hi, x);
    return band;
}

double jump_size(const Copula& c, double x, double t) {
    const auto& evc = as_evc(c, "jump_size");
    const auto& a = evc.dependence_function();
    if (!(t > 0.0 && t < 1.0))
        throw NotAnAtom("jump_size needs an atom location in (0,1)");
    double w;
    if (const PickandsMeasure* m = a.measure()) {
        w = m->atom_mass(t);
    } else {
        w = 0.5 * (a.d_plus(t) - a.d_minus(t));
    }
    if (!(w > 0.0))
        throw NotAnAtom("dependence function has no kink at the given t");
    return 2.0 * w * (1.0 - t) * std::pow(x, a(t) / t - 1.0);
}

} // namespace copulab
