#pragma once

#include <memory>
#include <vector>

#include "copulab/copula.hpp"
#include "copulab/pickands.hpp"

namespace copulab {

// C(x,y) = (xy)^A(log x / log xy) with a dependence function A.  The Markov
// kernel is closed-form,
//     K(x,[0,y]) = (C(x,y)/x) * G_A(log x / log xy),
// with K identically 1 on the null set x in {0,1} and K(x,[0,y]) = y for
// y in {0,1}.  When A comes from a measure, the kernel's point masses sit on
// the power curves y = x^(1/t - 1) through the measure's atoms.
class ExtremeValueCopula final : public CopulaImpl {
public:
    explicit ExtremeValueCopula(PickandsFunction a) : a_(std::move(a)) {}

    double cdf_interior(double x, double y) const override;
    double kernel_interior(double x, double y) const override;
    std::vector<KernelJump> kernel_jumps(double x) const override;
    std::shared_ptr<const CopulaImpl> transposed() const override;
    std::string family() const override;

    const PickandsFunction& dependence_function() const { return a_; }

private:
    PickandsFunction a_;
};

Copula evc_from_measure(const PickandsMeasure& m);

// Wrap an arbitrary dependence function (caller vouches for its validity;
// see validate_function).
Copula evc_from_function(PickandsFunction a);

// The curve y = f_t(x) = x^(1/t - 1) carrying the kernel mass of an atom at
// t, with the degenerate ends f_0 = 0 and f_1 = 1.
double graph_function(double t, double x);

// Mass the copula measure places on the graph of f_t:
//     (2 t (1-t) / A(t)) * theta({t}),
// zero when t is not an atom.  Needs the defining measure.
double graph_mass(const Copula& c, double t);

struct AtomMass {
    double t = 0.0;
    double mass = 0.0;
};

// Split of total mass 1 into the discrete part carried by the atom graphs
// and the remainder.  The remainder is not separated further: telling an
// absolutely continuous part from a Cantor-type singular one is ill-posed
// at double precision.
struct MassDecomposition {
    std::vector<AtomMass> per_atom; // atoms with t in (0,1)
    double discrete = 0.0;
    double rest = 0.0;
};

// For function-backed copulas without a measure (the smooth closed-form
// family) the discrete part is empty and rest = 1.
MassDecomposition component_masses(const Copula& c);

struct SupportBand {
    double lo = 0.0; // endpoints of the support of the dependence measure
    double hi = 1.0;
    double y_lo = 0.0; // f_lo(x) <= y <= f_hi(x) bounds the support section
    double y_hi = 1.0;
};

// Support geometry at fixed x: all copula mass in the fiber over x lies
// between the power curves through the measure's support endpoints.
SupportBand support_bounds(const Copula& c, double x);

// Size of the one-sided partial derivative gap of C across the curve of the
// atom at t, at abscissa x:
//     2 * theta({t}) * (1-t) * C(x, f_t(x)) / x.
// Works from the one-sided derivatives of A, so it does not need the measure;
// throws NotAnAtom when A has no kink at t.
double jump_size(const Copula& c, double x, double t);

} // namespace copulab
