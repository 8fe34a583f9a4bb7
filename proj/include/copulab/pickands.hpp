#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace copulab {

// A dependence measure on [0,1] stored in three independent components:
// point masses, a piecewise-constant Lebesgue density, and a multiple of the
// Cantor measure as the singular-continuous part.  Valid measures have total
// mass 1 and barycenter 1/2; validation reports both residuals instead of
// throwing so that callers can decide.
struct PickandsAtom {
    double t = 0.0;
    double w = 0.0;
};

struct StepDensity {
    std::vector<double> breaks; // 0 = b0 < b1 < ... < bk = 1 when present
    std::vector<double> values; // one value per interval, >= 0

    bool empty() const { return breaks.empty(); }
};

class PickandsMeasure {
public:
    PickandsMeasure() = default;
    PickandsMeasure(std::vector<PickandsAtom> atoms, StepDensity density,
                    double singular_weight);

    const std::vector<PickandsAtom>& atoms() const { return atoms_; }
    const StepDensity& density() const { return density_; }
    double singular_weight() const { return singular_weight_; }

    double total_mass() const;
    double mean() const;

    // F(t) = measure of [0,t]; cdf_left is the left limit F(t-).
    double cdf(double t) const;
    double cdf_left(double t) const;

    // Integral of the cdf from 0 to t, in closed form per component.
    double integral_cdf(double t) const;

    // Weight of the atom exactly at location t (0.0 when none).
    double atom_mass(double t) const;

private:
    std::vector<PickandsAtom> atoms_;
    StepDensity density_;
    double singular_weight_ = 0.0;
};

struct MeasureValidation {
    double mass_residual = 0.0;
    double mean_residual = 0.0;
    bool structure_ok = true;
    std::string structure_error;

    bool pass(double tol = 1e-12) const {
        return structure_ok && mass_residual <= tol && mean_residual <= tol;
    }
};

MeasureValidation validate_measure(const PickandsMeasure& m);

// Smallest and largest points of the support: L = sup{x : F(x) = 0} and
// R = inf{x : F(x) = 1}, with sup(empty) = 0 and inf(empty) = 1.
std::pair<double, double> endpoints(const PickandsMeasure& m);

// Rescale an arbitrary finite measure (mass 1, mean anywhere) to barycenter
// 1/2 by mixing in a boundary atom: mean > 1/2 gets (1-a)*delta_0 + a*mu with
// a = 1/(2*mean); mean < 1/2 gets (1-b)*delta_1 + b*mu with
// b = 1/(2*(1-mean)).  Requires mass 1 on input.
PickandsMeasure normalize(const PickandsMeasure& m);

// Mirror image under t -> 1-t.  The Cantor part is symmetric, so only atoms
// and density pieces move.
PickandsMeasure reflect(const PickandsMeasure& m);

// A dependence function A on [0,1]: convex, max(1-t,t) <= A <= 1, with
// one-sided derivatives available everywhere.  Instances come either from a
// measure through upsilon() or from a closed-form family.
class PickandsFunction {
public:
    class Impl {
    public:
        virtual ~Impl() = default;
        virtual double value(double t) const = 0;
        virtual double d_plus(double t) const = 0;  // right derivative, t in [0,1)
        virtual double d_minus(double t) const = 0; // left derivative, t in (0,1]
        virtual const PickandsMeasure* measure() const { return nullptr; }
        virtual std::shared_ptr<const Impl> reflected() const = 0;
        virtual std::string describe() const = 0;
    };

    explicit PickandsFunction(std::shared_ptr<const Impl> impl)
        : impl_(std::move(impl)) {}

    double operator()(double t) const { return impl_->value(t); }
    double d_plus(double t) const { return impl_->d_plus(t); }
    double d_minus(double t) const { return impl_->d_minus(t); }

    // Defining measure when the function was built from one, else nullptr.
    const PickandsMeasure* measure() const { return impl_->measure(); }

    PickandsFunction reflected() const {
        return PickandsFunction(impl_->reflected());
    }

    std::string describe() const { return impl_->describe(); }

    const Impl& impl() const { return *impl_; }

private:
    std::shared_ptr<const Impl> impl_;
};

// Closed-form logistic family A(t) = (t^theta + (1-t)^theta)^(1/theta),
// evaluated in a scale-free form that stays stable for large theta.
class GumbelFunction final : public PickandsFunction::Impl {
public:
    explicit GumbelFunction(double theta);

    double value(double t) const override;
    double d_plus(double t) const override { return slope(t); }
    double d_minus(double t) const override { return slope(t); }
    std::shared_ptr<const Impl> reflected() const override;
    std::string describe() const override { return "gumbel"; }

    double theta() const { return theta_; }

private:
    double slope(double t) const;

    double theta_;
};

// The measure-to-function map
//   A(t) = 1 - t + 2 * integral_0^t F(z) dz
// evaluated in closed form: atoms contribute w*(t-t_i)+, density pieces
// contribute quadratics, the Cantor part uses cantor_integral.  Throws
// InvalidMeasure unless validate_measure passes at 1e-12.
PickandsFunction upsilon(const PickandsMeasure& m);

// Logistic (Gumbel) family A(t) = (t^theta + (1-t)^theta)^(1/theta),
// theta >= 1.  theta = 1 is independence, theta -> infinity tends to
// complete dependence.
PickandsFunction gumbel_function(double theta);

// G_A(t) = A(t) + D+A(t) * (1 - t) on [0,1), with G_A(1) = 1.  This is the
// non-decreasing right-continuous factor used by the extreme value Markov
// kernel; it also equals 2 * integral of F over [0,t] plus corrections, and
// ranges over [A(0) + D+A(0), 1].
double g_a(const PickandsFunction& a, double t);

struct FunctionValidation {
    double bound_residual = 0.0;      // max violation of max(1-t,t) <= A <= 1
    double end_residual = 0.0;        // max of |A(0)-1|, |A(1)-1|
    double convexity_residual = 0.0;  // max decrease of D+A along the grid
    double derivative_residual = 0.0; // max violation of -1 <= D-A <= D+A <= 1
    bool pass(double tol = 1e-12) const {
        return bound_residual <= tol && end_residual <= tol &&
               convexity_residual <= tol && derivative_residual <= tol;
    }
};

FunctionValidation validate_function(const PickandsFunction& a, int grid_n = 1000);

} // namespace copulab
