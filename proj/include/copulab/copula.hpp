#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace copulab {

// A point mass of the conditional distribution y -> K(x, [0,y]).
struct KernelJump {
    double y = 0.0;
    double mass = 0.0;
};

class Copula;

// Family implementations provide the interior formulas; the Copula wrapper
// pins the boundary values C(x,0) = C(0,y) = 0, C(x,1) = x, C(1,y) = y and
// K(x,[0,1]) = 1 before dispatching, so the grounded/marginal identities hold
// exactly for every family.
class CopulaImpl {
public:
    virtual ~CopulaImpl() = default;

    // C(x,y) for 0 < x,y < 1.
    virtual double cdf_interior(double x, double y) const = 0;

    // K(x,[0,y]) for x in [0,1], 0 <= y < 1.  Families pick their own
    // convention on the null set x in {0,1}: extreme value copulas use the
    // constant 1, everything else conditions uniformly.
    virtual double kernel_interior(double x, double y) const = 0;

    // Point masses of K(x, .) at fixed x, sorted by location.  Empty for
    // absolutely continuous conditionals.
    virtual std::vector<KernelJump> kernel_jumps(double) const { return {}; }

    virtual std::shared_ptr<const CopulaImpl> transposed() const = 0;

    virtual std::string family() const = 0;
};

class Copula {
public:
    explicit Copula(std::shared_ptr<const CopulaImpl> impl)
        : impl_(std::move(impl)) {}

    double cdf(double x, double y) const {
        if (x <= 0.0 || y <= 0.0) return 0.0;
        if (x >= 1.0 && y >= 1.0) return 1.0;
        if (y >= 1.0) return x;
        if (x >= 1.0) return y;
        return impl_->cdf_interior(x, y);
    }

    // Conditional distribution function K(x, [0,y]).
    double kernel_cdf(double x, double y) const {
        if (y >= 1.0) return 1.0;
        if (y < 0.0) return 0.0;
        return impl_->kernel_interior(std::min(1.0, std::max(0.0, x)), y);
    }

    std::vector<KernelJump> kernel_jumps(double x) const {
        return impl_->kernel_jumps(x);
    }

    Copula transposed() const { return Copula(impl_->transposed()); }

    std::string family() const { return impl_->family(); }

    const CopulaImpl& impl() const { return *impl_; }
    std::shared_ptr<const CopulaImpl> impl_ptr() const { return impl_; }

private:
    std::shared_ptr<const CopulaImpl> impl_;
};

// Comonotone, countermonotone and independence copulas.
Copula minimum_copula();      // M(x,y) = min(x,y)
Copula countermonotone();     // W(x,y) = max(x+y-1, 0)
Copula independence();        // Pi(x,y) = x*y

struct GridViolation {
    double residual = 0.0;
    double x = 0.0;
    double y = 0.0;

    void update(double r, double px, double py) {
        if (r > residual) {
            residual = r;
            x = px;
            y = py;
        }
    }
};

// Grid audit of the copula axioms: boundary values, rectangle volumes
// >= 0 (2-increasing), and the Lipschitz bound along grid steps.  Residuals
// are worst violations, 0 when clean.
struct CopulaValidation {
    int grid_n = 0;
    GridViolation boundary;
    GridViolation rectangle;
    GridViolation lipschitz;

    double worst() const;
    bool pass(double tol) const { return worst() <= tol; }
};

CopulaValidation validate_copula(const Copula& c, int grid_n);

// | integral_0^x K(s,[0,y]) ds  -  C(x,y) |  with midpoint quadrature on
// quad_n panels.  Near zero (up to quadrature error) for every copula: the
// kernel disintegrates the copula measure.
double disintegration_residual(const Copula& c, double x, double y, int quad_n = 4096);

// Generalized inverse  inf { y : K(x,[0,y]) >= u }  by bisection; crosses
// kernel jumps and lands on the jump location within the bracket tolerance.
double kernel_quantile(const Copula& c, double x, double u,
                       double tol = 1e-12, int max_iter = 200);

struct SampleSet {
    std::uint64_t seed = 0;
    std::vector<std::array<double, 2>> points;
};

// Conditional-inverse sampler: x = u1, y = kernel_quantile(x, u2), with both
// uniforms taken in order from the counter generator.  Bitwise reproducible
// for a given (n, seed).
SampleSet sample(const Copula& c, int n, std::uint64_t seed);

// Rank-based empirical copula of a sample; ranks are computed per coordinate
// with ties broken by sample index.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(const SampleSet& s);
    double operator()(double x, double y) const;

private:
    std::vector<std::array<double, 2>> rank_points_;
};

double empirical_copula(const SampleSet& s, double x, double y);

} // namespace copulab
