#pragma once

#include <memory>
#include <vector>

#include "copulab/copula.hpp"

namespace copulab {

// Straight shuffle of M: the unit square is cut into N vertical stripes and
// stripe i is lifted to the diagonal of stripe sigma(i).  All mass lives on
// the graph of the piecewise translation h; the kernel is the indicator
// 1[h(x) <= y].  Stripes are left-closed, right-open.
struct ShuffleSpec {
    int N = 1;
    std::vector<int> sigma; // permutation of 1..N, one-based
};

class ShuffleCopula final : public CopulaImpl {
public:
    explicit ShuffleCopula(ShuffleSpec spec);

    double cdf_interior(double x, double y) const override;
    double kernel_interior(double x, double y) const override;
    std::vector<KernelJump> kernel_jumps(double x) const override;
    std::shared_ptr<const CopulaImpl> transposed() const override;
    std::string family() const override { return "shuffle"; }

    double map(double x) const; // the rearrangement h
    const ShuffleSpec& spec() const { return spec_; }

private:
    ShuffleSpec spec_;
    std::vector<double> shift_; // per-stripe translation
};

Copula shuffle_copula(const ShuffleSpec& spec);
double shuffle_map(const ShuffleSpec& spec, double x);

// Checkerboard copula: mass t_ij spread over cell (i,j) as a rescaled copy
// of the base copula.  N*T must be doubly stochastic (rows and columns of T
// sum to 1/N within 1e-12) or NotDoublyStochastic is thrown.
struct CheckerboardSpec {
    int N = 1;
    std::vector<std::vector<double>> T; // N rows of N weights
};

class CheckerboardCopula final : public CopulaImpl {
public:
    CheckerboardCopula(CheckerboardSpec spec, Copula base);

    double cdf_interior(double x, double y) const override;
    double kernel_interior(double x, double y) const override;
    std::vector<KernelJump> kernel_jumps(double x) const override;
    std::shared_ptr<const CopulaImpl> transposed() const override;
    std::string family() const override { return "checkerboard"; }

    const CheckerboardSpec& spec() const { return spec_; }
    const Copula& base() const { return base_; }

private:
    CheckerboardSpec spec_;
    Copula base_;
};

Copula checkerboard(const CheckerboardSpec& spec, const Copula& base);

// Checkerboard approximation of an arbitrary copula: cell weights are the
// copula measure of the cells, computed by inclusion-exclusion of the cdf.
CheckerboardSpec checkerboard_weights(const Copula& a, int N);
Copula checkerboard_approx(const Copula& a, int N, const Copula& base);

// Countable mixture of rotations R_r(x) = x + r mod 1 with geometric weights
// 2^-n for n = 1..N plus a 2^-N uniform tail, so the weights add to 1
// exactly.  The conditional law at x puts mass 2^-n on the point R_{r_n}(x);
// with offsets enumerating the rationals the copula is singular along a
// dense family of line segments yet has full support.
struct RotationSpec {
    std::vector<double> offsets; // r_1 .. r_N in [0,1)
};

class RotationCopula final : public CopulaImpl {
public:
    explicit RotationCopula(RotationSpec spec);

    double cdf_interior(double x, double y) const override;
    double kernel_interior(double x, double y) const override;
    std::vector<KernelJump> kernel_jumps(double x) const override;
    std::shared_ptr<const CopulaImpl> transposed() const override;
    std::string family() const override { return "rotation"; }

    const RotationSpec& spec() const { return spec_; }
    double tail_weight() const { return tail_; }

private:
    RotationSpec spec_;
    std::vector<double> weight_; // 2^-n per offset
    double tail_;
};

// Offsets 0/1, then reduced fractions p/q ordered by denominator q and
// numerator p: 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
RotationSpec default_rotations(int terms);

Copula rotation_copula(const RotationSpec& spec);

// lambda([0,x] intersect {s : R_r(s) <= y}); exposed for direct checks
// (r = 0 reduces to min(x,y), the comonotone cdf).
double rotation_overlap(double x, double y, double r);

// Convex combination sum w_i * C_i.  Weights must be positive and sum to 1
// within 1e-12, else WeightsInvalid.
class MixCopula final : public CopulaImpl {
public:
    MixCopula(std::vector<double> weights, std::vector<Copula> parts);

    double cdf_interior(double x, double y) const override;
    double kernel_interior(double x, double y) const override;
    std::vector<KernelJump> kernel_jumps(double x) const override;
    std::shared_ptr<const CopulaImpl> transposed() const override;
    std::string family() const override { return "mix"; }

    const std::vector<double>& weights() const { return weights_; }
    const std::vector<Copula>& parts() const { return parts_; }

private:
    std::vector<double> weights_;
    std::vector<Copula> parts_;
};

Copula convex_combination(const std::vector<double>& weights,
                          const std::vector<Copula>& parts);

} // namespace copulab
