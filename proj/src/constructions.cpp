#include "copulab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "copulab/errors.hpp"

namespace copulab {

namespace {

int stripe_index(double x, int n) {
    int i = static_cast<int>(std::floor(x * n));
    return std::min(n - 1, std::max(0, i));
}

} // namespace

ShuffleCopula::ShuffleCopula(ShuffleSpec spec) : spec_(std::move(spec)) {
    const int n = spec_.N;
    if (n < 1 || static_cast<int>(spec_.sigma.size()) != n)
        throw DomainError("shuffle needs sigma with N entries");
    std::vector<bool> seen(n, false);
    for (int v : spec_.sigma) {
        if (v < 1 || v > n || seen[v - 1])
            throw DomainError("shuffle sigma must be a permutation of 1..N");
        seen[v - 1] = true;
    }
    shift_.resize(n);
    for (int i = 0; i < n; ++i)
        shift_[i] = static_cast<double>(spec_.sigma[i] - (i + 1)) / n;
}

double ShuffleCopula::map(double x) const {
    return x + shift_[stripe_index(x, spec_.N)];
}

double ShuffleCopula::cdf_interior(double x, double y) const {
    const int n = spec_.N;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double lo = static_cast<double>(i) / n;
        if (x <= lo) break;
        double hi = std::min(x, static_cast<double>(i + 1) / n);
        double cap = y - shift_[i]; // h(s) <= y on [lo, cap)
        double top = std::min(hi, cap);
        if (top > lo) acc += top - lo;
    }
    return acc;
}

double ShuffleCopula::kernel_interior(double x, double y) const {
    if (x <= 0.0 || x >= 1.0) return y;
    return map(x) <= y ? 1.0 : 0.0;
}

std::vector<KernelJump> ShuffleCopula::kernel_jumps(double x) const {
    if (x <= 0.0 || x >= 1.0) return {};
    return {{map(x), 1.0}};
}

std::shared_ptr<const CopulaImpl> ShuffleCopula::transposed() const {
    ShuffleSpec inv;
    inv.N = spec_.N;
    inv.sigma.resize(spec_.N);
    for (int i = 0; i < spec_.N; ++i)
        inv.sigma[spec_.sigma[i] - 1] = i + 1;
    return std::make_shared<ShuffleCopula>(std::move(inv));
}

Copula shuffle_copula(const ShuffleSpec& spec) {
    return Copula(std::make_shared<ShuffleCopula>(spec));
}

double shuffle_map(const ShuffleSpec& spec, double x) {
    return ShuffleCopula(spec).map(x);
}

CheckerboardCopula::CheckerboardCopula(CheckerboardSpec spec, Copula base)
    : spec_(std::move(spec)), base_(std::move(base)) {
    const int n = spec_.N;
    if (n < 1 || static_cast<int>(spec_.T.size()) != n)
        throw NotDoublyStochastic("checkerboard needs an N x N weight matrix");
    std::vector<double> col_sum(n, 0.0);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(spec_.T[i].size()) != n)
            throw NotDoublyStochastic("checkerboard needs an N x N weight matrix");
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            double w = spec_.T[i][j];
            if (w < -1e-12)
                throw NotDoublyStochastic("checkerboard weights must be non-negative");
            row_sum += w;
            col_sum[j] += w;
        }
        if (std::fabs(row_sum - 1.0 / n) > 1e-12)
            throw NotDoublyStochastic("checkerboard rows must sum to 1/N");
    }
    for (int j = 0; j < n; ++j)
        if (std::fabs(col_sum[j] - 1.0 / n) > 1e-12)
            throw NotDoublyStochastic("checkerboard columns must sum to 1/N");
}

double CheckerboardCopula::cdf_interior(double x, double y) const {
    const int n = spec_.N;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = std::min(1.0, x * n - i);
        if (u <= 0.0) break;
        for (int j = 0; j < n; ++j) {
            double w = spec_.T[i][j];
            double v = std::min(1.0, y * n - j);
            if (v <= 0.0) break;
            if (w == 0.0) continue;
            acc += (u >= 1.0 && v >= 1.0) ? w : w * base_.cdf(u, v);
        }
    }
    return acc;
}

double CheckerboardCopula::kernel_interior(double x, double y) const {
    const int n = spec_.N;
    if (x <= 0.0 || x >= 1.0) return y;
    const int r = stripe_index(x, n);
    const double u = x * n - r;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        double w = spec_.T[r][j];
        double v = std::min(1.0, y * n - j);
        if (v <= 0.0) break;
        if (w == 0.0) continue;
        acc += n * w * base_.kernel_cdf(u, v);
    }
    return acc;
}

std::vector<KernelJump> CheckerboardCopula::kernel_jumps(double x) const {
    const int n = spec_.N;
    if (x <= 0.0 || x >= 1.0) return {};
    const int r = stripe_index(x, n);
    const double u = x * n - r;
    std::vector<KernelJump> jumps;
    auto base_jumps = base_.kernel_jumps(u);
    for (int j = 0; j < n; ++j) {
        double w = spec_.T[r][j];
        if (w <= 0.0) continue;
        for (const auto& bj : base_jumps)
            jumps.push_back({(j + bj.y) / n, n * w * bj.mass});
    }
    std::sort(jumps.begin(), jumps.end(),
              [](const KernelJump& a, const KernelJump& b) { return a.y < b.y; });
    return jumps;
}

std::shared_ptr<const CopulaImpl> CheckerboardCopula::transposed() const {
    CheckerboardSpec t;
    t.N = spec_.N;
    t.T.assign(spec_.N, std::vector<double>(spec_.N, 0.0));
    for (int i = 0; i < spec_.N; ++i)
        for (int j = 0; j < spec_.N; ++j)
            t.T[j][i] = spec_.T[i][j];
    return std::make_shared<CheckerboardCopula>(std::move(t), base_.transposed());
}

Copula checkerboard(const CheckerboardSpec& spec, const Copula& base) {
    return Copula(std::make_shared<CheckerboardCopula>(spec, base));
}

CheckerboardSpec checkerboard_weights(const Copula& a, int N) {
    if (N < 1) throw DomainError("checkerboard_weights needs N >= 1");
    CheckerboardSpec spec;
    spec.N = N;
    spec.T.assign(N, std::vector<double>(N, 0.0));
    std::vector<double> ticks(N + 1);
    for (int i = 0; i <= N; ++i) ticks[i] = static_cast<double>(i) / N;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double w = a.cdf(ticks[i + 1], ticks[j + 1]) - a.cdf(ticks[i + 1], ticks[j]) -
                       a.cdf(ticks[i], ticks[j + 1]) + a.cdf(ticks[i], ticks[j]);
            spec.T[i][j] = std::max(w, 0.0);
        }
    return spec;
}

Copula checkerboard_approx(const Copula& a, int N, const Copula& base) {
    return checkerboard(checkerboard_weights(a, N), base);
}

RotationCopula::RotationCopula(RotationSpec spec) : spec_(std::move(spec)) {
    const int n = static_cast<int>(spec_.offsets.size());
    if (n < 1) throw DomainError("rotation needs at least one offset");
    for (double r : spec_.offsets)
        if (!(r >= 0.0 && r < 1.0))
            throw DomainError("rotation offsets must lie in [0,1)");
    weight_.resize(n);
    for (int k = 0; k < n; ++k) weight_[k] = std::ldexp(1.0, -(k + 1));
    tail_ = std::ldexp(1.0, -n);
}

namespace {

double rotate(double x, double r) {
    double z = x + r;
    return z >= 1.0 ? z - 1.0 : z;
}

} // namespace

double rotation_overlap(double x, double y, double r) {
    if (r == 0.0) return std::min(x, y);
    double direct = std::max(0.0, std::min(x, y - r)); // s + r <= y, no wrap
    double wrap_lo = 1.0 - r;                          // s + r - 1 <= y
    double wrap = std::max(0.0, std::min(x, wrap_lo + y) - wrap_lo);
    return direct + wrap;
}

double RotationCopula::cdf_interior(double x, double y) const {
    double acc = tail_ * x * y;
    for (std::size_t k = 0; k < spec_.offsets.size(); ++k)
        acc += weight_[k] * rotation_overlap(x, y, spec_.offsets[k]);
    return acc;
}

double RotationCopula::kernel_interior(double x, double y) const {
    if (x <= 0.0 || x >= 1.0) return y;
    double acc = tail_ * y;
    for (std::size_t k = 0; k < spec_.offsets.size(); ++k)
        if (rotate(x, spec_.offsets[k]) <= y) acc += weight_[k];
    return acc;
}

std::vector<KernelJump> RotationCopula::kernel_jumps(double x) const {
    if (x <= 0.0 || x >= 1.0) return {};
    std::vector<KernelJump> jumps;
    jumps.reserve(spec_.offsets.size());
    for (std::size_t k = 0; k < spec_.offsets.size(); ++k)
        jumps.push_back({rotate(x, spec_.offsets[k]), weight_[k]});
    std::sort(jumps.begin(), jumps.end(),
              [](const KernelJump& a, const KernelJump& b) { return a.y < b.y; });
    return jumps;
}

std::shared_ptr<const CopulaImpl> RotationCopula::transposed() const {
    RotationSpec t;
    t.offsets.reserve(spec_.offsets.size());
    for (double r : spec_.offsets) t.offsets.push_back(r == 0.0 ? 0.0 : 1.0 - r);
    return std::make_shared<RotationCopula>(std::move(t));
}

RotationSpec default_rotations(int terms) {
    if (terms < 1) throw DomainError("rotation needs at least one term");
    RotationSpec spec;
    spec.offsets.push_back(0.0);
    for (int q = 2; static_cast<int>(spec.offsets.size()) < terms; ++q)
        for (int p = 1; p < q && static_cast<int>(spec.offsets.size()) < terms; ++p)
            if (std::gcd(p, q) == 1)
                spec.offsets.push_back(static_cast<double>(p) / q);
    return spec;
}

Copula rotation_copula(const RotationSpec& spec) {
    return Copula(std::make_shared<RotationCopula>(spec));
}

MixCopula::MixCopula(std::vector<double> weights, std::vector<Copula> parts)
    : weights_(std::move(weights)), parts_(std::move(parts)) {
    if (weights_.empty() || weights_.size() != parts_.size())
        throw WeightsInvalid("convex combination needs matching weights and parts");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw WeightsInvalid("convex combination weights must be positive");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw WeightsInvalid("convex combination weights must sum to 1");
}

double MixCopula::cdf_interior(double x, double y) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < parts_.size(); ++k)
        acc += weights_[k] * parts_[k].cdf(x, y);
    return acc;
}

double MixCopula::kernel_interior(double x, double y) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < parts_.size(); ++k)
        acc += weights_[k] * parts_[k].kernel_cdf(x, y);
    return acc;
}

std::vector<KernelJump> MixCopula::kernel_jumps(double x) const {
    std::vector<KernelJump> jumps;
    for (std::size_t k = 0; k < parts_.size(); ++k)
        for (const auto& j : parts_[k].kernel_jumps(x))
            jumps.push_back({j.y, weights_[k] * j.mass});
    std::sort(jumps.begin(), jumps.end(),
              [](const KernelJump& a, const KernelJump& b) { return a.y < b.y; });
    std::vector<KernelJump> merged;
    for (const auto& j : jumps) {
        if (!merged.empty() && merged.back().y == j.y)
            merged.back().mass += j.mass;
        else
            merged.push_back(j);
    }
    return merged;
}

std::shared_ptr<const CopulaImpl> MixCopula::transposed() const {
    std::vector<Copula> parts;
    parts.reserve(parts_.size());
    for (const auto& p : parts_) parts.push_back(p.transposed());
    return std::make_shared<MixCopula>(weights_, std::move(parts));
}

Copula convex_combination(const std::vector<double>& weights,
                          const std::vector<Copula>& parts) {
    return Copula(std::make_shared<MixCopula>(weights, parts));
}

} // namespace copulab
