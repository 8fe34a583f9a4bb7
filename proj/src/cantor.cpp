#include "copulab/cantor.hpp"

namespace copulab {

namespace {

constexpr int kDepth = 60;

double cantor_rec(double t, int depth) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (depth <= 0) return 0.5;
    if (t < 1.0 / 3.0) return 0.5 * cantor_rec(3.0 * t, depth - 1);
    if (t > 2.0 / 3.0) return 0.5 + 0.5 * cantor_rec(3.0 * t - 2.0, depth - 1);
    return 0.5;
}

double cantor_int_rec(double t, int depth) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 0.5;
    if (depth <= 0) return 0.5 * t;
    if (t < 1.0 / 3.0) return cantor_int_rec(3.0 * t, depth - 1) / 6.0;
    if (t <= 2.0 / 3.0) return 1.0 / 12.0 + 0.5 * (t - 1.0 / 3.0);
    return 0.25 + 0.5 * (t - 2.0 / 3.0) + cantor_int_rec(3.0 * t - 2.0, depth - 1) / 6.0;
}

} // namespace

double cantor_cdf(double t) { return cantor_rec(t, kDepth); }

double cantor_integral(double t) { return cantor_int_rec(t, kDepth); }

} // namespace copulab
