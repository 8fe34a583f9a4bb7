#pragma once

namespace copulab {

// Cantor function c(t) on [0,1], evaluated by the self-similar recursion
//   c(t) = c(3t)/2        on [0,1/3]
//   c(t) = 1/2            on [1/3,2/3]
//   c(t) = 1/2 + c(3t-2)/2 on [2/3,1]
// truncated at recursion depth 60, which is below double resolution.
double cantor_cdf(double t);

// I(t) = integral of the Cantor function from 0 to t.  Same recursion depth;
// I(1) = 1/2, so the Cantor measure has mean 1/2 and is a valid dependence
// measure on its own.
double cantor_integral(double t);

} // namespace copulab
