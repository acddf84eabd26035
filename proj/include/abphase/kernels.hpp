#pragma once

#include <cmath>

#include "abphase/types.hpp"

// Smooth replacements for the Heaviside step and Dirac delta, with the
// differentiation chain preserved analytically: step' = delta and
// delta' = delta_prime as closed forms, never finite differences.
//
// Kernel family: Gaussian,
//   delta(u)      = exp(-u^2 / 2 eps^2) / (eps sqrt(2 pi))
//   step(u)       = (1 + erf(u / (eps sqrt(2)))) / 2
//   delta_prime(u)= -u / eps^2 * delta(u)
// step(0) = 1/2, matching the half-value convention of the exact step.

namespace abphase::kernels {

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

inline double step(double u, double eps) {
    return 0.5 + 0.5 * std::erf(u / (eps * kSqrt2));
}

inline double delta(double u, double eps) {
    const double s = u / eps;
    return kInvSqrt2Pi / eps * std::exp(-0.5 * s * s);
}

inline double delta_prime(double u, double eps) {
    return -u / (eps * eps) * delta(u, eps);
}

// Second derivative of delta; used where sources need an exact d''.
inline double delta_second(double u, double eps) {
    const double e2 = eps * eps;
    return (u * u - e2) / (e2 * e2) * delta(u, eps);
}

// Time window [0, T] and its exact derivative.
inline double window(double t, double T, double eps) {
    return step(t, eps) - step(t - T, eps);
}

inline double window_deriv(double t, double T, double eps) {
    return delta(t, eps) - delta(t - T, eps);
}

inline double window_second(double t, double T, double eps) {
    return delta_prime(t, eps) - delta_prime(t - T, eps);
}

// Capacitor window [0, L] along x and its derivatives.
inline double xwindow(double x, double L, double eps) {
    return step(x, eps) - step(x - L, eps);
}

inline double xwindow_deriv(double x, double L, double eps) {
    return delta(x, eps) - delta(x - L, eps);
}

inline double xwindow_second(double x, double L, double eps) {
    return delta_prime(x, eps) - delta_prime(x - L, eps);
}

}  // namespace abphase::kernels
