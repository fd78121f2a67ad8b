#ifndef STAB_UNIFORMIZE_HPP
#define STAB_UNIFORMIZE_HPP

#include <complex>

namespace stab {

/**
 * Uniformizing map of the Sigma slice:
 *   F(z) = 1/2 + (1/sqrt(pi)) * Integral_0^z exp(-t^2) dt,
 * an entire function with F(z) + F(-z) = 1 and F'(z) = exp(-z^2)/sqrt(pi).
 * F(z) is the value Z(O_p) at the Sigma-point with coordinate z.
 *
 * Accuracy: <= 1e-12 absolute-or-relative (whichever is larger); for
 * moderate |z| (<= 4) where |F| stays within double range the absolute
 * bound holds.
 */
std::complex<double> uniformize(std::complex<double> z);

/** Derivative exp(-z^2)/sqrt(pi). */
std::complex<double> uniformize_deriv(std::complex<double> z);

/**
 * Damped Newton inversion of F from a caller-provided seed (F is not
 * injective on C; no global inverse is attempted).  Returns z with
 * |F(z) - target| <= tol, or throws Undecidable after maxIter steps.
 */
std::complex<double> uniformize_invert(std::complex<double> target,
                                       std::complex<double> seed,
                                       double tol = 1e-12, int maxIter = 200);

} // namespace stab

#endif
