#include "stab/uniformize.hpp"

#include <array>
#include <cmath>

#include "stab/errors.hpp"

namespace stab {

namespace {

constexpr double INV_SQRT_PI = 0.5641895835477562869480794515607726;

// 20-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre polynomial.
struct GL20 {
    std::array<double, 20> x{}, w{};
    GL20() {
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::fabs(dt) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[static_cast<size_t>(i)] = t;
            w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GL20& gl20() {
    static const GL20 g;
    return g;
}

// Maclaurin series of erf(z), accurate for moderate |z| (no cancellation
// blow-up below |z| ~ 2).  Odd in z term by term.
std::complex<double> erfSeries(std::complex<double> z) {
    std::complex<double> z2 = z * z;
    std::complex<double> term = z;  // z^{2n+1} / n!
    std::complex<double> sum = z;
    for (int n = 1; n < 200; ++n) {
        term *= -z2 / static_cast<double>(n);
        std::complex<double> add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return 2.0 * INV_SQRT_PI * sum;
}

// Composite Gauss-Legendre quadrature of (2/sqrt(pi)) exp(-t^2) along the
// straight segment [0, z].  The parametrization keeps the node set even in
// z, so erfQuad(-z) == -erfQuad(z) bit for bit.
std::complex<double> erfQuad(std::complex<double> z) {
    const GL20& g = gl20();
    int segments = static_cast<int>(std::ceil(std::abs(z) / 0.25));
    if (segments < 1) segments = 1;
    std::complex<double> sum = 0.0;
    for (int sseg = 0; sseg < segments; ++sseg) {
        double a = static_cast<double>(sseg) / segments;
        double b = static_cast<double>(sseg + 1) / segments;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        std::complex<double> acc = 0.0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double s = mid + half * g.x[i];
            std::complex<double> t = z * s;     // node; even dependence on z via t^2
            acc += g.w[i] * std::exp(-t * t);
        }
        sum += acc * (z * half);
    }
    return 2.0 * INV_SQRT_PI * sum;
}

} // namespace

std::complex<double> uniformize(std::complex<double> z) {
    std::complex<double> erfv = std::abs(z) <= 2.0 ? erfSeries(z) : erfQuad(z);
    return 0.5 + 0.5 * erfv;
}

std::complex<double> uniformize_deriv(std::complex<double> z) {
    return INV_SQRT_PI * std::exp(-z * z);
}

std::complex<double> uniformize_invert(std::complex<double> target,
                                       std::complex<double> seed, double tol,
                                       int maxIter) {
    std::complex<double> z = seed;
    double err = std::abs(uniformize(z) - target);
    double scale = std::max(1.0, std::abs(target));
    for (int it = 0; it < maxIter; ++it) {
        if (err <= tol * scale) return z;
        std::complex<double> d = uniformize_deriv(z);
        if (std::abs(d) < 1e-300)
            throw Undecidable("derivative vanished during inversion");
        std::complex<double> step = (uniformize(z) - target) / d;
        double damp = 1.0;
        while (damp > 1e-9) {
            std::complex<double> cand = z - damp * step;
            double cerr = std::abs(uniformize(cand) - target);
            if (cerr < err) {
                z = cand;
                err = cerr;
                break;
            }
            damp *= 0.5;
        }
        if (damp <= 1e-9)
            throw Undecidable("Newton iteration stalled during inversion");
    }
    if (err <= tol * scale) return z;
    throw Undecidable("inversion did not converge from the given seed");
}

} // namespace stab
