#ifndef STAB_RATIONAL_HPP
#define STAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <string>

#include "stab/errors.hpp"

namespace stab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double toDouble(const Rat& r) { return r.convert_to<double>(); }

inline int sgn(const Rat& r) { return r.sign(); }

/** Render a rational as "p" or "p/q". */
inline std::string ratToString(const Rat& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

/** Parse "p" or "p/q" (exact). */
Rat ratFromString(const std::string& s);

/**
 * Complex number with exact rational real/imaginary parts.  All region and
 * sign tests in the library reduce to exact computations on these.
 */
struct QC {
    Rat re;
    Rat im;

    QC() : re(0), im(0) {}
    QC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit QC(int r) : re(r), im(0) {}

    bool isZero() const { return re == 0 && im == 0; }

    QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
    QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
    QC operator-() const { return {-re, -im}; }
    QC operator*(const QC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QC operator*(const Rat& s) const { return {re * s, im * s}; }
    bool operator==(const QC& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QC& o) const { return !(*this == o); }

    QC conj() const { return {re, -im}; }

    /** |z|^2, exact. */
    Rat normSq() const { return re * re + im * im; }

    double reD() const { return toDouble(re); }
    double imD() const { return toDouble(im); }
};

inline QC operator*(const Rat& s, const QC& z) { return z * s; }

/** det2(a,b) = Re(a)Im(b) - Im(a)Re(b); exact orientation test. */
inline Rat det2(const QC& a, const QC& b) { return a.re * b.im - a.im * b.re; }

/** Re(a * conj(b)), exact dot product. */
inline Rat dot2(const QC& a, const QC& b) { return a.re * b.re + a.im * b.im; }

/** z is in the open upper half-plane or on the negative real axis. */
inline bool inUpperOrNegReal(const QC& z) {
    return z.im > 0 || (z.im == 0 && z.re < 0);
}

/** Multiply by i^k (k mod 4), exact quarter-turn rotation. */
inline QC mulI(const QC& z, int k) {
    int m = ((k % 4) + 4) % 4;
    switch (m) {
        case 0: return z;
        case 1: return {-z.im, z.re};
        case 2: return -z;
        default: return {z.im, -z.re};
    }
}

std::ostream& operator<<(std::ostream& os, const QC& z);

} // namespace stab

#endif
