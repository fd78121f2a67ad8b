#ifndef STAB_PHASE_HPP
#define STAB_PHASE_HPP

#include <cmath>
#include <optional>
#include <string>

#include "stab/rational.hpp"

namespace stab {

/**
 * Exact phase lift of a nonzero complex direction.
 *
 * Stored as a canonical direction `dir` in (open upper half-plane) u R_{<0}
 * together with an integer shift `k`; the represented real number is
 * p(dir) + k where p(dir) = arg(dir)/pi in (0,1].  Comparisons reduce to
 * exact sign tests (det2), never floating arctangent.
 */
struct PhaseLift {
    QC dir;       // canonical: Im > 0, or Im == 0 and Re < 0
    long long k = 0;

    PhaseLift() : dir(Rat(-1), Rat(0)), k(0) {}
    PhaseLift(QC d, long long kk) : dir(std::move(d)), k(kk) {}

    /** Lift of a nonzero z with value in (-1, 1]: arg(z)/pi, arg in (-pi, pi]. */
    static PhaseLift principal(const QC& z);

    /** Lift of the shifted object X[s]: direction (-1)^s z, value + s. */
    static PhaseLift shifted(const QC& z, long long s);

    PhaseLift plusInt(long long s) const { return PhaseLift(dir, k + s); }

    /** True iff the fractional generator p(dir) equals 1 (negative real ray). */
    bool onNegRealRay() const { return dir.im == 0; }

    /** floor of the represented value (exact). */
    long long floorValue() const { return onNegRealRay() ? k + 1 : k; }

    /** sign of (this - other), exact. */
    static int compare(const PhaseLift& a, const PhaseLift& b);

    bool operator==(const PhaseLift& o) const { return compare(*this, o) == 0; }

    /** Exact rational value when the direction lies on the quarter grid. */
    std::optional<Rat> exactRational() const;

    double approx() const {
        return static_cast<double>(k) + std::atan2(dir.imD(), dir.reD()) / M_PI;
    }
};

/**
 * Composite absolute phase lift: obj + (fiber - 1) + off.
 *
 * `obj` is the lift computed in a normalization frame where the fiber class
 * points along R_{<0} (lift 1); `fiber` is the caller-frame fiber lift and
 * `off` a rational frame offset.  With the default fiber (-1, shift 0) the
 * value is simply obj + off.
 */
struct Lift {
    PhaseLift obj;
    PhaseLift fiber;  // default: direction -1, shift 0 => contributes 0
    Rat off = 0;

    Lift() = default;
    explicit Lift(PhaseLift o) : obj(std::move(o)) {}
    Lift(PhaseLift o, Rat offset) : obj(std::move(o)), off(std::move(offset)) {}
    Lift(PhaseLift o, PhaseLift f, Rat offset)
        : obj(std::move(o)), fiber(std::move(f)), off(std::move(offset)) {}

    double approx() const { return obj.approx() + fiber.approx() - 1.0 + toDouble(off); }

    std::optional<Rat> exactRational() const;

    /** Exact difference this - other when structurally comparable. */
    std::optional<Rat> diffExact(const Lift& other) const;

    /** Exact sign of this - other when decidable without floats. */
    std::optional<int> compareExact(const Lift& other) const;

    /** "p/q" when exact, otherwise a float rendering. */
    std::string display() const;
};

/** True iff a and b span the same ray from the origin (exact). */
inline bool sameRay(const QC& a, const QC& b) {
    return det2(a, b) == 0 && dot2(a, b) > 0;
}

} // namespace stab

#endif
