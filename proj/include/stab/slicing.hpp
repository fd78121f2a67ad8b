#ifndef STAB_SLICING_HPP
#define STAB_SLICING_HPP

#include <optional>
#include <string>
#include <vector>

#include "stab/klattice.hpp"
#include "stab/phase.hpp"

namespace stab {

/** phase(z) = arg(z)/pi with arg in (-pi, pi]; exact lift object. */
PhaseLift phase(const QC& z);

/**
 * Object presented by its unique exhaustive subobject chain
 * c_0 < c_1 < ... < c_m (classes, smallest first; c_m = whole object),
 * with one label per subquotient c_j - c_{j-1} (c_{-1} = 0).
 */
struct ChainObject {
    std::vector<KClass> chain;
    std::vector<std::string> labels;  // size == chain.size()
};

struct HNFactor {
    std::string label;
    KClass cls;
    Lift lift;
};

/** Ordered semistable factors, phases strictly decreasing. */
struct HNResult {
    std::vector<HNFactor> factors;
};

/** One subquotient step fed to the hull algorithm. */
struct Increment {
    QC value;        // charge of the subquotient, nonzero
    PhaseLift lift;  // its phase lift in the working frame
    KClass cls;
    std::string label;
};

/**
 * Convex-hull Harder-Narasimhan core: increments must have lifts inside a
 * half-open window of width 1 (max - min < 1); returns factors with strictly
 * decreasing lifts, ties merged.  `frameFiber`/`frameOff` decorate the
 * resulting lifts (absolute-frame bookkeeping).
 */
HNResult hn_core(const std::vector<Increment>& incs, const PhaseLift& frameFiber,
                 const Rat& frameOff);

/**
 * HN filtration of a chain object under a stability function: every
 * subquotient charge must land in (open upper half-plane) u R_{<0}.
 */
HNResult hn_polygon(const ChainObject& obj, const CentralCharge& Z);

/** Exhaustive-search reference: unique strictly-decreasing semistable filtration. */
HNResult hn_exhaustive(const ChainObject& obj, const CentralCharge& Z);

/** Merge HN results of direct summands: equal phases merge, sorted decreasing. */
HNResult hn_direct_sum(const std::vector<HNResult>& results);

struct ModulusReport {
    Rat minSq;          // exact squared minimum
    double value;       // sqrt, for display
    bool discreteImage; // all basis values Gaussian integers => reasonable
};

/** Minimum |Z(c)| over a finite semistable family (exact certificate). */
ModulusReport min_charge_modulus(const std::vector<std::pair<KClass, Lift>>& family,
                                 const CentralCharge& Z);

struct NormReport {
    Rat maxSq;    // exact squared norm
    double value;
};

/** ||Z|| = max(|Z(O_X)|, |Z(v)|, |Z(O_{p_i})|, |Z(zeta O_{p_i})|), exact. */
NormReport charge_norm(const CentralCharge& Z, const Geometry& g);

struct SectorBoundReport {
    double lowerBound;   // cos(pi*eta/2) * c
    double minModulus;   // min |Z(E)| over the family
    bool holds;
};

/** Checks |Z(E)| >= cos(pi*eta/2)*c over a family with phases in (t, t+eta). */
SectorBoundReport sector_bound_check(const std::vector<std::pair<KClass, Lift>>& family,
                                     const CentralCharge& Z, const Rat& t, const Rat& eta);

struct DeformationBoundReport {
    double r1, r2, r;
    double maxRatio;      // max |Zp(c)| / (||Zp|| * |Z(c)|) over samples
    int violations;
};

/**
 * Comparison constant r = max(r_1, r_2) for a charge in normalized position
 * and the sampled inequality |Zp(c)| <= r * ||Zp|| * |Z(c)|.
 */
DeformationBoundReport num_lem_bound(const CentralCharge& Z, const CentralCharge& Zp,
                                     const Geometry& g, const std::vector<KClass>& samples);

struct HeartWindowSample {
    KClass cls;
    Rat winLo, winHi;  // phase-lift window of the sampled object under Z1
};

/**
 * Finite-sample closeness diagnostic: |Z2(c) - Z1(c)| < sin(pi*eps)|Z1(c)|
 * per sample and every window inside (-1 + eps, 2 - eps].
 */
bool closeness_check(const CentralCharge& Z1, const CentralCharge& Z2, const Rat& eps,
                     const std::vector<HeartWindowSample>& samples);

} // namespace stab

#endif
