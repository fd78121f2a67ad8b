#ifndef STAB_DOUBLECOVER_HPP
#define STAB_DOUBLECOVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "stab/local.hpp"
#include "stab/slicing.hpp"

namespace stab {

/** Partition [n] = I0 u I+ u I- with multiplicities n_i for i outside I0. */
struct PartitionData {
    std::vector<int> I0, Iplus, Iminus;  // 1-based indices, disjoint, covering [n]
    std::vector<int> ni;                 // size n; entries >= 1 (used for i not in I0)

    bool inI0(int i) const;
    bool inIplus(int i) const;
    bool inIminus(int i) const;
};

/** Formal sum of shifted global generators. */
struct GlobalSummand {
    enum class Kind { Fiber, Torsion, LineBundle };
    Kind kind = Kind::Fiber;
    int i = 1;              // point index for Torsion
    int m = 1;              // torsion length
    int twist = 0;          // 0 or 1
    int shift = 0;
    Int mult = 1;
    Int deg = 0;            // LineBundle: deg_Y d
    std::vector<int> S;     // LineBundle: twist set S subseteq [n]
};
using GlobalObject = std::vector<GlobalSummand>;

/**
 * Point of the classified global stability space.
 *
 * `caller` is the charge in the caller's frame; `base` the normalized
 * representative (v_Z on R_{<0}, hypotheses of the chamber construction
 * hold) obtained by base = twist(rho * caller).  `q` is the rational fiber
 * lift offset: the intrinsic fiber lift equals p(v_caller) + q.
 */
struct GlobalStability {
    Geometry geom;
    CentralCharge caller;
    CentralCharge base;
    QC rho{Rat(1), Rat(0)};           // alignment factor (rotation x positive scale)
    std::vector<TwistGen> twistWord;  // applied to rho*caller to reach base
    Rat q = 0;                        // fiber lift offset
    PartitionData part;
    std::string heartDesc;

    /** Base-frame lift of O_{p_i} (post-twist slot), when (semi)stable. */
    std::optional<PhaseLift> baseLiftOpSlot(int i) const;
    /** Base-frame lift of zeta O_{p_i} (post-twist slot), when (semi)stable. */
    std::optional<PhaseLift> baseLiftZetaOpSlot(int i) const;
    /** True iff point i was twisted in the normalization. */
    bool twisted(int i) const;
    /** Caller-frame fiber lift p(v_caller) + q, as a display Lift. */
    Lift fiberLift() const;
};

struct UBarReport {
    bool pass = true;
    std::string witness;    // first failing condition, empty on pass
};

/** Exact membership test for the open region U-bar. */
UBarReport check_U_bar(const CentralCharge& Z, const Geometry& g);

/** Normalize a U-bar charge into the chamber normal form (I- empty, n_i = 1). */
GlobalStability classify_in_U(const CentralCharge& Z, const Geometry& g);

/** Construct the glued stability for a charge satisfying the chamber hypotheses. */
GlobalStability build_stability(const CentralCharge& Z, const PartitionData& part,
                                const Geometry& g);

/** HN filtration of a torsion/fiber object; line bundles use reduce_line_bundle. */
HNResult hn_global(const GlobalObject& obj, const GlobalStability& s);

/** Finite family of (semi)stable endosimple objects with base-frame lifts. */
std::vector<std::pair<KClass, Lift>> stable_family(const GlobalStability& s);

struct LineBundleCertificate {
    Int pullbackRk, pullbackDeg;                   // pullback block class data
    std::vector<GlobalSummand> torsionParts;       // torsion blocks with shifts
    Lift phiLower, phiUpper;                       // phase bounds, not an HN claim
};

/** Two-step certificate exhibiting a line bundle in the glued heart. */
LineBundleCertificate reduce_line_bundle(const GlobalSummand& L, const GlobalStability& s);

/**
 * Tuple (sigma_1..sigma_n, z) with the common-fiber constraint.
 *
 * Each local is a charge-backed LocalStability in the canonical local frame:
 * the stored charges are the caller-frame values (so u_i + w_i is the same
 * fiber charge for every i), frameC = 0, and the lift anchors place the
 * semistable 2p object at the canonical lift p(u+w) in (0, 1].  The common
 * fiber lift in the caller frame is p(u+w) + q.
 */
struct ThetaPoint {
    Geometry geom;
    std::vector<LocalStability> locals;
    Rat q = 0;          // fiber lift offset (Im f = p(u+w) + q)
    QC z;               // Z(O_X), caller frame
};

/** delta_i of one canonical local coordinate (exact rational). */
Rat theta_delta(const LocalStability& l);

/**
 * Scale-normalized left side of the open-region inequality:
 * (det2(z, u1+w1) + sum delta_i) / |u1+w1|^2.  Positive iff the point is in
 * the open region; exactly invariant under rotation/rescale/twist frames.
 */
Rat theta_lhs(const ThetaPoint& t);

/** Classification coordinates (genus(Y) >= 1). */
ThetaPoint theta_map(const GlobalStability& s);

/** Inverse construction from the classification coordinates (genus(Y) >= 1). */
GlobalStability build_from_theta(const ThetaPoint& t);

// Frame actions used by the invariance tests: caller-frame change only.
GlobalStability rotate_global(const GlobalStability& s, const Rat& quarterA);
GlobalStability rescale_global(const GlobalStability& s, const Rat& lambda);
GlobalStability twist_global(const GlobalStability& s, int i);

} // namespace stab

#endif
