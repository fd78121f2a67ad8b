#ifndef STAB_GLUE_HPP
#define STAB_GLUE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stab/doublecover.hpp"

namespace stab {

/**
 * Hom-degree pattern between two ordered generator lists: homs[(i,j)] is the
 * set of degrees k with Hom^k(G1[i], G2[j]) nonzero.  The mirror direction
 * Hom(G2, G1) is identically zero (semiorthogonality is part of the type).
 * With G2 empty the pattern describes a single collection G1 with homs among
 * its own members (i != j), used by the exceptional-collection builder.
 */
struct ExtPattern {
    std::vector<std::string> G1, G2;
    std::map<std::pair<int, int>, std::vector<int>> homs;  // 0-based (i, j)

    const std::vector<int>* degrees(int i, int j) const;
};

/** Finite summary of one factor's slicing in (0, 1]. */
struct StabilitySummary {
    struct Simple {
        std::string label;
        std::optional<QC> charge;  // absent when only the phase is known
        Rat phase;                 // lift in (0, 1]
    };
    bool finiteLength = false;
    std::vector<Simple> simples;
    // Emptiness windows: P(0, phiLow] = 0 and P(phiHigh, 1] = 0 when present.
    std::optional<Rat> phiLow, phiHigh;

    void validate() const;  // phases in (0,1], windows consistent
};

/** Descriptor of the glued heart and its provenance. */
struct GluedDescriptor {
    std::string heartDesc;            // "<H2, H1>" with factor names
    std::optional<Rat> parameterA;    // chosen a in (0, 1)
    std::string conditionTag;         // "(a)-discrete" | "(b)-strong-orthogonality" | ""
};

/** True iff no pair (g1, g2) admits a hom of degree <= 0. */
bool check_hearts_orthogonal(const ExtPattern& p);

/** Charge on the base-curve factor: Z1(E') = rk(E')*zRk + deg(E')*zDeg. */
struct YCharge {
    QC zRk, zDeg;
};

/**
 * Glued charge for the double-cover decomposition: the pullback factor
 * carries Z1, the point factor Z2[i] per ramification point.  The result
 * restricts to Z1 / Z2 on the factor classes.
 */
CentralCharge glue_charge(const YCharge& Z1, const std::vector<QC>& Z2, const Geometry& g);

struct GlueParamResult {
    std::optional<Rat> a;
    std::string method;   // "case1" | "case2" | "scan"
    // witness on failure: generator indices and the offending hom degree
    struct Witness {
        int i = -1, j = -1, k1 = 0, k2 = 0, deg = 0;
    };
    std::optional<Witness> witness;
};

/**
 * Search for a gluing parameter a in (0,1) making the cross-hom vanishing
 * condition hold, using the two closed-form window cases first and a finite
 * scan over phase breakpoints otherwise; every returned a is re-verified by
 * direct enumeration over the shifted-generator phase data.
 */
GlueParamResult find_gluing_parameter(const StabilitySummary& s1, const StabilitySummary& s2,
                                      const ExtPattern& p);

struct ConditionAReport {
    bool holds = false;
    Rat gap = 0;                   // positive gap below the least positive Im value
    bool noetherianAssumed = false;  // all-zero Im generators: flag the side condition
};

/**
 * Discreteness of Im Z at 0: for rational Im-values of the heart generators
 * the semigroup gap is their gcd.  Irrational inputs raise Undecidable.
 */
ConditionAReport check_gluing_condition_a(const std::vector<Rat>& imValues1,
                                          const std::vector<Rat>& imValues2);

/** No hom of degree <= 1 from any G1 generator to a phase-<1 simple of s2. */
bool check_gluing_condition_b(const ExtPattern& p, const StabilitySummary& s2);

/**
 * Stability glued from an Ext-exceptional collection (pattern with G2 empty,
 * homs only in strictly positive degrees): finite-length heart with simples
 * E_i of phases phi(z_i).
 */
std::pair<GluedDescriptor, StabilitySummary> macri_glued(const ExtPattern& collection,
                                                         const std::vector<QC>& z);

/**
 * Certificate-relative HN in the finite-length glued heart: the certificate
 * lists (simple index, shift) subquotients in filtration order.
 */
HNResult macri_hn(const StabilitySummary& s,
                  const std::vector<std::pair<int, int>>& certificate);

struct ExcP1Report {
    long long N = 0;
    bool signOk = false;      // Im Z_a(pullback(1, N)) < 0 < Im Z_a(pullback(1, N+1))
    bool windowOk = false;    // all collection classes in the window (-1-a, 2-a]
    bool independenceOk = false;
    std::vector<std::string> collection;  // member labels
    std::vector<KClass> classes;          // member classes, shifts applied to labels only
};

/**
 * Genus-0 exceptional-collection certificate: finds the unique N with the
 * rotated-charge sign change and checks the phase window for the collection
 * (pullback(1,N)[1], pullback(1,N+1), O_{p_i}[-1]).  Requires 0 < a < 1/2
 * rational and the per-point independence det2(Z(O_{p_i}), v_Z) != 0.
 */
ExcP1Report exc_P1_check(const GlobalStability& s, const Rat& a);

} // namespace stab

#endif
