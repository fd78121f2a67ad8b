#ifndef STAB_LOCAL_HPP
#define STAB_LOCAL_HPP

#include <complex>
#include <optional>
#include <vector>

#include "stab/slicing.hpp"

namespace stab {

/** Charge on the local category at a ramification point. */
struct LocalCharge {
    QC u;  // Z(O_p)
    QC w;  // Z(zeta O_p); Z(O_{2p}) = Z(zeta O_{2p}) = u + w
};

/** Formal sum of shifted torsion strings zeta^{twist} O_{m p}[shift]. */
struct LocalSummand {
    int m = 1;        // >= 1
    int twist = 0;    // 0 or 1
    int shift = 0;
    Int mult = 1;     // >= 1
};
using LocalObject = std::vector<LocalSummand>;

enum class Chart { PLUS, MINUS, WALL };

/**
 * Point of the local stability space, in one of two representations:
 *
 *  - CHART: Sigma-slice chart data (f, chart, coord) with exact rational
 *    components; charge values are reconstructed analytically.
 *  - CHARGE: exact charges (u, w) with integer phase-lift anchors (ku, kw)
 *    and a rational frame offset c (actual charges exp(pi c)(u, w), lifts
 *    + Im c).  This is the representation with fully exact region tests.
 */
struct LocalStability {
    enum class Rep { CHART, CHARGE };
    Rep rep = Rep::CHART;

    // CHART representation
    Chart chart = Chart::PLUS;
    QC f;      // exp(pi f) = Z(O_{2p}); Im f = lift of the semistable 2p object
    QC coord;  // Sigma-slice chart coordinate (f subtracted)

    // CHARGE representation
    QC u, w;
    long long ku = 0, kw = 0;   // lifts: p(u)+ku, p(w)+kw
    QC frameC;                  // accumulated act_C offset (rational re/im)

    static LocalStability chartPoint(Chart chart, QC f, QC coord);
    static LocalStability chargePoint(QC u, QC w, long long ku, long long kw,
                                      QC frameC = QC());

    /** Lift of O_p (CHARGE rep). */
    PhaseLift liftOp() const { return PhaseLift::principal(u).plusInt(ku); }
    /** Lift of zeta O_p (CHARGE rep). */
    PhaseLift liftZetaOp() const { return PhaseLift::principal(w).plusInt(kw); }
};

/** Standard-heart stability from exact charges in (upper half-plane) u R_{<0}. */
LocalStability local_from_charges(const QC& u, const QC& w);

enum class Status { Stable, StrictlySemistable, Unstable };

struct ObjectStatus {
    Status status = Status::Unstable;
    std::optional<Lift> lift;  // exact phase lift when (semi)stable and exact
    double approxLift = 0.0;   // always filled when (semi)stable
};

/** Statuses of O_p, zeta O_p, O_{2p}, zeta O_{2p} and region flags. */
struct ChamberReport {
    ObjectStatus op, zetaOp, o2p, zetaO2p;
    bool Uplus = false, Uminus = false, Wplus = false, Wminus = false;
};

/** Chamber classification by the exact case analysis. */
ChamberReport chamber(const LocalStability& s);

/** Brute-force classification through the HN hull on m <= 2 chains. */
ChamberReport oracle_chamber(const QC& u, const QC& w);

/** f with exp(pi f) = Z(O_{2p}); consistency-checked to 1e-12 relative. */
std::complex<double> f_of(const LocalStability& s);

/** C-action: f -> f + c, charges scale by exp(pi c), lifts shift by Im c. */
LocalStability act_C(const LocalStability& s, const QC& c);

/** Re-express a CHART point in the other chart (overlap |Im coord| < 1). */
LocalStability chart_transition(const LocalStability& s);

/** delta = det2(Z(zeta O_p), Z(O_{2p})) when zeta O_{2p} is semistable, else 0. */
double delta(const LocalStability& s);

/**
 * HN filtration of a local object; requires a charge-backed stability
 * (both charges in a common open half-plane).  `geom`/`pointIndex` control
 * the ambient class lattice and labels.
 */
HNResult hn_local(const LocalObject& obj, const LocalStability& s,
                  const Geometry& geom = Geometry(1, 1), int pointIndex = 1);

/** Find k with lo <= PhaseLift(dir, k) <= hi (window shorter than 1). */
PhaseLift resolve_between(const QC& dir, const PhaseLift& lo, const PhaseLift& hi);

} // namespace stab

#endif
