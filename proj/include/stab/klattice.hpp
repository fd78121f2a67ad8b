#ifndef STAB_KLATTICE_HPP
#define STAB_KLATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "stab/phase.hpp"
#include "stab/rational.hpp"

namespace stab {

/** A degree-2 cover of curves with n ramification points p_1..p_n. */
struct Geometry {
    int n = 1;       // ramification-point count, >= 1
    int genusY = 1;  // genus of the base curve Y, >= 0

    Geometry() = default;
    Geometry(int n_, int genusY_);
};

/**
 * Class in the numerical Grothendieck group, integer coordinates in the
 * ordered basis ([O_X], v = [O_{fiber}], [O_{p_1}], ..., [O_{p_n}]).
 *
 * `vSymbolic` marks classes whose v-coefficient contains the free integer d
 * from the derived class of the character twist of O_X; evaluating such a
 * class raises unless the consumer is provably insensitive to d.
 */
struct KClass {
    std::vector<Int> c;       // length n + 2
    bool vSymbolic = false;   // v-coefficient carries the free symbol d

    KClass() = default;
    explicit KClass(int n) : c(static_cast<size_t>(n) + 2, 0) {}

    int n() const { return static_cast<int>(c.size()) - 2; }
    bool isZero() const;

    KClass operator+(const KClass& o) const;
    KClass operator-(const KClass& o) const;
    KClass operator*(const Int& s) const;
    bool operator==(const KClass& o) const { return c == o.c && vSymbolic == o.vSymbolic; }

    // Basis and derived classes.
    static KClass structureSheaf(const Geometry& g);              // [O_X]
    static KClass fiber(const Geometry& g);                       // v
    static KClass pointSheaf(const Geometry& g, int i);           // [O_{p_i}], i in 1..n
    static KClass zetaPointSheaf(const Geometry& g, int i);       // v - [O_{p_i}]
    static KClass torsion(const Geometry& g, int i, int m, int twist); // [zeta^twist O_{m p_i}]
    static KClass pullback(const Geometry& g, const Int& rk, const Int& deg); // rk [O_X] + deg v
    static KClass lineBundle(const Geometry& g, const Int& d, const std::vector<int>& S);
    /** Derived class of the character twist of O_X: d*v - sum_i [O_{p_i}], d free. */
    static KClass zetaStructureSheaf(const Geometry& g);
};

/** Twist generators acting on charges (tensoring by line objects). */
enum class TwistKind { OPoint, Zeta, PullbackDeg1 };

struct TwistGen {
    TwistKind kind = TwistKind::OPoint;
    int index = 0;      // for OPoint: i in 1..n
    bool inverse = false;
};

/**
 * Normalization frame: an exact rotation (quarter-turn rational and/or an
 * exact complex alignment factor rho, a rotation composed with the positive
 * scale |rho|), a positive rational scale, and a twist word.
 */
struct FrameAction {
    Rat rotation = 0;                 // rational multiple of pi (phase shift a)
    QC alignFactor{Rat(1), Rat(0)};   // exact complex factor (non-quarter rotations)
    Rat scale = 1;                    // positive rational
    std::vector<TwistGen> twists;
};

/**
 * Central charge: one exact complex value per basis element, plus a pending
 * symbolic rotation angle (a rational in [0, 1/2) multiplying everything by
 * exp(-i*pi*pend)); quarter-turn rotations are applied eagerly and exactly.
 */
struct CentralCharge {
    QC zOX;
    QC zFiber;                // v_Z
    std::vector<QC> zOp;      // Z(O_{p_i}), i = 1..n
    Rat pend = 0;             // pending rotation angle in [0, 1/2)

    CentralCharge() = default;
    CentralCharge(QC ox, QC fib, std::vector<QC> op);

    int n() const { return static_cast<int>(zOp.size()); }
    const QC& vZ() const { return zFiber; }
    QC zZetaOp(int i) const;          // Z(zeta O_{p_i}) = v_Z - Z(O_{p_i})
    bool hasPending() const { return pend != 0; }
};

/** Exact linear evaluation (requires no pending rotation, no free symbol). */
QC eval_charge(const CentralCharge& Z, const KClass& c);

/** Evaluation with an explicit value for the free symbol d (internal/testing). */
QC eval_charge_with_d(const CentralCharge& Z, const KClass& c, const Int& d);

/** Floating evaluation including any pending rotation. */
void eval_charge_approx(const CentralCharge& Z, const KClass& c, double& re, double& im);

/** Apply a single twist generator. */
CentralCharge twist_charge(const CentralCharge& Z, const TwistGen& g);

/** Apply a twist word left to right. */
CentralCharge twist_charge(const CentralCharge& Z, const std::vector<TwistGen>& word);

/** Multiply all values by exp(-i*pi*a); exact for quarter turns, symbolic else. */
CentralCharge rotate_charge(const CentralCharge& Z, const Rat& a);

/** Multiply all values by the exact complex factor rho (rotation x scale). */
CentralCharge scale_rotate_charge(const CentralCharge& Z, const QC& rho);

/** Multiply all values by the positive rational s. */
CentralCharge rescale_charge(const CentralCharge& Z, const Rat& s);

/**
 * Sign of Im(e^{-i pi pend} * z) decided by exact tests plus interval
 * arithmetic on the pending angle; raises Undecidable if the interval
 * straddles zero.
 */
int im_sign_pending(const QC& z, const Rat& pend);

/**
 * The 2^{n+1} coset representatives {[O_X] + sum_{i in S}(v - [O_{p_i}]) +
 * eps * ([zeta O_X] - [O_X])}; the eps = 1 family is vSymbolic.
 */
std::vector<KClass> coset_classes(const Geometry& g);

/**
 * Class decomposition along the semiorthogonal decomposition
 * (pullbacks from Y, pushforwards from the ramification divisor):
 * c = [pullback(rk, deg)] + sum_i rPart[i] * [O_{p_i}].
 */
struct SodParts {
    Int rk, deg;               // pullback part
    std::vector<Int> rPart;    // point multiplicities, size n
};
SodParts sod_decompose(const Geometry& g, const KClass& c);

} // namespace stab

#endif
