#include "stab/klattice.hpp"

#include <cmath>
#include <sstream>

namespace stab {

// ---------------------------------------------------------------- rationals

Rat ratFromString(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InvalidCharge("zero denominator in \"" + s + "\"");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidCharge("cannot parse rational \"" + s + "\"");
    }
}

std::ostream& operator<<(std::ostream& os, const QC& z) {
    return os << ratToString(z.re) << (z.im >= 0 ? "+" : "") << ratToString(z.im) << "i";
}

// ----------------------------------------------------------------- geometry

Geometry::Geometry(int n_, int genusY_) : n(n_), genusY(genusY_) {
    if (n < 1) throw InvalidCharge("need at least one ramification point");
    if (genusY < 0) throw InvalidCharge("negative genus");
}

// ------------------------------------------------------------------ classes

bool KClass::isZero() const {
    if (vSymbolic) return false;
    for (const Int& x : c)
        if (x != 0) return false;
    return true;
}

static void checkSameSize(const KClass& a, const KClass& b) {
    if (a.c.size() != b.c.size()) throw InvalidCharge("class rank mismatch");
}

KClass KClass::operator+(const KClass& o) const {
    checkSameSize(*this, o);
    KClass r(n());
    for (size_t j = 0; j < c.size(); ++j) r.c[j] = c[j] + o.c[j];
    if (vSymbolic && o.vSymbolic)
        throw SymbolicCoefficient("sum of two classes with free v-coefficients");
    r.vSymbolic = vSymbolic || o.vSymbolic;
    return r;
}

KClass KClass::operator-(const KClass& o) const {
    checkSameSize(*this, o);
    KClass r(n());
    for (size_t j = 0; j < c.size(); ++j) r.c[j] = c[j] - o.c[j];
    if (vSymbolic && o.vSymbolic)
        throw SymbolicCoefficient("difference of two classes with free v-coefficients");
    r.vSymbolic = vSymbolic || o.vSymbolic;
    return r;
}

KClass KClass::operator*(const Int& s) const {
    KClass r(n());
    for (size_t j = 0; j < c.size(); ++j) r.c[j] = c[j] * s;
    if (vSymbolic && s != 1 && s != 0)
        throw SymbolicCoefficient("scaling a class with a free v-coefficient");
    r.vSymbolic = vSymbolic && s != 0;
    return r;
}

KClass KClass::structureSheaf(const Geometry& g) {
    KClass r(g.n);
    r.c[0] = 1;
    return r;
}

KClass KClass::fiber(const Geometry& g) {
    KClass r(g.n);
    r.c[1] = 1;
    return r;
}

static void checkPointIndex(const Geometry& g, int i) {
    if (i < 1 || i > g.n) throw InvalidCharge("point index out of range");
}

KClass KClass::pointSheaf(const Geometry& g, int i) {
    checkPointIndex(g, i);
    KClass r(g.n);
    r.c[static_cast<size_t>(i) + 1] = 1;
    return r;
}

KClass KClass::zetaPointSheaf(const Geometry& g, int i) {
    return fiber(g) - pointSheaf(g, i);
}

KClass KClass::torsion(const Geometry& g, int i, int m, int twist) {
    checkPointIndex(g, i);
    if (m < 1) throw InvalidCharge("torsion length must be positive");
    if (twist != 0 && twist != 1) throw InvalidCharge("twist must be 0 or 1");
    // [O_{m p_i}] = ceil(m/2) [O_{p_i}] + floor(m/2) [zeta O_{p_i}]; the
    // character twist swaps the two multiplicities.
    Int a = (m + 1) / 2, b = m / 2;
    if (twist) std::swap(a, b);
    KClass r(g.n);
    r.c[1] = b;
    r.c[static_cast<size_t>(i) + 1] = a - b;
    return r;
}

KClass KClass::pullback(const Geometry& g, const Int& rk, const Int& deg) {
    KClass r(g.n);
    r.c[0] = rk;
    r.c[1] = deg;
    return r;
}

KClass KClass::lineBundle(const Geometry& g, const Int& d, const std::vector<int>& S) {
    KClass r(g.n);
    r.c[0] = 1;
    r.c[1] = d + static_cast<int>(S.size());
    for (int i : S) {
        checkPointIndex(g, i);
        r.c[static_cast<size_t>(i) + 1] -= 1;
    }
    return r;
}

KClass KClass::zetaStructureSheaf(const Geometry& g) {
    // [zeta O_X] = [O_X] + d v - sum_i [O_{p_i}] with d kept as a free symbol
    // (stored v-coefficient is the d = 0 specialization).
    KClass r(g.n);
    r.c[0] = 1;
    for (int i = 1; i <= g.n; ++i) r.c[static_cast<size_t>(i) + 1] = -1;
    r.vSymbolic = true;
    return r;
}

// ------------------------------------------------------------------ charges

CentralCharge::CentralCharge(QC ox, QC fib, std::vector<QC> op)
    : zOX(std::move(ox)), zFiber(std::move(fib)), zOp(std::move(op)) {
    if (zOp.empty()) throw InvalidCharge("charge needs at least one point value");
}

QC CentralCharge::zZetaOp(int i) const {
    if (i < 1 || i > n()) throw InvalidCharge("point index out of range");
    return zFiber - zOp[static_cast<size_t>(i) - 1];
}

QC eval_charge_with_d(const CentralCharge& Z, const KClass& c, const Int& d) {
    if (Z.hasPending())
        throw SymbolicRotation("exact evaluation under a pending rotation");
    if (static_cast<int>(c.c.size()) != Z.n() + 2)
        throw InvalidCharge("class rank does not match charge");
    Int vCoeff = c.c[1] + (c.vSymbolic ? d : Int(0));
    QC r = Z.zOX * Rat(c.c[0]) + Z.zFiber * Rat(vCoeff);
    for (int i = 0; i < Z.n(); ++i)
        r = r + Z.zOp[static_cast<size_t>(i)] * Rat(c.c[static_cast<size_t>(i) + 2]);
    return r;
}

QC eval_charge(const CentralCharge& Z, const KClass& c) {
    if (c.vSymbolic)
        throw SymbolicCoefficient("class has a free v-coefficient; evaluation depends on it");
    return eval_charge_with_d(Z, c, 0);
}

void eval_charge_approx(const CentralCharge& Z, const KClass& c, double& re, double& im) {
    if (c.vSymbolic)
        throw SymbolicCoefficient("class has a free v-coefficient; evaluation depends on it");
    CentralCharge flat = Z;
    flat.pend = 0;
    QC v = eval_charge(flat, c);
    double x = v.reD(), y = v.imD();
    double th = -M_PI * toDouble(Z.pend);
    re = x * std::cos(th) - y * std::sin(th);
    im = x * std::sin(th) + y * std::cos(th);
}

CentralCharge twist_charge(const CentralCharge& Z, const TwistGen& g) {
    CentralCharge r = Z;
    switch (g.kind) {
        case TwistKind::OPoint: {
            if (g.index < 1 || g.index > Z.n())
                throw InvalidCharge("twist point index out of range");
            size_t j = static_cast<size_t>(g.index) - 1;
            if (!g.inverse) {
                r.zOX = Z.zOX + Z.zFiber - Z.zOp[j];
                r.zOp[j] = Z.zFiber - Z.zOp[j];
            } else {
                r.zOX = Z.zOX - Z.zOp[j];
                r.zOp[j] = Z.zFiber - Z.zOp[j];
            }
            return r;
        }
        case TwistKind::PullbackDeg1:
            r.zOX = g.inverse ? Z.zOX - Z.zFiber : Z.zOX + Z.zFiber;
            return r;
        case TwistKind::Zeta:
            throw SymbolicCoefficient(
                "character twist changes Z(O_X) by a value with a free v-coefficient");
    }
    throw InvalidCharge("unknown twist generator");
}

CentralCharge twist_charge(const CentralCharge& Z, const std::vector<TwistGen>& word) {
    CentralCharge r = Z;
    for (const TwistGen& g : word) r = twist_charge(r, g);
    return r;
}

CentralCharge rotate_charge(const CentralCharge& Z, const Rat& a) {
    Rat total = Z.pend + a;
    // total = q/2 + r with r in [0, 1/2); the quarter-turn part q applies
    // exactly as multiplication by (-i)^q.
    Int q;
    {
        Rat twice = total * 2;
        Int num = numerator(twice), den = denominator(twice);
        q = num / den;
        if (num < 0 && num % den != 0) q -= 1;  // floor for negatives
    }
    Rat rem = total - Rat(q) / 2;
    int qm = static_cast<int>(q % 4);
    CentralCharge r = Z;
    r.zOX = mulI(Z.zOX, -qm);
    r.zFiber = mulI(Z.zFiber, -qm);
    for (auto& z : r.zOp) z = mulI(z, -qm);
    r.pend = rem;
    return r;
}

CentralCharge scale_rotate_charge(const CentralCharge& Z, const QC& rho) {
    if (rho.isZero()) throw InvalidCharge("zero alignment factor");
    CentralCharge r = Z;
    r.zOX = Z.zOX * rho;
    r.zFiber = Z.zFiber * rho;
    for (auto& z : r.zOp) z = z * rho;
    return r;
}

CentralCharge rescale_charge(const CentralCharge& Z, const Rat& s) {
    if (s <= 0) throw InvalidCharge("scale must be positive");
    return scale_rotate_charge(Z, QC(s, Rat(0)));
}

int im_sign_pending(const QC& z, const Rat& pend) {
    if (z.isZero()) return 0;
    if (pend == 0) return sgn(z.im);
    if (pend == Rat(1, 4)) return sgn(z.im - z.re);  // Im(e^{-i pi/4} z) ~ im - re
    if (pend < 0 || pend >= Rat(1, 2))
        throw InvalidCharge("pending angle out of normal form");
    // Im(e^{-i pi p} z) = im cos(pi p) - re sin(pi p); for rational p in
    // (0, 1/2) \ {1/4} and rational z != 0 the value is never exactly zero
    // (the only rational-tangent angles on the quarter grid are excluded),
    // so a padded double evaluation decides the sign or honestly gives up.
    double p = toDouble(pend);
    double c = std::cos(M_PI * p), s = std::sin(M_PI * p);
    double re = z.reD(), im = z.imD();
    double val = im * c - re * s;
    double pad = 1e-13 * (std::fabs(im) + std::fabs(re) + 1.0);
    if (val > pad) return 1;
    if (val < -pad) return -1;
    throw Undecidable("sign under pending rotation too close to zero for doubles");
}

std::vector<KClass> coset_classes(const Geometry& g) {
    std::vector<KClass> out;
    KClass ox = KClass::structureSheaf(g);
    KClass dzeta = KClass::zetaStructureSheaf(g) - ox;  // vSymbolic
    for (int eps = 0; eps <= 1; ++eps) {
        for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
            KClass c = ox;
            for (int i = 1; i <= g.n; ++i)
                if (mask & (1u << (i - 1))) c = c + KClass::zetaPointSheaf(g, i);
            if (eps) c = c + dzeta;
            out.push_back(std::move(c));
        }
    }
    return out;
}

SodParts sod_decompose(const Geometry& g, const KClass& c) {
    if (c.vSymbolic)
        throw SymbolicCoefficient("cannot decompose a class with a free v-coefficient");
    if (static_cast<int>(c.c.size()) != g.n + 2)
        throw InvalidCharge("class rank does not match geometry");
    SodParts p;
    p.rk = c.c[0];
    p.deg = c.c[1];
    p.rPart.assign(c.c.begin() + 2, c.c.end());
    return p;
}

} // namespace stab
