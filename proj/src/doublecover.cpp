#include "stab/doublecover.hpp"

#include <algorithm>
#include <sstream>

namespace stab {

namespace {

bool containsIndex(const std::vector<int>& v, int i) {
    return std::find(v.begin(), v.end(), i) != v.end();
}

QC mulNeg(const QC& z, int s) {
    return (s % 2 + 2) % 2 ? -z : z;
}

void validatePartition(const PartitionData& p, int n) {
    std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
    auto mark = [&](const std::vector<int>& part) {
        for (int i : part) {
            if (i < 1 || i > n) throw InvalidStability("partition index out of range");
            if (seen[static_cast<size_t>(i)]++) throw InvalidStability("partition not disjoint");
        }
    };
    mark(p.I0);
    mark(p.Iplus);
    mark(p.Iminus);
    for (int i = 1; i <= n; ++i)
        if (!seen[static_cast<size_t>(i)]) throw InvalidStability("partition does not cover [n]");
    if (static_cast<int>(p.ni.size()) != n)
        throw InvalidStability("one multiplicity entry per point required");
    for (int i = 1; i <= n; ++i)
        if (!p.inI0(i) && p.ni[static_cast<size_t>(i) - 1] < 1)
            throw InvalidStability("multiplicities must be positive");
}

std::string heartDescription(const PartitionData& p) {
    std::ostringstream os;
    auto list = [&](const std::vector<int>& v) {
        std::vector<int> s = v;
        std::sort(s.begin(), s.end());
        std::string out;
        for (size_t j = 0; j < s.size(); ++j) out += (j ? " " : "") + std::to_string(s[j]);
        return out;
    };
    os << "H(I+={" << list(p.Iplus) << "}, I-={" << list(p.Iminus) << "}; n=[";
    for (size_t j = 0; j < p.ni.size(); ++j) os << (j ? " " : "") << p.ni[j];
    os << "])";
    return os.str();
}

/** z lies on the closed ray R_{<=0} * v (including z = 0). */
bool onNonPosRay(const QC& z, const QC& v) {
    return det2(z, v) == 0 && dot2(z, v) <= 0;
}

// Exact hypothesis checks of the glued-heart construction, on a charge in
// normalized position (v real negative).
void checkHypotheses(const CentralCharge& Z, const PartitionData& p, const Geometry& g) {
    if (Z.n() != g.n) throw InvalidCharge("charge size does not match geometry");
    if (!(Z.zFiber.im == 0 && Z.zFiber.re < 0))
        throw InvalidStability("hypothesis (1): fiber charge must be real negative");
    if (!(Z.zOX.im > 0))
        throw InvalidStability("hypothesis (1): Im Z(O_X) must be positive");
    for (int i = 1; i <= g.n; ++i) {
        const QC& u = Z.zOp[static_cast<size_t>(i) - 1];
        QC w = Z.zZetaOp(i);
        if (p.inI0(i)) {
            if (!(u.im == 0 && u.re < 0) || !(w.im == 0 && w.re < 0))
                throw InvalidStability("hypothesis (3): point charges at I0 must be real negative (i=" +
                                       std::to_string(i) + ")");
        } else {
            int ni = p.ni[static_cast<size_t>(i) - 1];
            if (p.inIplus(i)) {
                if (u.isZero() || !inUpperOrNegReal(mulNeg(u, ni)))
                    throw InvalidStability("hypothesis (2): Z(O_p[-n]) outside h' (i=" +
                                           std::to_string(i) + ")");
            } else {
                if (w.isZero() || !inUpperOrNegReal(mulNeg(w, ni)))
                    throw InvalidStability("hypothesis (2): Z(zeta O_p[n]) outside h' (i=" +
                                           std::to_string(i) + ")");
            }
        }
    }
}

/**
 * Integer k with  p1 + k1 - (p2 + k2) = q1 + k - q2, where (p1,k1), (p2,k2)
 * are base-frame lifts of two directions and q1, q2 the canonical fractional
 * parts of the same two directions in the caller frame (the frames differ by
 * one fixed rotation, so the integer is pinned by two sign tests).
 */
long long relAnchor(const PhaseLift& base1, const PhaseLift& base2, const QC& caller1,
                    const QC& caller2) {
    PhaseLift q1(PhaseLift::principal(caller1).dir, 0);
    PhaseLift q2(PhaseLift::principal(caller2).dir, 0);
    int cmpC = PhaseLift::compare(q1, q2);
    PhaseLift p1(base1.dir, 0), p2(base2.dir, 0);
    int cmp = PhaseLift::compare(p1, p2);
    long long k = base1.k - base2.k;
    if (cmpC == 0) {
        if (cmp != 0) throw InvalidStability("internal: inconsistent frame anchors");
        return k;
    }
    if (cmp == 0) throw InvalidStability("internal: inconsistent frame anchors");
    if (cmpC > 0 && cmp < 0) return k - 1;
    if (cmpC < 0 && cmp > 0) return k + 1;
    return k;
}

} // namespace

// ---------------------------------------------------------------- partition

bool PartitionData::inI0(int i) const { return containsIndex(I0, i); }
bool PartitionData::inIplus(int i) const { return containsIndex(Iplus, i); }
bool PartitionData::inIminus(int i) const { return containsIndex(Iminus, i); }

// ----------------------------------------------------------- GlobalStability

bool GlobalStability::twisted(int i) const {
    int count = 0;
    for (const TwistGen& g : twistWord)
        if (g.kind == TwistKind::OPoint && g.index == i) ++count;
    return count % 2 != 0;
}

std::optional<PhaseLift> GlobalStability::baseLiftOpSlot(int i) const {
    const QC& u = base.zOp[static_cast<size_t>(i) - 1];
    if (part.inI0(i)) return PhaseLift::principal(u);  // real negative: value 1
    int ni = part.ni[static_cast<size_t>(i) - 1];
    if (part.inIplus(i)) return PhaseLift::principal(mulNeg(u, ni)).plusInt(ni);
    if (ni == 1) return PhaseLift::principal(u);
    return std::nullopt;
}

std::optional<PhaseLift> GlobalStability::baseLiftZetaOpSlot(int i) const {
    QC w = base.zZetaOp(i);
    if (part.inI0(i)) return PhaseLift::principal(w);
    int ni = part.ni[static_cast<size_t>(i) - 1];
    if (part.inIminus(i)) return PhaseLift::principal(mulNeg(w, ni)).plusInt(-ni);
    if (ni == 1) return PhaseLift::principal(w);
    return std::nullopt;
}

Lift GlobalStability::fiberLift() const {
    PhaseLift fiber(PhaseLift::principal(caller.vZ()).dir, 0);
    return Lift(PhaseLift(), fiber, q);  // obj contributes 1, total p(v) + q
}

// -------------------------------------------------------------------- U bar

UBarReport check_U_bar(const CentralCharge& Z, const Geometry& g) {
    if (Z.n() != g.n) throw InvalidCharge("charge size does not match geometry");
    const QC& v = Z.zFiber;
    if (v.isZero()) throw InvalidCharge("fiber charge vanishes");

    // Both conditions are invariant under the pending rotation (det2 and ray
    // membership are preserved by a common rotation), so test stored values.
    CentralCharge flat = Z;
    flat.pend = 0;

    std::vector<KClass> cosets = coset_classes(g);
    for (size_t idx = 0; idx < cosets.size(); ++idx) {
        // The free v-coefficient cannot influence det2(., v): evaluate at d=0.
        QC val = eval_charge_with_d(flat, cosets[idx], 0);
        if (!(det2(val, v) > 0)) {
            std::ostringstream os;
            os << "condition (1) fails: det2(Z(L), v_Z) <= 0 at coset class " << idx;
            return UBarReport{false, os.str()};
        }
    }
    for (int i = 1; i <= g.n; ++i) {
        const QC& z = Z.zOp[static_cast<size_t>(i) - 1];
        if (onNonPosRay(z, v))
            return UBarReport{false, "condition (2) fails: Z(O_p" + std::to_string(i) +
                                         ") in R_{<=0} v_Z"};
        if (onNonPosRay(Z.zZetaOp(i), v))
            return UBarReport{false, "condition (2) fails: Z(zeta O_p" + std::to_string(i) +
                                         ") in R_{<=0} v_Z"};
    }
    return UBarReport{};
}

// ----------------------------------------------------------------- classify

GlobalStability classify_in_U(const CentralCharge& Z, const Geometry& g) {
    UBarReport rep = check_U_bar(Z, g);
    if (!rep.pass) throw NotInRegion(rep.witness);
    if (Z.hasPending())
        throw SymbolicRotation("classification requires a resolved rotation frame");

    QC rho(Rat(1), Rat(0));
    if (!(Z.zFiber.im == 0 && Z.zFiber.re < 0)) rho = -Z.zFiber.conj();
    CentralCharge rotated = scale_rotate_charge(Z, rho);

    std::vector<TwistGen> word;
    for (int i = 1; i <= g.n; ++i)
        if (rotated.zOp[static_cast<size_t>(i) - 1].im > 0)
            word.push_back(TwistGen{TwistKind::OPoint, i, false});
    CentralCharge base = twist_charge(rotated, word);

    PartitionData part;
    part.ni.assign(static_cast<size_t>(g.n), 1);
    for (int i = 1; i <= g.n; ++i) {
        const QC& z = base.zOp[static_cast<size_t>(i) - 1];
        if (z.im < 0) {
            part.Iplus.push_back(i);
        } else if (z.im == 0 && z.re < 0) {
            part.I0.push_back(i);
        } else {
            throw InvalidStability("internal: normalized point charge not in normal form");
        }
    }
    checkHypotheses(base, part, g);

    GlobalStability s{g,    base, base, rho, word, Rat(0), part,
                      heartDescription(part)};
    s.caller = Z;
    return s;
}

GlobalStability build_stability(const CentralCharge& Z, const PartitionData& part,
                                const Geometry& g) {
    validatePartition(part, g.n);
    if (Z.hasPending())
        throw SymbolicRotation("construction requires a resolved rotation frame");
    checkHypotheses(Z, part, g);
    GlobalStability s{g, Z, Z, QC(Rat(1), Rat(0)), {}, Rat(0), part, heartDescription(part)};
    return s;
}

// --------------------------------------------------------------------- HN

namespace {

// Caller-frame decoration of a base-frame object lift.
Lift callerLift(const GlobalStability& s, const PhaseLift& objBase) {
    return Lift(objBase, PhaseLift(PhaseLift::principal(s.caller.vZ()).dir, 0), s.q);
}

// Flip the character parity of a pure torsion class at one point.
KClass flipTorsionParity(const Geometry& g, const KClass& cls) {
    Int len = 2 * cls.c[1];
    for (size_t j = 2; j < cls.c.size(); ++j) len += cls.c[j];
    return KClass::fiber(g) * len - cls;
}

std::string flipTorsionLabel(const std::string& label) {
    std::string out = label;
    auto pos = out.find(",zeta)");
    if (pos != std::string::npos) {
        out.erase(pos, 5);
    } else {
        pos = out.find(')');
        if (pos == std::string::npos) throw InvalidStability("internal: malformed factor label");
        out.insert(pos, ",zeta");
    }
    return out;
}

} // namespace

HNResult hn_global(const GlobalObject& obj, const GlobalStability& s) {
    PhaseLift callerFiberDir(PhaseLift::principal(s.caller.vZ()).dir, 0);
    std::vector<HNResult> parts;
    for (const GlobalSummand& sm : obj) {
        if (sm.mult < 1) throw UnsupportedObject("multiplicity must be positive");
        switch (sm.kind) {
            case GlobalSummand::Kind::LineBundle:
                throw UnsupportedObject(
                    "line bundles have no algorithmic HN here; use reduce_line_bundle");
            case GlobalSummand::Kind::Fiber: {
                HNResult r;
                std::ostringstream lab;
                if (sm.mult != 1) lab << sm.mult << "*";
                lab << "Fiber";
                if (sm.shift != 0) lab << "[" << sm.shift << "]";
                KClass cls = KClass::fiber(s.geom) * sm.mult;
                Lift lf = callerLift(s, PhaseLift(QC(Rat(-1), Rat(0)), sm.shift));
                r.factors.push_back(HNFactor{lab.str(), cls, lf});
                parts.push_back(std::move(r));
                break;
            }
            case GlobalSummand::Kind::Torsion: {
                int i = sm.i;
                if (i < 1 || i > s.geom.n) throw UnsupportedObject("point index out of range");
                if (sm.twist != 0 && sm.twist != 1)
                    throw UnsupportedObject("twist must be 0 or 1");
                auto lu = s.baseLiftOpSlot(i);
                auto lw = s.baseLiftZetaOpSlot(i);
                if (!lu || !lw || s.part.inIminus(i))
                    throw UnsupportedHeart(
                        "HN supported only where both small-object lifts are available "
                        "(multiplicity-1 chambers)");
                const QC& u = s.base.zOp[static_cast<size_t>(i) - 1];
                QC w = s.base.zZetaOp(i);
                LocalStability ls;
                try {
                    ls = LocalStability::chargePoint(u, w, lu->k - PhaseLift::principal(u).k,
                                                     lw->k - PhaseLift::principal(w).k);
                } catch (const InvalidStability& ex) {
                    throw UnsupportedHeart(std::string("slot lifts outside the local chart: ") +
                                           ex.what());
                }
                bool tw = s.twisted(i);
                LocalSummand lsm{sm.m, tw ? 1 - sm.twist : sm.twist, sm.shift, sm.mult};
                HNResult hn = hn_local(LocalObject{lsm}, ls, s.geom, i);
                for (auto& fct : hn.factors) {
                    if (tw) {
                        fct.cls = flipTorsionParity(s.geom, fct.cls);
                        fct.label = flipTorsionLabel(fct.label);
                    }
                    fct.lift = Lift(fct.lift.obj, callerFiberDir, s.q);
                }
                parts.push_back(std::move(hn));
                break;
            }
        }
    }
    return hn_direct_sum(parts);
}

// ------------------------------------------------------------ stable family

std::vector<std::pair<KClass, Lift>> stable_family(const GlobalStability& s) {
    std::vector<std::pair<KClass, Lift>> out;
    out.emplace_back(KClass::fiber(s.geom), s.fiberLift());
    for (int i = 1; i <= s.geom.n; ++i) {
        bool tw = s.twisted(i);
        KClass opSlot = tw ? KClass::zetaPointSheaf(s.geom, i) : KClass::pointSheaf(s.geom, i);
        KClass zetaSlot = tw ? KClass::pointSheaf(s.geom, i) : KClass::zetaPointSheaf(s.geom, i);
        if (auto lu = s.baseLiftOpSlot(i)) out.emplace_back(opSlot, callerLift(s, *lu));
        if (auto lw = s.baseLiftZetaOpSlot(i)) out.emplace_back(zetaSlot, callerLift(s, *lw));
    }
    return out;
}

// -------------------------------------------------------------- line bundles

LineBundleCertificate reduce_line_bundle(const GlobalSummand& L, const GlobalStability& s) {
    if (L.kind != GlobalSummand::Kind::LineBundle)
        throw UnsupportedObject("reduce_line_bundle takes a line bundle summand");
    if (L.shift != 0 || L.mult != 1)
        throw UnsupportedObject("certificate defined for a single unshifted line bundle");
    for (int i = 1; i <= s.geom.n; ++i)
        if (!s.part.inI0(i) && s.part.ni[static_cast<size_t>(i) - 1] != 1)
            throw UnsupportedHeart("certificate requires all multiplicities equal to 1");

    LineBundleCertificate cert;
    cert.pullbackRk = 1;
    cert.pullbackDeg = L.deg;
    KClass check = KClass::pullback(s.geom, 1, L.deg);
    for (int i : L.S) {
        if (i < 1 || i > s.geom.n) throw UnsupportedObject("twist index out of range");
        cert.torsionParts.push_back(GlobalSummand{GlobalSummand::Kind::Torsion, i, 1, 1, 0, 1, 0, {}});
        check = check + KClass::zetaPointSheaf(s.geom, i);
    }
    if (!(check == KClass::lineBundle(s.geom, L.deg, L.S)))
        throw InvalidDecomposition("certificate classes do not recompose the line bundle");

    // Pullback block sits inside the (0, 1] window; torsion parts carry their
    // exact slot lifts.  The bounds are the extrema over these.
    Lift lo = callerLift(s, PhaseLift(QC(Rat(-1), Rat(0)), -1));  // value 0
    Lift hi = callerLift(s, PhaseLift(QC(Rat(-1), Rat(0)), 0));   // value 1
    for (int i : L.S) {
        auto pl = s.twisted(i) ? s.baseLiftOpSlot(i) : s.baseLiftZetaOpSlot(i);
        if (!pl) throw UnsupportedHeart("missing slot lift for a twisted point");
        Lift lf = callerLift(s, *pl);
        auto cLo = lf.compareExact(lo);
        auto cHi = lf.compareExact(hi);
        if (!cLo || !cHi) throw Undecidable("incomparable certificate lifts");
        if (*cLo < 0) lo = lf;
        if (*cHi > 0) hi = lf;
    }
    cert.phiLower = lo;
    cert.phiUpper = hi;
    return cert;
}

// -------------------------------------------------------------------- Theta

Rat theta_delta(const LocalStability& l) {
    if (l.rep != LocalStability::Rep::CHARGE)
        throw Undecidable("exact delta needs a charge-backed local stability");
    if (l.frameC.re != 0)
        throw Undecidable("exact delta needs a unit-scale frame");
    if (PhaseLift::compare(l.liftOp(), l.liftZetaOp()) < 0) return det2(l.w, l.u + l.w);
    return 0;
}

Rat theta_lhs(const ThetaPoint& t) {
    if (t.locals.empty() || static_cast<int>(t.locals.size()) != t.geom.n)
        throw InvalidStability("one local stability per ramification point required");
    QC v = t.locals[0].u + t.locals[0].w;
    if (v.isZero()) throw InvalidCharge("fiber charge vanishes");
    Rat lhs = det2(t.z, v);
    for (const LocalStability& l : t.locals) {
        if (l.u + l.w != v)
            throw InvalidStability("local fiber charges disagree");
        lhs += theta_delta(l);
    }
    return lhs / v.normSq();
}

ThetaPoint theta_map(const GlobalStability& s) {
    if (s.geom.genusY < 1)
        throw PreconditionGenus("classification coordinates need genus(Y) >= 1");
    for (int i = 1; i <= s.geom.n; ++i)
        if (s.part.inIminus(i) || (!s.part.inI0(i) && s.part.ni[static_cast<size_t>(i) - 1] != 1))
            throw UnsupportedHeart(
                "theta coordinates implemented for the multiplicity-1, I- = empty family");

    PhaseLift baseFiber = PhaseLift::principal(s.base.vZ());  // real negative: (dir, 0), value 1
    QC vC = s.caller.vZ();

    ThetaPoint t;
    t.geom = s.geom;
    t.q = s.q;
    t.z = s.caller.zOX;
    for (int i = 1; i <= s.geom.n; ++i) {
        QC uC = s.caller.zOp[static_cast<size_t>(i) - 1];
        QC wC = s.caller.zZetaOp(i);
        if (uC.isZero() || wC.isZero()) throw InvalidCharge("small-object charge vanishes");
        auto lu = s.baseLiftOpSlot(i);
        auto lw = s.baseLiftZetaOpSlot(i);
        if (!lu || !lw) throw UnsupportedHeart("missing slot lift");
        bool tw = s.twisted(i);
        // The base O_p-slot holds the intrinsic zeta-twisted object at a
        // twisted point; route the anchors to the matching caller direction.
        const QC& xOp = tw ? wC : uC;
        const QC& xZeta = tw ? uC : wC;
        long long kOp = relAnchor(*lu, baseFiber, xOp, vC);
        long long kZeta = relAnchor(*lw, baseFiber, xZeta, vC);
        // Canonical local frame: the 2p lift sits at the k = 0 lift of v.
        long long kuC = (tw ? kZeta : kOp) - PhaseLift::principal(uC).k;
        long long kwC = (tw ? kOp : kZeta) - PhaseLift::principal(wC).k;
        t.locals.push_back(LocalStability::chargePoint(uC, wC, kuC, kwC));
    }
    if (!(theta_lhs(t) > 0))
        throw NotInRegion("classification coordinates outside the open region");
    return t;
}

GlobalStability build_from_theta(const ThetaPoint& t) {
    if (t.geom.genusY < 1)
        throw PreconditionGenus("classification coordinates need genus(Y) >= 1");
    if (t.locals.empty() || static_cast<int>(t.locals.size()) != t.geom.n)
        throw InvalidStability("one local stability per ramification point required");
    if (!(theta_lhs(t) > 0))
        throw NotInRegion("classification coordinates outside the open region");

    QC v = t.locals[0].u + t.locals[0].w;
    PhaseLift F0(PhaseLift::principal(v).dir, 0);

    std::vector<QC> zOp;
    std::vector<TwistGen> word;
    PartitionData part;
    part.ni.assign(static_cast<size_t>(t.geom.n), 1);
    for (int i = 1; i <= t.geom.n; ++i) {
        const LocalStability& l = t.locals[static_cast<size_t>(i) - 1];
        if (l.rep != LocalStability::Rep::CHARGE)
            throw Undecidable("construction needs charge-backed local stabilities");
        if (!(l.frameC == QC()))
            throw InvalidStability("theta local not in the canonical frame");
        zOp.push_back(l.u);
        PhaseLift lu = l.liftOp(), lw = l.liftZetaOp();
        int dc = PhaseLift::compare(lu, lw);
        // Canonicality: the semistable 2p object must sit at the lift F0.
        PhaseLift l2p = resolve_between(v, dc >= 0 ? lw : lu, dc >= 0 ? lu : lw);
        if (PhaseLift::compare(l2p, F0) != 0)
            throw InvalidStability("theta local not in the canonical frame");
        if (dc == 0) {
            part.I0.push_back(i);
            continue;
        }
        if (dc < 0) word.push_back(TwistGen{TwistKind::OPoint, i, false});
        part.Iplus.push_back(i);
        PhaseLift dom = dc > 0 ? lu : lw;  // dominant small object
        PhaseLift q1(dom.dir, 0);
        PhaseLift q2(F0.dir, 0);
        long long ni = dom.k + (PhaseLift::compare(q1, q2) > 0 ? 1 : 0);
        if (ni < 1) throw InvalidStability("dominant small object below the fiber lift");
        part.ni[static_cast<size_t>(i) - 1] = static_cast<int>(ni);
    }

    CentralCharge caller(t.z, v, zOp);
    QC rho(Rat(1), Rat(0));
    if (!(v.im == 0 && v.re < 0)) rho = -v.conj();
    CentralCharge base = twist_charge(scale_rotate_charge(caller, rho), word);

    GlobalStability s = build_stability(base, part, t.geom);
    s.caller = caller;
    s.rho = rho;
    s.twistWord = word;
    s.q = t.q;
    return s;
}

// ------------------------------------------------------------ frame actions

GlobalStability rotate_global(const GlobalStability& s, const Rat& a) {
    GlobalStability r = s;
    QC vOld = s.caller.vZ();
    r.caller = rotate_charge(s.caller, a);
    QC vNew = r.caller.vZ();
    // The eager quarter-turn part of the rotation multiplies the stored
    // values by (-i)^kEager; fold its inverse into rho so that
    // base = twist(rho * caller) keeps holding (the pending part stays in
    // the caller's pend field and is invisible to the stored values).
    Rat kEagerRat = 2 * (s.caller.pend + a - r.caller.pend);
    if (denominator(kEagerRat) != 1)
        throw InvalidStability("internal: non-integral eager rotation");
    r.rho = mulI(s.rho, static_cast<int>(numerator(kEagerRat) % 4));
    // q tracks the caller fiber lift p(v) + q; eager quarter turns move the
    // canonical fractional part by a half-integer that q must absorb.
    PhaseLift dOld(PhaseLift::principal(vOld).dir, 0);
    PhaseLift dNew(PhaseLift::principal(vNew).dir, 0);
    int cmp = PhaseLift::compare(dOld, dNew);
    Rat d = cmp == 0 ? Rat(0) : (cmp > 0 ? Rat(1, 2) : Rat(-1, 2));
    r.q = s.q - a + d;
    return r;
}

GlobalStability rescale_global(const GlobalStability& s, const Rat& lambda) {
    if (lambda <= 0) throw InvalidCharge("scale must be positive");
    GlobalStability r = s;
    r.caller = rescale_charge(s.caller, lambda);
    r.base = rescale_charge(s.base, lambda);
    return r;
}

GlobalStability twist_global(const GlobalStability& s, int i) {
    if (i < 1 || i > s.geom.n) throw InvalidCharge("twist index out of range");
    GlobalStability r = s;
    r.caller = twist_charge(s.caller, TwistGen{TwistKind::OPoint, i, false});
    // Toggle the slot in the normalization word; the base point charges are
    // unchanged and Z(O_X) moves by a fiber multiple, so the hypotheses hold.
    bool removed = false;
    std::vector<TwistGen> word;
    for (const TwistGen& g : s.twistWord) {
        if (!removed && g.kind == TwistKind::OPoint && g.index == i) {
            removed = true;
            continue;
        }
        word.push_back(g);
    }
    if (!removed) word.push_back(TwistGen{TwistKind::OPoint, i, false});
    r.twistWord = std::move(word);
    CentralCharge flat = r.caller;
    flat.pend = 0;
    r.base = twist_charge(scale_rotate_charge(flat, r.rho), r.twistWord);
    checkHypotheses(r.base, r.part, r.geom);
    return r;
}

} // namespace stab
