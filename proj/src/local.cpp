#include "stab/local.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace stab {

namespace {

// Lift object carrying an exact rational absolute value r.
Lift ratLift(const Rat& r) {
    return Lift(PhaseLift(QC(Rat(-1), Rat(0)), -1), r);  // 0 + r
}

ObjectStatus stable(const Lift& l) {
    return ObjectStatus{Status::Stable, l, l.approx()};
}
ObjectStatus stableApprox(double l) {
    return ObjectStatus{Status::Stable, std::nullopt, l};
}
ObjectStatus strictly(const Lift& l) {
    return ObjectStatus{Status::StrictlySemistable, l, l.approx()};
}
ObjectStatus unstable() { return ObjectStatus{}; }

std::complex<double> cexpPi(const std::complex<double>& z) {
    return std::exp(M_PI * z);
}

std::complex<double> toC(const QC& z) { return {z.reD(), z.imD()}; }

} // namespace

LocalStability LocalStability::chartPoint(Chart chart, QC f, QC coord) {
    LocalStability s;
    s.rep = Rep::CHART;
    s.chart = chart;
    s.f = std::move(f);
    s.coord = std::move(coord);
    if (chart == Chart::WALL) {
        if (s.coord.im != 0 || s.coord.re >= 0)
            throw InvalidStability("wall coordinate must be real negative");
    } else if (s.coord.im == 0 && s.coord.re >= 0) {
        throw BranchCut("chart coordinate on the logarithm branch cut");
    }
    return s;
}

LocalStability LocalStability::chargePoint(QC u, QC w, long long ku, long long kw, QC frameC) {
    if (u.isZero() || w.isZero() || (u + w).isZero())
        throw InvalidCharge("degenerate local charge");
    LocalStability s;
    s.rep = Rep::CHARGE;
    s.u = std::move(u);
    s.w = std::move(w);
    s.ku = ku;
    s.kw = kw;
    s.frameC = std::move(frameC);
    PhaseLift lu = s.liftOp(), lw = s.liftZetaOp();
    if (PhaseLift::compare(lu, lw.plusInt(1)) >= 0 ||
        PhaseLift::compare(lw, lu.plusInt(1)) >= 0)
        throw InvalidStability("small-object lifts must differ by less than 1");
    return s;
}

LocalStability local_from_charges(const QC& u, const QC& w) {
    if (u.isZero() || w.isZero())
        throw InvalidStabilityFunction("zero charge on a simple object");
    if (!inUpperOrNegReal(u) || !inUpperOrNegReal(w))
        throw InvalidStabilityFunction("charge leaves the standard half-plane");
    return LocalStability::chargePoint(u, w, 0, 0);
}

// ----------------------------------------------------------------- chamber

static ChamberReport chamberCharge(const LocalStability& s) {
    PhaseLift lu = s.liftOp(), lw = s.liftZetaOp();
    const Rat off = s.frameC.im;
    int dc = PhaseLift::compare(lu, lw);

    ChamberReport r;
    r.Uplus = r.Uminus = true;
    r.Wplus = dc >= 0;
    r.Wminus = dc <= 0;
    r.op = stable(Lift(lu, off));
    r.zetaOp = stable(Lift(lw, off));

    PhaseLift lo = dc >= 0 ? lw : lu;
    PhaseLift hi = dc >= 0 ? lu : lw;
    PhaseLift l2p = resolve_between(s.u + s.w, lo, hi);
    Lift fiberLift(l2p, off);
    if (dc > 0) {
        r.o2p = stable(fiberLift);
        r.zetaO2p = unstable();
    } else if (dc < 0) {
        r.o2p = unstable();
        r.zetaO2p = stable(fiberLift);
    } else {
        r.o2p = strictly(fiberLift);
        r.zetaO2p = strictly(fiberLift);
    }
    return r;
}

static ChamberReport chamberChart(const LocalStability& s) {
    const Rat F = s.f.im;
    ChamberReport r;

    if (s.chart == Chart::WALL) {
        r.Uplus = r.Uminus = r.Wplus = r.Wminus = true;
        r.op = stable(ratLift(F));
        r.zetaOp = stable(ratLift(F));
        r.o2p = strictly(ratLift(F));
        r.zetaO2p = strictly(ratLift(F));
        return r;
    }

    if (s.coord.im == 0 && s.coord.re >= 0)
        throw BranchCut("chart coordinate on the logarithm branch cut");

    const Rat t = s.coord.im;
    if (t == 0) {
        // Re < 0: the wall seen in chart coordinates.
        r.Uplus = r.Uminus = r.Wplus = r.Wminus = true;
        r.op = stable(ratLift(F));
        r.zetaOp = stable(ratLift(F));
        r.o2p = strictly(ratLift(F));
        r.zetaO2p = strictly(ratLift(F));
        return r;
    }

    // PLUS-chart analysis; the MINUS chart is its mirror under swapping
    // O_p <-> zeta O_p and O_2p <-> zeta O_2p.
    ObjectStatus big = stable(ratLift(F + t));  // the chart's own small object
    ObjectStatus other;                          // the opposite small object
    if (t > Rat(-1) && t < Rat(1)) {
        // Stable, with a transcendental lift: approximate from the charges.
        std::complex<double> val = 1.0 - cexpPi(toC(s.coord));
        double lift = toDouble(F) + std::atan2(val.imag(), val.real()) / M_PI;
        other = stableApprox(lift);
    } else if (t == Rat(1) || t == Rat(-1)) {
        other = strictly(ratLift(F));
    } else {
        other = unstable();
    }
    ObjectStatus fiberSemi = t > 0 ? stable(ratLift(F)) : unstable();
    ObjectStatus fiberAnti = t < 0 ? stable(ratLift(F)) : unstable();

    bool plus = s.chart == Chart::PLUS;
    r.op = plus ? big : other;
    r.zetaOp = plus ? other : big;
    r.o2p = plus ? fiberSemi : fiberAnti;
    r.zetaO2p = plus ? fiberAnti : fiberSemi;
    bool bigSide = t > 0;
    r.Wplus = plus ? bigSide : !bigSide;
    r.Wminus = !r.Wplus;
    bool otherStableOrSemi = t > Rat(-1) && t < Rat(1);
    r.Uplus = plus ? true : otherStableOrSemi;
    r.Uminus = plus ? otherStableOrSemi : true;
    return r;
}

ChamberReport chamber(const LocalStability& s) {
    return s.rep == LocalStability::Rep::CHARGE ? chamberCharge(s) : chamberChart(s);
}

// ------------------------------------------------------------------ oracle

ChamberReport oracle_chamber(const QC& u, const QC& w) {
    if (u.isZero() || w.isZero())
        throw InvalidStabilityFunction("zero charge on a simple object");
    if (!inUpperOrNegReal(u) || !inUpperOrNegReal(w))
        throw InvalidStabilityFunction("charge leaves the standard half-plane");

    Geometry g(1, 1);
    CentralCharge Z(QC(Rat(0), Rat(1)), u + w, {u});

    auto analyze = [&](int twist) {
        // Chain of zeta^twist O_{2p}: sub is zeta^{twist+1} O_p.
        ChainObject obj;
        obj.chain = {KClass::torsion(g, 1, 1, (twist + 1) % 2), KClass::torsion(g, 1, 2, twist)};
        obj.labels = {"sub", "quot"};
        HNResult hn = hn_polygon(obj, Z);
        if (hn.factors.size() != 1) return unstable();
        Lift l = hn.factors[0].lift;
        QC subVal = twist ? u : w;
        // Strictly semistable iff the proper subobject has the same phase.
        if (PhaseLift::compare(PhaseLift::principal(subVal), l.obj) == 0)
            return strictly(l);
        return stable(l);
    };

    ChamberReport r;
    r.op = stable(Lift(PhaseLift::principal(u)));
    r.zetaOp = stable(Lift(PhaseLift::principal(w)));
    r.o2p = analyze(0);
    r.zetaO2p = analyze(1);
    r.Uplus = r.op.status != Status::Unstable;
    r.Uminus = r.zetaOp.status != Status::Unstable;
    r.Wplus = r.o2p.status != Status::Unstable;
    r.Wminus = r.zetaO2p.status != Status::Unstable;
    return r;
}

// ------------------------------------------------------------- C-action etc.

std::complex<double> f_of(const LocalStability& s) {
    if (s.rep == LocalStability::Rep::CHART) {
        // exp(pi f) = Z(O_2p) holds by construction: Z(O_p) + Z(zeta O_p)
        // = exp(pi f)(e^{pi w} + 1 - e^{pi w}).
        return toC(s.f);
    }
    PhaseLift lu = s.liftOp(), lw = s.liftZetaOp();
    PhaseLift lo = PhaseLift::compare(lu, lw) <= 0 ? lu : lw;
    PhaseLift hi = PhaseLift::compare(lu, lw) <= 0 ? lw : lu;
    PhaseLift l2p = resolve_between(s.u + s.w, lo, hi);
    double re = s.frameC.reD() + std::log(std::sqrt(toDouble((s.u + s.w).normSq()))) / M_PI;
    double im = s.frameC.imD() + l2p.approx();
    std::complex<double> f(re, im);
    std::complex<double> lhs = cexpPi(f);
    std::complex<double> rhs = cexpPi(toC(s.frameC)) * toC(s.u + s.w);
    if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs))
        throw InvalidStability("exp(pi f) does not match the charge values");
    return f;
}

LocalStability act_C(const LocalStability& s, const QC& c) {
    LocalStability r = s;
    if (s.rep == LocalStability::Rep::CHART) {
        r.f = s.f + c;
    } else {
        r.frameC = s.frameC + c;
    }
    return r;
}

static Rat ratFromDouble(double d) {
    // Doubles are dyadic rationals; decompose exactly.
    if (d == 0.0) return 0;
    int exp2 = 0;
    double m = std::frexp(d, &exp2);  // d = m * 2^exp2, |m| in [1/2, 1)
    long long mi = static_cast<long long>(std::ldexp(m, 53));
    exp2 -= 53;
    Rat r(mi);
    if (exp2 >= 0) {
        r *= Rat(Int(1) << exp2);
    } else {
        r /= Rat(Int(1) << -exp2);
    }
    return r;
}

LocalStability chart_transition(const LocalStability& s) {
    if (s.rep != LocalStability::Rep::CHART)
        throw InvalidStability("chart transition needs a chart representation");
    if (s.chart == Chart::WALL) {
        double x = s.coord.reD();
        double y = std::log(1.0 - std::exp(M_PI * x)) / M_PI;
        return LocalStability::chartPoint(Chart::WALL, s.f, QC(ratFromDouble(y), Rat(0)));
    }
    if (!(s.coord.im > Rat(-1) && s.coord.im < Rat(1)))
        throw NotInRegion("chart transition defined only on the overlap |Im| < 1");
    std::complex<double> wNew = std::log(1.0 - cexpPi(toC(s.coord))) / M_PI;
    QC coord(ratFromDouble(wNew.real()), ratFromDouble(wNew.imag()));
    Chart other = s.chart == Chart::PLUS ? Chart::MINUS : Chart::PLUS;
    return LocalStability::chartPoint(other, s.f, coord);
}

double delta(const LocalStability& s) {
    ChamberReport r = chamber(s);
    if (r.zetaO2p.status == Status::Unstable) return 0.0;
    if (s.rep == LocalStability::Rep::CHARGE) {
        double scale = std::exp(2.0 * M_PI * s.frameC.reD());
        return toDouble(det2(s.w, s.u + s.w)) * scale;
    }
    std::complex<double> f2p = cexpPi(toC(s.f));
    std::complex<double> zetaOpVal;
    if (s.chart == Chart::WALL) {
        zetaOpVal = f2p * (1.0 - std::exp(M_PI * s.coord.reD()));
    } else if (s.chart == Chart::PLUS) {
        zetaOpVal = f2p * (1.0 - cexpPi(toC(s.coord)));
    } else {
        zetaOpVal = f2p * cexpPi(toC(s.coord));
    }
    return zetaOpVal.real() * f2p.imag() - zetaOpVal.imag() * f2p.real();
}

// ---------------------------------------------------------------- hn_local

HNResult hn_local(const LocalObject& obj, const LocalStability& s, const Geometry& geom,
                  int pointIndex) {
    if (s.rep != LocalStability::Rep::CHARGE)
        throw Undecidable(
            "HN requires a charge-backed stability; chart charges are transcendental");
    PhaseLift lu = s.liftOp(), lw = s.liftZetaOp();

    std::vector<HNResult> parts;
    for (const LocalSummand& sm : obj) {
        if (sm.m < 1) throw UnsupportedObject("torsion length must be positive");
        if (sm.mult < 1) throw UnsupportedObject("multiplicity must be positive");
        if (sm.twist != 0 && sm.twist != 1) throw UnsupportedObject("twist must be 0 or 1");
        std::vector<Increment> incs;
        for (int k = 1; k <= sm.m; ++k) {
            // Subquotient k of zeta^eps O_{mp} is a copy of zeta^par O_p
            // with par = (eps + m - k) mod 2.
            int par = (sm.twist + sm.m - k) % 2;
            QC base = par ? s.w : s.u;
            PhaseLift lift = (par ? lw : lu).plusInt(sm.shift);
            QC val = mulI(base, 2 * (((sm.shift % 2) + 2) % 2)) * Rat(sm.mult);
            incs.push_back(Increment{val, lift, KClass(), std::to_string(k)});
        }
        HNResult hn = hn_core(incs, PhaseLift(), s.frameC.im);
        // Relabel each factor as the torsion subquotient it is.
        int consumed = 0;
        for (auto& fct : hn.factors) {
            int count = static_cast<int>(std::count(fct.label.begin(), fct.label.end(), '-') / 2) + 1;
            int j2 = consumed + count;
            int par = (sm.twist + sm.m - j2) % 2;
            std::ostringstream lab;
            if (sm.mult != 1) lab << sm.mult << "*";
            lab << "Torsion(" << pointIndex << "," << count << (par ? ",zeta" : "") << ")";
            if (sm.shift != 0) lab << "[" << sm.shift << "]";
            fct.label = lab.str();
            fct.cls = KClass::torsion(geom, pointIndex, count, par) * sm.mult;
            consumed = j2;
        }
        parts.push_back(std::move(hn));
    }
    return hn_direct_sum(parts);
}

} // namespace stab
