#include "stab/glue.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stab {

namespace {

/** Rational gcd: gcd of numerators over lcm of denominators. */
Rat ratGcd(const Rat& a, const Rat& b) {
    if (a == 0) return b < 0 ? Rat(-b) : b;
    if (b == 0) return a < 0 ? Rat(-a) : a;
    Int na = numerator(a), da = denominator(a);
    Int nb = numerator(b), db = denominator(b);
    Int n = boost::multiprecision::gcd(na < 0 ? Int(-na) : na, nb < 0 ? Int(-nb) : nb);
    Int d = da / boost::multiprecision::gcd(da, db) * db;
    return Rat(n, d);
}

/** Exact phase in (0, 1] of a nonzero heart charge, as a rational. */
Rat exactSimplePhase(const QC& z) {
    if (z.isZero()) throw InvalidCharge("simple with zero charge");
    if (!inUpperOrNegReal(z)) throw InvalidCharge("simple charge outside the heart half-plane");
    auto r = PhaseLift::principal(z).exactRational();
    if (!r) throw Undecidable("simple phase is not exactly rational; use grid-aligned charges");
    return *r;
}

/** Lift with exact rational value r + shift (display/compare friendly). */
Lift ratShiftLift(const Rat& r, long long shift) {
    return Lift(PhaseLift(QC(Rat(-1), Rat(0)), shift - 1), r);
}

} // namespace

// --------------------------------------------------------------- ExtPattern

const std::vector<int>* ExtPattern::degrees(int i, int j) const {
    auto it = homs.find({i, j});
    if (it == homs.end()) return nullptr;
    return &it->second;
}

// ------------------------------------------------------- StabilitySummary

void StabilitySummary::validate() const {
    for (const Simple& s : simples) {
        if (!(s.phase > 0 && s.phase <= 1))
            throw InvalidStability("simple phase outside (0, 1]: " + s.label);
        if (s.charge) {
            if (s.charge->isZero()) throw InvalidCharge("simple with zero charge: " + s.label);
            auto r = PhaseLift::principal(*s.charge).exactRational();
            if (r && *r != s.phase)
                throw InvalidStability("simple phase disagrees with its charge: " + s.label);
        }
    }
    if (phiLow && !(*phiLow >= 0 && *phiLow < 1))
        throw InvalidStability("lower emptiness bound outside [0, 1)");
    if (phiHigh && !(*phiHigh > 0 && *phiHigh <= 1))
        throw InvalidStability("upper emptiness bound outside (0, 1]");
    if (phiLow && phiHigh && !(*phiLow < *phiHigh))
        throw InvalidStability("emptiness windows overlap");
    for (const Simple& s : simples) {
        if (phiLow && !(s.phase > *phiLow))
            throw InvalidStability("simple inside the lower emptiness window: " + s.label);
        if (phiHigh && !(s.phase <= *phiHigh))
            throw InvalidStability("simple inside the upper emptiness window: " + s.label);
    }
}

// ----------------------------------------------------------- orthogonality

bool check_hearts_orthogonal(const ExtPattern& p) {
    for (const auto& [key, degs] : p.homs)
        for (int d : degs)
            if (d <= 0) return false;
    return true;
}

// --------------------------------------------------------------- gluing

CentralCharge glue_charge(const YCharge& Z1, const std::vector<QC>& Z2, const Geometry& g) {
    if (static_cast<int>(Z2.size()) != g.n)
        throw InvalidCharge("one point charge per ramification point required");
    if (Z1.zDeg.isZero()) throw InvalidCharge("fiber charge vanishes");
    // Z(pullback(rk, deg)) = rk * Z(O_X) + deg * v_Z restricts to Z1.
    return CentralCharge(Z1.zRk, Z1.zDeg, Z2);
}

namespace {

struct VerifyResult {
    bool ok = true;
    GlueParamResult::Witness witness;
};

VerifyResult verifyParameter(const Rat& a, const StabilitySummary& s1,
                             const StabilitySummary& s2, const ExtPattern& p) {
    // Shift each generator into the window (a, a+1].  Since
    // Hom^m(g1[k1], g2[k2]) = Hom^{m + k2 - k1}(g1, g2), a hom of degree d
    // appears in degree m = d + k1 - k2 between the shifted generators, and
    // the cross vanishing Hom^{<=0} = 0 becomes d + k1 - k2 >= 1.
    auto shiftOf = [&a](const StabilitySummary& s, int idx) {
        return s.simples[static_cast<size_t>(idx)].phase > a ? 0 : 1;
    };
    for (const auto& [key, degs] : p.homs) {
        int i = key.first, j = key.second;
        if (i < 0 || i >= static_cast<int>(p.G1.size()) || j < 0 ||
            j >= static_cast<int>(p.G2.size()))
            throw InvalidDecomposition("hom pattern index out of range");
        int k1 = shiftOf(s1, i), k2 = shiftOf(s2, j);
        for (int d : degs) {
            if (d + k1 - k2 < 1) {
                VerifyResult r;
                r.ok = false;
                r.witness = GlueParamResult::Witness{i, j, k1, k2, d};
                return r;
            }
        }
    }
    return VerifyResult{};
}

} // namespace

GlueParamResult find_gluing_parameter(const StabilitySummary& s1, const StabilitySummary& s2,
                                      const ExtPattern& p) {
    if (p.G1.size() != s1.simples.size() || p.G2.size() != s2.simples.size())
        throw InvalidDecomposition("pattern generators must match the factor summaries");
    s1.validate();
    s2.validate();

    GlueParamResult out;
    auto tryCandidate = [&](const Rat& a, const std::string& method) {
        if (!(a > 0 && a < 1)) return false;
        VerifyResult v = verifyParameter(a, s1, s2, p);
        if (v.ok) {
            out.a = a;
            out.method = method;
            out.witness.reset();
            return true;
        }
        out.witness = v.witness;
        return false;
    };

    // Closed-form windows first.
    if (s2.finiteLength && !s2.simples.empty()) {
        Rat a = s2.simples[0].phase;
        for (const auto& s : s2.simples) a = std::min(a, s.phase);
        if (tryCandidate(a, "case1")) return out;
    }
    std::optional<Rat> phiMax1 = s1.phiHigh;
    for (const auto& s : s1.simples) phiMax1 = phiMax1 ? std::max(*phiMax1, s.phase) : s.phase;
    if (phiMax1 && tryCandidate((*phiMax1 + 1) / 2, "case2")) return out;

    // Finite scan over the phase breakpoints and their midpoints.
    std::vector<Rat> bp;
    for (const auto& s : s1.simples) bp.push_back(s.phase);
    for (const auto& s : s2.simples) bp.push_back(s.phase);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<Rat> candidates;
    for (size_t i = 0; i < bp.size(); ++i) {
        candidates.push_back(bp[i]);
        Rat next = i + 1 < bp.size() ? bp[i + 1] : Rat(1);
        candidates.push_back((bp[i] + next) / 2);
    }
    if (bp.empty()) candidates.push_back(Rat(1, 2));
    for (const Rat& a : candidates)
        if (tryCandidate(a, "scan")) return out;
    out.method = "scan";
    return out;
}

ConditionAReport check_gluing_condition_a(const std::vector<Rat>& imValues1,
                                          const std::vector<Rat>& imValues2) {
    ConditionAReport rep;
    Rat g = 0;
    for (const Rat& r : imValues1) g = ratGcd(g, r);
    for (const Rat& r : imValues2) g = ratGcd(g, r);
    if (g == 0) {
        // Im Z = 0 on every generator: discreteness holds for the trivial
        // reason, but finiteness of filtrations needs the noetherian side
        // condition, which this finite test cannot see.
        rep.holds = true;
        rep.noetherianAssumed = true;
        return rep;
    }
    rep.holds = true;
    rep.gap = g;
    return rep;
}

bool check_gluing_condition_b(const ExtPattern& p, const StabilitySummary& s2) {
    if (p.G2.size() != s2.simples.size())
        throw InvalidDecomposition("pattern generators must match the factor summary");
    for (const auto& [key, degs] : p.homs) {
        int j = key.second;
        if (j < 0 || j >= static_cast<int>(s2.simples.size()))
            throw InvalidDecomposition("hom pattern index out of range");
        if (s2.simples[static_cast<size_t>(j)].phase < 1)
            for (int d : degs)
                if (d <= 1) return false;
    }
    return true;
}

// --------------------------------------------------- exceptional collections

std::pair<GluedDescriptor, StabilitySummary> macri_glued(const ExtPattern& collection,
                                                         const std::vector<QC>& z) {
    if (!collection.G2.empty())
        throw InvalidDecomposition("collection pattern must have an empty second factor");
    if (z.size() != collection.G1.size())
        throw InvalidCharge("one charge per collection member required");
    for (const auto& [key, degs] : collection.homs) {
        if (key.first == key.second)
            throw InvalidDecomposition("self-homs are not part of the pattern");
        for (int d : degs)
            if (d <= 0)
                throw NotOrthogonal("collection member homs must sit in strictly positive degrees");
    }

    StabilitySummary sum;
    sum.finiteLength = true;
    std::vector<Rat> imValues;
    for (size_t i = 0; i < z.size(); ++i) {
        Rat phase = exactSimplePhase(z[i]);
        sum.simples.push_back(StabilitySummary::Simple{collection.G1[i], z[i], phase});
        imValues.push_back(z[i].im);
    }
    Rat hi = 0;
    for (const auto& s : sum.simples) hi = std::max(hi, s.phase);
    if (hi < 1) sum.phiHigh = hi;
    sum.validate();

    GluedDescriptor desc;
    std::string names;
    for (size_t i = collection.G1.size(); i-- > 0;)
        names += (names.empty() ? "" : ", ") + collection.G1[i];
    desc.heartDesc = "<" + names + ">";
    ConditionAReport condA = check_gluing_condition_a(imValues, {});
    if (condA.holds && !condA.noetherianAssumed) desc.conditionTag = "(a)-discrete";
    return {desc, sum};
}

HNResult macri_hn(const StabilitySummary& s,
                  const std::vector<std::pair<int, int>>& certificate) {
    s.validate();
    if (certificate.empty()) throw InvalidDecomposition("empty filtration certificate");
    struct Piece {
        std::string label;
        Rat value;
        Rat phase;
        int shift;
    };
    std::vector<Piece> pieces;
    for (const auto& [idx, shift] : certificate) {
        if (idx < 0 || idx >= static_cast<int>(s.simples.size()))
            throw InvalidDecomposition("certificate simple index out of range");
        const auto& sim = s.simples[static_cast<size_t>(idx)];
        std::string label = sim.label + (shift ? "[" + std::to_string(shift) + "]" : "");
        pieces.push_back(Piece{label, sim.phase + shift, sim.phase, shift});
    }
    // Refine to strictly decreasing phases; equal-phase pieces merge into one
    // semistable factor.
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Piece& a, const Piece& b) { return b.value < a.value; });
    HNResult r;
    std::optional<Rat> prev;
    for (const auto& p : pieces) {
        if (prev && p.value == *prev) {
            r.factors.back().label += " + " + p.label;
        } else {
            r.factors.push_back(HNFactor{p.label, KClass(), ratShiftLift(p.phase, p.shift)});
        }
        prev = p.value;
    }
    return r;
}

ExcP1Report exc_P1_check(const GlobalStability& s, const Rat& a) {
    if (s.geom.genusY != 0)
        throw PreconditionGenus("exceptional-collection certificate needs genus(Y) = 0");
    if (!(a > 0 && a < Rat(1, 2)))
        throw NotInRegion("rotation parameter must lie in (0, 1/2)");

    ExcP1Report rep;
    const CentralCharge& Z = s.caller;
    if (Z.hasPending())
        throw SymbolicRotation("certificate requires a resolved caller frame");

    for (int i = 1; i <= s.geom.n; ++i)
        if (det2(Z.zOp[static_cast<size_t>(i) - 1], Z.vZ()) == 0) return rep;
    rep.independenceOk = true;

    // Sign of Im e^{-i pi a} (Z(O_X) + m v_Z): strictly monotone in m.
    auto signAt = [&](long long m) {
        return im_sign_pending(Z.zOX + Z.vZ() * Rat(m), a);
    };
    int sv = im_sign_pending(Z.vZ(), a);
    if (sv == 0) throw Undecidable("fiber charge aligned with the rotation direction");
    long long lo = 0, hi = 0;
    int slo = signAt(0);
    if (slo == 0) return rep;
    long long step = sv > 0 ? (slo < 0 ? 1 : -1) : (slo < 0 ? -1 : 1);
    // Walk geometrically until the sign flips (monotonicity bounds the walk).
    long long m = step;
    for (int it = 0;; ++it) {
        if (it > 64) throw Undecidable("sign change not found");
        int sm = signAt(m);
        if (sm == 0) return rep;
        if (sm != slo) {
            lo = 0;
            hi = m;
            break;
        }
        m *= 2;
    }
    if (hi < lo) std::swap(lo, hi);
    int sLo = signAt(lo);
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        int sm = signAt(mid);
        if (sm == 0) return rep;
        if (sm == sLo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Orient so that N has negative sign and N+1 positive.
    long long N = signAt(lo) < 0 ? lo : hi;
    if (!(signAt(N) < 0 && signAt(N + 1) > 0)) return rep;
    rep.N = N;
    rep.signOk = true;

    rep.collection.push_back("pullback(1," + std::to_string(N) + ")[1]");
    rep.classes.push_back(KClass::pullback(s.geom, 1, N));
    rep.collection.push_back("pullback(1," + std::to_string(N + 1) + ")");
    rep.classes.push_back(KClass::pullback(s.geom, 1, N + 1));
    std::vector<long long> shifts{1, 0};
    for (int i = 1; i <= s.geom.n; ++i) {
        rep.collection.push_back("O_p" + std::to_string(i) + "[-1]");
        rep.classes.push_back(KClass::pointSheaf(s.geom, i));
        shifts.push_back(-1);
    }

    // Window (-1-a, 2-a]: the rotated phases must fit a length-3 window.
    const double tol = 1e-9;
    double aD = toDouble(a);
    bool ok = true;
    for (size_t j = 0; j < rep.classes.size(); ++j) {
        double re, imv;
        eval_charge_approx(Z, rep.classes[j], re, imv);
        double phi = std::atan2(imv, re) / M_PI + static_cast<double>(shifts[j]);
        if (!(phi > -1 - aD + tol && phi <= 2 - aD + tol)) ok = false;
    }
    rep.windowOk = ok;
    return rep;
}

} // namespace stab
