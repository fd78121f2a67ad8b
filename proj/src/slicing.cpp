#include "stab/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stab/local.hpp"  // resolve_between

namespace stab {

// --------------------------------------------------------------- PhaseLift

PhaseLift PhaseLift::principal(const QC& z) {
    if (z.isZero()) throw DegeneratePhase();
    if (inUpperOrNegReal(z)) return PhaseLift(z, 0);
    return PhaseLift(-z, -1);
}

PhaseLift PhaseLift::shifted(const QC& z, long long s) {
    // The canonical direction of (-1)^s z equals that of z; only the
    // integer part moves.
    return principal(z).plusInt(s);
}

int PhaseLift::compare(const PhaseLift& a, const PhaseLift& b) {
    if (a.k != b.k) return a.k > b.k ? 1 : -1;
    // Both fractional parts lie in (0, 1]; their difference is in (-1, 1),
    // so the orientation test decides.
    Rat d = det2(b.dir, a.dir);
    return sgn(d);
}

std::optional<Rat> PhaseLift::exactRational() const {
    const Rat& x = dir.re;
    const Rat& y = dir.im;
    Rat p;
    if (y == 0) p = 1;                    // negative real ray
    else if (x == 0) p = Rat(1, 2);
    else if (x == -y) p = Rat(3, 4);      // second-quadrant diagonal
    else if (x == y) p = Rat(1, 4);       // first-quadrant diagonal
    else return std::nullopt;
    return p + Rat(k);
}

// -------------------------------------------------------------------- Lift

std::optional<Rat> Lift::exactRational() const {
    auto a = obj.exactRational();
    auto b = fiber.exactRational();
    if (!a || !b) return std::nullopt;
    return *a + *b - 1 + off;
}

std::optional<Rat> Lift::diffExact(const Lift& other) const {
    auto a = exactRational(), b = other.exactRational();
    if (a && b) return *a - *b;
    if (sameRay(obj.dir, other.obj.dir) && sameRay(fiber.dir, other.fiber.dir))
        return Rat(obj.k - other.obj.k) + Rat(fiber.k - other.fiber.k) + off - other.off;
    return std::nullopt;
}

std::optional<int> Lift::compareExact(const Lift& other) const {
    if (auto d = diffExact(other)) return sgn(*d);
    if (PhaseLift::compare(fiber, other.fiber) == 0 && off == other.off)
        return PhaseLift::compare(obj, other.obj);
    return std::nullopt;
}

std::string Lift::display() const {
    if (auto r = exactRational()) return ratToString(*r);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", approx());
    return buf;
}

// ------------------------------------------------------------------- phase

PhaseLift phase(const QC& z) { return PhaseLift::principal(z); }

// ----------------------------------------------------------------- hn_core

PhaseLift resolve_between(const QC& dir, const PhaseLift& lo, const PhaseLift& hi) {
    if (PhaseLift::compare(lo, hi) > 0) throw InvalidStability("empty lift window");
    PhaseLift base = PhaseLift::principal(dir);
    std::optional<PhaseLift> found;
    for (long long k = lo.k - 1; k <= hi.k + 1; ++k) {
        PhaseLift cand(base.dir, k);
        if (PhaseLift::compare(cand, lo) >= 0 && PhaseLift::compare(cand, hi) <= 0) {
            if (found) throw InvalidStability("ambiguous lift in a width-1 window");
            found = cand;
        }
    }
    if (!found) throw InvalidStability("no lift of the direction inside the window");
    return *found;
}

namespace {

struct Edge {
    QC value;
    PhaseLift minL, maxL;     // lift range of the constituents
    KClass cls;
    std::string label;

    PhaseLift lift() const { return resolve_between(value, minL, maxL); }
};

Edge mergeEdges(const Edge& a, const Edge& b) {
    Edge e;
    e.value = a.value + b.value;
    if (e.value.isZero())
        throw InvalidStabilityFunction("semistable factor with zero charge");
    e.minL = PhaseLift::compare(a.minL, b.minL) <= 0 ? a.minL : b.minL;
    e.maxL = PhaseLift::compare(a.maxL, b.maxL) >= 0 ? a.maxL : b.maxL;
    e.cls = a.cls + b.cls;
    e.label = a.label + " -- " + b.label;
    return e;
}

// Does the new edge fail to sit strictly below the previous one in phase?
bool mustMerge(const Edge& prev, const Edge& next) {
    Rat d = det2(prev.value, next.value);
    if (d > 0) return true;   // next turns counterclockwise: phase increased
    if (d < 0) return false;
    Rat dp = dot2(prev.value, next.value);
    if (dp > 0) return true;  // same ray: equal phase, one semistable factor
    // Antipodal rays: phases differ by exactly 1; the lift data decides.
    return PhaseLift::compare(next.lift(), prev.lift()) >= 0;
}

} // namespace

HNResult hn_core(const std::vector<Increment>& incs, const PhaseLift& frameFiber,
                 const Rat& frameOff) {
    HNResult out;
    if (incs.empty()) return out;
    // Window check: all lifts within a closed width-1 window.
    PhaseLift mn = incs[0].lift, mx = incs[0].lift;
    for (const Increment& inc : incs) {
        if (inc.value.isZero())
            throw InvalidStabilityFunction("zero subquotient charge");
        if (PhaseLift::compare(inc.lift, mn) < 0) mn = inc.lift;
        if (PhaseLift::compare(inc.lift, mx) > 0) mx = inc.lift;
    }
    if (PhaseLift::compare(mx, mn.plusInt(1)) > 0)
        throw InvalidStabilityFunction("subquotient lifts span more than one unit");

    std::vector<Edge> stack;
    for (const Increment& inc : incs) {
        Edge e{inc.value, inc.lift, inc.lift, inc.cls, inc.label};
        try {
            while (!stack.empty() && mustMerge(stack.back(), e)) {
                e = mergeEdges(stack.back(), e);
                stack.pop_back();
            }
        } catch (const InvalidStability& ex) {
            throw InvalidStabilityFunction(ex.what());
        }
        stack.push_back(std::move(e));
    }

    for (const Edge& e : stack) {
        PhaseLift lf;
        try {
            lf = e.lift();
        } catch (const InvalidStability& ex) {
            throw InvalidStabilityFunction(ex.what());
        }
        out.factors.push_back(HNFactor{e.label, e.cls, Lift(lf, frameFiber, frameOff)});
    }
    // Sanity: strictly decreasing lifts.
    for (size_t j = 1; j < out.factors.size(); ++j)
        if (PhaseLift::compare(out.factors[j - 1].lift.obj, out.factors[j].lift.obj) <= 0)
            throw InvalidStability("internal: factor lifts not strictly decreasing");
    return out;
}

// --------------------------------------------------------------- hn chains

static std::vector<Increment> chainIncrements(const ChainObject& obj,
                                              const CentralCharge& Z) {
    if (obj.chain.empty()) return {};
    if (obj.labels.size() != obj.chain.size())
        throw InvalidCharge("one label per subquotient required");
    std::vector<Increment> incs;
    for (size_t j = 0; j < obj.chain.size(); ++j) {
        KClass cls = j == 0 ? obj.chain[0] : obj.chain[j] - obj.chain[j - 1];
        QC val = eval_charge(Z, cls);
        if (val.isZero())
            throw InvalidStabilityFunction("subquotient charge vanishes");
        if (val.im < 0)
            throw InvalidStabilityFunction("subquotient charge in the lower half-plane");
        incs.push_back(Increment{val, PhaseLift::principal(val), cls, obj.labels[j]});
    }
    return incs;
}

HNResult hn_polygon(const ChainObject& obj, const CentralCharge& Z) {
    return hn_core(chainIncrements(obj, Z), PhaseLift(), 0);
}

HNResult hn_exhaustive(const ChainObject& obj, const CentralCharge& Z) {
    std::vector<Increment> incs = chainIncrements(obj, Z);
    size_t m = incs.size();
    if (m == 0) return {};
    // Partial sums P_0 = 0, ..., P_m.
    std::vector<QC> P(m + 1);
    for (size_t j = 0; j < m; ++j) P[j + 1] = P[j] + incs[j].value;

    auto rangeLift = [&](size_t a, size_t b) {  // factor (a, b]
        PhaseLift mn = incs[a].lift, mx = incs[a].lift;
        for (size_t j = a + 1; j < b; ++j) {
            if (PhaseLift::compare(incs[j].lift, mn) < 0) mn = incs[j].lift;
            if (PhaseLift::compare(incs[j].lift, mx) > 0) mx = incs[j].lift;
        }
        return resolve_between(P[b] - P[a], mn, mx);
    };
    // Factor (a, b] is semistable iff every chain subobject (a, j] has phase
    // <= the factor's phase.
    auto semistable = [&](size_t a, size_t b) {
        PhaseLift full = rangeLift(a, b);
        for (size_t j = a + 1; j < b; ++j) {
            QC sub = P[j] - P[a];
            if (sub.isZero()) return false;
            if (PhaseLift::compare(rangeLift(a, j), full) > 0) return false;
        }
        return true;
    };

    std::optional<HNResult> unique;
    // Breakpoint subsets of {1, ..., m-1}.
    for (unsigned long long mask = 0; mask < (1ull << (m - 1)); ++mask) {
        std::vector<size_t> cuts{0};
        for (size_t j = 1; j < m; ++j)
            if (mask & (1ull << (j - 1))) cuts.push_back(j);
        cuts.push_back(m);
        bool ok = true;
        HNResult cand;
        PhaseLift prev;
        bool havePrev = false;
        for (size_t t = 0; t + 1 < cuts.size() && ok; ++t) {
            size_t a = cuts[t], b = cuts[t + 1];
            PhaseLift lf;
            try {
                lf = rangeLift(a, b);
                if (havePrev && PhaseLift::compare(prev, lf) <= 0) ok = false;
                if (ok && !semistable(a, b)) ok = false;
            } catch (const InvalidStability&) {
                ok = false;
                break;
            }
            if (ok) {
                std::string lab = incs[a].label;
                KClass cls = incs[a].cls;
                for (size_t j = a + 1; j < b; ++j) {
                    lab += " -- " + incs[j].label;
                    cls = cls + incs[j].cls;
                }
                cand.factors.push_back(HNFactor{lab, cls, Lift(lf)});
                prev = lf;
                havePrev = true;
            }
        }
        if (ok) {
            if (unique) throw InvalidStability("exhaustive search found two filtrations");
            unique = std::move(cand);
        }
    }
    if (!unique) throw InvalidStabilityFunction("no valid filtration exists");
    return *unique;
}

HNResult hn_direct_sum(const std::vector<HNResult>& results) {
    std::vector<HNFactor> all;
    for (const auto& r : results)
        all.insert(all.end(), r.factors.begin(), r.factors.end());
    std::sort(all.begin(), all.end(), [](const HNFactor& a, const HNFactor& b) {
        auto c = a.lift.compareExact(b.lift);
        if (!c) throw Undecidable("direct-sum merge across incomparable lift frames");
        return *c > 0;
    });
    HNResult out;
    for (auto& f : all) {
        if (!out.factors.empty()) {
            auto c = out.factors.back().lift.compareExact(f.lift);
            if (c && *c == 0) {
                out.factors.back().label += " + " + f.label;
                out.factors.back().cls = out.factors.back().cls + f.cls;
                continue;
            }
        }
        out.factors.push_back(std::move(f));
    }
    return out;
}

// ------------------------------------------------------------- diagnostics

ModulusReport min_charge_modulus(const std::vector<std::pair<KClass, Lift>>& family,
                                 const CentralCharge& Z) {
    if (family.empty()) throw InvalidCharge("empty semistable family");
    bool first = true;
    Rat best = 0;
    bool gaussianInt = true;
    for (const auto& [cls, lift] : family) {
        QC v = eval_charge(Z, cls);
        if (v.isZero()) throw InvalidCharge("zero charge in semistable family");
        Rat q = v.normSq();
        if (first || q < best) best = q;
        first = false;
        if (denominator(v.re) != 1 || denominator(v.im) != 1) gaussianInt = false;
    }
    // The image is discrete whenever all basis values are Gaussian integers.
    if (gaussianInt) {
        auto chk = [&](const QC& z) {
            return denominator(z.re) == 1 && denominator(z.im) == 1;
        };
        gaussianInt = chk(Z.zOX) && chk(Z.zFiber);
        for (const auto& z : Z.zOp) gaussianInt = gaussianInt && chk(z);
    }
    return ModulusReport{best, std::sqrt(toDouble(best)), gaussianInt};
}

NormReport charge_norm(const CentralCharge& Z, const Geometry& g) {
    Rat best = Z.zOX.normSq();
    auto upd = [&](const QC& z) {
        Rat q = z.normSq();
        if (q > best) best = q;
    };
    upd(Z.zFiber);
    for (int i = 1; i <= g.n; ++i) {
        upd(Z.zOp[static_cast<size_t>(i) - 1]);
        upd(Z.zZetaOp(i));
    }
    return NormReport{best, std::sqrt(toDouble(best))};
}

SectorBoundReport sector_bound_check(const std::vector<std::pair<KClass, Lift>>& family,
                                     const CentralCharge& Z, const Rat& t, const Rat& eta) {
    if (eta <= 0 || eta >= 1) throw InvalidCharge("sector width must be in (0,1)");
    double c = 0.0;
    bool first = true;
    for (const auto& [cls, lift] : family) {
        double lf = lift.approx();
        double lo = toDouble(t), hi = toDouble(t + eta);
        if (lf <= lo - 1e-12 || lf >= hi + 1e-12)
            throw InvalidCharge("family phase outside the sector");
        QC v = eval_charge(Z, cls);
        double mod = std::sqrt(toDouble(v.normSq()));
        if (first || mod < c) c = mod;
        first = false;
    }
    if (first) return SectorBoundReport{0.0, 0.0, true};  // vacuous
    double bound = std::cos(M_PI * toDouble(eta) / 2.0) * c;
    return SectorBoundReport{bound, c, c >= bound - 1e-12};
}

DeformationBoundReport num_lem_bound(const CentralCharge& Z, const CentralCharge& Zp,
                                     const Geometry& g, const std::vector<KClass>& samples) {
    // Hypotheses: Im Z(O_X) > 0, v_Z real negative, point charges nonzero
    // with nonpositive imaginary part.
    if (!(Z.zOX.im > 0)) throw InvalidCharge("Im Z(O_X) must be positive");
    if (!(Z.zFiber.im == 0 && Z.zFiber.re < 0))
        throw InvalidCharge("Z(fiber) must be real negative");
    for (const auto& z : Z.zOp) {
        if (z.isZero()) throw InvalidCharge("point charge vanishes");
        if (z.im > 0) throw InvalidCharge("Im Z(O_{p_i}) must be <= 0");
    }

    // r1 = max over endosimple torsion classes of 1/|Z(E)|.
    double r1 = 0.0;
    std::vector<KClass> torsionClasses;
    for (int i = 1; i <= g.n; ++i) {
        torsionClasses.push_back(KClass::pointSheaf(g, i));
        torsionClasses.push_back(KClass::zetaPointSheaf(g, i));
        torsionClasses.push_back(KClass::torsion(g, i, 2, 0));
        torsionClasses.push_back(KClass::torsion(g, i, 2, 1));
    }
    for (const auto& cls : torsionClasses) {
        double m = std::sqrt(toDouble(eval_charge(Z, cls).normSq()));
        if (m <= 0) throw InvalidCharge("endosimple charge vanishes");
        r1 = std::max(r1, 1.0 / m);
    }
    double imOX = Z.zOX.imD();
    double vAbs = std::sqrt(toDouble(Z.zFiber.normSq()));
    double znorm = charge_norm(Z, g).value;
    double r2 = (g.n + 1) / imOX + (1.0 / vAbs) * (1.0 + (g.n + 1) * znorm / imOX);
    double r = std::max(r1, r2);

    double zpnorm = charge_norm(Zp, g).value;
    double maxRatio = 0.0;
    int violations = 0;
    for (const auto& cls : samples) {
        QC zc = eval_charge(Z, cls);
        QC zpc = eval_charge(Zp, cls);
        double denom = std::sqrt(toDouble(zc.normSq()));
        if (denom == 0) continue;
        double num = std::sqrt(toDouble(zpc.normSq()));
        double ratio = num / (zpnorm * denom);
        maxRatio = std::max(maxRatio, ratio);
        if (num > r * zpnorm * denom * (1.0 + 1e-12)) ++violations;
    }
    return DeformationBoundReport{r1, r2, r, maxRatio, violations};
}

bool closeness_check(const CentralCharge& Z1, const CentralCharge& Z2, const Rat& eps,
                     const std::vector<HeartWindowSample>& samples) {
    if (eps <= 0 || eps >= Rat(1, 4)) throw InvalidCharge("eps must be in (0, 1/4)");
    double sineps = std::sin(M_PI * toDouble(eps));
    for (const auto& s : samples) {
        QC a = eval_charge(Z1, s.cls);
        QC b = eval_charge(Z2, s.cls);
        double d = std::sqrt(toDouble((b - a).normSq()));
        double m = std::sqrt(toDouble(a.normSq()));
        if (!(d < sineps * m)) return false;
        if (!(s.winLo > Rat(-1) + eps && s.winHi <= Rat(2) - eps)) return false;
    }
    return true;
}

} // namespace stab
