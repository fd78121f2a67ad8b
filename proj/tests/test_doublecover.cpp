#include "doctest.h"

#include <string>

#include "stab/doublecover.hpp"

using namespace stab;

namespace {

QC qc(int re, int im) { return QC(Rat(re), Rat(im)); }

CentralCharge standardCharge() {
    return CentralCharge(qc(0, 1), qc(-1, 0), {QC(Rat(-1, 2), Rat(0))});
}

bool contains(const std::string& s, const std::string& sub) {
    return s.find(sub) != std::string::npos;
}

bool chargeEq(const CentralCharge& a, const CentralCharge& b) {
    return a.zOX == b.zOX && a.zFiber == b.zFiber && a.zOp == b.zOp && a.pend == b.pend;
}

} // namespace

TEST_SUITE("doublecover") {

TEST_CASE("open-region membership test") {
    Geometry g(1, 1);
    CHECK(check_U_bar(standardCharge(), g).pass);

    CentralCharge posRay(qc(0, 1), qc(-1, 0), {QC(Rat(1, 2), Rat(0))});
    UBarReport r2 = check_U_bar(posRay, g);
    CHECK(!r2.pass);
    CHECK(contains(r2.witness, "condition (2)"));

    CentralCharge wrongSide(qc(0, -1), qc(-1, 0), {QC(Rat(-1, 2), Rat(0))});
    UBarReport r1 = check_U_bar(wrongSide, g);
    CHECK(!r1.pass);
    CHECK(contains(r1.witness, "condition (1)"));

    CHECK_THROWS_AS(check_U_bar(CentralCharge(qc(0, 1), QC(), {qc(-1, 0)}), g),
                    InvalidCharge);
}

TEST_CASE("classification of the standard charge: everything in I0") {
    Geometry g(1, 1);
    GlobalStability s = classify_in_U(standardCharge(), g);
    CHECK(s.part.I0 == std::vector<int>{1});
    CHECK(s.part.Iplus.empty());
    CHECK(s.part.Iminus.empty());
    CHECK(s.twistWord.empty());
    CHECK(s.rho == qc(1, 0));
    CHECK(s.q == 0);

    // O_p and zeta O_p both sit at phase 1.
    auto lu = s.baseLiftOpSlot(1);
    auto lw = s.baseLiftZetaOpSlot(1);
    REQUIRE(lu);
    REQUIRE(lw);
    CHECK(lu->exactRational() == Rat(1));
    CHECK(lw->exactRational() == Rat(1));
    CHECK(s.fiberLift().exactRational() == Rat(1));
}

TEST_CASE("classification with a strictly lower half-plane point charge") {
    Geometry g(1, 1);
    CentralCharge Z(qc(0, 1), qc(-1, 0), {qc(-1, -1)});
    GlobalStability s = classify_in_U(Z, g);
    CHECK(s.part.Iplus == std::vector<int>{1});
    CHECK(s.part.ni == std::vector<int>{1});
    CHECK(!s.twisted(1));

    // Stable small objects: O_p at lift 5/4, zeta O_p at lift 1/2.
    auto lu = s.baseLiftOpSlot(1);
    auto lw = s.baseLiftZetaOpSlot(1);
    REQUIRE(lu);
    REQUIRE(lw);
    CHECK(lu->exactRational() == Rat(5, 4));
    CHECK(lw->exactRational() == Rat(1, 2));

    bool sawOp = false, sawZeta = false;
    for (const auto& [cls, lift] : stable_family(s)) {
        if (cls == KClass::pointSheaf(g, 1)) {
            sawOp = true;
            CHECK(lift.exactRational() == Rat(5, 4));
        }
        if (cls == KClass::zetaPointSheaf(g, 1)) {
            sawZeta = true;
            CHECK(lift.exactRational() == Rat(1, 2));
        }
    }
    CHECK(sawOp);
    CHECK(sawZeta);
}

TEST_CASE("classification is idempotent") {
    Geometry g(2, 1);
    CentralCharge Z(qc(-3, 1), qc(0, -2), {qc(-1, -1), QC(Rat(1, 3), Rat(1, 5))});
    UBarReport rep = check_U_bar(Z, g);
    REQUIRE(rep.pass);
    GlobalStability s = classify_in_U(Z, g);
    GlobalStability t = classify_in_U(s.base, g);
    CHECK(chargeEq(t.base, s.base));
    CHECK(t.rho == qc(1, 0));
    CHECK(t.twistWord.empty());
    CHECK(t.part.I0 == s.part.I0);
    CHECK(t.part.Iplus == s.part.Iplus);
    CHECK(t.heartDesc == s.heartDesc);
}

TEST_CASE("charges outside the region are rejected with the witness") {
    Geometry g(1, 1);
    CentralCharge bad(qc(0, -1), qc(-1, 0), {QC(Rat(-1, 2), Rat(0))});
    CHECK_THROWS_WITH_AS(classify_in_U(bad, g),
                         doctest::Contains("condition (1)"), NotInRegion);
}

TEST_CASE("direct construction: standard heart and fiber stability") {
    Geometry g(1, 1);
    PartitionData part;
    part.I0 = {1};
    part.ni = {1};
    GlobalStability s = build_stability(standardCharge(), part, g);
    CHECK(contains(s.heartDesc, "I+={}"));

    // The fiber (= O_{2p} over the branch point) is stable of phase 1.
    HNResult f = hn_global({GlobalSummand{GlobalSummand::Kind::Fiber, 1, 1, 0, 0, 1, 0, {}}}, s);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].label == "Fiber");
    CHECK(f.factors[0].lift.exactRational() == Rat(1));
    HNResult t2 = hn_global({GlobalSummand{GlobalSummand::Kind::Torsion, 1, 2, 0, 0, 1, 0, {}}}, s);
    REQUIRE(t2.factors.size() == 1);
    CHECK(t2.factors[0].lift.exactRational() == Rat(1));
}

TEST_CASE("direct construction accepts higher multiplicities without claiming both simples") {
    Geometry g(1, 1);
    PartitionData part;
    part.Iplus = {1};
    part.ni = {2};
    // Z(O_p[-2]) = Z(O_p) must lie in the allowed half-plane.
    CentralCharge Z(qc(0, 1), qc(-4, 0), {qc(-1, 2)});
    GlobalStability s = build_stability(Z, part, g);
    CHECK(s.baseLiftOpSlot(1));
    CHECK(!s.baseLiftZetaOpSlot(1));  // zeta O_p is not claimed stable
    bool zetaListed = false;
    for (const auto& [cls, lift] : stable_family(s))
        if (cls == KClass::zetaPointSheaf(g, 1)) zetaListed = true;
    CHECK(!zetaListed);
    // The theta coordinates refuse this heart instead of guessing.
    CHECK_THROWS_AS(theta_map(s), UnsupportedHeart);
    GlobalObject torsion{GlobalSummand{GlobalSummand::Kind::Torsion, 1, 1, 0, 0, 1, 0, {}}};
    CHECK_THROWS_AS(hn_global(torsion, s), UnsupportedHeart);
}

TEST_CASE("partition validation") {
    Geometry g(2, 1);
    PartitionData bad;
    bad.I0 = {1};
    bad.ni = {1, 1};
    CHECK_THROWS_AS(build_stability(standardCharge(), bad, Geometry(1, 1)),
                    InvalidStability);  // index 1 assigned, but n = 1 vs ni mismatch path
    PartitionData overlap;
    overlap.I0 = {1, 2};
    overlap.Iplus = {2};
    overlap.ni = {1, 1};
    CentralCharge Z2(qc(0, 1), qc(-1, 0), {QC(Rat(-1, 2), Rat(0)), QC(Rat(-1, 2), Rat(0))});
    CHECK_THROWS_AS(build_stability(Z2, overlap, g), InvalidStability);
}

TEST_CASE("global HN of the length-2 twisted object in the worked chamber") {
    Geometry g(1, 1);
    CentralCharge Z(qc(0, 1), qc(-1, 0), {qc(-1, -1)});
    GlobalStability s = classify_in_U(Z, g);

    HNResult r = hn_global({GlobalSummand{GlobalSummand::Kind::Torsion, 1, 2, 1, 0, 1, 0, {}}}, s);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].label == "Torsion(1,1)");
    CHECK(r.factors[0].cls == KClass::pointSheaf(g, 1));
    CHECK(r.factors[0].lift.exactRational() == Rat(5, 4));
    CHECK(r.factors[1].label == "Torsion(1,1,zeta)");
    CHECK(r.factors[1].cls == KClass::zetaPointSheaf(g, 1));
    CHECK(r.factors[1].lift.exactRational() == Rat(1, 2));

    // O_{2p} stays semistable there (single factor).
    HNResult o2p =
        hn_global({GlobalSummand{GlobalSummand::Kind::Torsion, 1, 2, 0, 0, 1, 0, {}}}, s);
    CHECK(o2p.factors.size() == 1);

    // Direct sums with a fiber merge into one sorted factor list.
    HNResult sum = hn_global({GlobalSummand{GlobalSummand::Kind::Torsion, 1, 2, 1, 0, 1, 0, {}},
                              GlobalSummand{GlobalSummand::Kind::Fiber, 1, 1, 0, 0, 1, 0, {}}},
                             s);
    REQUIRE(sum.factors.size() == 3);
    CHECK(sum.factors[0].lift.exactRational() == Rat(5, 4));
    CHECK(sum.factors[1].lift.exactRational() == Rat(1));
    CHECK(sum.factors[2].lift.exactRational() == Rat(1, 2));

    // Line bundles are routed to the certificate reducer.
    GlobalObject lb{GlobalSummand{GlobalSummand::Kind::LineBundle, 1, 1, 0, 0, 1, 0, {}}};
    CHECK_THROWS_AS(hn_global(lb, s), UnsupportedObject);
}

TEST_CASE("normalization twists flip the factor dictionary") {
    Geometry g(1, 1);
    // After aligning, Im Z(O_p) > 0 forces a twist at the point.
    CentralCharge Z(qc(0, 3), qc(-1, 0), {qc(0, 1)});
    REQUIRE(check_U_bar(Z, g).pass);
    GlobalStability s = classify_in_U(Z, g);
    CHECK(s.twisted(1));
    CHECK(s.part.Iplus == std::vector<int>{1});

    // Intrinsic O_p keeps its caller phase 1/2 through the twisted slot.
    HNResult op = hn_global({GlobalSummand{GlobalSummand::Kind::Torsion, 1, 1, 0, 0, 1, 0, {}}}, s);
    REQUIRE(op.factors.size() == 1);
    CHECK(op.factors[0].label == "Torsion(1,1)");
    CHECK(op.factors[0].cls == KClass::pointSheaf(g, 1));
    CHECK(op.factors[0].lift.exactRational() == Rat(1, 2));

    // Intrinsic O_{2p} is destabilized by its zeta O_p subobject here.
    HNResult o2p =
        hn_global({GlobalSummand{GlobalSummand::Kind::Torsion, 1, 2, 0, 0, 1, 0, {}}}, s);
    REQUIRE(o2p.factors.size() == 2);
    CHECK(o2p.factors[0].cls == KClass::zetaPointSheaf(g, 1));
    CHECK(o2p.factors[0].lift.exactRational() == Rat(5, 4));
    CHECK(o2p.factors[1].cls == KClass::pointSheaf(g, 1));
    CHECK(o2p.factors[1].lift.exactRational() == Rat(1, 2));
}

TEST_CASE("line bundle reduction certificate") {
    Geometry g(2, 1);
    CentralCharge Z(qc(0, 1), qc(-1, 0),
                    {QC(Rat(-1, 2), Rat(0)), QC(Rat(-1, 2), Rat(0))});
    GlobalStability s = classify_in_U(Z, g);

    // O_X: trivial certificate with window (0, 1].
    GlobalSummand OX{GlobalSummand::Kind::LineBundle, 1, 1, 0, 0, 1, 0, {}};
    LineBundleCertificate c0 = reduce_line_bundle(OX, s);
    CHECK(c0.pullbackRk == 1);
    CHECK(c0.pullbackDeg == 0);
    CHECK(c0.torsionParts.empty());
    CHECK(c0.phiLower.exactRational() == Rat(0));
    CHECK(c0.phiUpper.exactRational() == Rat(1));

    // Twisted bundle: one torsion part per twist point.
    GlobalSummand L{GlobalSummand::Kind::LineBundle, 1, 1, 0, 0, 1, 3, {1, 2}};
    LineBundleCertificate c1 = reduce_line_bundle(L, s);
    CHECK(c1.pullbackDeg == 3);
    REQUIRE(c1.torsionParts.size() == 2);
    CHECK(c1.torsionParts[0].i == 1);
    CHECK(c1.torsionParts[1].i == 2);
    // In the standard chamber the slot phases sit at 1, so the window is (0, 1].
    CHECK(c1.phiUpper.exactRational() == Rat(1));

    CHECK_THROWS_AS(
        reduce_line_bundle(GlobalSummand{GlobalSummand::Kind::Fiber, 1, 1, 0, 0, 1, 0, {}}, s),
        UnsupportedObject);
}

TEST_CASE("theta coordinates of the standard stability") {
    Geometry g(1, 1);
    GlobalStability s = classify_in_U(standardCharge(), g);
    ThetaPoint t = theta_map(s);
    CHECK(t.z == qc(0, 1));
    CHECK(t.q == 0);
    REQUIRE(t.locals.size() == 1);
    CHECK(theta_delta(t.locals[0]) == 0);
    // det2(i, -1) + 0 = 1 > 0, normalized by |v|^2 = 1.
    CHECK(theta_lhs(t) == Rat(1));
}

TEST_CASE("theta round trip is exact on the worked chambers") {
    Geometry g(2, 1);
    CentralCharge Z(qc(0, 2), qc(-1, 0), {qc(-1, -1), QC(Rat(-1, 3), Rat(0))});
    REQUIRE(check_U_bar(Z, g).pass);
    GlobalStability s = classify_in_U(Z, g);
    ThetaPoint t = theta_map(s);
    GlobalStability back = build_from_theta(t);
    CHECK(chargeEq(back.caller, s.caller));
    CHECK(chargeEq(back.base, s.base));
    CHECK(back.rho == s.rho);
    CHECK(back.q == s.q);
    CHECK(back.part.I0 == s.part.I0);
    CHECK(back.part.Iplus == s.part.Iplus);
    CHECK(back.twistWord.size() == s.twistWord.size());
    ThetaPoint t2 = theta_map(back);
    CHECK(theta_lhs(t2) == theta_lhs(t));
    CHECK(t2.z == t.z);
    REQUIRE(t2.locals.size() == t.locals.size());
    for (size_t i = 0; i < t.locals.size(); ++i) {
        CHECK(t2.locals[i].u == t.locals[i].u);
        CHECK(t2.locals[i].w == t.locals[i].w);
        CHECK(t2.locals[i].ku == t.locals[i].ku);
        CHECK(t2.locals[i].kw == t.locals[i].kw);
    }
}

TEST_CASE("theta inequality left side is frame invariant (exact)") {
    Geometry g(2, 1);
    CentralCharge Z(qc(0, 3), qc(-1, 0), {qc(-1, -1), qc(0, 1)});
    REQUIRE(check_U_bar(Z, g).pass);
    GlobalStability s = classify_in_U(Z, g);
    Rat lhs = theta_lhs(theta_map(s));
    CHECK(lhs > 0);

    CHECK(theta_lhs(theta_map(rotate_global(s, Rat(1, 2)))) == lhs);
    CHECK(theta_lhs(theta_map(rotate_global(s, Rat(3, 2)))) == lhs);
    CHECK(theta_lhs(theta_map(rescale_global(s, Rat(7, 3)))) == lhs);
    CHECK(theta_lhs(theta_map(twist_global(s, 1))) == lhs);
    CHECK(theta_lhs(theta_map(twist_global(twist_global(s, 2), 2))) == lhs);
    // Compositions of all three frame actions.
    GlobalStability m = rescale_global(rotate_global(twist_global(s, 2), Rat(1)), Rat(2));
    CHECK(theta_lhs(theta_map(m)) == lhs);
}

TEST_CASE("twisting moves the delta term without changing the sum") {
    Geometry g(1, 1);
    CentralCharge Z(qc(0, 3), qc(-1, 0), {qc(-1, -1)});
    GlobalStability s = classify_in_U(Z, g);
    ThetaPoint t = theta_map(s);
    GlobalStability sTw = twist_global(s, 1);
    ThetaPoint tTw = theta_map(sTw);
    // One of the two frames has a vanishing delta, the other does not.
    Rat d0 = theta_delta(t.locals[0]);
    Rat d1 = theta_delta(tTw.locals[0]);
    CHECK(d0 != d1);
    CHECK(theta_lhs(t) == theta_lhs(tTw));
}

TEST_CASE("rotation shifts every reported lift by minus the angle") {
    Geometry g(1, 1);
    CentralCharge Z(qc(0, 1), qc(-1, 0), {qc(-1, -1)});
    GlobalStability s = classify_in_U(Z, g);
    GlobalStability r = rotate_global(s, Rat(1, 2));
    CHECK(r.fiberLift().approx() ==
          doctest::Approx(s.fiberLift().approx() - 0.5).epsilon(1e-12));

    GlobalObject obj{GlobalSummand{GlobalSummand::Kind::Torsion, 1, 2, 1, 0, 1, 0, {}}};
    HNResult a = hn_global(obj, s);
    HNResult b = hn_global(obj, r);
    REQUIRE(a.factors.size() == b.factors.size());
    for (size_t j = 0; j < a.factors.size(); ++j) {
        CHECK(a.factors[j].cls == b.factors[j].cls);
        CHECK(b.factors[j].lift.approx() ==
              doctest::Approx(a.factors[j].lift.approx() - 0.5).epsilon(1e-12));
    }
}

TEST_CASE("boundary and precondition failures of the theta coordinates") {
    Geometry g(1, 1);
    // Boundary: z real makes det2(z, v) = 0 with no delta to rescue it.
    ThetaPoint t;
    t.geom = g;
    t.z = qc(1, 0);
    t.locals.push_back(LocalStability::chargePoint(QC(Rat(-1, 2), Rat(0)),
                                                   QC(Rat(-1, 2), Rat(0)), 0, 0));
    t.q = 0;
    CHECK_THROWS_AS(build_from_theta(t), NotInRegion);

    GlobalStability s0 = classify_in_U(standardCharge(), Geometry(1, 0));
    CHECK_THROWS_AS(theta_map(s0), PreconditionGenus);

    ThetaPoint t0 = theta_map(classify_in_U(standardCharge(), g));
    ThetaPoint t0g = t0;
    t0g.geom = Geometry(1, 0);
    CHECK_THROWS_AS(build_from_theta(t0g), PreconditionGenus);
}

TEST_CASE("constructed stabilities have strictly positive minimal charge modulus") {
    Geometry g(2, 1);
    CentralCharge Z(qc(0, 3), qc(-1, 0), {qc(-1, -1), qc(0, 1)});
    GlobalStability s = classify_in_U(Z, g);
    ModulusReport rep = min_charge_modulus(stable_family(s), s.caller);
    CHECK(rep.minSq > 0);
    CHECK(rep.discreteImage);  // Gaussian-integer charge values
}

} // TEST_SUITE
