#include "doctest.h"

#include <cmath>
#include <random>

#include "stab/local.hpp"

using namespace stab;

namespace {

QC qc(int re, int im) { return QC(Rat(re), Rat(im)); }

bool statusEq(const ObjectStatus& a, const ObjectStatus& b) {
    if (a.status != b.status) return false;
    if (a.status == Status::Unstable) return true;
    if (a.lift && b.lift) {
        auto c = PhaseLift::compare(a.lift->obj, b.lift->obj);
        if (c != 0 || a.lift->off != b.lift->off) return false;
    }
    return std::fabs(a.approxLift - b.approxLift) < 1e-9;
}

bool reportEq(const ChamberReport& a, const ChamberReport& b) {
    return statusEq(a.op, b.op) && statusEq(a.zetaOp, b.zetaOp) &&
           statusEq(a.o2p, b.o2p) && statusEq(a.zetaO2p, b.zetaO2p);
}

} // namespace

TEST_SUITE("local") {

TEST_CASE("chart chamber: interior of the U overlap") {
    LocalStability s = LocalStability::chartPoint(Chart::PLUS, QC(),
                                                  QC(Rat(-1), Rat(1, 4)));
    ChamberReport r = chamber(s);
    CHECK(r.op.status == Status::Stable);
    CHECK(r.op.approxLift == doctest::Approx(0.25));
    CHECK(r.zetaOp.status == Status::Stable);
    CHECK(r.o2p.status != Status::Unstable);  // semistable on the O_2p side
    CHECK(r.o2p.approxLift == doctest::Approx(0.0));
    CHECK(r.zetaO2p.status == Status::Unstable);
    CHECK(r.Wplus);
    CHECK(!r.Wminus);
    CHECK(r.Uplus);
    CHECK(r.Uminus);
}

TEST_CASE("chart chamber: beyond the U overlap the other simple destabilizes") {
    LocalStability s = LocalStability::chartPoint(Chart::PLUS, QC(),
                                                  QC(Rat(-1), Rat(3, 2)));
    ChamberReport r = chamber(s);
    CHECK(r.op.status == Status::Stable);
    CHECK(r.zetaOp.status == Status::Unstable);
    CHECK(r.o2p.status == Status::Stable);
    CHECK(r.zetaO2p.status == Status::Unstable);
    CHECK(r.Uplus);
    CHECK(!r.Uminus);
}

TEST_CASE("chart chamber: wall") {
    LocalStability s = LocalStability::chartPoint(Chart::WALL, QC(),
                                                  QC(Rat(-1), Rat(0)));
    ChamberReport r = chamber(s);
    CHECK(r.op.status == Status::Stable);
    CHECK(r.op.approxLift == doctest::Approx(0.0));
    CHECK(r.zetaOp.status == Status::Stable);
    CHECK(r.o2p.status == Status::StrictlySemistable);
    CHECK(r.zetaO2p.status == Status::StrictlySemistable);
    CHECK(r.Wplus);
    CHECK(r.Wminus);
}

TEST_CASE("chart coordinates on the branch cut are rejected") {
    CHECK_THROWS_AS(LocalStability::chartPoint(Chart::PLUS, QC(), qc(1, 0)), BranchCut);
    CHECK_THROWS_AS(LocalStability::chartPoint(Chart::WALL, QC(), qc(1, 0)),
                    InvalidStability);
}

TEST_CASE("oracle chamber: collinear charges (the wall)") {
    ChamberReport r = oracle_chamber(qc(-1, 0), qc(-1, 0));
    CHECK(r.op.status == Status::Stable);
    CHECK(r.op.lift->exactRational() == Rat(1));
    CHECK(r.zetaOp.status == Status::Stable);
    CHECK(r.zetaOp.lift->exactRational() == Rat(1));
    CHECK(r.o2p.status == Status::StrictlySemistable);
    CHECK(r.o2p.lift->exactRational() == Rat(1));
    CHECK(r.zetaO2p.status == Status::StrictlySemistable);
    CHECK(r.Wplus);
    CHECK(r.Wminus);
}

TEST_CASE("oracle chamber: phi(O_p) > phi(zeta O_p) keeps O_2p stable") {
    // u = -1 (phase 1), w = i (phase 1/2): the socle zeta O_p of O_{2p} has
    // the smaller phase, so O_{2p} is stable and zeta O_{2p} is unstable.
    ChamberReport r = oracle_chamber(qc(-1, 0), qc(0, 1));
    CHECK(r.op.status == Status::Stable);
    CHECK(r.op.lift->exactRational() == Rat(1));
    CHECK(r.zetaOp.status == Status::Stable);
    CHECK(r.zetaOp.lift->exactRational() == Rat(1, 2));
    CHECK(r.o2p.status == Status::Stable);
    CHECK(r.o2p.lift->exactRational() == Rat(3, 4));
    CHECK(r.zetaO2p.status == Status::Unstable);
    CHECK(r.Wplus);
    CHECK(!r.Wminus);
}

TEST_CASE("oracle chamber: mirrored charges swap the two length-2 objects") {
    ChamberReport r = oracle_chamber(qc(0, 1), qc(-1, 0));
    CHECK(r.zetaO2p.status == Status::Stable);
    CHECK(r.zetaO2p.lift->exactRational() == Rat(3, 4));
    CHECK(r.o2p.status == Status::Unstable);
    CHECK(!r.Wplus);
    CHECK(r.Wminus);
}

TEST_CASE("oracle rejects charges outside the standard half-plane") {
    CHECK_THROWS_AS(oracle_chamber(qc(0, -1), qc(-1, 0)), InvalidStabilityFunction);
    CHECK_THROWS_AS(oracle_chamber(QC(), qc(-1, 0)), InvalidStabilityFunction);
}

TEST_CASE("exact chamber agrees with the oracle on random rational charges") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    auto sample = [&]() {
        while (true) {
            QC z(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
            if (z.isZero()) continue;
            if (inUpperOrNegReal(z)) return z;
        }
    };
    for (int it = 0; it < 500; ++it) {
        QC u = sample(), w = sample();
        if ((u + w).isZero()) continue;
        ChamberReport a = chamber(local_from_charges(u, w));
        ChamberReport b = oracle_chamber(u, w);
        CHECK(reportEq(a, b));
    }
}

TEST_CASE("f recovers the charge of the length-2 object") {
    LocalStability sigma = LocalStability::chartPoint(Chart::PLUS, QC(),
                                                      QC(Rat(-1), Rat(1, 2)));
    CHECK(std::abs(f_of(sigma)) == doctest::Approx(0.0));  // Sigma slice

    LocalStability shifted = act_C(sigma, qc(0, 1));
    std::complex<double> f = f_of(shifted);
    CHECK(f.real() == doctest::Approx(0.0));
    CHECK(f.imag() == doctest::Approx(1.0));
    // exp(pi f) = Z(O_2p) = -1 after the half rotation.
    std::complex<double> z2p = std::exp(M_PI * f);
    CHECK(z2p.real() == doctest::Approx(-1.0));
    CHECK(z2p.imag() == doctest::Approx(0.0).epsilon(1e-12));

    // Charge-backed points are consistency-checked too.
    LocalStability cs = local_from_charges(qc(-1, 0), qc(0, 1));
    std::complex<double> fc = f_of(cs);
    std::complex<double> val = std::exp(M_PI * fc);
    CHECK(val.real() == doctest::Approx(-1.0));
    CHECK(val.imag() == doctest::Approx(1.0));
}

TEST_CASE("C-action group law and lift shift") {
    LocalStability s = local_from_charges(qc(-1, 0), qc(0, 1));
    LocalStability same = act_C(act_C(s, qc(0, 1)), qc(0, -1));
    CHECK(same.frameC == QC());
    CHECK(act_C(s, QC()).frameC == QC());

    // Shifting by c = i raises every reported lift by Im c = 1.
    ChamberReport base = chamber(s);
    ChamberReport moved = chamber(act_C(s, qc(0, 1)));
    CHECK(moved.op.approxLift ==
          doctest::Approx(base.op.approxLift + 1.0).epsilon(1e-12));
    CHECK(moved.o2p.approxLift ==
          doctest::Approx(base.o2p.approxLift + 1.0).epsilon(1e-12));
    CHECK(moved.op.status == base.op.status);
    CHECK(moved.zetaO2p.status == base.zetaO2p.status);
}

TEST_CASE("chart transition: overlap round trip and domain") {
    LocalStability s = LocalStability::chartPoint(Chart::PLUS, QC(),
                                                  QC(Rat(-1), Rat(1, 2)));
    LocalStability t = chart_transition(s);
    CHECK(t.chart == Chart::MINUS);
    LocalStability back = chart_transition(t);
    CHECK(back.chart == Chart::PLUS);
    CHECK(std::fabs(back.coord.reD() - s.coord.reD()) < 1e-10);
    CHECK(std::fabs(back.coord.imD() - s.coord.imD()) < 1e-10);

    // The wall limit is symmetric: Im stays 0 and the image is real negative.
    LocalStability w = LocalStability::chartPoint(Chart::WALL, QC(), qc(-1, 0));
    LocalStability wt = chart_transition(w);
    CHECK(wt.chart == Chart::WALL);
    CHECK(wt.coord.im == 0);
    CHECK(wt.coord.re < 0);

    CHECK_THROWS_AS(
        chart_transition(LocalStability::chartPoint(Chart::PLUS, QC(), qc(-1, 1))),
        NotInRegion);
    CHECK_THROWS_AS(
        chart_transition(LocalStability::chartPoint(Chart::PLUS, QC(), QC(Rat(-1), Rat(3, 2)))),
        NotInRegion);
}

TEST_CASE("delta vanishes on the W+ side and matches det2 on the W- side") {
    // W+: phi(O_p) > phi(zeta O_p) -> zeta O_{2p} unstable -> delta = 0.
    CHECK(delta(local_from_charges(qc(-1, 0), qc(0, 1))) == 0.0);
    // W-: delta = det2(Z(zeta O_p), Z(O_{2p})).
    LocalStability s = local_from_charges(qc(0, 1), qc(-1, 0));
    CHECK(delta(s) == doctest::Approx(toDouble(det2(qc(-1, 0), qc(-1, 1)))));
    // Wall: both semistable; delta = det2 of collinear values = 0.
    CHECK(delta(local_from_charges(qc(-1, 0), qc(-2, 0))) == 0.0);
}

TEST_CASE("delta shrinks to zero on a path approaching the wall") {
    for (int k = 2; k <= 6; ++k) {
        Rat eps(1, Int(1) << (2 * k));
        // Approach from the W- side (phi(zeta O_p) slightly larger).
        LocalStability minus =
            LocalStability::chargePoint(QC(Rat(-1), eps * 2), QC(Rat(-1), eps), 0, 0);
        CHECK(delta(minus) != 0.0);
        CHECK(std::fabs(delta(minus)) <= toDouble(eps));
        // Approach from the W+ side: delta is identically zero there.
        LocalStability plus =
            LocalStability::chargePoint(QC(Rat(-1), eps), QC(Rat(-1), eps * 2), 0, 0);
        CHECK(delta(plus) == 0.0);
    }
}

TEST_CASE("local HN: simple objects, worked chain, shift equivariance") {
    Geometry g(1, 1);
    LocalStability s = local_from_charges(qc(0, 1), qc(-1, 0));  // u = i, w = -1

    HNResult op = hn_local(LocalObject{LocalSummand{1, 0, 0, 1}}, s);
    REQUIRE(op.factors.size() == 1);
    CHECK(op.factors[0].label == "Torsion(1,1)");
    CHECK(op.factors[0].lift.exactRational() == Rat(1, 2));

    HNResult o3p = hn_local(LocalObject{LocalSummand{3, 0, 0, 1}}, s);
    REQUIRE(o3p.factors.size() == 2);
    CHECK(o3p.factors[0].label == "Torsion(1,2,zeta)");
    CHECK(o3p.factors[0].cls == KClass::torsion(g, 1, 2, 1));
    CHECK(o3p.factors[0].lift.exactRational() == Rat(3, 4));
    CHECK(o3p.factors[1].label == "Torsion(1,1)");
    CHECK(o3p.factors[1].lift.exactRational() == Rat(1, 2));

    HNResult plain = hn_local(LocalObject{LocalSummand{2, 1, 0, 1}}, s);
    HNResult shifted = hn_local(LocalObject{LocalSummand{2, 1, 5, 1}}, s);
    REQUIRE(plain.factors.size() == shifted.factors.size());
    for (size_t j = 0; j < plain.factors.size(); ++j) {
        auto d = shifted.factors[j].lift.diffExact(plain.factors[j].lift);
        REQUIRE(d);
        CHECK(*d == 5);
    }
}

TEST_CASE("local HN rejects chart-backed stabilities and bad summands") {
    LocalStability chartS = LocalStability::chartPoint(Chart::PLUS, QC(),
                                                       QC(Rat(-1), Rat(1, 4)));
    CHECK_THROWS_AS(hn_local(LocalObject{LocalSummand{1, 0, 0, 1}}, chartS), Undecidable);
    LocalStability s = local_from_charges(qc(0, 1), qc(-1, 0));
    CHECK_THROWS_AS(hn_local(LocalObject{LocalSummand{0, 0, 0, 1}}, s), UnsupportedObject);
    CHECK_THROWS_AS(hn_local(LocalObject{LocalSummand{1, 2, 0, 1}}, s), UnsupportedObject);
}

TEST_CASE("charge anchors must stay within one unit") {
    CHECK_THROWS_AS(LocalStability::chargePoint(qc(-1, 0), qc(0, 1), 2, 0),
                    InvalidStability);
    CHECK_THROWS_AS(LocalStability::chargePoint(qc(-1, 0), qc(1, 0), 0, 0),
                    InvalidCharge);  // u + w = 0 is degenerate
}

} // TEST_SUITE
