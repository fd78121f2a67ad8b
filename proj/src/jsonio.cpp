#include "stab/jsonio.hpp"

namespace stab {

namespace {

json ratJ(const Rat& r) { return ratToString(r); }

Rat ratP(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (!j.is_string()) throw InvalidCharge("rational field must be a \"p/q\" string");
    return ratFromString(j.get<std::string>());
}

json intJ(const Int& v) { return v.str(); }

Int intP(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (!j.is_string()) throw InvalidCharge("integer field must be a number or string");
    return Int(j.get<std::string>());
}

json twistWordJ(const std::vector<TwistGen>& word) {
    json arr = json::array();
    for (const TwistGen& g : word) {
        const char* kind = g.kind == TwistKind::OPoint   ? "OPoint"
                           : g.kind == TwistKind::Zeta   ? "Zeta"
                                                         : "PullbackDeg1";
        arr.push_back({{"kind", kind}, {"index", g.index}, {"inverse", g.inverse}});
    }
    return arr;
}

std::vector<TwistGen> twistWordP(const json& j) {
    std::vector<TwistGen> word;
    for (const json& e : j) {
        TwistGen g;
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "OPoint")
            g.kind = TwistKind::OPoint;
        else if (kind == "Zeta")
            g.kind = TwistKind::Zeta;
        else if (kind == "PullbackDeg1")
            g.kind = TwistKind::PullbackDeg1;
        else
            throw InvalidCharge("unknown twist kind: " + kind);
        g.index = e.value("index", 0);
        g.inverse = e.value("inverse", false);
        word.push_back(g);
    }
    return word;
}

json partJ(const PartitionData& p) {
    return {{"I0", p.I0}, {"Iplus", p.Iplus}, {"Iminus", p.Iminus}, {"ni", p.ni}};
}

PartitionData partP(const json& j) {
    PartitionData p;
    p.I0 = j.at("I0").get<std::vector<int>>();
    p.Iplus = j.at("Iplus").get<std::vector<int>>();
    p.Iminus = j.at("Iminus").get<std::vector<int>>();
    p.ni = j.at("ni").get<std::vector<int>>();
    return p;
}

} // namespace

json qc_to_json(const QC& z) { return json::array({ratJ(z.re), ratJ(z.im)}); }

QC qc_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InvalidCharge("complex value must be a [\"re\",\"im\"] pair");
    return QC(ratP(j[0]), ratP(j[1]));
}

json charge_to_json(const CentralCharge& Z) {
    json op = json::array();
    for (const QC& z : Z.zOp) op.push_back(qc_to_json(z));
    json j = {{"n", Z.n()},
              {"Z", {{"OX", qc_to_json(Z.zOX)}, {"fiber", qc_to_json(Z.zFiber)}, {"Op", op}}}};
    if (Z.pend != 0) j["pend"] = ratJ(Z.pend);
    return j;
}

CentralCharge charge_from_json(const json& j, Geometry* geomOut) {
    const json& z = j.at("Z");
    std::vector<QC> op;
    for (const json& e : z.at("Op")) op.push_back(qc_from_json(e));
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(op.size()))
        throw InvalidCharge("declared n disagrees with the point charge list");
    CentralCharge Z(qc_from_json(z.at("OX")), qc_from_json(z.at("fiber")), op);
    if (j.contains("pend")) Z.pend = ratP(j.at("pend"));
    if (geomOut) *geomOut = Geometry(static_cast<int>(op.size()), j.value("genusY", 1));
    return Z;
}

json hn_to_json(const HNResult& r) {
    json factors = json::array();
    for (const HNFactor& f : r.factors) {
        json cls = json::array();
        for (const Int& c : f.cls.c) cls.push_back(intJ(c));
        json jf = {{"label", f.label}, {"class", cls}};
        if (auto e = f.lift.exactRational())
            jf["phase"] = ratJ(*e);
        else
            jf["phase"] = f.lift.approx();
        factors.push_back(jf);
    }
    return {{"factors", factors}};
}

json local_to_json(const LocalStability& s) {
    if (s.rep == LocalStability::Rep::CHART) {
        const char* chart = s.chart == Chart::PLUS    ? "PLUS"
                            : s.chart == Chart::MINUS ? "MINUS"
                                                      : "WALL";
        return {{"f", qc_to_json(s.f)}, {"chart", chart}, {"coord", qc_to_json(s.coord)}};
    }
    return {{"u", qc_to_json(s.u)},
            {"w", qc_to_json(s.w)},
            {"ku", s.ku},
            {"kw", s.kw},
            {"frameC", qc_to_json(s.frameC)}};
}

LocalStability local_from_json(const json& j) {
    if (j.contains("chart")) {
        std::string c = j.at("chart").get<std::string>();
        Chart chart;
        if (c == "PLUS")
            chart = Chart::PLUS;
        else if (c == "MINUS")
            chart = Chart::MINUS;
        else if (c == "WALL")
            chart = Chart::WALL;
        else
            throw InvalidCharge("unknown chart name: " + c);
        return LocalStability::chartPoint(chart, qc_from_json(j.at("f")),
                                          qc_from_json(j.at("coord")));
    }
    QC frameC;
    if (j.contains("frameC")) frameC = qc_from_json(j.at("frameC"));
    return LocalStability::chargePoint(qc_from_json(j.at("u")), qc_from_json(j.at("w")),
                                       j.at("ku").get<long long>(),
                                       j.at("kw").get<long long>(), frameC);
}

json pattern_to_json(const ExtPattern& p) {
    json homs = json::array();
    for (const auto& [key, degs] : p.homs)
        homs.push_back({{"from", key.first}, {"to", key.second}, {"degrees", degs}});
    return {{"G1", p.G1}, {"G2", p.G2}, {"homs", homs}};
}

ExtPattern pattern_from_json(const json& j) {
    ExtPattern p;
    p.G1 = j.at("G1").get<std::vector<std::string>>();
    p.G2 = j.at("G2").get<std::vector<std::string>>();
    for (const json& e : j.at("homs"))
        p.homs[{e.at("from").get<int>(), e.at("to").get<int>()}] =
            e.at("degrees").get<std::vector<int>>();
    return p;
}

json global_to_json(const GlobalStability& s) {
    return {{"geom", {{"n", s.geom.n}, {"genusY", s.geom.genusY}}},
            {"caller", charge_to_json(s.caller)},
            {"base", charge_to_json(s.base)},
            {"rho", qc_to_json(s.rho)},
            {"twistWord", twistWordJ(s.twistWord)},
            {"q", ratJ(s.q)},
            {"part", partJ(s.part)},
            {"heartDesc", s.heartDesc}};
}

GlobalStability global_from_json(const json& j) {
    const json& g = j.at("geom");
    GlobalStability s;
    s.geom = Geometry(g.at("n").get<int>(), g.at("genusY").get<int>());
    s.caller = charge_from_json(j.at("caller"));
    s.base = charge_from_json(j.at("base"));
    s.rho = qc_from_json(j.at("rho"));
    s.twistWord = twistWordP(j.at("twistWord"));
    s.q = ratP(j.at("q"));
    s.part = partP(j.at("part"));
    s.heartDesc = j.at("heartDesc").get<std::string>();
    return s;
}

json theta_to_json(const ThetaPoint& t) {
    json locals = json::array();
    for (const LocalStability& l : t.locals) {
        json e = local_to_json(l);
        // Display-only chart coordinate (transcendental for rational charges).
        std::complex<double> f = f_of(l);
        e["fApprox"] = json::array({f.real(), f.imag()});
        locals.push_back(e);
    }
    return {{"geom", {{"n", t.geom.n}, {"genusY", t.geom.genusY}}},
            {"locals", locals},
            {"q", ratJ(t.q)},
            {"z", qc_to_json(t.z)}};
}

ThetaPoint theta_from_json(const json& j) {
    const json& g = j.at("geom");
    ThetaPoint t;
    t.geom = Geometry(g.at("n").get<int>(), g.at("genusY").get<int>());
    for (const json& e : j.at("locals")) t.locals.push_back(local_from_json(e));
    t.q = ratP(j.at("q"));
    t.z = qc_from_json(j.at("z"));
    return t;
}

} // namespace stab
