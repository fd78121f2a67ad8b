#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stab/jsonio.hpp"
#include "stab/scan.hpp"

using namespace stab;

namespace {

json loadJson(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

void writeOut(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw CLI::ValidationError("--out", "cannot write " + path);
    out << content;
}

void emit(const json& j, const std::string& outPath) {
    std::string text = j.dump(2) + "\n";
    if (outPath.empty())
        std::cout << text;
    else
        writeOut(outPath, text);
}

std::vector<std::string> splitAny(const std::string& s, const std::string& seps) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (seps.find(ch) != std::string::npos) {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

/**
 * Partition grammar: clauses separated by "," or ";", each "<tag>:<items>"
 * with tag one of 0, +, -; items are space-separated indices, optionally
 * "i^n" to set the multiplicity n_i.  The literals I0, I+, I- are accepted
 * as empty placeholders.  Unassigned indices default to I0.
 */
PartitionData parsePartition(const std::string& text, int n) {
    PartitionData p;
    p.ni.assign(static_cast<size_t>(n), 1);
    std::vector<char> assigned(static_cast<size_t>(n) + 1, 0);
    for (const std::string& clause : splitAny(text, ",;")) {
        auto colon = clause.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--partition", "clause needs <tag>:<items>: " + clause);
        std::string tag = clause.substr(0, colon);
        while (!tag.empty() && tag.front() == ' ') tag.erase(tag.begin());
        std::vector<int>* group = nullptr;
        if (tag == "0")
            group = &p.I0;
        else if (tag == "+")
            group = &p.Iplus;
        else if (tag == "-")
            group = &p.Iminus;
        else
            throw CLI::ValidationError("--partition", "unknown tag: " + tag);
        for (const std::string& item : splitAny(clause.substr(colon + 1), " \t")) {
            if (item == "I0" || item == "I+" || item == "I-") continue;
            auto caret = item.find('^');
            int idx = std::stoi(item.substr(0, caret));
            if (idx < 1 || idx > n)
                throw CLI::ValidationError("--partition", "index out of range: " + item);
            if (assigned[static_cast<size_t>(idx)])
                throw CLI::ValidationError("--partition", "index assigned twice: " + item);
            assigned[static_cast<size_t>(idx)] = 1;
            group->push_back(idx);
            if (caret != std::string::npos)
                p.ni[static_cast<size_t>(idx) - 1] = std::stoi(item.substr(caret + 1));
        }
    }
    for (int i = 1; i <= n; ++i)
        if (!assigned[static_cast<size_t>(i)]) p.I0.push_back(i);
    return p;
}

/**
 * Object grammar: "+"-separated summands, each optionally "k*" and "[s]":
 *   Fiber, Torsion(i,m), Torsion(i,m,zeta), LineBundle(d), LineBundle(d, 1 2)
 * e.g. "2*Torsion(1,2,zeta)[0] + Fiber[1]".
 */
GlobalObject parseObject(const std::string& text) {
    GlobalObject obj;
    for (std::string part : splitAny(text, "+")) {
        GlobalSummand sm;
        // strip spaces
        std::string t;
        for (char ch : part)
            if (ch != ' ' && ch != '\t') t += ch;
        if (t.empty()) continue;
        auto star = t.find('*');
        if (star != std::string::npos) {
            sm.mult = Int(t.substr(0, star));
            t = t.substr(star + 1);
        }
        auto bracket = t.find('[');
        if (bracket != std::string::npos) {
            auto close = t.find(']', bracket);
            if (close == std::string::npos)
                throw CLI::ValidationError("--object", "unclosed shift bracket: " + part);
            sm.shift = std::stoi(t.substr(bracket + 1, close - bracket - 1));
            t = t.substr(0, bracket);
        }
        std::string name = t, args;
        auto paren = t.find('(');
        if (paren != std::string::npos) {
            if (t.back() != ')')
                throw CLI::ValidationError("--object", "unclosed parenthesis: " + part);
            name = t.substr(0, paren);
            args = t.substr(paren + 1, t.size() - paren - 2);
        }
        std::vector<std::string> arg = splitAny(args, ",");
        if (name == "Fiber") {
            sm.kind = GlobalSummand::Kind::Fiber;
            if (!arg.empty()) throw CLI::ValidationError("--object", "Fiber takes no arguments");
        } else if (name == "Torsion") {
            sm.kind = GlobalSummand::Kind::Torsion;
            if (arg.size() < 2 || arg.size() > 3)
                throw CLI::ValidationError("--object", "Torsion(i,m[,zeta]) expected: " + part);
            sm.i = std::stoi(arg[0]);
            sm.m = std::stoi(arg[1]);
            if (arg.size() == 3) {
                if (arg[2] != "zeta")
                    throw CLI::ValidationError("--object", "third argument must be zeta");
                sm.twist = 1;
            }
        } else if (name == "LineBundle") {
            sm.kind = GlobalSummand::Kind::LineBundle;
            if (arg.empty())
                throw CLI::ValidationError("--object", "LineBundle(d[, i j ...]) expected");
            sm.deg = Int(arg[0]);
            for (size_t k = 1; k < arg.size(); ++k)
                for (const std::string& s : splitAny(arg[k], " "))
                    sm.S.push_back(std::stoi(s));
        } else {
            throw CLI::ValidationError("--object", "unknown summand kind: " + name);
        }
        obj.push_back(sm);
    }
    if (obj.empty()) throw CLI::ValidationError("--object", "empty object expression");
    return obj;
}

StabilitySummary summaryFromJson(const json& j) {
    StabilitySummary s;
    s.finiteLength = j.value("finiteLength", false);
    for (const json& e : j.at("simples")) {
        StabilitySummary::Simple sim;
        sim.label = e.at("label").get<std::string>();
        sim.phase = ratFromString(e.at("phase").get<std::string>());
        if (e.contains("charge")) sim.charge = qc_from_json(e.at("charge"));
        s.simples.push_back(sim);
    }
    if (j.contains("phiLow")) s.phiLow = ratFromString(j.at("phiLow").get<std::string>());
    if (j.contains("phiHigh")) s.phiHigh = ratFromString(j.at("phiHigh").get<std::string>());
    s.validate();
    return s;
}

json familyToJson(const std::vector<std::pair<KClass, Lift>>& family) {
    json arr = json::array();
    for (const auto& [cls, lift] : family) {
        json c = json::array();
        for (const Int& v : cls.c) c.push_back(v.str());
        arr.push_back({{"class", c}, {"phase", lift.display()}});
    }
    return arr;
}

int runClassify(const std::string& chargePath, const std::string& outPath) {
    Geometry g;
    CentralCharge Z = charge_from_json(loadJson(chargePath), &g);
    GlobalStability s = classify_in_U(Z, g);
    json out = global_to_json(s);
    out["stableFamily"] = familyToJson(stable_family(s));
    emit(out, outPath);
    return 0;
}

int runBuild(const std::string& chargePath, const std::string& partText,
             const std::string& outPath) {
    Geometry g;
    CentralCharge Z = charge_from_json(loadJson(chargePath), &g);
    PartitionData part = parsePartition(partText, g.n);
    GlobalStability s = build_stability(Z, part, g);
    json out = global_to_json(s);
    out["stableFamily"] = familyToJson(stable_family(s));
    emit(out, outPath);
    return 0;
}

int runHn(const std::string& objText, const std::string& stabPath,
          const std::string& outPath) {
    GlobalStability s = global_from_json(loadJson(stabPath));
    GlobalObject obj = parseObject(objText);
    if (obj.size() == 1 && obj[0].kind == GlobalSummand::Kind::LineBundle) {
        LineBundleCertificate cert = reduce_line_bundle(obj[0], s);
        json parts = json::array();
        for (const GlobalSummand& sm : cert.torsionParts)
            parts.push_back({{"i", sm.i}, {"m", sm.m}, {"twist", sm.twist}, {"shift", sm.shift}});
        emit({{"certificate",
               {{"pullbackRk", cert.pullbackRk.str()},
                {"pullbackDeg", cert.pullbackDeg.str()},
                {"torsionParts", parts},
                {"phiLower", cert.phiLower.display()},
                {"phiUpper", cert.phiUpper.display()}}}},
             outPath);
        return 0;
    }
    emit(hn_to_json(hn_global(obj, s)), outPath);
    return 0;
}

int runTheta(const std::string& stabPath, const std::string& outPath) {
    GlobalStability s = global_from_json(loadJson(stabPath));
    ThetaPoint t = theta_map(s);
    json out = theta_to_json(t);
    out["lhs"] = ratToString(theta_lhs(t));
    emit(out, outPath);
    return 0;
}

int runChambers(bool local, const std::string& chartName, int grid,
                const std::vector<double>& window, bool parallel,
                const std::string& outPrefix) {
    (void)local;  // chamber scans are local by definition; flag kept for clarity
    double x0 = -2, x1 = 2, y0 = -2, y1 = 2;
    if (window.size() == 4) {
        x0 = window[0];
        x1 = window[1];
        y0 = window[2];
        y1 = window[3];
    }
    ChamberGrid g;
    if (chartName.empty()) {
        g = parallel ? scan_charge_parallel(grid, x0, x1, y0, y1)
                     : scan_charge_serial(grid, x0, x1, y0, y1);
    } else {
        Chart chart;
        if (chartName == "PLUS")
            chart = Chart::PLUS;
        else if (chartName == "MINUS")
            chart = Chart::MINUS;
        else if (chartName == "WALL")
            chart = Chart::WALL;
        else
            throw CLI::ValidationError("--chart", "expected PLUS, MINUS or WALL");
        g = parallel ? scan_chart_parallel(chart, grid, x0, x1, y0, y1)
                     : scan_chart_serial(chart, grid, x0, x1, y0, y1);
    }
    if (outPrefix.empty()) {
        std::cout << grid_to_csv(g);
    } else {
        writeOut(outPrefix + ".csv", grid_to_csv(g));
        writeOut(outPrefix + ".svg", grid_to_svg(g));
    }
    return 0;
}

int runGlueCheck(const std::string& patternPath, const std::string& s1Path,
                 const std::string& s2Path, const std::string& outPath) {
    ExtPattern p = pattern_from_json(loadJson(patternPath));
    json out;
    out["heartsOrthogonal"] = check_hearts_orthogonal(p);
    if (!s1Path.empty() && !s2Path.empty()) {
        StabilitySummary s1 = summaryFromJson(loadJson(s1Path));
        StabilitySummary s2 = summaryFromJson(loadJson(s2Path));
        GlueParamResult r = find_gluing_parameter(s1, s2, p);
        json jr;
        jr["method"] = r.method;
        if (r.a) jr["a"] = ratToString(*r.a);
        if (r.witness)
            jr["witness"] = {{"i", r.witness->i},
                             {"j", r.witness->j},
                             {"k1", r.witness->k1},
                             {"k2", r.witness->k2},
                             {"deg", r.witness->deg}};
        out["parameter"] = jr;
        std::vector<Rat> im1, im2;
        for (const auto& s : s1.simples)
            if (s.charge) im1.push_back(s.charge->im);
        for (const auto& s : s2.simples)
            if (s.charge) im2.push_back(s.charge->im);
        ConditionAReport ca = check_gluing_condition_a(im1, im2);
        out["conditionA"] = {{"holds", ca.holds},
                             {"gap", ratToString(ca.gap)},
                             {"noetherianAssumed", ca.noetherianAssumed}};
        out["conditionB"] = check_gluing_condition_b(p, s2);
    }
    emit(out, outPath);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stability-space toolkit for ramified double covers of curves"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string chargePath, stabPath, patternPath, s1Path, s2Path;
    std::string partText, objText, outPath, chartName;
    std::vector<double> window;
    int grid = 100;
    bool local = false, parallel = false;
    long long seed = 0;
    double tol = 1e-10;
    app.add_option("--seed", seed, "seed for sampling-based diagnostics");
    app.add_option("--tol", tol, "tolerance for analytic checks");

    CLI::App* classify = app.add_subcommand("classify", "classify a charge inside U");
    classify->add_option("--charge", chargePath, "charge JSON file")->required();
    classify->add_option("--out", outPath, "output file (default stdout)");

    CLI::App* build = app.add_subcommand("build", "build a stability from charge + partition");
    build->add_option("--charge", chargePath, "charge JSON file")->required();
    build->add_option("--partition", partText, "e.g. \"0:I0,+:1 2\" or \"+:1^2,-:2\"")
        ->required();
    build->add_option("--out", outPath, "output file (default stdout)");

    CLI::App* hn = app.add_subcommand("hn", "HN filtration of a torsion/fiber object");
    hn->add_option("--object", objText, "e.g. \"2*Torsion(1,2,zeta)[0]\"")->required();
    hn->add_option("--stability", stabPath, "global stability JSON file")->required();
    hn->add_option("--out", outPath, "output file (default stdout)");

    CLI::App* theta = app.add_subcommand("theta", "classification coordinates of a stability");
    theta->add_option("--stability", stabPath, "global stability JSON file")->required();
    theta->add_option("--out", outPath, "output file (default stdout)");

    CLI::App* chambers = app.add_subcommand("chambers", "chamber scan (CSV, SVG with --out)");
    chambers->add_flag("--local", local, "scan the local chamber decomposition");
    chambers->add_option("--grid", grid, "cells per axis")->check(CLI::PositiveNumber);
    chambers->add_option("--chart", chartName, "PLUS, MINUS or WALL (default: charge scan)");
    chambers->add_option("--window", window, "x0 x1 y0 y1")->expected(4);
    chambers->add_flag("--parallel", parallel, "use the parallel scan kernel");
    chambers->add_option("--out", outPath, "output path prefix (.csv/.svg)");

    CLI::App* glueCheck = app.add_subcommand("glue-check", "orthogonality / gluing checks");
    glueCheck->add_option("--pattern", patternPath, "Ext pattern JSON file")->required();
    glueCheck->add_option("--s1", s1Path, "first factor summary JSON");
    glueCheck->add_option("--s2", s2Path, "second factor summary JSON");
    glueCheck->add_option("--out", outPath, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 64;
    }

    try {
        if (classify->parsed()) return runClassify(chargePath, outPath);
        if (build->parsed()) return runBuild(chargePath, partText, outPath);
        if (hn->parsed()) return runHn(objText, stabPath, outPath);
        if (theta->parsed()) return runTheta(stabPath, outPath);
        if (chambers->parsed())
            return runChambers(local, chartName, grid, window, parallel, outPath);
        if (glueCheck->parsed()) return runGlueCheck(patternPath, s1Path, s2Path, outPath);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const NotInRegion& e) {
        std::cerr << "not in region: " << e.what() << "\n";
        return 2;
    } catch (const Undecidable& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return 4;
    } catch (const SymbolicRotation& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return 4;
    } catch (const SymbolicCoefficient& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return 4;
    } catch (const StabError& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "bad input JSON: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}
