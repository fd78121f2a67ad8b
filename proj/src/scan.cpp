#include "stab/scan.hpp"

#include <cmath>
#include <sstream>

#include "stab/errors.hpp"

namespace stab {

namespace {

/** Exact rational with the same value as the double (binary expansion). */
Rat ratFromD(double x) {
    if (x == 0.0) return 0;
    if (!std::isfinite(x)) throw InvalidCharge("non-finite scan coordinate");
    int e = 0;
    double m = std::frexp(x, &e);
    auto num = static_cast<long long>(std::ldexp(m, 53));
    int e2 = e - 53;
    Rat r(num);
    if (e2 >= 0) return r * Rat(Int(1) << e2);
    return r / Rat(Int(1) << -e2);
}

int codeOf(const ChamberReport& r) {
    if (r.op.status == Status::Unstable) return 4;
    if (r.zetaOp.status == Status::Unstable) return 5;
    if (r.op.status == Status::StrictlySemistable ||
        r.zetaOp.status == Status::StrictlySemistable)
        return 3;
    bool o2pSemi = r.o2p.status != Status::Unstable;
    bool zeta2pSemi = r.zetaO2p.status != Status::Unstable;
    if (o2pSemi && zeta2pSemi) return 0;
    if (r.Wplus) return 1;
    if (r.Wminus) return 2;
    return 6;
}

template <typename PointFn>
ChamberGrid scanImpl(int grid, double x0, double x1, double y0, double y1, PointFn point,
                     bool parallel) {
    if (grid < 1) throw InvalidCharge("grid must be positive");
    ChamberGrid g;
    g.grid = grid;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.codes.assign(static_cast<size_t>(grid) * grid, 6);
    auto cell = [&](int row, int col) {
        double x = x0 + (x1 - x0) * (col + 0.5) / grid;
        double y = y0 + (y1 - y0) * (row + 0.5) / grid;
        int code = 6;
        try {
            code = codeOf(point(x, y));
        } catch (const StabError&) {
            code = 6;
        }
        g.codes[static_cast<size_t>(row) * grid + col] = code;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int row = 0; row < grid; ++row)
            for (int col = 0; col < grid; ++col) cell(row, col);
    } else {
        for (int row = 0; row < grid; ++row)
            for (int col = 0; col < grid; ++col) cell(row, col);
    }
    return g;
}

ChamberReport chartPointReport(Chart chart, double x, double y) {
    LocalStability s = LocalStability::chartPoint(chart, QC(), QC(ratFromD(x), ratFromD(y)));
    return chamber(s);
}

ChamberReport chargePointReport(double x, double y) {
    LocalStability s = local_from_charges(QC(Rat(-1), Rat(0)), QC(ratFromD(x), ratFromD(y)));
    return chamber(s);
}

} // namespace

ChamberGrid scan_chart_serial(Chart chart, int grid, double x0, double x1, double y0,
                              double y1) {
    return scanImpl(
        grid, x0, x1, y0, y1,
        [chart](double x, double y) { return chartPointReport(chart, x, y); }, false);
}

ChamberGrid scan_chart_parallel(Chart chart, int grid, double x0, double x1, double y0,
                                double y1) {
    return scanImpl(
        grid, x0, x1, y0, y1,
        [chart](double x, double y) { return chartPointReport(chart, x, y); }, true);
}

ChamberGrid scan_charge_serial(int grid, double x0, double x1, double y0, double y1) {
    return scanImpl(grid, x0, x1, y0, y1, chargePointReport, false);
}

ChamberGrid scan_charge_parallel(int grid, double x0, double x1, double y0, double y1) {
    return scanImpl(grid, x0, x1, y0, y1, chargePointReport, true);
}

std::string grid_to_csv(const ChamberGrid& g) {
    std::ostringstream os;
    for (int row = 0; row < g.grid; ++row) {
        for (int col = 0; col < g.grid; ++col) {
            if (col) os << ',';
            os << g.codes[static_cast<size_t>(row) * g.grid + col];
        }
        os << '\n';
    }
    return os.str();
}

std::string grid_to_svg(const ChamberGrid& g) {
    static const char* palette[7] = {"#222222", "#4e79a7", "#e15759", "#f1ce63",
                                     "#76b7b2", "#b07aa1", "#dddddd"};
    const int cell = 8;
    int size = g.grid * cell;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
       << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    for (int row = 0; row < g.grid; ++row)
        for (int col = 0; col < g.grid; ++col) {
            int code = g.codes[static_cast<size_t>(row) * g.grid + col];
            if (code < 0 || code > 6) code = 6;
            // SVG y grows downward; flip so the last row sits at the top.
            int yPix = (g.grid - 1 - row) * cell;
            os << "<rect x=\"" << col * cell << "\" y=\"" << yPix << "\" width=\"" << cell
               << "\" height=\"" << cell << "\" fill=\"" << palette[code] << "\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

} // namespace stab
