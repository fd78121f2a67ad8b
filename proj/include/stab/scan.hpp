#ifndef STAB_SCAN_HPP
#define STAB_SCAN_HPP

#include <string>
#include <vector>

#include "stab/local.hpp"

namespace stab {

/**
 * Status code of one grid cell in a chamber scan:
 *   0 wall (both 2p objects semistable), 1 W+ interior, 2 W- interior,
 *   3 small objects strictly semistable (|t| = 1), 4 O_p unstable,
 *   5 zeta O_p unstable, 6 branch cut / out of domain.
 */
struct ChamberGrid {
    int grid = 0;                 // cells per axis
    std::vector<int> codes;       // row-major, size grid*grid
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // sampled coordinate window
};

/** Chart-coordinate scan: coord = x + iy over the window, f = 0. */
ChamberGrid scan_chart_serial(Chart chart, int grid, double x0, double x1, double y0,
                              double y1);
ChamberGrid scan_chart_parallel(Chart chart, int grid, double x0, double x1, double y0,
                                double y1);

/** Charge-coordinate scan: u = -1, w = x + iy over the window. */
ChamberGrid scan_charge_serial(int grid, double x0, double x1, double y0, double y1);
ChamberGrid scan_charge_parallel(int grid, double x0, double x1, double y0, double y1);

/** CSV: one row per grid row, comma-separated status codes. */
std::string grid_to_csv(const ChamberGrid& g);

/** Static SVG rendering with one rect per cell, colored by status code. */
std::string grid_to_svg(const ChamberGrid& g);

} // namespace stab

#endif
