#include <chrono>
#include <cstdlib>
#include <iostream>

#include "stab/scan.hpp"

using namespace stab;

namespace {

template <typename Fn>
double timeMs(Fn fn, ChamberGrid& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int grid = argc > 1 ? std::atoi(argv[1]) : 200;
    if (grid < 1) {
        std::cerr << "usage: bench_scan [grid]\n";
        return 64;
    }

    ChamberGrid serial, parallel;
    double tCharge = timeMs([&] { return scan_charge_serial(grid, -2, 2, -2, 2); }, serial);
    double tChargeP =
        timeMs([&] { return scan_charge_parallel(grid, -2, 2, -2, 2); }, parallel);
    bool chargeMatch = serial.codes == parallel.codes;

    double tChart = timeMs(
        [&] { return scan_chart_serial(Chart::PLUS, grid, -2, 2, -0.9, 0.9); }, serial);
    double tChartP = timeMs(
        [&] { return scan_chart_parallel(Chart::PLUS, grid, -2, 2, -0.9, 0.9); }, parallel);
    bool chartMatch = serial.codes == parallel.codes;

    std::cout << "grid " << grid << "x" << grid << "\n"
              << "charge scan: serial " << tCharge << " ms, parallel " << tChargeP
              << " ms, speedup " << (tChargeP > 0 ? tCharge / tChargeP : 0)
              << (chargeMatch ? " (outputs match)" : " (OUTPUT MISMATCH)") << "\n"
              << "chart scan:  serial " << tChart << " ms, parallel " << tChartP
              << " ms, speedup " << (tChartP > 0 ? tChart / tChartP : 0)
              << (chartMatch ? " (outputs match)" : " (OUTPUT MISMATCH)") << "\n";
    return chargeMatch && chartMatch ? 0 : 1;
}
