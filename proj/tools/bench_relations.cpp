// Compares the serial reference and the OpenMP relation-generation kernel on
// the workloads the test suite cares about, checking that both produce the
// same rows.

#include <chrono>
#include <iostream>

#include "nano/groups.hpp"

using namespace nano;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench(const std::string& label, const HomotopyData& data, int r, int n, bool closed) {
    auto t0 = Clock::now();
    std::vector<Row> serial = relation_rows_serial(data, r, n, closed);
    double ts = seconds_since(t0);

    t0 = Clock::now();
    GroupPresentation par1 = generate_relations(data, r, n, closed, 1);
    double tp1 = seconds_since(t0);

    t0 = Clock::now();
    GroupPresentation par = generate_relations(data, r, n, closed, 0);
    double tp = seconds_since(t0);

    bool same = serial == par.rows && serial == par1.rows;
    std::cout << label << ": " << serial.size() << " rows over " << par.generators.size()
              << " generators\n"
              << "  serial            " << ts << " s\n"
              << "  kernel (1 thread) " << tp1 << " s\n"
              << "  kernel (default)  " << tp << " s  speedup x" << (tp > 0 ? ts / tp : 0)
              << "\n"
              << "  rows identical:   " << (same ? "yes" : "NO") << "\n";
    if (!same) std::exit(1);
}

}  // namespace

int main() {
    HomotopyData gauss = HomotopyData::preset("gauss");
    HomotopyData mixed = HomotopyData::parse_config("alpha: a b c\ntau: (b c)\nS: diagonal\nnu:\n");

    bench("gauss words, n=4", gauss, 1, 4, false);
    bench("gauss words, n=5", gauss, 1, 5, false);
    bench("mixed alphabet, r=2, n=2", mixed, 2, 2, false);
    bench("mixed alphabet, r=2, n=2, closed", mixed, 2, 2, true);
    bench("mixed alphabet, r=2, n=3", mixed, 2, 3, false);
    return 0;
}
