#include <cmath>
#include <cstdio>
#include <string>

#include "nced/sim.hpp"

namespace nced {

namespace {

std::string number(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string format_table(std::span<const SweepRow> rows) {
    std::string out = "scheme,M,K,L,snr_db,analytic_ser,mc_ser,ci_low,ci_high,trials\n";
    for (const SweepRow& r : rows) {
        out += to_string(r.scheme);
        out += ',' + std::to_string(r.M);
        out += ',' + std::to_string(r.K);
        out += ',' + std::to_string(r.L);
        out += ',' + number(r.snr_db);
        out += ',' + number(r.analytic_ser);
        out += ',' + number(r.mc_ser);
        out += ',' + number(r.ci_low);
        out += ',' + number(r.ci_high);
        out += ',' + std::to_string(r.trials);
        out += '\n';
    }
    return out;
}

}  // namespace nced
