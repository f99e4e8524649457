#include <fstream>
#include <stdexcept>

#include "nced/cli.hpp"

namespace nced::cli {

nlohmann::ordered_json constellation_record(const Constellation& constellation, const DecisionRule& rule,
                                            double t_max, int M, double snr_db, const ChannelProfile& profile) {
    nlohmann::ordered_json j;
    j["K"] = constellation.size();
    j["energies"] = std::vector<double>(constellation.energies().begin(), constellation.energies().end());
    j["thresholds"] = rule.boundaries();
    j["t_max"] = t_max;
    j["M"] = M;
    j["snr_db"] = snr_db;
    j["profile"] = std::vector<double>(profile.variances().begin(), profile.variances().end());
    return j;
}

nlohmann::ordered_json manifest_record(const Manifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["config"] = m.config;
    j["seed"] = m.seed;
    j["version"] = version();
    j["outputs"] = m.outputs;
    j["wall_clock_seconds"] = m.wall_clock_seconds;
    if (!m.summary.is_null()) j["summary"] = m.summary;
    return j;
}

std::string manifest_path(const std::string& data_path) { return data_path + ".manifest.json"; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path);
}

std::string version() { return NCED_VERSION; }

}  // namespace nced::cli
