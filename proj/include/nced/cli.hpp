#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "nced/constellation.hpp"
#include "nced/sim.hpp"

namespace nced::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSearch = 3;
inline constexpr int kExitNumerical = 4;

/// Parses argv, dispatches a subcommand and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a:b:step" or "v1,v2,..." as a list of values. Throws InvalidArgument on
/// malformed or empty ranges.
std::vector<double> parse_range(const std::string& text);

/// Serialized optimizer output; field names are part of the file format.
nlohmann::ordered_json constellation_record(const Constellation& constellation, const DecisionRule& rule,
                                            double t_max, int M, double snr_db, const ChannelProfile& profile);

struct Manifest {
    std::string command;
    nlohmann::ordered_json config;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    double wall_clock_seconds = 0.0;
    nlohmann::ordered_json summary;  ///< optional, omitted when null
};

nlohmann::ordered_json manifest_record(const Manifest& manifest);

/// Path of the manifest that accompanies a data file.
std::string manifest_path(const std::string& data_path);

/// Writes text with LF line endings, replacing the file.
void write_file(const std::string& path, const std::string& text);

std::string version();

}  // namespace nced::cli
