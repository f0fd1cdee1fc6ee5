#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "thermoac/simulation.hpp"

namespace thermoac {

/// A simulation case: configuration plus metadata, mirrored to a key-value
/// text file. Unknown keys are rejected, required keys must be present.
struct CaseFile {
    std::string name;
    std::string description;
    SimulationConfig config;
};

CaseFile parse_case_file(std::istream& in);
CaseFile load_case_file(const std::filesystem::path& path);
std::string serialize_case_file(const CaseFile& c);

}  // namespace thermoac
