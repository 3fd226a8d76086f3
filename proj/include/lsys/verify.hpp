#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lsys {

struct PropertyResult {
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::string only;         // run properties whose name contains this text
    std::string catalog_dir;  // directory of .lsys twins; empty skips the file checks
    std::uint64_t seed = 20080601;
};

std::vector<std::string> property_names();

// Runs the oracle-equivalence suite for the curve catalog.
std::vector<PropertyResult> run_verification(const VerifyOptions& opts);

}  // namespace lsys
