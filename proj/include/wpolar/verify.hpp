#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpolar/core_linalg.hpp"

namespace wpolar::verify {

struct Options {
    std::string suite = "all";
    std::uint64_t seed = 0;
    int trials = 20;
    std::vector<int> dims{2, 4, 8};
    Tolerance tol{};
    double cond_bound = 100.0;
};

struct Failure {
    std::string case_id;
    std::string inputs_digest;
    std::map<std::string, double> residuals;
    std::optional<std::string> error;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<int> dims;
    Tolerance tol{};
    double cond_bound = 0.0;
    int passes = 0;
    std::vector<Failure> failures;
    double max_residual = 0.0;
    /// Quantities that are measured but not asserted (maximum over trials).
    std::map<std::string, double> experiments;
    double elapsed_ms = 0.0;
    std::vector<Report> parts;  // per-suite reports when suite == "all"
};

const std::vector<std::string>& suite_names();
bool is_known_suite(const std::string& name);

/// Runs `trials` seeded cases of one suite (or of every suite for "all").
/// Trial t uses seed mix_seed(seed, t) and dimension dims[t % dims.size()].
Report run(const Options& options);

nlohmann::json to_json(const Report& report, bool include_timing = true);

}  // namespace wpolar::verify
