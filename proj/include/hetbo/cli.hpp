#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetbo/bo_loop.hpp"

namespace hetbo {

inline constexpr const char* kToolVersion = "0.1.0";

/// One benchmark method: which surrogate drives the loop and which
/// acquisition picks the next point. Parsed from "surrogate:acquisition"
/// (e.g. "gp:ei", "mlhgp:anpei", "mlhgp:het-aei").
struct MethodSpec {
    CampaignConfig::Surrogate surrogate = CampaignConfig::Surrogate::homoscedastic;
    AcquisitionKind acquisition = AcquisitionKind::ei;

    std::string label() const;
};

MethodSpec parse_method(const std::string& text);

struct BenchmarkOptions {
    std::string problem;                // sin1d | branin | soil
    std::vector<MethodSpec> methods;    // empty -> gp:ei, mlhgp:anpei, mlhgp:het-aei
    std::vector<std::uint64_t> seeds;   // empty -> 0..9
    int budget = -1;                    // -1 -> problem default (30 / 50 / 30)
    int init_design_size = -1;          // -1 -> problem default (9 / 9 / 10)
    double alpha = 0.5;
    int em_iterations = 10;
    int sample_count = 100;
    std::string data_path;              // required for soil
    std::string out_dir = "out";
};

struct FitCompareOptions {
    std::string data_path;
    int splits = 10;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
};

struct DemoFitOptions {
    std::string problem;                // sin1d | branin
    std::string out_dir = "out";
};

struct MakeSoilOptions {
    std::string out_path;
    int count = 200;
    std::uint64_t seed = 7;
};

/// Each command returns a process exit code: 0 success, 1 runtime failure,
/// 2 invalid configuration, 3 missing or malformed data file. Errors are
/// reported on standard error.
int cmd_benchmark(const BenchmarkOptions& options);
int cmd_fit_compare(const FitCompareOptions& options);
int cmd_demo_fit(const DemoFitOptions& options);
int cmd_make_soil(const MakeSoilOptions& options);

/// Full argv entry point: parses flags / optional config file, dispatches to
/// the subcommand, and maps exceptions to the exit codes above.
int run(int argc, const char* const* argv);

} // namespace hetbo
