#pragma once

#include "degpar/classify.hpp"
#include "degpar/verify.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace degpar::cli {

inline constexpr double kDefaultDelta = 1e-3;
inline constexpr int kDefaultGrid = 21;
inline constexpr int kDefaultPanels = 128;
inline constexpr SearchBox kDefaultBox{5, 5, 8};

enum class Command { Roots, Eigen, Lambda, Solve, Verify, Scan, AdjudicateSplitA };
enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string to_string(Command c);

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

struct RunConfig {
    Command command = Command::Roots;
    ProblemParams params{};
    ModeIndex mode{};
    std::optional<int> s_y;
    std::optional<int> s_t;
    double theta = 1.0;

    // roots, eigen
    double nu = 0.5;
    double exponent = 1.0;
    int count = 10;
    BoundaryKind bc{};
    /// auto, closed or shooting.
    std::string method = "auto";

    // lambda
    double mu = 0.0;
    std::optional<int> s;
    int s_max = 8;
    /// atan2, literal or both.
    std::string branch = "atan2";

    // solve
    int samples = 11;
    double sample_offset = 0.0;

    // verify
    GridSpec grid{kDefaultGrid, kDefaultGrid, kDefaultGrid, kDefaultDelta};
    int panels = kDefaultPanels;
    int boundary_samples = 41;
    std::vector<double> fd_steps;
    double fd_offset = 0.05;
    std::string residual_csv;

    // scan
    ScanOptions scan{1.0, 1.0, 1.0, 2.0, 41, kDefaultBox};

    // adjudicate-splitA
    std::vector<double> thetas{0.0, 0.5, 1.0};

    std::string out_path;
    std::optional<OutputFormat> format;
};

/// "re,im" or "re".
[[nodiscard]] NonlocalCoefficient parse_complex(const std::string& text);
/// Comma-separated integers.
[[nodiscard]] std::vector<int> parse_int_list(const std::string& text);
/// Comma-separated doubles.
[[nodiscard]] std::vector<double> parse_double_list(const std::string& text);

/// Parses argv without the program name. Returns nullopt after writing help
/// to `out`. Throws ValidationError on any grammar or constraint violation.
[[nodiscard]] std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Writes the requested output to config.out_path (or `out` when empty).
/// Throws ValidationError or NumericalFailure.
void execute(const RunConfig& config, std::ostream& out);

/// parse_args + execute with exit-code mapping and one-line diagnostics on `err`.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace degpar::cli
