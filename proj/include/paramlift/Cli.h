#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "paramlift/Rational.h"
#include "paramlift/Region.h"
#include "paramlift/Synthesis.h"

namespace paramlift::cli {

enum class Mode { Check, Synthesize, Sample };
enum class OutputFormat { Json, Csv };

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitLimitReached = 2;
inline constexpr int kExitIllDefined = 3;

struct RunConfig {
    Mode mode = Mode::Check;
    std::string modelPath;
    std::string property;
    /// Defaults to [1e-5, 1-1e-5] for every parameter.
    std::optional<std::string> region;
    Rational coverageTarget = fraction(95, 100);
    double epsilon = 1e-6;
    double delta = 1e-5;
    bool relativeEpsilon = false;
    SplitStrategy strategy = SplitStrategy::AllDimensions;
    std::size_t threads = 1;
    std::uint64_t seed = 0;
    std::size_t samples = 100;
    std::size_t maxChecks = 1'000'000;
    Rational minWidth = fraction(1, 1'000'000);
    Rational illDefinedWidth = fraction(1, 1024);
    std::optional<double> timeLimit;
    /// Eliminate constant states before checking.
    bool eliminate = false;
    std::optional<std::string> outputPath;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::string> svgPath;
    std::size_t cornerCap = kDefaultCornerCap;
};

/// Region used when none is given: [1e-5, 1 - 1e-5] for every parameter.
Region defaultSpace(std::vector<std::string> const& parameters);

/// JSON report; contains no timing so that equal runs give equal bytes.
std::string reportJson(RunConfig const& config, SynthesisReport const& report);
/// One region per row with 12-digit decimals and exact endpoints.
std::string reportCsv(SynthesisReport const& report);
/// Region map over the two non-degenerate parameters of the space; throws std::invalid_argument otherwise.
std::string reportSvg(SynthesisReport const& report);

/// Runs one configuration; human-readable progress goes to `out`, diagnostics to `err`.
int run(RunConfig const& config, std::ostream& out, std::ostream& err);

/// Parses arguments (including PARAMLIFT_CORNER_CAP) and runs.
int main(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace paramlift::cli
