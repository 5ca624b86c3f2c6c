#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paramlift/Lifting.h"
#include "paramlift/Model.h"
#include "paramlift/Property.h"
#include "paramlift/Region.h"

namespace paramlift {

enum class Verdict { Safe, Unsafe, Unknown, IllDefined };

std::string_view toString(Verdict verdict);

struct RegionResult {
    Region region;
    Verdict verdict = Verdict::Unknown;
    /// Bounds on the property's quantity over the region; NaN when ill-defined.
    double lower = 0.0;
    double upper = 0.0;
    /// Why the region is ill-defined.
    std::string diagnostic;
};

struct CheckOptions {
    /// Value iteration precision.
    double epsilon = 1e-6;
    /// Decision margin around the threshold.
    double delta = 1e-5;
    bool relativeEpsilon = false;
    std::size_t cornerCap = kDefaultCornerCap;
};

/// Classifies a region from bounds [lower, upper] on the property's quantity.
Verdict classifyBounds(Property const& property, double lower, double upper, double delta);

/**
 * Checks regions of one model against one property. The substitution skeleton and the
 * region-independent preconditions are computed once. `check` is safe to call concurrently.
 * The model must outlive the checker.
 */
class RegionChecker {
   public:
    RegionChecker(ParametricModel const& model, Property property, CheckOptions options = {});

    RegionResult check(Region const& region) const;

    ParametricModel const& model() const {
        return model_;
    }
    Property const& property() const {
        return property_;
    }
    /// True if a region-independent precondition fails, so every region is ill-defined.
    bool alwaysIllDefined() const {
        return rewardProblem_.has_value();
    }

   private:
    ParametricModel const& model_;
    Property property_;
    CheckOptions options_;
    StateSet target_;
    std::optional<SubstitutionSkeleton> skeleton_;
    /// Set when an expected-reward precondition fails for every region.
    std::optional<std::string> rewardProblem_;
};

/// One-shot region check; see RegionChecker.
RegionResult checkRegion(ParametricModel const& model, Region const& region, Property const& property, CheckOptions const& options = {});

struct RefineLimits {
    /// Maximal number of region checks.
    std::size_t maxChecks = 1'000'000;
    /// Unknown regions whose widest edge is at most this are not split further.
    Rational minWidth = fraction(1, 1'000'000);
    /// Ill-defined regions are split until their widest edge is at most this.
    Rational illDefinedWidth = fraction(1, 1024);
    /// Wall-clock budget in seconds; none if unset.
    std::optional<double> timeLimit;
};

struct SynthesisOptions {
    CheckOptions check;
    /// Stop once the safe and unsafe fractions together reach this.
    Rational coverageTarget = fraction(95, 100);
    SplitStrategy strategy = SplitStrategy::AllDimensions;
    RefineLimits limits;
    /// Worker threads for region checks; 1 runs everything on the calling thread.
    std::size_t threads = 1;
};

struct SynthesisReport {
    Region space;
    /// Terminal results in the order they were decided.
    std::vector<RegionResult> regions;
    /// Boxes still in the worklist when the loop stopped; they count as unknown.
    std::vector<Region> pending;
    Rational safe;
    Rational unsafe;
    Rational unknown;
    Rational illDefined;
    /// The loop stopped before reaching the coverage target.
    bool limitReached = false;
    std::size_t checks = 0;
    double seconds = 0.0;

    Rational coverage() const {
        return safe + unsafe;
    }
};

/// Partitions `space` into safe, unsafe, unknown and ill-defined boxes, always refining the
/// largest unresolved box first.
SynthesisReport refine(ParametricModel const& model, Property const& property, Region const& space, SynthesisOptions const& options = {});

enum class SampleVerdict { AllSat, AllViol, Neither };

std::string_view toString(SampleVerdict verdict);

struct SampleResult {
    SampleVerdict verdict = SampleVerdict::AllSat;
    std::size_t satisfied = 0;
    std::size_t violated = 0;
    /// A satisfying and a violating valuation, when found.
    std::optional<Valuation> satisfying;
    std::optional<Valuation> violating;
};

/// Random rational point in the interior of every non-degenerate interval of `region`
/// (denominator 2^20), drawn from `rng`.
template<typename Rng>
Valuation sampleInterior(Region const& region, Rng& rng);

/**
 * Evaluates the property exactly on instantiations at all corners of `region` and at `samples`
 * random interior points. Neither certifies that the region is genuinely mixed.
 */
SampleResult classifySample(ParametricModel const& model, Region const& region, Property const& property, std::size_t samples,
                            std::uint64_t seed = 0, CheckOptions const& options = {});

/// Whether the instantiation of `model` at `valuation` satisfies the property (exact for pMCs,
/// value iteration for pMDPs).
bool satisfiesAt(ParametricModel const& model, Valuation const& valuation, Property const& property, CheckOptions const& options = {});

}  // namespace paramlift

#include "paramlift/detail/Sampling.h"
