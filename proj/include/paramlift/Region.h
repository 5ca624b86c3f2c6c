#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paramlift/Model.h"
#include "paramlift/Polynomial.h"
#include "paramlift/Rational.h"

namespace paramlift {

/// Closed rational interval [lower, upper].
struct Interval {
    Rational lower;
    Rational upper;

    Rational width() const {
        return upper - lower;
    }
    bool isDegenerate() const {
        return lower == upper;
    }
    Rational midpoint() const {
        return (lower + upper) / 2;
    }
    bool contains(Rational const& value) const {
        return lower <= value && value <= upper;
    }

    friend bool operator==(Interval const&, Interval const&) = default;
};

/// Axis-aligned box of closed intervals, one per parameter, kept in declaration order.
class Region {
   public:
    using Bounds = std::vector<std::pair<std::string, Interval>>;

    Region() = default;
    explicit Region(Bounds bounds);

    /// Parses "0.1<=x<=0.8, 0.4<=y<=0.7".
    static Region parse(std::string_view text);
    /// The same interval [lower, upper] for every parameter.
    static Region uniform(std::vector<std::string> const& parameters, Rational const& lower, Rational const& upper);

    Bounds const& bounds() const {
        return bounds_;
    }
    std::size_t dimension() const {
        return bounds_.size();
    }
    std::vector<std::string> parameters() const;
    /// Throws RegionMismatchError for unknown parameters.
    Interval const& interval(std::string const& name) const;
    bool hasParameter(std::string const& name) const;
    std::vector<std::string> nondegenerateParameters() const;
    bool isPoint() const;
    bool contains(Valuation const& valuation) const;
    bool isSubsetOf(Region const& other) const;
    /// Largest width among the non-degenerate intervals (zero for a point).
    Rational maxWidth() const;

    /// The same box with intervals ordered like `parameters`; throws RegionMismatchError unless the
    /// parameter sets coincide.
    Region reorderedAs(std::vector<std::string> const& parameters) const;

    std::string toString() const;

    friend bool operator==(Region const&, Region const&) = default;

   private:
    Bounds bounds_;
};

/// Corner of a region restricted to some parameters. `upper[i]` tells which endpoint the i-th
/// non-degenerate parameter takes; degenerate parameters carry their single value.
struct CornerValuation {
    Valuation valuation;
    std::vector<bool> upper;

    /// '0' for lower, '1' for upper endpoint, one character per non-degenerate parameter.
    std::string bits() const;
};

inline constexpr std::size_t kDefaultCornerCap = std::size_t{1} << 20;

/// All corners over `variables`, in ascending bit-pattern order with the first non-degenerate
/// parameter (in region order) as most significant bit. Throws CombinatorialLimitError when the
/// count exceeds `cap`.
std::vector<CornerValuation> corners(Region const& region, std::vector<std::string> const& variables,
                                     std::size_t cap = kDefaultCornerCap);

enum class SplitStrategy { AllDimensions, LongestEdge };

/// Bisects every non-degenerate dimension (2^d children) or only the widest one (2 children).
/// Throws DegenerateRegionError for point regions.
std::vector<Region> split(Region const& region, SplitStrategy strategy);

struct WellDefinedWitness {
    StateIndex state = 0;
    /// Empty for reward polynomials.
    std::optional<std::string> action;
    std::optional<StateIndex> target;
    Polynomial polynomial;
    Valuation corner;
    Rational value;

    std::string describe() const;
};

struct WellDefinedResult {
    bool wellDefined = true;
    std::optional<WellDefinedWitness> witness;

    explicit operator bool() const {
        return wellDefined;
    }
};

/// Decides whether every transition and reward polynomial is strictly positive on the whole region,
/// by evaluation at the corners of the region restricted to the polynomial's parameters.
WellDefinedResult checkWellDefined(ParametricModel const& model, Region const& region, std::size_t cornerCap = kDefaultCornerCap);

/// Volume of `region` relative to `of`, ignoring dimensions that are degenerate in `of`.
/// Throws NotContainedError unless region is a subset of `of`.
Rational measureFraction(Region const& region, Region const& of);

}  // namespace paramlift
