#include "paramlift/Region.h"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "paramlift/Exceptions.h"

namespace paramlift {

Region::Region(Bounds bounds) : bounds_(std::move(bounds)) {
    std::set<std::string> seen;
    for (auto const& [name, interval] : bounds_) {
        if (!seen.insert(name).second) {
            throw SyntaxError("parameter '" + name + "' bounded twice");
        }
        if (interval.lower > interval.upper) {
            throw SyntaxError("empty interval for '" + name + "': " + paramlift::toString(interval.lower) + " > " +
                              paramlift::toString(interval.upper));
        }
    }
}

Region Region::parse(std::string_view text) {
    static std::regex const part(R"(\s*([0-9.eE+\-/]+)\s*<=\s*([A-Za-z_][A-Za-z0-9_]*)\s*<=\s*([0-9.eE+\-/]+)\s*)");
    Bounds bounds;
    std::string input(text);
    if (input.find_first_not_of(" \t") == std::string::npos) {
        return Region();
    }
    std::stringstream stream(input);
    for (std::string piece; std::getline(stream, piece, ',');) {
        std::smatch match;
        if (!std::regex_match(piece, match, part)) {
            throw SyntaxError("malformed region bound '" + piece + "'");
        }
        bounds.emplace_back(match[2], Interval{parseRational(match[1].str()), parseRational(match[3].str())});
    }
    return Region(std::move(bounds));
}

Region Region::uniform(std::vector<std::string> const& parameters, Rational const& lower, Rational const& upper) {
    Bounds bounds;
    for (auto const& name : parameters) {
        bounds.emplace_back(name, Interval{lower, upper});
    }
    return Region(std::move(bounds));
}

std::vector<std::string> Region::parameters() const {
    std::vector<std::string> result;
    for (auto const& [name, interval] : bounds_) {
        result.push_back(name);
    }
    return result;
}

Interval const& Region::interval(std::string const& name) const {
    for (auto const& [n, interval] : bounds_) {
        if (n == name) {
            return interval;
        }
    }
    throw RegionMismatchError("region does not bound parameter '" + name + "'");
}

bool Region::hasParameter(std::string const& name) const {
    return std::any_of(bounds_.begin(), bounds_.end(), [&](auto const& b) { return b.first == name; });
}

std::vector<std::string> Region::nondegenerateParameters() const {
    std::vector<std::string> result;
    for (auto const& [name, interval] : bounds_) {
        if (!interval.isDegenerate()) {
            result.push_back(name);
        }
    }
    return result;
}

bool Region::isPoint() const {
    return nondegenerateParameters().empty();
}

bool Region::contains(Valuation const& valuation) const {
    for (auto const& [name, interval] : bounds_) {
        auto it = valuation.find(name);
        if (it == valuation.end() || !interval.contains(it->second)) {
            return false;
        }
    }
    return true;
}

bool Region::isSubsetOf(Region const& other) const {
    if (dimension() != other.dimension()) {
        return false;
    }
    for (auto const& [name, interval] : bounds_) {
        if (!other.hasParameter(name)) {
            return false;
        }
        auto const& outer = other.interval(name);
        if (interval.lower < outer.lower || interval.upper > outer.upper) {
            return false;
        }
    }
    return true;
}

Rational Region::maxWidth() const {
    Rational result = 0;
    for (auto const& [name, interval] : bounds_) {
        result = std::max(result, interval.width());
    }
    return result;
}

Region Region::reorderedAs(std::vector<std::string> const& parameters) const {
    if (parameters.size() != bounds_.size()) {
        throw RegionMismatchError("region bounds " + std::to_string(bounds_.size()) + " parameters, expected " +
                                  std::to_string(parameters.size()));
    }
    Bounds bounds;
    for (auto const& name : parameters) {
        bounds.emplace_back(name, interval(name));
    }
    return Region(std::move(bounds));
}

std::string Region::toString() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        auto const& [name, interval] = bounds_[i];
        out << (i ? ", " : "") << paramlift::toString(interval.lower) << "<=" << name << "<=" << paramlift::toString(interval.upper);
    }
    return out.str();
}

std::string CornerValuation::bits() const {
    std::string result;
    for (bool bit : upper) {
        result.push_back(bit ? '1' : '0');
    }
    return result;
}

std::vector<CornerValuation> corners(Region const& region, std::vector<std::string> const& variables, std::size_t cap) {
    std::set<std::string> wanted(variables.begin(), variables.end());
    for (auto const& name : wanted) {
        if (!region.hasParameter(name)) {
            throw RegionMismatchError("region does not bound parameter '" + name + "'");
        }
    }
    Valuation fixed;
    std::vector<std::pair<std::string, Interval const*>> free;
    for (auto const& [name, interval] : region.bounds()) {
        if (wanted.count(name) == 0) {
            continue;
        }
        if (interval.isDegenerate()) {
            fixed.emplace(name, interval.lower);
        } else {
            free.emplace_back(name, &interval);
        }
    }
    std::size_t k = free.size();
    if (k >= 63 || (std::size_t{1} << k) > cap) {
        throw CombinatorialLimitError(std::to_string(k) + " non-degenerate parameters exceed the corner cap of " + std::to_string(cap));
    }
    std::size_t count = std::size_t{1} << k;
    std::vector<CornerValuation> result;
    result.reserve(count);
    for (std::size_t pattern = 0; pattern < count; ++pattern) {
        CornerValuation corner;
        corner.valuation = fixed;
        corner.upper.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            bool upper = (pattern >> (k - 1 - j)) & 1U;
            corner.upper[j] = upper;
            corner.valuation.emplace(free[j].first, upper ? free[j].second->upper : free[j].second->lower);
        }
        result.push_back(std::move(corner));
    }
    return result;
}

std::vector<Region> split(Region const& region, SplitStrategy strategy) {
    auto const& bounds = region.bounds();
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (!bounds[i].second.isDegenerate()) {
            dims.push_back(i);
        }
    }
    if (dims.empty()) {
        throw DegenerateRegionError("cannot split the point region " + region.toString());
    }
    if (strategy == SplitStrategy::LongestEdge) {
        std::size_t widest = dims.front();
        for (std::size_t i : dims) {
            if (bounds[i].second.width() > bounds[widest].second.width()) {
                widest = i;
            }
        }
        dims = {widest};
    }
    std::size_t count = std::size_t{1} << dims.size();
    std::vector<Region> children;
    children.reserve(count);
    for (std::size_t pattern = 0; pattern < count; ++pattern) {
        Region::Bounds childBounds = bounds;
        for (std::size_t j = 0; j < dims.size(); ++j) {
            auto& interval = childBounds[dims[j]].second;
            Rational mid = interval.midpoint();
            if ((pattern >> (dims.size() - 1 - j)) & 1U) {
                interval.lower = mid;
            } else {
                interval.upper = mid;
            }
        }
        children.emplace_back(std::move(childBounds));
    }
    return children;
}

std::string WellDefinedWitness::describe() const {
    std::ostringstream out;
    if (action) {
        out << "transition " << state << " --" << *action << "--> " << target.value_or(0);
    } else {
        out << "reward of state " << state;
    }
    out << " with '" << polynomial << "' evaluates to " << paramlift::toString(value) << " at";
    bool first = true;
    for (auto const& [name, value] : corner) {
        out << (first ? " " : ", ") << name << "=" << paramlift::toString(value);
        first = false;
    }
    return out.str();
}

namespace {

std::optional<std::pair<Valuation, Rational>> nonPositiveCorner(Polynomial const& polynomial, Region const& region, std::size_t cap) {
    for (auto const& corner : corners(region, polynomial.variables(), cap)) {
        Rational value = polynomial.evaluate(corner.valuation);
        if (value <= 0) {
            return std::make_pair(corner.valuation, value);
        }
    }
    return std::nullopt;
}

}  // namespace

WellDefinedResult checkWellDefined(ParametricModel const& model, Region const& region, std::size_t cornerCap) {
    for (auto const& name : model.parameters()) {
        if (!region.hasParameter(name)) {
            throw RegionMismatchError("region does not bound parameter '" + name + "'");
        }
    }
    WellDefinedResult result;
    for (StateIndex s = 0; s < model.numberOfStates(); ++s) {
        for (auto const& choice : model.state(s).choices) {
            for (auto const& transition : choice.transitions) {
                if (auto bad = nonPositiveCorner(transition.probability, region, cornerCap)) {
                    result.wellDefined = false;
                    result.witness = WellDefinedWitness{s, choice.action, transition.target, transition.probability, bad->first, bad->second};
                    return result;
                }
            }
        }
    }
    for (auto const& [s, reward] : model.rewards()) {
        if (auto bad = nonPositiveCorner(reward, region, cornerCap)) {
            result.wellDefined = false;
            result.witness = WellDefinedWitness{s, std::nullopt, std::nullopt, reward, bad->first, bad->second};
            return result;
        }
    }
    return result;
}

Rational measureFraction(Region const& region, Region const& of) {
    if (region.dimension() != of.dimension()) {
        throw RegionMismatchError("regions over different parameters");
    }
    if (!region.isSubsetOf(of)) {
        throw NotContainedError(region.toString() + " is not contained in " + of.toString());
    }
    Rational fraction = 1;
    for (auto const& [name, outer] : of.bounds()) {
        if (!outer.isDegenerate()) {
            fraction *= region.interval(name).width() / outer.width();
        }
    }
    return fraction;
}

}  // namespace paramlift
