#include "paramlift/Property.h"

#include <regex>

#include "paramlift/Exceptions.h"

namespace paramlift {

std::string_view toString(Comparison comparison) {
    switch (comparison) {
        case Comparison::LessEqual:
            return "<=";
        case Comparison::Less:
            return "<";
        case Comparison::GreaterEqual:
            return ">=";
        case Comparison::Greater:
            return ">";
    }
    return "?";
}

namespace {

template<typename T>
bool compare(Comparison comparison, T const& value, T const& threshold) {
    switch (comparison) {
        case Comparison::LessEqual:
            return value <= threshold;
        case Comparison::Less:
            return value < threshold;
        case Comparison::GreaterEqual:
            return value >= threshold;
        case Comparison::Greater:
            return value > threshold;
    }
    return false;
}

}  // namespace

bool Property::holdsFor(Rational const& value) const {
    return compare(comparison, value, threshold);
}

bool Property::holdsFor(double value) const {
    return compare(comparison, value, toDouble(threshold));
}

std::string Property::toString() const {
    return std::string(kind == PropertyKind::ReachProb ? "P" : "E") + std::string(paramlift::toString(comparison)) +
           paramlift::toString(threshold) + " [F " + target + "]";
}

Property parseProperty(std::string_view text) {
    static std::regex const pattern(R"(\s*([PE])\s*(<=|<|>=|>)\s*([0-9.eE+\-/]+)\s*\[\s*F\s+([A-Za-z_][A-Za-z0-9_]*)\s*\]\s*)");
    std::string input(text);
    std::smatch match;
    if (!std::regex_match(input, match, pattern)) {
        throw SyntaxError("malformed property '" + input + "'");
    }
    Property property;
    property.kind = match[1] == "P" ? PropertyKind::ReachProb : PropertyKind::ExpReward;
    std::string op = match[2];
    if (op == "<=") {
        property.comparison = Comparison::LessEqual;
    } else if (op == "<") {
        property.comparison = Comparison::Less;
    } else if (op == ">=") {
        property.comparison = Comparison::GreaterEqual;
    } else {
        property.comparison = Comparison::Greater;
    }
    property.threshold = parseRational(match[3].str());
    property.target = match[4];
    if (property.kind == PropertyKind::ReachProb && (property.threshold < 0 || property.threshold > 1)) {
        throw SyntaxError("probability threshold " + paramlift::toString(property.threshold) + " outside [0,1]");
    }
    return property;
}

}  // namespace paramlift
