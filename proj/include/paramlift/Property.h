#pragma once

#include <string>
#include <string_view>

#include "paramlift/Rational.h"

namespace paramlift {

enum class PropertyKind { ReachProb, ExpReward };
enum class Comparison { LessEqual, Less, GreaterEqual, Greater };

/// P~lambda [F target] or E~kappa [F target], with the target given by a label.
struct Property {
    PropertyKind kind = PropertyKind::ReachProb;
    Comparison comparison = Comparison::LessEqual;
    Rational threshold;
    std::string target;

    /// True for <= and <: the property bounds the quantity from above.
    bool isUpperBound() const {
        return comparison == Comparison::LessEqual || comparison == Comparison::Less;
    }
    bool holdsFor(Rational const& value) const;
    bool holdsFor(double value) const;
    std::string toString() const;
};

/// Parses "P<=0.8 [F target]", "P>1/2 [F done]", "E<=4.2 [F goal]".
Property parseProperty(std::string_view text);

std::string_view toString(Comparison comparison);

}  // namespace paramlift
