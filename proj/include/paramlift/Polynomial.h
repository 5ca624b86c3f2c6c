#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "paramlift/Rational.h"

namespace paramlift {

/// Assignment of rational values to (a subset of) the parameters.
using Valuation = std::map<std::string, Rational>;

/// Product of distinct parameters, names sorted lexicographically. The empty monomial is the constant 1.
using Monomial = std::vector<std::string>;

/// Orders monomials by cardinality first, then lexicographically.
struct MonomialOrder {
    bool operator()(Monomial const& lhs, Monomial const& rhs) const {
        if (lhs.size() != rhs.size()) {
            return lhs.size() < rhs.size();
        }
        return lhs < rhs;
    }
};

/**
 * Multi-affine multivariate polynomial with rational coefficients: every parameter occurs with
 * degree at most one in every term. Stored canonically (no zero coefficients), so structural
 * equality coincides with equality as polynomials.
 */
class Polynomial {
   public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Polynomial() = default;
    Polynomial(Rational constant);  // NOLINT: implicit promotion of constants is intended
    Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT

    static Polynomial variable(std::string const& name);

    /// Parses the textual polynomial syntax. Throws SyntaxError or NotMultiAffineError.
    static Polynomial parse(std::string_view text);

    TermMap const& terms() const {
        return terms_;
    }

    bool isZero() const {
        return terms_.empty();
    }
    bool isConstant() const;
    /// Coefficient of the empty monomial.
    Rational constantPart() const;
    /// Value of a constant polynomial; throws std::logic_error otherwise.
    Rational constantValue() const;

    /// Parameters occurring in the polynomial, sorted lexicographically.
    std::vector<std::string> variables() const;
    bool contains(std::string const& name) const;

    /// Exact value at a valuation that binds every occurring parameter.
    Rational evaluate(Valuation const& valuation) const;
    /// Replaces the bound parameters by their values; unbound ones are kept.
    Polynomial substitute(Valuation const& partial) const;
    /// Renames parameters. Names without an entry are kept.
    Polynomial renamed(std::map<std::string, std::string> const& renaming) const;

    std::string toString() const;

    Polynomial operator-() const;
    Polynomial& operator+=(Polynomial const& other);
    Polynomial& operator-=(Polynomial const& other);
    /// Throws NotMultiAffineError if the product would square a parameter.
    Polynomial& operator*=(Polynomial const& other);
    Polynomial& operator*=(Rational const& factor);

    friend Polynomial operator+(Polynomial lhs, Polynomial const& rhs) {
        return lhs += rhs;
    }
    friend Polynomial operator-(Polynomial lhs, Polynomial const& rhs) {
        return lhs -= rhs;
    }
    friend Polynomial operator*(Polynomial lhs, Polynomial const& rhs) {
        return lhs *= rhs;
    }
    friend Polynomial operator*(Polynomial lhs, Rational const& rhs) {
        return lhs *= rhs;
    }
    friend Polynomial operator*(Rational const& lhs, Polynomial rhs) {
        return rhs *= lhs;
    }

    friend bool operator==(Polynomial const& lhs, Polynomial const& rhs) {
        return lhs.terms_ == rhs.terms_;
    }
    friend bool operator!=(Polynomial const& lhs, Polynomial const& rhs) {
        return !(lhs == rhs);
    }

   private:
    void addTerm(Monomial const& monomial, Rational const& coefficient);

    TermMap terms_;
};

std::ostream& operator<<(std::ostream& out, Polynomial const& polynomial);

}  // namespace paramlift
