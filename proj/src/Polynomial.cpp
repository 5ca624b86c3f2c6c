#include "paramlift/Polynomial.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "paramlift/Exceptions.h"

namespace paramlift {

namespace {

bool isIdentifierStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool isIdentifierChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Recursive descent over
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := number | identifier ['^' INT] | '(' expr ')'
class PolynomialParser {
   public:
    explicit PolynomialParser(std::string_view text) : text_(text) {}

    Polynomial parse() {
        Polynomial result = parseExpression();
        skipSpace();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return result;
    }

   private:
    [[noreturn]] void fail(std::string const& what) const {
        throw SyntaxError("polynomial '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skipSpace();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial parseExpression() {
        skipSpace();
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        Polynomial result = parseTerm();
        if (negate) {
            result = -result;
        }
        while (true) {
            if (accept('+')) {
                result += parseTerm();
            } else if (accept('-')) {
                result -= parseTerm();
            } else {
                return result;
            }
        }
    }

    Polynomial parseTerm() {
        Polynomial result = parseFactor();
        while (accept('*')) {
            result *= parseFactor();
        }
        return result;
    }

    std::string_view scanDigits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Rational parseNumber() {
        std::size_t start = pos_;
        scanDigits();
        bool decimal = false;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            decimal = true;
            ++pos_;
            scanDigits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
                ++pos_;
            }
            if (scanDigits().empty()) {
                pos_ = save;
            } else {
                decimal = true;
            }
        }
        std::string_view literal = text_.substr(start, pos_ - start);
        if (!decimal) {
            std::size_t save = pos_;
            skipSpace();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skipSpace();
                std::string_view denominator = scanDigits();
                if (denominator.empty()) {
                    fail("expected denominator");
                }
                return parseRational(std::string(literal) + "/" + std::string(denominator));
            }
            pos_ = save;
        }
        return parseRational(literal);
    }

    Polynomial parseFactor() {
        skipSpace();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = parseExpression();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return Polynomial(parseNumber());
        }
        if (isIdentifierStart(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && isIdentifierChar(text_[pos_])) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (accept('^')) {
                skipSpace();
                std::string_view exponent = scanDigits();
                if (exponent.empty()) {
                    fail("expected exponent");
                }
                auto power = std::stoul(std::string(exponent));
                if (power == 0) {
                    return Polynomial(1);
                }
                if (power > 1) {
                    throw NotMultiAffineError("parameter '" + name + "' has degree " + std::string(exponent) + " in '" +
                                              std::string(text_) + "'");
                }
            }
            return Polynomial::variable(name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial::Polynomial(Rational constant) {
    addTerm({}, constant);
}

Polynomial Polynomial::variable(std::string const& name) {
    Polynomial result;
    result.terms_.emplace(Monomial{name}, Rational(1));
    return result;
}

Polynomial Polynomial::parse(std::string_view text) {
    return PolynomialParser(text).parse();
}

bool Polynomial::isConstant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constantPart() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constantValue() const {
    if (!isConstant()) {
        throw std::logic_error("polynomial '" + toString() + "' is not constant");
    }
    return constantPart();
}

std::vector<std::string> Polynomial::variables() const {
    std::set<std::string> names;
    for (auto const& [monomial, coefficient] : terms_) {
        names.insert(monomial.begin(), monomial.end());
    }
    return {names.begin(), names.end()};
}

bool Polynomial::contains(std::string const& name) const {
    for (auto const& [monomial, coefficient] : terms_) {
        if (std::binary_search(monomial.begin(), monomial.end(), name)) {
            return true;
        }
    }
    return false;
}

Rational Polynomial::evaluate(Valuation const& valuation) const {
    Rational result = 0;
    for (auto const& [monomial, coefficient] : terms_) {
        Rational product = coefficient;
        for (auto const& name : monomial) {
            auto it = valuation.find(name);
            if (it == valuation.end()) {
                throw MissingParameterError("no value for parameter '" + name + "' when evaluating '" + toString() + "'");
            }
            product *= it->second;
        }
        result += product;
    }
    return result;
}

Polynomial Polynomial::substitute(Valuation const& partial) const {
    Polynomial result;
    for (auto const& [monomial, coefficient] : terms_) {
        Rational product = coefficient;
        Monomial remaining;
        for (auto const& name : monomial) {
            if (auto it = partial.find(name); it != partial.end()) {
                product *= it->second;
            } else {
                remaining.push_back(name);
            }
        }
        result.addTerm(remaining, product);
    }
    return result;
}

Polynomial Polynomial::renamed(std::map<std::string, std::string> const& renaming) const {
    Polynomial result;
    for (auto const& [monomial, coefficient] : terms_) {
        Monomial renamedMonomial;
        for (auto const& name : monomial) {
            auto it = renaming.find(name);
            renamedMonomial.push_back(it == renaming.end() ? name : it->second);
        }
        std::sort(renamedMonomial.begin(), renamedMonomial.end());
        if (std::adjacent_find(renamedMonomial.begin(), renamedMonomial.end()) != renamedMonomial.end()) {
            throw NotMultiAffineError("renaming merges parameters of '" + toString() + "'");
        }
        result.addTerm(renamedMonomial, coefficient);
    }
    return result;
}

void Polynomial::addTerm(Monomial const& monomial, Rational const& coefficient) {
    if (coefficient == 0) {
        return;
    }
    auto [it, inserted] = terms_.emplace(monomial, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial result = *this;
    for (auto& [monomial, coefficient] : result.terms_) {
        coefficient = -coefficient;
    }
    return result;
}

Polynomial& Polynomial::operator+=(Polynomial const& other) {
    for (auto const& [monomial, coefficient] : other.terms_) {
        addTerm(monomial, coefficient);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(Polynomial const& other) {
    for (auto const& [monomial, coefficient] : other.terms_) {
        addTerm(monomial, -coefficient);
    }
    return *this;
}

Polynomial& Polynomial::operator*=(Rational const& factor) {
    if (factor == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [monomial, coefficient] : terms_) {
        coefficient *= factor;
    }
    return *this;
}

Polynomial& Polynomial::operator*=(Polynomial const& other) {
    Polynomial result;
    for (auto const& [lhsMonomial, lhsCoefficient] : terms_) {
        for (auto const& [rhsMonomial, rhsCoefficient] : other.terms_) {
            Monomial product;
            std::set_union(lhsMonomial.begin(), lhsMonomial.end(), rhsMonomial.begin(), rhsMonomial.end(), std::back_inserter(product));
            if (product.size() != lhsMonomial.size() + rhsMonomial.size()) {
                throw NotMultiAffineError("product of '" + toString() + "' and '" + other.toString() + "' is not multi-affine");
            }
            result.addTerm(product, lhsCoefficient * rhsCoefficient);
        }
    }
    terms_ = std::move(result.terms_);
    return *this;
}

std::string Polynomial::toString() const {
    if (terms_.empty()) {
        return "0";
    }
    // Highest-degree terms first so that the constant ends the expression.
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend();) {
        // Within one cardinality keep lexicographic order.
        auto groupEnd = it;
        while (groupEnd != terms_.rend() && groupEnd->first.size() == it->first.size()) {
            ++groupEnd;
        }
        std::vector<TermMap::const_reverse_iterator> group;
        for (auto g = it; g != groupEnd; ++g) {
            group.push_back(g);
        }
        std::reverse(group.begin(), group.end());
        for (auto const& term : group) {
            auto const& [monomial, coefficient] = *term;
            Rational magnitude = abs(coefficient);
            if (first) {
                out << (coefficient < 0 ? "-" : "");
            } else {
                out << (coefficient < 0 ? " - " : " + ");
            }
            first = false;
            bool printedCoefficient = false;
            if (monomial.empty() || magnitude != 1) {
                out << magnitude.get_str();
                printedCoefficient = true;
            }
            for (std::size_t i = 0; i < monomial.size(); ++i) {
                if (printedCoefficient || i > 0) {
                    out << "*";
                }
                out << monomial[i];
            }
        }
        it = groupEnd;
    }
    return out.str();
}

std::ostream& operator<<(std::ostream& out, Polynomial const& polynomial) {
    return out << polynomial.toString();
}

}  // namespace paramlift
