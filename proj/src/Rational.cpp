#include "paramlift/Rational.h"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "paramlift/Exceptions.h"

namespace paramlift {

namespace {

bool allDigits(std::string_view text) {
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

mpz_class parseInteger(std::string_view text) {
    return mpz_class(std::string(text), 10);
}

Rational powerOfTen(unsigned long exponent) {
    mpz_class result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return Rational(result);
}

}  // namespace

Rational parseRational(std::string_view text) {
    std::string_view original = text;
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw SyntaxError("empty number in '" + std::string(original) + "'");
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den)) {
            throw SyntaxError("malformed fraction '" + std::string(original) + "'");
        }
        mpz_class denominator = parseInteger(den);
        if (denominator == 0) {
            throw SyntaxError("zero denominator in '" + std::string(original) + "'");
        }
        result = Rational(parseInteger(num), denominator);
        result.canonicalize();
    } else {
        std::string_view mantissa = text;
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = text.substr(0, e);
            auto expText = text.substr(e + 1);
            bool expNegative = false;
            if (!expText.empty() && (expText.front() == '-' || expText.front() == '+')) {
                expNegative = expText.front() == '-';
                expText.remove_prefix(1);
            }
            if (!allDigits(expText) || expText.size() > 6) {
                throw SyntaxError("malformed exponent in '" + std::string(original) + "'");
            }
            exponent = std::stol(std::string(expText));
            if (expNegative) {
                exponent = -exponent;
            }
        }
        std::string_view intPart = mantissa;
        std::string_view fracPart;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            intPart = mantissa.substr(0, dot);
            fracPart = mantissa.substr(dot + 1);
        }
        if ((intPart.empty() && fracPart.empty()) || (!intPart.empty() && !allDigits(intPart)) ||
            (!fracPart.empty() && !allDigits(fracPart))) {
            throw SyntaxError("malformed number '" + std::string(original) + "'");
        }
        std::string digits = std::string(intPart) + std::string(fracPart);
        result = Rational(parseInteger(digits), 1) / powerOfTen(fracPart.size());
        if (exponent > 0) {
            result *= powerOfTen(static_cast<unsigned long>(exponent));
        } else if (exponent < 0) {
            result /= powerOfTen(static_cast<unsigned long>(-exponent));
        }
        result.canonicalize();
    }
    return negative ? Rational(-result) : result;
}

std::string toString(Rational const& value) {
    return value.get_str();
}

std::string toDecimalString(Rational const& value, int significantDigits) {
    mpf_class f(value, 256);
    mp_exp_t exponent = 0;
    std::string digits = f.get_str(exponent, 10, static_cast<std::size_t>(significantDigits));
    if (digits.empty()) {
        return "0";
    }
    bool negative = digits.front() == '-';
    if (negative) {
        digits.erase(0, 1);
    }
    std::string out;
    if (exponent <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + digits;
    } else if (static_cast<std::size_t>(exponent) >= digits.size()) {
        out = digits + std::string(static_cast<std::size_t>(exponent) - digits.size(), '0');
    } else {
        out = digits.substr(0, static_cast<std::size_t>(exponent)) + "." + digits.substr(static_cast<std::size_t>(exponent));
    }
    return negative ? "-" + out : out;
}

double toDouble(Rational const& value) {
    return value.get_d();
}

Rational fromDouble(double value) {
    Rational result(value);
    result.canonicalize();
    return result;
}

}  // namespace paramlift
