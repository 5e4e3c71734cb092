#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "roughtopo/subset.hpp"

namespace roughtopo {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", an integer, or a decimal such as "-6.85" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    auto fail = [&]() -> Rational {
        throw PreconditionError("'" + std::string(text) + "' is not a rational number");
    };
    if (text.empty()) {
        return fail();
    }
    auto parse_int = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) {
            fail();
        }
        std::int64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') {
                fail();
            }
            if (v > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10) {
                throw CapacityError("'" + std::string(text) + "' overflows 64-bit rational arithmetic");
            }
            v = v * 10 + (c - '0');
        }
        return v;
    };

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto den = parse_int(body.substr(slash + 1));
        if (den == 0) {
            throw PreconditionError("'" + std::string(text) + "' has a zero denominator");
        }
        value = Rational(parse_int(body.substr(0, slash)), den);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) {
            return fail();
        }
        if (frac.size() > 18) {
            throw CapacityError("'" + std::string(text) + "' has too many decimal places");
        }
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        value = Rational(w) + Rational(f, scale);
    } else {
        value = Rational(parse_int(body));
    }
    return negative ? -value : value;
}

/// "3/2", "-4", "0".
inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

}  // namespace roughtopo
