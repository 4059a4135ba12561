#include "fraisse/rational.hpp"

#include "fraisse/structure.hpp"

namespace fraisse {

Rational parse_rational(const std::string& text) {
    try {
        std::size_t used = 0;
        auto slash = text.find('/');
        std::int64_t p = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash)) throw InputError("bad rational");
        std::int64_t q = 1;
        if (slash != std::string::npos) {
            std::string rest = text.substr(slash + 1);
            q = std::stoll(rest, &used);
            if (used != rest.size()) throw InputError("bad rational");
        }
        if (q == 0) throw InputError("zero denominator");
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw InputError("malformed rational '" + text + "'");
    }
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace fraisse
