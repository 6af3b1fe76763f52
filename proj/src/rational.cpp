#include "skeletonkit/rational.hpp"

#include <cctype>
#include <ostream>

namespace skeletonkit {

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

namespace {

long long parse_ll(const std::string& s, const std::string& whole) {
    if (s.empty()) throw domain_error("bad-rational", "empty component in rational '" + whole + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw domain_error("bad-rational", "sign without digits in '" + whole + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw domain_error("bad-rational", "non-digit in rational '" + whole + "'");
    try {
        return std::stoll(s);
    } catch (const std::exception&) {
        throw domain_error("bad-rational", "integer out of range in '" + whole + "'");
    }
}

} // namespace

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_ll(s, s));
    long long n = parse_ll(s.substr(0, slash), s);
    long long d = parse_ll(s.substr(slash + 1), s);
    if (d == 0) throw domain_error("bad-rational", "zero denominator in '" + s + "'");
    return Rational(n, d);
}

LogValue LogValue::parse(const std::string& s) {
    if (s == "-inf") return LogValue::minus_inf();
    return LogValue(Rational::parse(s));
}

} // namespace skeletonkit
