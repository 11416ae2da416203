#include "dpc/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace dpc {

namespace {

long long to_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer literal '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad integer literal '" + s + "'");
    return value;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty weight literal");

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = to_int(text.substr(0, slash));
        long long den = to_int(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(num, den);
    }

    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(to_int(text));

    // Exact decimal: sign, integer part, fractional digits.
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw std::invalid_argument("bad decimal literal '" + text + "'");
    if (frac.size() > 15) throw std::invalid_argument("decimal literal too long '" + text + "'");

    bool negative = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
        negative = head[0] == '-';
        head = head.substr(1);
    }
    if (head.empty()) head = "0";
    if (!all_digits(head)) throw std::invalid_argument("bad decimal literal '" + text + "'");

    long long scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    long long num = to_int(head) * scale + to_int(frac);
    Rational r(num, scale);
    return negative ? -r : r;
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace dpc
