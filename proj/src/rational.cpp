#include "piclat/rational.hpp"

#include "piclat/errors.hpp"

#include <cctype>
#include <ostream>

namespace piclat {

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational& Rational::operator/=(const Rational& o) {
    if (o.v_ == 0)
        throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
}

namespace {

bool valid_integer_token(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ParseError("bad rational literal \"" + text + "\"");
    if (num[0] == '+')
        num.erase(0, 1); // mpz rejects an explicit plus
    if (den[0] == '+')
        den.erase(0, 1);
    mpz_class d(den);
    if (d == 0)
        throw ParseError("bad rational literal \"" + text + "\": zero denominator");
    return Rational(mpz_class(num), d);
}

std::string Rational::str() const {
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational abs(const Rational& r) {
    return r.is_negative() ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace piclat
