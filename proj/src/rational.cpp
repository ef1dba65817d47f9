#include "singcurve/rational.hpp"

#include <cctype>
#include <ostream>

#include "singcurve/errors.hpp"

namespace singcurve {

Rational::Rational(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::from_string(const std::string& text) {
    // Validate by hand so bad input surfaces as SyntaxError, not a GMP abort.
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t num_end = digits(i);
    if (num_end == i) throw SyntaxError("expected integer", i);
    i = num_end;
    if (i < text.size()) {
        if (text[i] != '/') throw SyntaxError("unexpected character in rational", i);
        ++i;
        std::size_t den_end = digits(i);
        if (den_end == i) throw SyntaxError("expected denominator", i);
        if (den_end != text.size()) throw SyntaxError("unexpected character in rational", den_end);
        mpz_class den(text.substr(num_end + 1));
        if (den == 0) throw SyntaxError("zero denominator", num_end + 1);
    }
    mpq_class q(text);
    q.canonicalize();
    return Rational(q);
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
    return Rational(r);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw Error("division by zero rational");
    return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                            : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.v_.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.v_.get_den_mpz_t(), k);
    mpq_class r(n, d);
    r.canonicalize();
    return Rational(r);
}

std::optional<Rational> Rational::nth_root(long n) const {
    if (n < 1) throw Error("nth_root needs n >= 1");
    if (n == 1) return *this;
    if (is_zero()) return Rational(0);
    if (sign() < 0 && n % 2 == 0) return std::nullopt;
    mpz_class num = v_.get_num();
    mpz_class den = v_.get_den();
    bool flip = false;
    if (sgn(num) < 0) {
        num = -num;
        flip = true;
    }
    mpz_class rn, rd;
    bool num_ok = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    bool den_ok = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    if (!num_ok || !den_ok) return std::nullopt;
    if (flip) rn = -rn;
    mpq_class r(rn, rd);
    r.canonicalize();
    return Rational(r);
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace singcurve
