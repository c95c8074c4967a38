#include "starq/scalar.hpp"

#include <ostream>
#include <sstream>

namespace starq {

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned j = 1; j <= k; ++j) {
        r *= (n - k + j);
        r /= j;
    }
    return r;
}

Scalar Scalar::ratio(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    return Scalar(BigRat(BigInt(num), BigInt(den)));
}

Scalar Scalar::parse(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw std::invalid_argument("Scalar: empty literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Scalar(BigRat(BigInt(s)));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("Scalar: zero denominator");
        return Scalar(BigRat(num, den));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("Scalar: bad literal '" + text + "'");
    }
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    BigRat re = re_ * o.re_ - im_ * o.im_;
    BigRat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
    BigRat n = re_ * re_ + im_ * im_;
    if (n == 0) throw std::domain_error("Scalar: division by zero");
    return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::pow(unsigned k) const {
    Scalar acc(1);
    Scalar base = *this;
    while (k > 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

namespace {

std::string rat_str(const BigRat& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

} // namespace

std::string Scalar::str() const {
    if (im_ == 0) return rat_str(re_);
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else {
        imag = rat_str(im_) + "i";
    }
    if (re_ == 0) return imag;
    if (im_ > 0) return rat_str(re_) + "+" + imag;
    return rat_str(re_) + imag; // imag already carries the minus sign
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

bool rational_sqrt(const BigRat& q, BigRat& out) {
    if (q < 0) return false;
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt sn = boost::multiprecision::sqrt(num);
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return false;
    out = BigRat(sn, sd);
    return true;
}

} // namespace starq
