#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace starq {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// Exact field element: a Gaussian rational re + im*i.  Plain rationals are
/// the im == 0 case.  cpp_rational keeps every fraction in lowest terms with
/// a positive denominator, so canonical form needs no extra work.
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}
    Scalar(long v) : re_(v) {}
    Scalar(BigInt v) : re_(std::move(v)) {}
    Scalar(BigRat re) : re_(std::move(re)) {}
    Scalar(BigRat re, BigRat im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(BigRat(0), BigRat(1)); }
    static Scalar ratio(long num, long den);
    /// Parses "a", "-a", "a/b".
    static Scalar parse(const std::string& text);

    const BigRat& re() const { return re_; }
    const BigRat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_negative_real() const { return im_ == 0 && re_ < 0; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    Scalar inverse() const;
    Scalar pow(unsigned k) const;

    bool operator==(const Scalar& o) const = default;

    std::string str() const;

private:
    BigRat re_{0};
    BigRat im_{0};
};

inline Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
inline Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
inline Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
inline Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// sqrt over the rationals when it exists (numerator and denominator both
/// perfect squares); used to decide solvability of level equations.
bool rational_sqrt(const BigRat& q, BigRat& out);

} // namespace starq
