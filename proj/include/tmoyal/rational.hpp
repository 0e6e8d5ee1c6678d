#pragma once

#include <gmpxx.h>

#include <string>

#include "tmoyal/errors.hpp"

namespace tmoyal {

// Arbitrary-precision rational number.  Every value is kept in lowest
// terms with a positive denominator, so equality is plain value equality.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den) {
        if (den == 0) throw ValueError("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Parses "123", "-123", or "p/q".
    static Rational parse(const std::string& text) {
        mpq_class v;
        if (v.set_str(text, 10) != 0) throw ValueError("bad rational literal: " + text);
        if (v.get_den() == 0) throw ValueError("rational with zero denominator: " + text);
        v.canonicalize();
        return Rational(v);
    }

    static Rational factorial(unsigned n) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        return Rational(mpq_class(f));
    }

    static Rational inverse_factorial(unsigned n) { return Rational(1) / factorial(n); }

    static Rational binomial(unsigned n, unsigned k) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), n, k);
        return Rational(mpq_class(b));
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw ValueError("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational pow(unsigned n) const {
        mpq_class r(1);
        mpq_class base = v_;
        for (unsigned k = n; k > 0; k >>= 1) {
            if (k & 1) r *= base;
            base *= base;
        }
        return Rational(r);
    }

    // "p" for integers, "p/q" otherwise.
    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

// Gaussian rational re + im*i.  This is the coefficient field of the
// whole engine; no floating point appears anywhere.
class ComplexRational {
  public:
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational r) : re(r) {}
    ComplexRational(long n) : re(n) {}
    ComplexRational(Rational r, Rational i) : re(r), im(i) {}

    static ComplexRational i() { return ComplexRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_imaginary() const { return re.is_zero() && !im.is_zero(); }

    ComplexRational conj() const { return ComplexRational(re, -im); }
    ComplexRational times_i() const { return ComplexRational(-im, re); }

    ComplexRational operator-() const { return ComplexRational(-re, -im); }
    ComplexRational& operator+=(const ComplexRational& o) { re += o.re; im += o.im; return *this; }
    ComplexRational& operator-=(const ComplexRational& o) { re -= o.re; im -= o.im; return *this; }
    ComplexRational& operator*=(const ComplexRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }
    ComplexRational& operator/=(const ComplexRational& o) {
        Rational n = o.re * o.re + o.im * o.im;
        if (n.is_zero()) throw ValueError("division by zero");
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = r;
        im = i;
        return *this;
    }

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }

    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

    // "3", "-1/2", "i", "-i", "2/3*i", or "(a+b*i)" for mixed values.
    // The mixed form is parenthesized so it can stand as a factor.
    std::string str() const {
        if (is_zero()) return "0";
        if (im.is_zero()) return re.str();
        std::string ipart;
        if (im.is_one()) ipart = "i";
        else if (im == Rational(-1)) ipart = "-i";
        else ipart = im.str() + "*i";
        if (re.is_zero()) return ipart;
        std::string s = "(" + re.str();
        if (im.sign() > 0) s += "+" + ipart;
        else s += "-" + (ipart[0] == '-' ? ipart.substr(1) : ipart);
        return s + ")";
    }
  };

} // namespace tmoyal
