#pragma once

#include <map>

#include "tmoyal/geometry.hpp"
#include "tmoyal/star.hpp"

namespace tmoyal {

// Finite sum of parts p(x) * exp(-s (x1^2 + x2^2) / 2) with rational
// isotropic weights s >= 0.  The weight-0 part is the plain polynomial
// component; every part with positive weight is exactly integrable.
class GaussianDensity {
  public:
    using PartMap = std::map<Rational, Poly>;

    explicit GaussianDensity(Orders ord) : ord_(ord) {}
    GaussianDensity(const Rational& weight, const Poly& pref) : ord_(pref.orders()) {
        add_part(weight, pref);
    }

    static GaussianDensity from_poly(const Poly& p) { return GaussianDensity(Rational(0), p); }

    Orders orders() const { return ord_; }
    const PartMap& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }

    // Merges by weight and prunes zero parts; negative weights are
    // rejected because the algebra never produces them.
    void add_part(const Rational& weight, const Poly& p);

    GaussianDensity operator-() const;
    GaussianDensity& operator+=(const GaussianDensity& o);
    GaussianDensity& operator-=(const GaussianDensity& o);
    friend GaussianDensity operator+(GaussianDensity a, const GaussianDensity& b) { return a += b; }
    friend GaussianDensity operator-(GaussianDensity a, const GaussianDensity& b) { return a -= b; }

    friend GaussianDensity operator*(const GaussianDensity& a, const GaussianDensity& b);
    friend GaussianDensity operator*(const Poly& p, const GaussianDensity& f);

    GaussianDensity scaled(const ComplexRational& c) const;
    GaussianDensity conj() const;
    GaussianDensity drop_eps_omega() const;

    friend bool operator==(const GaussianDensity& a, const GaussianDensity& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const GaussianDensity& a, const GaussianDensity& b) { return !(a == b); }

    std::string str() const;

  private:
    Orders ord_;
    PartMap parts_;
};

GaussianDensity dx(const GaussianDensity& f, int axis);

// An exact multiple of pi: pi times a coordinate-free polynomial in the
// deformation symbols.
class PiScalar {
  public:
    explicit PiScalar(Orders ord) : coeff_(ord) {}
    explicit PiScalar(Poly coeff);

    const Poly& coeff() const { return coeff_; }
    bool is_zero() const { return coeff_.is_zero(); }

    PiScalar operator-() const { return PiScalar(-coeff_); }
    PiScalar& operator+=(const PiScalar& o) { coeff_ += o.coeff_; return *this; }
    PiScalar& operator-=(const PiScalar& o) { coeff_ -= o.coeff_; return *this; }
    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }

    PiScalar scaled(const ComplexRational& c) const { return PiScalar(coeff_.scaled(c)); }
    PiScalar conj() const { return PiScalar(coeff_.conj()); }
    PiScalar drop_eps_omega() const { return PiScalar(coeff_.drop_eps_omega()); }

    friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.coeff_ == b.coeff_; }
    friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

    std::string str() const;

  private:
    Poly coeff_;
};

// Exact Gaussian moment integration over the plane; throws ValueError
// when any surviving part carries a non-positive weight.
PiScalar integrate(const GaussianDensity& f);

// Same integral against the volume measure e d^2x.
PiScalar integrate_with_volume(const Geometry& g, const GaussianDensity& f);

struct CyclicityResult {
    PiScalar weighted_comm;   // integral of e (f*g - g*f), star product
    PiScalar weighted_vs_pointwise; // integral of e (f*g - fg)
    PiScalar plain_comm;      // integral of (f*g - g*f) without the volume factor
};

CyclicityResult cyclicity_residual(const Geometry& g, const GaussianDensity& f,
                                   const GaussianDensity& h,
                                   StarMethod m = StarMethod::closed);

// Scalar product: integral of e (conj(a) * b) * e^{-1} with both
// products taken in the star algebra.
PiScalar inner_product(const Geometry& g, const GaussianDensity& a, const GaussianDensity& b,
                       StarMethod m = StarMethod::closed);

} // namespace tmoyal
