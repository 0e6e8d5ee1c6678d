#include "tmoyal/gauss.hpp"

namespace tmoyal {

void GaussianDensity::add_part(const Rational& weight, const Poly& p) {
    if (weight.sign() < 0) throw ValueError("negative window weight");
    if (p.orders() != ord_) throw OrderMismatchError("window part with different orders");
    if (p.is_zero()) return;
    auto it = parts_.find(weight);
    if (it == parts_.end()) {
        parts_.emplace(weight, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) parts_.erase(it);
}

GaussianDensity GaussianDensity::operator-() const {
    GaussianDensity r(ord_);
    for (const auto& [s, p] : parts_) r.add_part(s, -p);
    return r;
}

GaussianDensity& GaussianDensity::operator+=(const GaussianDensity& o) {
    for (const auto& [s, p] : o.parts_) add_part(s, p);
    return *this;
}

GaussianDensity& GaussianDensity::operator-=(const GaussianDensity& o) {
    for (const auto& [s, p] : o.parts_) add_part(s, -p);
    return *this;
}

GaussianDensity operator*(const GaussianDensity& a, const GaussianDensity& b) {
    GaussianDensity r(a.ord_);
    for (const auto& [s, p] : a.parts_)
        for (const auto& [t, q] : b.parts_) r.add_part(s + t, p * q);
    return r;
}

GaussianDensity operator*(const Poly& p, const GaussianDensity& f) {
    GaussianDensity r(f.ord_);
    for (const auto& [s, q] : f.parts_) r.add_part(s, p * q);
    return r;
}

GaussianDensity GaussianDensity::scaled(const ComplexRational& c) const {
    GaussianDensity r(ord_);
    for (const auto& [s, p] : parts_) r.add_part(s, p.scaled(c));
    return r;
}

GaussianDensity GaussianDensity::conj() const {
    GaussianDensity r(ord_);
    for (const auto& [s, p] : parts_) r.add_part(s, p.conj());
    return r;
}

GaussianDensity GaussianDensity::drop_eps_omega() const {
    GaussianDensity r(ord_);
    for (const auto& [s, p] : parts_) r.add_part(s, p.drop_eps_omega());
    return r;
}

std::string GaussianDensity::str() const {
    if (parts_.empty()) return "0";
    std::string out;
    for (const auto& [s, p] : parts_) {
        if (!out.empty()) out += " + ";
        if (s.is_zero())
            out += p.str();
        else
            out += "gauss(" + s.str() + ", " + p.str() + ")";
    }
    return out;
}

GaussianDensity dx(const GaussianDensity& f, int axis) {
    if (axis != 1 && axis != 2) throw AxisError("derivative axis outside {1,2}");
    Poly x = Poly::sym(f.orders(), axis == 1 ? Sym::x1 : Sym::x2);
    GaussianDensity r(f.orders());
    for (const auto& [s, p] : f.parts()) {
        Poly q = dx(p, axis);
        if (!s.is_zero()) q -= (x * p).scaled(ComplexRational(s));
        r.add_part(s, q);
    }
    return r;
}

PiScalar::PiScalar(Poly coeff) : coeff_(std::move(coeff)) {
    if (coeff_.max_deg(Sym::x1) > 0 || coeff_.max_deg(Sym::x2) > 0)
        throw ValueError("pi scalar with coordinate dependence");
}

std::string PiScalar::str() const {
    if (coeff_.is_zero()) return "0";
    if (coeff_.terms().size() == 1 && coeff_.terms().begin()->first == Monomial{} &&
        coeff_.terms().begin()->second == ComplexRational(1))
        return "pi";
    return "pi*(" + coeff_.str() + ")";
}

namespace {

// (2m-1)!! = (2m)! / (2^m m!), the even central moment factor.
Rational double_factorial_odd(unsigned m) {
    Rational r(1);
    for (unsigned j = 2 * m; j > 1; j -= 2) r *= Rational(long(j - 1));
    return r;
}

} // namespace

PiScalar integrate(const GaussianDensity& f) {
    Poly total(f.orders());
    for (const auto& [s, p] : f.parts()) {
        if (s.sign() <= 0) throw ValueError("divergent integral: window weight must be positive");
        for (const auto& [m, c] : p.terms()) {
            unsigned d1 = m.e[0];
            unsigned d2 = m.e[1];
            if ((d1 | d2) & 1) continue;
            Rational moment = double_factorial_odd(d1 / 2) * double_factorial_odd(d2 / 2) *
                              Rational(2) / s.pow(d1 / 2 + d2 / 2 + 1);
            Monomial rest = m;
            rest.e[0] = 0;
            rest.e[1] = 0;
            total.add_term(rest, c * ComplexRational(moment));
        }
    }
    return PiScalar(total);
}

PiScalar integrate_with_volume(const Geometry& g, const GaussianDensity& f) {
    return integrate(g.det_coframe * f);
}

CyclicityResult cyclicity_residual(const Geometry& g, const GaussianDensity& f,
                                   const GaussianDensity& h, StarMethod m) {
    GaussianDensity fh = star(g, f, h, m);
    GaussianDensity hf = star(g, h, f, m);
    GaussianDensity comm = fh - hf;
    return CyclicityResult{integrate_with_volume(g, comm),
                           integrate_with_volume(g, fh - f * h),
                           integrate(comm)};
}

PiScalar inner_product(const Geometry& g, const GaussianDensity& a, const GaussianDensity& b,
                       StarMethod m) {
    GaussianDensity t = star(g, a.conj(), b, m);
    GaussianDensity te = star(g, t, GaussianDensity::from_poly(g.det_frame), m);
    return integrate_with_volume(g, te);
}

} // namespace tmoyal
