#include "tmoyal/star.hpp"

namespace tmoyal {

const char* method_name(StarMethod m) {
    return m == StarMethod::closed ? "closed" : "series";
}

Poly coord_comm_residual(const Geometry& g, int mu, const Poly& f, StarMethod m) {
    Poly lhs = star_comm(g, g.x(mu), f, m);
    Poly rhs(g.ord);
    for (int s = 1; s <= 2; ++s) rhs += g.theta_tilde[mu - 1][s - 1] * dx(f, s);
    return lhs - rhs.scaled(ComplexRational::i());
}

Poly associativity_obstruction(const Geometry& g, const Poly& f, const Poly& h, const Poly& k) {
    auto covector = [&](int mu) {
        return dx(g.det_frame, mu).filtered([](const Monomial& mo) { return mo.x_deg() == 0; });
    };
    Poly w1 = covector(1);
    Poly w2 = covector(2);
    Poly jac = dx(f, 1) * dx(k, 2) - dx(f, 2) * dx(k, 1);
    Poly drag = w1 * dx(h, 2) - w2 * dx(h, 1);
    Poly th = Poly::sym(g.ord, Sym::theta);
    return (th * th * jac * drag).scaled(ComplexRational(Rational(-1, 4)));
}

Poly star_exponential(const Geometry& g, const Poly& alpha, unsigned kmax, StarMethod m) {
    Poly total = Poly::constant(g.ord, ComplexRational(1));
    Poly power = Poly::constant(g.ord, ComplexRational(1));
    ComplexRational ik(1);
    for (unsigned k = 1; k <= kmax; ++k) {
        power = star(g, power, alpha, m);
        ik = ik.times_i();
        total += power.scaled(ik * ComplexRational(Rational::inverse_factorial(k)));
    }
    return total;
}

Poly moyal_flat_direct(Orders ord, const Poly& f, const Poly& h) {
    Poly total(ord);
    ComplexRational half_i(Rational(0), Rational(1, 2));
    Poly th = Poly::sym(ord, Sym::theta);
    for (int n = 0; n <= ord.theta; ++n) {
        Poly level(ord);
        for (unsigned long s = 0; s < (1ul << n); ++s) {
            Poly lf = f;
            Poly rh = h;
            for (int pos = 0; pos < n; ++pos) {
                bool swapped = (s >> pos) & 1;
                lf = lf.derivative(swapped ? 2 : 1);
                rh = rh.derivative(swapped ? 1 : 2);
            }
            Poly prod = lf * rh;
            if (__builtin_popcountl(s) & 1)
                level -= prod;
            else
                level += prod;
        }
        ComplexRational c(Rational::inverse_factorial(unsigned(n)));
        for (int k = 0; k < n; ++k) c *= half_i;
        total += (th.pow(unsigned(n)) * level).scaled(c);
    }
    return total;
}

} // namespace tmoyal
