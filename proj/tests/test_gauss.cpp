#include "doctest.h"
#include "tmoyal/gauss.hpp"

using namespace tmoyal;

namespace {

Poly sx(const Geometry& g, Sym s) { return Poly::sym(g.ord, s); }
Poly pc(Orders o, long n) { return Poly::constant(o, ComplexRational(n)); }

} // namespace

TEST_CASE("plane integrals of isotropic gaussians are exact pi multiples") {
    Orders o{2, 1};
    Poly one = pc(o, 1);
    CHECK(integrate(GaussianDensity(Rational(1), one)) == PiScalar(pc(o, 2)));
    CHECK(integrate(GaussianDensity(Rational(2), one)) == PiScalar(one));
    Poly x1 = Poly::sym(o, Sym::x1);
    Poly x2 = Poly::sym(o, Sym::x2);
    CHECK(integrate(GaussianDensity(Rational(2), x1 * x1 + x2 * x2)) == PiScalar(one));
    CHECK(integrate(GaussianDensity(Rational(1), x1)).is_zero());
    CHECK(integrate(GaussianDensity(Rational(1), x1 * x1 * x2)).is_zero());
    CHECK(integrate(GaussianDensity(Rational(1), x1 * x1)) == PiScalar(pc(o, 2)));
}

TEST_CASE("integration rejects parts that do not decay") {
    Orders o{2, 1};
    CHECK_THROWS_AS(integrate(GaussianDensity::from_poly(Poly::sym(o, Sym::x1))),
                    ValueError);
    CHECK(integrate(GaussianDensity(o)).is_zero());
}

TEST_CASE("pi multiples must be coordinate-free") {
    Orders o{2, 1};
    CHECK_THROWS_AS(PiScalar(Poly::sym(o, Sym::x1)), ValueError);
    CHECK_NOTHROW(PiScalar(Poly::sym(o, Sym::theta)));
}

TEST_CASE("gaussian parts reject negative weights and merge by weight") {
    Orders o{2, 1};
    GaussianDensity f(o);
    CHECK_THROWS_AS(f.add_part(Rational(-1), pc(o, 1)), ValueError);
    f.add_part(Rational(1), pc(o, 1));
    f.add_part(Rational(1), pc(o, 2));
    CHECK(f.parts().size() == 1);
    f.add_part(Rational(1), pc(o, -3));
    CHECK(f.is_zero());
}

TEST_CASE("gaussian products add their decay weights") {
    Orders o{2, 1};
    GaussianDensity f(Rational(1), pc(o, 1));
    GaussianDensity p = f * f;
    CHECK(p.parts().size() == 1);
    CHECK(p.parts().begin()->first == Rational(2));
}

TEST_CASE("flat self-star of the unit gaussian gains a curvature polynomial") {
    Geometry g = build_geometry(TwistConfig::flat({2, 1}));
    GaussianDensity f(Rational(1), g.one());
    Poly th2 = (sx(g, Sym::theta) * sx(g, Sym::theta)).scaled(ComplexRational(Rational(1, 4)));
    Poly corr = g.one() - th2 * (g.one() - g.x(1) * g.x(1) - g.x(2) * g.x(2));
    GaussianDensity expect(Rational(2), corr);
    for (StarMethod m : {StarMethod::closed, StarMethod::series})
        CHECK((star(g, f, f, m) - expect).is_zero());
    CHECK(integrate(star(g, f, f, StarMethod::closed)) == PiScalar(g.one()));
}

TEST_CASE("unit gaussian norm equals pi in the flat scalar product") {
    Geometry g = build_geometry(TwistConfig::flat({2, 1}));
    GaussianDensity f(Rational(1), g.one());
    for (StarMethod m : {StarMethod::closed, StarMethod::series})
        CHECK(inner_product(g, f, f, m) == PiScalar(g.one()));
}

TEST_CASE("weighted trace is cyclic while the plain trace is not") {
    Geometry g = build_geometry(TwistConfig::antisym({3, 1}));
    GaussianDensity f(Rational(1, 2), g.x(1));
    GaussianDensity h(Rational(1, 2), g.x(1) * g.x(2));
    for (StarMethod m : {StarMethod::closed, StarMethod::series}) {
        CyclicityResult cr = cyclicity_residual(g, f, h, m);
        CHECK(cr.weighted_comm.is_zero());
        CHECK(cr.weighted_vs_pointwise.is_zero());
        CHECK_FALSE(cr.plain_comm.is_zero());
    }
}

TEST_CASE("scalar product is hermitian on windowed complex pairs") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    Poly pa = g.x(1).scaled(ComplexRational(Rational(1), Rational(2))) + g.x(2) * g.x(2);
    Poly pb = g.one() + g.x(2).scaled(ComplexRational(Rational(0), Rational(-1)));
    GaussianDensity a(Rational(1, 2), pa);
    GaussianDensity b(Rational(1, 2), pb);
    for (StarMethod m : {StarMethod::closed, StarMethod::series}) {
        PiScalar ab = inner_product(g, a, b, m);
        PiScalar ba = inner_product(g, b, a, m);
        CHECK((ab - ba.conj()).is_zero());
    }
    PiScalar aa = inner_product(g, a, a, StarMethod::closed);
    CHECK((aa - aa.conj()).is_zero());
}

TEST_CASE("volume-weighted integration uses the coframe determinant") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    GaussianDensity f(Rational(1), g.one());
    PiScalar direct = integrate(g.det_coframe * f);
    CHECK(integrate_with_volume(g, f) == direct);
}

TEST_CASE("gaussian derivatives follow the chain rule") {
    Orders o{2, 1};
    Poly x1 = Poly::sym(o, Sym::x1);
    GaussianDensity f(Rational(2), x1);
    GaussianDensity expect(Rational(2), Poly::constant(o, ComplexRational(1)) -
                                             x1 * x1 * Poly::constant(o, ComplexRational(2)));
    CHECK((dx(f, 1) - expect).is_zero());
}
