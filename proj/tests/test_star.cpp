#include "doctest.h"
#include "tmoyal/planewave.hpp"
#include "tmoyal/star.hpp"

using namespace tmoyal;

namespace {

Poly sx(const Geometry& g, Sym s) { return Poly::sym(g.ord, s); }

ComplexRational cpow(const ComplexRational& c, unsigned n) {
    ComplexRational out(1);
    for (unsigned k = 0; k < n; ++k) out = out * c;
    return out;
}

} // namespace

TEST_CASE("frame fields act through the frame components") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        for (int a = 1; a <= 2; ++a)
            for (int nu = 1; nu <= 2; ++nu)
                CHECK((vf_apply(g, a, g.x(nu)) - g.e_up[a - 1][nu - 1]).is_zero());
    }
}

TEST_CASE("first tower level carries the frame determinant") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    auto tower = delta_tower(g, g.x(1), g.x(2), 1);
    Poly expect = (sx(g, Sym::theta) * g.det_frame)
                      .scaled(ComplexRational(Rational(0), Rational(1, 2)));
    CHECK((tower[0] - g.x(1) * g.x(2)).is_zero());
    CHECK((tower[1] - expect).is_zero());
}

TEST_CASE("coordinate star product truncates after the first level") {
    Geometry g = build_geometry(TwistConfig::antisym({3, 1}));
    Poly expect = g.x(1) * g.x(2) + (sx(g, Sym::theta) * g.det_frame)
                                        .scaled(ComplexRational(Rational(0), Rational(1, 2)));
    CHECK((star_series(g, g.x(1), g.x(2)) - expect).is_zero());
    CHECK((star_closed(g, g.x(1), g.x(2)) - expect).is_zero());
}

TEST_CASE("flat self-star of the coordinate product gains a quarter square") {
    Geometry g = build_geometry(TwistConfig::flat({2, 1}));
    Poly f = g.x(1) * g.x(2);
    Poly expect = f * f + (sx(g, Sym::theta) * sx(g, Sym::theta))
                              .scaled(ComplexRational(Rational(1, 4)));
    CHECK((star_closed(g, f, f) - expect).is_zero());
    CHECK((star_series(g, f, f) - expect).is_zero());
    CHECK((moyal_flat_direct(g.ord, f, f) - expect).is_zero());
}

TEST_CASE("the constant function is a two-sided star unit") {
    Geometry g = build_geometry(TwistConfig::antisym({3, 1}));
    Poly f = g.x(1) * g.x(1) + g.x(2).scaled(ComplexRational(Rational(-2)));
    for (StarMethod m : {StarMethod::closed, StarMethod::series}) {
        CHECK((star(g, g.one(), f, m) - f).is_zero());
        CHECK((star(g, f, g.one(), m) - f).is_zero());
    }
}

TEST_CASE("coordinate commutators reproduce the deformation matrix") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        for (StarMethod m : {StarMethod::closed, StarMethod::series})
            for (int mu = 1; mu <= 2; ++mu)
                for (int nu = 1; nu <= 2; ++nu)
                    CHECK(coord_comm_residual(g, mu, g.x(nu), m).is_zero());
    }
}

TEST_CASE("derivatives fail the product rule by the frozen twist defect") {
    Geometry gf = build_geometry(TwistConfig::flat({2, 1}));
    CHECK(leibniz_residual(gf, gf.x(1), gf.x(2), 1, StarMethod::closed).is_zero());
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    Poly defect = leibniz_residual(g, g.x(1), g.x(2), 1, StarMethod::closed);
    Poly expect = (sx(g, Sym::theta) * sx(g, Sym::w12_2))
                      .scaled(ComplexRational(Rational(0), Rational(-1, 2)));
    CHECK((defect - expect).is_zero());
}

TEST_CASE("series and closed forms agree at first twist order") {
    Geometry g = build_geometry(TwistConfig::antisym({4, 1}));
    Poly f = g.x(1) * g.x(1) * g.x(2) - g.x(2) * g.x(2);
    Poly h = g.x(1) * g.x(2) * g.x(2) + g.x(1);
    CHECK((star_series(g, f, h) - star_closed(g, f, h)).is_zero());
}

TEST_CASE("associativity fails by the frozen frame-commutator obstruction") {
    Geometry g = build_geometry(TwistConfig::antisym({3, 1}));
    Poly f = g.x(1) * g.x(1);
    Poly h = g.x(1) * g.x(2);
    Poly k = g.x(2) * g.x(2) - g.x(1);
    Poly th = sx(g, Sym::theta);
    Poly expect = th * th * sx(g, Sym::w12_1) * g.x(1) * g.x(2) * g.x(2) +
                  th * th * sx(g, Sym::w12_2) * g.x(1) * g.x(1) * g.x(2) +
                  (th * th * th * sx(g, Sym::w12_1) * g.x(2)).scaled(ComplexRational::i()) +
                  (th * th * th * sx(g, Sym::w12_2) * g.x(1)).scaled(ComplexRational::i());
    for (StarMethod m : {StarMethod::closed, StarMethod::series}) {
        Poly res = associativity_residual(g, f, h, k, m);
        CHECK((res - expect).is_zero());
        CHECK(res.filtered([](const Monomial& mo) { return mo.omega_deg() == 0; }).is_zero());
    }
}

TEST_CASE("the associator starts with the predicted second-order obstruction") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        Poly f = g.x(1) * g.x(1) - g.x(2);
        Poly h = g.x(1) * g.x(2) + g.x(1);
        Poly k = g.x(2) * g.x(2) + g.x(1) * g.x(2);
        Poly pred = associativity_obstruction(g, f, h, k);
        CHECK(!pred.is_zero());
        CHECK((associativity_residual(g, f, h, k, StarMethod::closed) - pred).is_zero());
    }
}

TEST_CASE("the symmetric-flavor series product associates at first twist order") {
    Geometry g = build_geometry(TwistConfig::symm({3, 1}));
    Poly f = g.x(1) * g.x(1) - g.x(2);
    Poly h = g.x(1) * g.x(2) + g.x(1);
    Poly k = g.x(2) * g.x(2) + g.x(1) * g.x(2);
    CHECK(associativity_residual(g, f, h, k, StarMethod::series).is_zero());
    CHECK(!associativity_residual(g, f, h, k, StarMethod::closed).is_zero());
}

TEST_CASE("symmetric-flavor methods split by a frozen half-weight gap") {
    Geometry g = build_geometry(TwistConfig::symm({2, 1}));
    Poly p = g.x(1) * g.x(2);
    Poly gap = star_series(g, p, p) - star_closed(g, p, p);
    Poly th = sx(g, Sym::theta);
    Poly expect = (th * th * (sx(g, Sym::w12_1) * g.x(2) + sx(g, Sym::w12_2) * g.x(1)))
                      .scaled(ComplexRational(Rational(1, 2)));
    CHECK((gap - expect).is_zero());
}

TEST_CASE("star brackets satisfy the cyclic triple identity") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    Poly f = g.x(1) * g.x(1);
    Poly h = g.x(2);
    Poly k = g.x(1) * g.x(2);
    for (StarMethod m : {StarMethod::closed, StarMethod::series})
        CHECK(jacobi_star_cyclic(g, f, h, k, m).is_zero());
}

TEST_CASE("tower levels flip sign under argument exchange") {
    Geometry g = build_geometry(TwistConfig::antisym({4, 1}));
    Poly u = g.x(1) * g.x(1) * g.x(2);
    Poly v = g.x(2) * g.x(2) + g.x(1);
    auto tu = delta_tower(g, u, v, 4);
    auto tv = delta_tower(g, v, u, 4);
    for (std::size_t m = 0; m < tu.size(); ++m) {
        ComplexRational sign((m & 1) ? Rational(-1) : Rational(1));
        CHECK((tu[m] - tv[m].scaled(sign)).is_zero());
    }
}

TEST_CASE("one-sided expansions reconstruct the star product and brackets") {
    Geometry g = build_geometry(TwistConfig::antisym({4, 1}));
    Poly u = g.x(1) * g.x(2) + g.x(2) * g.x(2);
    Poly v = g.x(1) * g.x(1) - g.x(2);
    CHECK((star_via_bilinear(g, u, v) - star_series(g, u, v)).is_zero());
    CHECK((star_via_bilinear(g, u, v) - star_closed(g, u, v)).is_zero());
    CHECK((comm_via_bilinear(g, u, v) - star_comm(g, u, v, StarMethod::series)).is_zero());
    CHECK((acomm_via_bilinear(g, u, v) - star_acomm(g, u, v, StarMethod::series)).is_zero());
}

TEST_CASE("the reconstruction follows the operator-string form in both flavors") {
    for (TwistConfig cfg : {TwistConfig::antisym({3, 1}), TwistConfig::symm({3, 1})}) {
        Geometry g = build_geometry(cfg);
        Poly u = g.x(1) * g.x(2) + g.x(2) * g.x(2);
        Poly v = g.x(1) * g.x(1) - g.x(2);
        CHECK((star_via_bilinear(g, u, v) - star_series(g, u, v)).is_zero());
    }
    Geometry gs = build_geometry(TwistConfig::symm({3, 1}));
    Poly f = gs.x(1) * gs.x(2);
    CHECK(!(star_via_bilinear(gs, f, f) - star_closed(gs, f, f)).is_zero());
}

TEST_CASE("exchange identity ties the two one-sided expansions to the odd part") {
    Geometry g = build_geometry(TwistConfig::antisym({4, 1}));
    Poly u = g.x(1) * g.x(1) * g.x(2) - g.x(2);
    Poly v = g.x(1) + g.x(2) * g.x(2);
    auto tu = delta_tower(g, u, v, 4);
    auto tv = delta_tower(g, v, u, 4);
    Poly t_uv(g.ord);
    Poly t_vu(g.ord);
    Poly s_odd(g.ord);
    for (std::size_t m = 0; m < tu.size(); ++m) {
        ComplexRational c(Rational::inverse_factorial(unsigned(m + 1)));
        t_uv += tu[m].scaled(c);
        t_vu += tv[m].scaled(c);
        if (m & 1) s_odd += tu[m].scaled(c);
    }
    CHECK(((t_uv - t_vu) - s_odd.scaled(ComplexRational(2))).is_zero());
}

TEST_CASE("plane waves star-multiply into a truncated symplectic phase") {
    Geometry g = build_geometry(TwistConfig::antisym({4, 1}));
    PlaneWaveSum u(PlaneWave({Rational(1), Rational(0)}, g.one()));
    PlaneWaveSum v(PlaneWave({Rational(0), Rational(1)}, g.one()));
    PlaneWaveSum w = plane_wave_star(g, u, v);
    Poly pref(g.ord);
    ComplexRational z(Rational(0), Rational(-1, 2));
    for (unsigned n = 0; n <= unsigned(g.ord.theta); ++n)
        pref += (sx(g, Sym::theta) * g.det_frame)
                    .pow(n)
                    .scaled(cpow(z, n) * ComplexRational(Rational::inverse_factorial(n)));
    PlaneWaveSum expect(PlaneWave({Rational(1), Rational(1)}, pref));
    CHECK((w - expect).is_zero());
}

TEST_CASE("plane-wave associator carries the cross-phase obstruction") {
    // For pure waves with vectors k, q, p the two bracketings differ by
    // the constant-phase factor (i/4) theta^2 (k eps p)(w eps q) times
    // the truncated flat phase exponential, on the summed carrier.
    Geometry g = build_geometry(TwistConfig::antisym({3, 1}));
    std::array<Rational, 2> k{Rational(1, 2), Rational(-1)};
    std::array<Rational, 2> q{Rational(1, 3), Rational(1)};
    std::array<Rational, 2> p{Rational(-2), Rational(1, 2)};
    PlaneWaveSum a(PlaneWave(k, g.one()));
    PlaneWaveSum b(PlaneWave(q, g.one()));
    PlaneWaveSum c(PlaneWave(p, g.one()));
    PlaneWaveSum lhs = plane_wave_star(g, plane_wave_star(g, a, b), c);
    PlaneWaveSum rhs = plane_wave_star(g, a, plane_wave_star(g, b, c));
    PlaneWaveSum resid = lhs - rhs;
    CHECK(!resid.is_zero());

    auto eps = [](const std::array<Rational, 2>& u, const std::array<Rational, 2>& v) {
        return u[0] * v[1] - u[1] * v[0];
    };
    Rational kp = eps(k, p);
    Rational total_phase = eps(k, q) + kp + eps(q, p);
    Poly womega = (sx(g, Sym::w12_1).scaled(ComplexRational(q[0])) +
                   sx(g, Sym::w12_2).scaled(ComplexRational(q[1])))
                      .scaled(ComplexRational(Rational(-1)));
    Poly th = sx(g, Sym::theta);
    Poly pref = (th * th * womega).scaled(ComplexRational(Rational(0), kp / Rational(4)));
    Poly tail = g.one() + th.scaled(ComplexRational(Rational(0), -(total_phase / Rational(2))));
    std::array<Rational, 2> carrier{k[0] + q[0] + p[0], k[1] + q[1] + p[1]};
    PlaneWaveSum expect(PlaneWave(carrier, pref * tail));
    CHECK((resid - expect).is_zero());
}

TEST_CASE("zero-carrier plane waves star like their polynomial prefactors") {
    Geometry g = build_geometry(TwistConfig::antisym({3, 1}));
    Poly f = g.x(1) * g.x(1) - g.x(2).scaled(ComplexRational(Rational(2)));
    Poly h = g.x(1) * g.x(2) + g.x(2) * g.x(2);
    PlaneWaveSum pf = PlaneWaveSum::from_poly(f);
    PlaneWaveSum ph = PlaneWaveSum::from_poly(h);
    PlaneWaveSum prod = plane_wave_star(g, pf, ph);
    PlaneWaveSum expect = PlaneWaveSum::from_poly(star_closed(g, f, h));
    CHECK((prod - expect).is_zero());
}

TEST_CASE("plane waves reject the symmetric flavor") {
    Geometry g = build_geometry(TwistConfig::symm({2, 1}));
    PlaneWaveSum a(PlaneWave({Rational(1), Rational(0)}, g.one()));
    CHECK_THROWS_AS(plane_wave_star(g, a, a), FlavorError);
}

TEST_CASE("star exponential starts from the identity") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    Poly alpha = g.x(1) + g.x(2).scaled(ComplexRational(Rational(2)));
    for (StarMethod m : {StarMethod::closed, StarMethod::series}) {
        CHECK((star_exponential(g, g.zero(), 4, m) - g.one()).is_zero());
        Poly first = star_exponential(g, alpha, 1, m);
        Poly expect = g.one() + alpha.scaled(ComplexRational::i());
        CHECK((first - expect).is_zero());
    }
}

TEST_CASE("flat oracle matches both star forms on a dense pair") {
    Geometry g = build_geometry(TwistConfig::flat({6, 1}));
    Poly f = (g.x(1) + g.x(2)).pow(3) - g.x(1) * g.x(2);
    Poly h = (g.x(1) - g.x(2)).pow(4) + g.x(2);
    Poly oracle = moyal_flat_direct(g.ord, f, h);
    CHECK((star_closed(g, f, h) - oracle).is_zero());
    CHECK((star_series(g, f, h) - oracle).is_zero());
}
