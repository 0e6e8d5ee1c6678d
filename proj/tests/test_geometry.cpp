#include "doctest.h"
#include "tmoyal/errors.hpp"
#include "tmoyal/geometry.hpp"

using namespace tmoyal;

namespace {

Poly sx(const Geometry& g, Sym s) { return Poly::sym(g.ord, s); }

} // namespace

TEST_CASE("antisymmetric frame components are coordinate-linear") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    CHECK((g.e_up[0][0] - (g.one() + sx(g, Sym::w12_1) * g.x(2))).is_zero());
    CHECK((g.e_up[0][1] - sx(g, Sym::w12_2) * g.x(2)).is_zero());
    CHECK((g.e_up[1][0] + sx(g, Sym::w12_1) * g.x(1)).is_zero());
    CHECK((g.e_up[1][1] - (g.one() - sx(g, Sym::w12_2) * g.x(1))).is_zero());
}

TEST_CASE("antisymmetric frame determinant is exactly linear") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 2}));
    Poly expect = g.one() + sx(g, Sym::w12_1) * g.x(2) - sx(g, Sym::w12_2) * g.x(1);
    CHECK((g.det_frame - expect).is_zero());
}

TEST_CASE("symmetric frame determinant collects both traces") {
    Geometry g = build_geometry(TwistConfig::symm({2, 1}));
    Poly expect = g.one() + (sx(g, Sym::w11_1) + sx(g, Sym::w12_2)) * g.x(1) +
                  (sx(g, Sym::w22_2) + sx(g, Sym::w12_1)) * g.x(2);
    CHECK((g.det_frame - expect).is_zero());
}

TEST_CASE("coframe and metric are exact in-ring inverses") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        CHECK((g.det_frame * g.det_coframe - g.one()).is_zero());
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Poly frame_pair = g.zero();
                Poly metric_pair = g.zero();
                for (int a = 0; a < 2; ++a) {
                    frame_pair += g.e_down[mu][a] * g.e_up[a][nu];
                    metric_pair += g.g_up[mu][a] * g.g_down[a][nu];
                }
                Poly delta = mu == nu ? g.one() : g.zero();
                CHECK((frame_pair - delta).is_zero());
                CHECK((metric_pair - delta).is_zero());
            }
    }
}

TEST_CASE("deformation matrix factorizes through the frame determinant") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        CHECK((g.theta_tilde[0][1] - sx(g, Sym::theta) * g.det_frame).is_zero());
        CHECK((g.theta_tilde[0][1] + g.theta_tilde[1][0]).is_zero());
        CHECK(g.theta_tilde[0][0].is_zero());
        CHECK(g.theta_tilde[1][1].is_zero());
    }
}

TEST_CASE("volume factor derivative reproduces the negative twist trace") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        for (int b = 1; b <= 2; ++b)
            CHECK((dx(g.det_coframe, b) + omega_trace(cfg, b)).is_zero());
    }
}

TEST_CASE("frame commutator matches the structure coefficients") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        Poly f = g.x(1) * g.x(1) * g.x(2) + g.x(2);
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                Poly comm = frame_apply(g, a, frame_apply(g, b, f)) -
                            frame_apply(g, b, frame_apply(g, a, f));
                for (int nu = 1; nu <= 2; ++nu)
                    comm -= structure_constant(g, a, b, nu) * dx(f, nu);
                CHECK(comm.is_zero());
            }
    }
}

TEST_CASE("single-triple obstruction is nonzero but its cyclic sum cancels") {
    TwistConfig cfg = TwistConfig::antisym({2, 1});
    Geometry g = build_geometry(cfg);
    Poly expect = sx(g, Sym::theta) * sx(g, Sym::theta) * sx(g, Sym::w12_1);
    CHECK((jacobi_tensor(cfg, 1, 2, 1) - expect).is_zero());
    for (int mu = 1; mu <= 2; ++mu)
        for (int nu = 1; nu <= 2; ++nu)
            for (int rho = 1; rho <= 2; ++rho)
                CHECK(jacobi_tensor_cyclic(cfg, mu, nu, rho).is_zero());
}

TEST_CASE("deformation matrix satisfies the cyclic derivative identity") {
    for (TwistConfig cfg : {TwistConfig::antisym({2, 1}), TwistConfig::symm({2, 1})}) {
        Geometry g = build_geometry(cfg);
        for (int s = 1; s <= 2; ++s)
            for (int mu = 1; mu <= 2; ++mu)
                for (int nu = 1; nu <= 2; ++nu)
                    CHECK(theta_tilde_cyclic_residual(g, s, mu, nu).is_zero());
    }
}

TEST_CASE("scalar potentials exist for the symmetric flavor") {
    Geometry g = build_geometry(TwistConfig::symm({2, 1}));
    PhiData pd = phi_potentials(g);
    Poly expect_phi1 =
        g.x(1) - (sx(g, Sym::w11_1) * g.x(1) * g.x(1) + sx(g, Sym::w11_2) * g.x(1) * g.x(2) +
                  sx(g, Sym::w12_1) * g.x(2) * g.x(1) + sx(g, Sym::w12_2) * g.x(2) * g.x(2))
                     .scaled(ComplexRational(Rational(1, 2)));
    CHECK((pd.phi[0] - expect_phi1).is_zero());
    for (int mu = 0; mu < 2; ++mu)
        for (int a = 0; a < 2; ++a) {
            CHECK(pd.grad_residual_sym[mu][a].is_zero());
            CHECK(pd.frame_residual_sym[mu][a].is_zero());
        }
    bool generic_nonzero = false;
    for (int mu = 0; mu < 2; ++mu)
        for (int a = 0; a < 2; ++a)
            if (!pd.grad_residual[mu][a].is_zero()) generic_nonzero = true;
    CHECK(generic_nonzero);
}

TEST_CASE("scalar potentials reject the antisymmetric flavor") {
    Geometry g = build_geometry(TwistConfig::antisym({2, 1}));
    CHECK_THROWS_AS(phi_potentials(g), FlavorError);
}

TEST_CASE("total-symmetry identification folds the off-pattern slots") {
    Orders o{2, 1};
    CHECK((symmetrize_twist(Poly::sym(o, Sym::w11_2)) - Poly::sym(o, Sym::w12_1)).is_zero());
    CHECK((symmetrize_twist(Poly::sym(o, Sym::w22_1)) - Poly::sym(o, Sym::w12_2)).is_zero());
    Poly untouched = Poly::sym(o, Sym::w12_1) * Poly::sym(o, Sym::x1);
    CHECK((symmetrize_twist(untouched) - untouched).is_zero());
}

TEST_CASE("config validation rejects bad orders and zero coupling") {
    TwistConfig bad = TwistConfig::antisym({-1, 1});
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    TwistConfig zero_kappa = TwistConfig::antisym({2, 1});
    zero_kappa.kappa = Rational(0);
    CHECK_THROWS_AS(zero_kappa.validate(), ConfigError);
}

TEST_CASE("twist support can be pruned per coefficient") {
    TwistConfig cfg = TwistConfig::antisym({2, 1});
    cfg.omega_nonzero = {OmegaTriple{1, 2, 1}};
    Geometry g = build_geometry(cfg);
    CHECK((g.det_frame - (g.one() + sx(g, Sym::w12_1) * g.x(2))).is_zero());
}
