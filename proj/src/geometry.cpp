#include "tmoyal/geometry.hpp"

#include <stdexcept>

namespace tmoyal {

namespace {

int eps2d(int mu, int nu) {
    if (mu == 1 && nu == 2) return 1;
    if (mu == 2 && nu == 1) return -1;
    return 0;
}

int delta(int a, int b) { return a == b ? 1 : 0; }

void check_index(int v, const char* what) {
    if (v < 1 || v > 2) throw AxisError(std::string(what) + " outside {1,2}");
}

} // namespace

const char* flavor_name(Flavor f) {
    return f == Flavor::antisymmetric ? "antisymmetric" : "symmetric";
}

TwistConfig TwistConfig::antisym(Orders ord) {
    TwistConfig c;
    c.flavor = Flavor::antisymmetric;
    c.orders = ord;
    c.omega_nonzero = {{1, 2, 1}, {1, 2, 2}};
    return c;
}

TwistConfig TwistConfig::symm(Orders ord) {
    TwistConfig c;
    c.flavor = Flavor::symmetric;
    c.orders = ord;
    c.omega_nonzero = {{1, 1, 1}, {1, 2, 1}, {2, 2, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}};
    return c;
}

TwistConfig TwistConfig::flat(Orders ord) {
    TwistConfig c;
    c.flavor = Flavor::antisymmetric;
    c.orders = ord;
    return c;
}

void TwistConfig::validate() const {
    if (orders.theta < 0 || orders.omega < 0)
        throw ConfigError("truncation orders must be nonnegative");
    if (kappa.is_zero()) throw ConfigError("kappa must be nonzero");
    for (const auto& t : omega_nonzero) {
        auto [a, b, mu] = t;
        if (a < 1 || a > 2 || b < 1 || b > 2 || mu < 1 || mu > 2)
            throw ConfigError("twist triple index outside {1,2}");
        if (a > b) throw ConfigError("twist triples must be stored with a <= b");
        if (flavor == Flavor::antisymmetric && a == b)
            throw FlavorError("w{aa}^mu vanishes identically in the antisymmetric flavor");
    }
}

Poly omega_coeff(const TwistConfig& cfg, int a, int b, int mu) {
    check_index(a, "twist index a");
    check_index(b, "twist index b");
    check_index(mu, "twist index mu");
    int sign = 1;
    if (a > b) {
        std::swap(a, b);
        sign = cfg.flavor == Flavor::antisymmetric ? -1 : 1;
    }
    if (cfg.flavor == Flavor::antisymmetric && a == b) return Poly(cfg.orders);
    if (!cfg.omega_nonzero.count({a, b, mu})) return Poly(cfg.orders);
    Poly p = Poly::sym(cfg.orders, omega_sym(a, b, mu));
    return sign == 1 ? p : -p;
}

Poly omega_trace(const TwistConfig& cfg, int c) {
    return omega_coeff(cfg, 1, c, 1) + omega_coeff(cfg, 2, c, 2);
}

Poly theta_upper(const TwistConfig& cfg, int mu, int nu) {
    check_index(mu, "index mu");
    check_index(nu, "index nu");
    int s = eps2d(mu, nu);
    if (s == 0) return Poly(cfg.orders);
    Poly t = Poly::sym(cfg.orders, Sym::theta);
    return s == 1 ? t : -t;
}

Poly Geometry::x(int mu) const {
    check_index(mu, "coordinate axis");
    return Poly::sym(ord, mu == 1 ? Sym::x1 : Sym::x2);
}

Geometry build_geometry(const TwistConfig& cfg) {
    cfg.validate();
    Geometry g{cfg,
               cfg.orders,
               {{{Poly(cfg.orders), Poly(cfg.orders)}, {Poly(cfg.orders), Poly(cfg.orders)}}},
               {{{Poly(cfg.orders), Poly(cfg.orders)}, {Poly(cfg.orders), Poly(cfg.orders)}}},
               Poly(cfg.orders),
               Poly(cfg.orders),
               {{{Poly(cfg.orders), Poly(cfg.orders)}, {Poly(cfg.orders), Poly(cfg.orders)}}},
               {{{Poly(cfg.orders), Poly(cfg.orders)}, {Poly(cfg.orders), Poly(cfg.orders)}}},
               {{{Poly(cfg.orders), Poly(cfg.orders)}, {Poly(cfg.orders), Poly(cfg.orders)}}}};
    for (int a = 1; a <= 2; ++a)
        for (int mu = 1; mu <= 2; ++mu) {
            Poly p = Poly::constant(g.ord, ComplexRational(delta(a, mu)));
            for (int b = 1; b <= 2; ++b) p += omega_coeff(cfg, a, b, mu) * g.x(b);
            g.e_up[a - 1][mu - 1] = p;
        }

    g.det_frame = g.e_up[0][0] * g.e_up[1][1] - g.e_up[0][1] * g.e_up[1][0];
    g.det_coframe = invert_unit(g.det_frame);

    g.e_down[0][0] = g.e_up[1][1] * g.det_coframe;
    g.e_down[0][1] = -(g.e_up[0][1] * g.det_coframe);
    g.e_down[1][0] = -(g.e_up[1][0] * g.det_coframe);
    g.e_down[1][1] = g.e_up[0][0] * g.det_coframe;

    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            Poly s = g.e_down[mu][0] * g.e_up[0][nu] + g.e_down[mu][1] * g.e_up[1][nu];
            if (!(s == Poly::constant(g.ord, ComplexRational(delta(mu, nu)))))
                throw std::logic_error("frame inverse identity failed in-ring");
        }

    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            g.g_down[mu][nu] = g.e_down[mu][0] * g.e_down[nu][0] + g.e_down[mu][1] * g.e_down[nu][1];
            g.g_up[mu][nu] = g.e_up[0][mu] * g.e_up[0][nu] + g.e_up[1][mu] * g.e_up[1][nu];
        }
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            Poly s = g.g_up[mu][0] * g.g_down[0][nu] + g.g_up[mu][1] * g.g_down[1][nu];
            if (!(s == Poly::constant(g.ord, ComplexRational(delta(mu, nu)))))
                throw std::logic_error("metric inverse identity failed in-ring");
        }

    for (int mu = 1; mu <= 2; ++mu)
        for (int nu = 1; nu <= 2; ++nu) {
            Poly t = theta_upper(cfg, mu, nu);
            for (int a = 1; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b) {
                    Poly corr = theta_upper(cfg, a, mu) * omega_coeff(cfg, a, b, nu) -
                                theta_upper(cfg, a, nu) * omega_coeff(cfg, a, b, mu);
                    t -= corr * g.x(b);
                }
            g.theta_tilde[mu - 1][nu - 1] = t;
        }

    for (int mu = 1; mu <= 2; ++mu)
        for (int nu = 1; nu <= 2; ++nu) {
            Poly factorized = Poly::sym(g.ord, Sym::theta) * g.det_frame;
            factorized = factorized.scaled(ComplexRational(Rational(eps2d(mu, nu))));
            const Poly& direct = g.theta_tilde[mu - 1][nu - 1];
            auto low = [](const Monomial& m) { return m.omega_deg() <= 1; };
            if (!(direct.filtered(low) == factorized.filtered(low)))
                throw std::logic_error("theta_tilde factorization failed at linear twist order");
            if (cfg.flavor == Flavor::antisymmetric && !(direct == factorized))
                throw std::logic_error("theta_tilde factorization failed in-ring");
        }

    return g;
}

Poly frame_apply(const Geometry& g, int a, const Poly& f) {
    check_index(a, "frame index");
    return g.e_up[a - 1][0] * f.derivative(1) + g.e_up[a - 1][1] * f.derivative(2);
}

Poly structure_constant(const Geometry& g, int a, int b, int nu) {
    check_index(a, "frame index");
    check_index(b, "frame index");
    check_index(nu, "coordinate axis");
    Poly r(g.ord);
    for (int mu = 1; mu <= 2; ++mu)
        r += g.e_up[a - 1][mu - 1] * dx(g.e_up[b - 1][nu - 1], mu) -
             g.e_up[b - 1][mu - 1] * dx(g.e_up[a - 1][nu - 1], mu);
    return r;
}

Poly jacobi_tensor(const TwistConfig& cfg, int mu, int nu, int rho) {
    Poly r(cfg.orders);
    for (int b = 1; b <= 2; ++b)
        for (int d = 1; d <= 2; ++d)
            r += theta_upper(cfg, b, mu) *
                 (theta_upper(cfg, d, nu) * omega_coeff(cfg, b, d, rho) -
                  theta_upper(cfg, d, rho) * omega_coeff(cfg, b, d, nu));
    return r;
}

Poly jacobi_tensor_cyclic(const TwistConfig& cfg, int mu, int nu, int rho) {
    return jacobi_tensor(cfg, mu, nu, rho) + jacobi_tensor(cfg, rho, mu, nu) +
           jacobi_tensor(cfg, nu, rho, mu);
}

Poly theta_tilde_cyclic_residual(const Geometry& g, int sigma, int mu, int nu) {
    check_index(sigma, "index sigma");
    check_index(mu, "index mu");
    check_index(nu, "index nu");
    Poly r(g.ord);
    for (int rho = 1; rho <= 2; ++rho) {
        r += g.theta_tilde[sigma - 1][rho - 1] * dx(g.theta_tilde[mu - 1][nu - 1], rho);
        r += g.theta_tilde[nu - 1][rho - 1] * dx(g.theta_tilde[sigma - 1][mu - 1], rho);
        r += g.theta_tilde[mu - 1][rho - 1] * dx(g.theta_tilde[nu - 1][sigma - 1], rho);
    }
    return r;
}

Poly symmetrize_twist(const Poly& p) {
    std::map<Sym, Poly> bind;
    bind.emplace(Sym::w11_2, Poly::sym(p.orders(), Sym::w12_1));
    bind.emplace(Sym::w22_1, Poly::sym(p.orders(), Sym::w12_2));
    return substitute_syms(p, bind);
}

PhiData phi_potentials(const Geometry& g) {
    if (g.cfg.flavor != Flavor::symmetric)
        throw FlavorError("scalar potentials exist only for the symmetric flavor");
    PhiData d{{Poly(g.ord), Poly(g.ord)},
              {{{Poly(g.ord), Poly(g.ord)}, {Poly(g.ord), Poly(g.ord)}}},
              {{{Poly(g.ord), Poly(g.ord)}, {Poly(g.ord), Poly(g.ord)}}},
              {{{Poly(g.ord), Poly(g.ord)}, {Poly(g.ord), Poly(g.ord)}}},
              {{{Poly(g.ord), Poly(g.ord)}, {Poly(g.ord), Poly(g.ord)}}}};
    ComplexRational half(Rational(1, 2));
    for (int a = 1; a <= 2; ++a) {
        Poly phi = g.x(a);
        for (int b = 1; b <= 2; ++b)
            for (int mu = 1; mu <= 2; ++mu)
                phi -= (omega_coeff(g.cfg, a, b, mu) * g.x(b) * g.x(mu)).scaled(half);
        d.phi[a - 1] = phi;
    }
    for (int mu = 1; mu <= 2; ++mu)
        for (int a = 1; a <= 2; ++a) {
            Poly r = g.e_down[mu - 1][a - 1] - dx(d.phi[a - 1], mu);
            d.grad_residual[mu - 1][a - 1] = r;
            d.grad_residual_sym[mu - 1][a - 1] = symmetrize_twist(r);
        }
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            Poly r = frame_apply(g, a, d.phi[b - 1]) -
                     Poly::constant(g.ord, ComplexRational(delta(a, b)));
            d.frame_residual[a - 1][b - 1] = r;
            d.frame_residual_sym[a - 1][b - 1] = symmetrize_twist(r);
        }
    return d;
}

} // namespace tmoyal
