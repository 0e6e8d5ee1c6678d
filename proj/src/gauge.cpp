#include "tmoyal/gauge.hpp"

namespace tmoyal {

namespace {

Poly kill(const Geometry& g, const Poly& p) {
    return g.cfg.constraint_eps_omega ? p.drop_eps_omega() : p;
}

} // namespace

DivergenceResult divergence_check(const Geometry& g, const GaugeField<Poly>& f, StarMethod m) {
    auto da = linear_variation_reduced(g, f);
    auto J = noether_reduced(g, f, da, m);
    std::array<Poly, 2> Jk{kill(g, J[0]), kill(g, J[1])};

    auto Fu = raise_indices(g, faraday_down(g, f, m));
    Rational k2 = g.cfg.kappa * g.cfg.kappa;
    ComplexRational pref(Rational(1) / (k2 * Rational(2)));

    // Divergence with the derivative applied to the field-strength
    // factor only, before any substitution.
    Poly direct(g.ord);
    for (int mu = 0; mu < 2; ++mu) {
        Poly div_f(g.ord);
        for (int b = 0; b < 2; ++b) div_f += dx(Fu[mu][b], b + 1);
        direct += g.det_coframe * (da[mu] * brace_inverse_volume(g, div_f, m));
    }
    direct = direct.scaled(pref);

    // The same quantity with the field-equation value substituted for
    // the divergence of the field strength.
    Poly substituted(g.ord);
    for (int mu = 0; mu < 2; ++mu) {
        Poly tail(g.ord);
        for (int nu = 0; nu < 2; ++nu)
            tail += (omega_trace(g.cfg, nu + 1) * Fu[nu][mu]).scaled(ComplexRational(2));
        for (int c = 1; c <= 2; ++c)
            for (int r = 1; r <= 2; ++r) {
                Poly w = omega_trace(g.cfg, c) * theta_upper(g.cfg, c, r);
                if (w.is_zero()) continue;
                for (int nu = 0; nu < 2; ++nu) {
                    tail -= (w * dx(f.down[nu], r) * Fu[nu][mu]).scaled(ComplexRational(4));
                    tail -= (w * f.down[nu] * dx(Fu[nu][mu], r)).scaled(ComplexRational(2));
                }
            }
        substituted += g.det_coframe * (da[mu] * brace_inverse_volume(g, -tail, m));
    }
    substituted = substituted.scaled(pref);

    Poly honest(g.ord);
    for (int b = 0; b < 2; ++b) honest += dx(Jk[b], b + 1);

    return DivergenceResult{Jk, kill(g, substituted), kill(g, honest) - kill(g, direct)};
}

SandwichResult unitary_sandwich(const Geometry& g, const Poly& alpha, StarMethod m) {
    ComplexRational minus_i(Rational(0), Rational(-1));
    Poly obstruction = star_comm(g, alpha, g.det_frame, m).scaled(minus_i);
    Poly contraction(g.ord);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
            contraction += g.theta_tilde[mu][nu] * dx(alpha, mu + 1) * dx(g.det_frame, nu + 1);
    return SandwichResult{obstruction, contraction, obstruction - contraction};
}

std::array<Poly, 2> lambda_divergence_residual(const Geometry& g, const GaugeField<Poly>& f,
                                               const Poly& alpha, StarMethod m) {
    auto gv = gauge_variation(g, f, alpha, m);
    std::array<Poly, 2> eps{Poly::sym(g.ord, Sym::eps1), Poly::sym(g.ord, Sym::eps2)};
    std::array<Poly, 2> res{Poly(g.ord), Poly(g.ord)};
    for (int s = 0; s < 2; ++s) {
        Poly div(g.ord);
        for (int r = 0; r < 2; ++r) {
            Poly lam(g.ord);
            if (r == s) lam += alpha.scaled(ComplexRational(Rational(1, 2)));
            for (int mu = 0; mu < 2; ++mu)
                lam -= eps[mu] * theta_upper(g.cfg, mu + 1, r + 1) * f.down[s];
            div += dx(lam, r + 1);
        }
        res[s] = gv[s].drop_eps_omega() - div;
    }
    return res;
}

PhiSectorResult phi_sector(const Geometry& g, const GaugeField<Poly>& f, const Poly& alpha,
                           StarMethod m) {
    if (g.cfg.flavor != Flavor::symmetric)
        throw FlavorError("scalar-potential sector requires the symmetric flavor");
    auto Fd = faraday_down(g, f, m);
    auto Fu = raise_indices(g, Fd);
    auto phi = phi_potentials(g).phi;
    ComplexRational eye = ComplexRational::i();

    std::array<Poly, 2> dphi{star(g, alpha, phi[0], m).scaled(eye),
                             star(g, alpha, phi[1], m).scaled(eye)};

    Poly ff(g.ord);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) ff += star(g, Fd[mu][nu], Fu[mu][nu], m);

    Mat2<Poly> brace_up{{{Poly(g.ord), Poly(g.ord)}, {Poly(g.ord), Poly(g.ord)}}};
    Mat2<Poly> brace_dn{{{Poly(g.ord), Poly(g.ord)}, {Poly(g.ord), Poly(g.ord)}}};
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            brace_up[mu][nu] = brace_inverse_volume(g, Fu[mu][nu], m);
            brace_dn[mu][nu] = brace_inverse_volume(g, Fd[mu][nu], m);
        }

    std::array<Poly, 2> eom{Poly(g.ord), Poly(g.ord)};
    for (int a = 1; a <= 2; ++a) {
        Poly t = g.det_frame * frame_apply(g, a, ff);
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
                t -= frame_apply(g, a, Fu[mu][nu]) * brace_dn[mu][nu];
        eom[a - 1] = t;
    }

    Poly ff_vol = star(g, ff, g.det_frame, m);
    Rational k2 = g.cfg.kappa * g.cfg.kappa;
    ComplexRational pref(Rational(-1) / (k2 * Rational(4)));
    std::array<Poly, 2> current{Poly(g.ord), Poly(g.ord)};
    for (int beta = 0; beta < 2; ++beta) {
        Poly t(g.ord);
        for (int b = 1; b <= 2; ++b) {
            Poly block = -star(g, ff, dphi[b - 1] * g.det_frame, m);
            block += dphi[b - 1] * ff_vol;
            for (int a = 1; a <= 2; ++a) {
                block += bilinear_series(g, BilinearKind::full, frame_apply(g, a, ff),
                                         dphi[a - 1] * g.det_frame, b);
                for (int mu = 0; mu < 2; ++mu)
                    for (int nu = 0; nu < 2; ++nu) {
                        Poly xf = dphi[a - 1] * frame_apply(g, a, Fd[mu][nu]);
                        block -= bilinear_series(g, BilinearKind::full, xf, brace_up[mu][nu], b);
                        block += bilinear_series(g, BilinearKind::even,
                                                 star(g, xf, g.det_frame, m), Fu[mu][nu], b)
                                     .scaled(ComplexRational(2));
                    }
            }
            t += (g.det_coframe * g.e_up[b - 1][beta]) * block;
        }
        current[beta] = t.scaled(pref);
    }
    return PhiSectorResult{eom, current};
}

} // namespace tmoyal
