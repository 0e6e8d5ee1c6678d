#include "tmoyal/action.hpp"

namespace tmoyal {

namespace {

ComplexRational action_prefactor(const TwistConfig& cfg) {
    Rational k2 = cfg.kappa * cfg.kappa;
    return ComplexRational(Rational(-1) / (k2 * Rational(4)));
}

} // namespace

PiScalar ym_action(const Geometry& g, const GaugeField<GaussianDensity>& f, StarMethod m) {
    auto Fd = faraday_down(g, f, m);
    auto Fu = raise_indices(g, Fd);
    GaussianDensity vol = GaussianDensity::from_poly(g.det_frame);
    GaussianDensity inner(g.ord);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
            inner += star(g, star(g, Fd[mu][nu], Fu[mu][nu], m), vol, m);
    return integrate_with_volume(g, inner).scaled(action_prefactor(g.cfg));
}

ActionInvariance action_invariance_residual(const Geometry& g,
                                            const GaugeField<GaussianDensity>& f,
                                            const Poly& alpha, StarMethod m) {
    auto Fd = faraday_down(g, f, m);
    auto Fu = raise_indices(g, Fd);
    GaussianDensity vol = GaussianDensity::from_poly(g.det_frame);
    GaussianDensity al = GaussianDensity::from_poly(alpha);
    ComplexRational eye = ComplexRational::i();

    GaussianDensity base(g.ord);
    GaussianDensity delta(g.ord);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            base += star(g, star(g, Fd[mu][nu], Fu[mu][nu], m), vol, m);
            GaussianDensity cd = star_comm(g, al, Fd[mu][nu], m).scaled(eye);
            GaussianDensity cu = star_comm(g, al, Fu[mu][nu], m).scaled(eye);
            delta += star(g, star(g, cd, Fu[mu][nu], m), vol, m);
            delta += star(g, star(g, Fd[mu][nu], cu, m), vol, m);
        }

    GaussianDensity obstruction = star_comm(g, al, vol, m).scaled(-eye);
    GaussianDensity via_trace(g.ord);
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
            via_trace += star(g, star(g, Fd[mu][nu], Fu[mu][nu], m), obstruction, m);

    ComplexRational pref = action_prefactor(g.cfg);
    PiScalar action = integrate_with_volume(g, base).scaled(pref);
    PiScalar residual = integrate_with_volume(g, delta).scaled(pref);
    PiScalar linked = integrate_with_volume(g, via_trace).scaled(pref);
    return ActionInvariance{action, action + residual, residual, linked};
}

} // namespace tmoyal
