#pragma once

#include <array>
#include <set>

#include "tmoyal/poly.hpp"

namespace tmoyal {

enum class Flavor { antisymmetric, symmetric };

const char* flavor_name(Flavor f);

using OmegaTriple = std::array<int, 3>; // (a, b, mu), stored with a <= b

// Everything a run needs to fix the deformation: flavor of the twist
// coefficients, truncation orders, coupling, which coefficients are
// switched on, and whether eps * w products are treated as negligible.
struct TwistConfig {
    Flavor flavor = Flavor::antisymmetric;
    Orders orders{};
    Rational kappa = Rational(1);
    std::set<OmegaTriple> omega_nonzero;
    bool constraint_eps_omega = false;

    static TwistConfig antisym(Orders ord = {});
    static TwistConfig symm(Orders ord = {});
    static TwistConfig flat(Orders ord = {}); // all twist coefficients off

    // Throws FlavorError / ConfigError on inadmissible data.
    void validate() const;
};

// The symbol (or its negative, or zero) standing for w{ab}^mu once the
// flavor symmetry and the switched-on set are applied.  Accepts any
// index order; a > b resolves by flavor.
Poly omega_coeff(const TwistConfig& cfg, int a, int b, int mu);

// Trace shorthand: sum over a of w{a c}^a.
Poly omega_trace(const TwistConfig& cfg, int c);

// Constant matrix Theta^{mu nu} = theta * eps^{mu nu}.
Poly theta_upper(const TwistConfig& cfg, int mu, int nu);

struct Geometry {
    TwistConfig cfg;
    Orders ord;
    std::array<std::array<Poly, 2>, 2> e_up;   // e_up[a][mu], frame components
    std::array<std::array<Poly, 2>, 2> e_down; // e_down[mu][a], exact in-ring inverse
    Poly det_frame;   // det of e_up; the inverse volume factor
    Poly det_coframe; // det of e_down; the volume factor, det_frame inverted in-ring
    std::array<std::array<Poly, 2>, 2> g_down;
    std::array<std::array<Poly, 2>, 2> g_up;
    std::array<std::array<Poly, 2>, 2> theta_tilde; // coordinate-space deformation matrix

    Poly zero() const { return Poly(ord); }
    Poly one() const { return Poly::constant(ord, ComplexRational(1)); }
    Poly x(int mu) const;
};

// Builds all derived tensors and verifies the internal identities
// (frame inverse, metric inverse, factorized form of theta_tilde)
// exactly in-ring; a violation is a logic error.
Geometry build_geometry(const TwistConfig& cfg);

// Applies the frame vector field with index a to a polynomial.
Poly frame_apply(const Geometry& g, int a, const Poly& f);

// Coefficient of d/dx^nu in the commutator of frame fields a and b.
Poly structure_constant(const Geometry& g, int a, int b, int nu);

// Single-triple obstruction tensor built from Theta and the twist
// coefficients; generically nonzero.
Poly jacobi_tensor(const TwistConfig& cfg, int mu, int nu, int rho);

// Cyclic sum of the obstruction tensor over (mu, nu, rho); vanishing of
// this sum is the tensor form of the triple-bracket identity.
Poly jacobi_tensor_cyclic(const TwistConfig& cfg, int mu, int nu, int rho);

// Cyclic derivative combination of theta_tilde that the deformation
// matrix must satisfy; expected to vanish identically.
Poly theta_tilde_cyclic_residual(const Geometry& g, int sigma, int mu, int nu);

struct PhiData {
    std::array<Poly, 2> phi; // scalar potentials, symmetric flavor
    std::array<std::array<Poly, 2>, 2> grad_residual;     // e_down minus grad(phi), generic
    std::array<std::array<Poly, 2>, 2> grad_residual_sym; // same after total-symmetry identification
    std::array<std::array<Poly, 2>, 2> frame_residual;     // X_a phi^b minus delta, generic
    std::array<std::array<Poly, 2>, 2> frame_residual_sym; // same after identification
};

// Scalar potentials x^a - (1/2) w{ab}^mu x^b x^mu and how well their
// gradients reproduce the coframe.  Symmetric flavor only.
PhiData phi_potentials(const Geometry& g);

// Substitution that identifies the twist coefficients into a totally
// symmetric family: w11^2 -> w12^1 and w22^1 -> w12^2.
Poly symmetrize_twist(const Poly& p);

} // namespace tmoyal
