#pragma once

#include <vector>

#include "tmoyal/geometry.hpp"

namespace tmoyal {

enum class StarMethod { series, closed };

const char* method_name(StarMethod m);

// The algebra parameter A is Poly, GaussianDensity, or PlaneWave: it
// must provide A(Orders), +=, -=, unary -, A*A and Poly*A pointwise
// products, scaled(ComplexRational), is_zero(), and a free dx(A, axis).

// Frame vector field X_a.
template <class A>
A vf_apply(const Geometry& g, int a, const A& f) {
    if (a < 1 || a > 2) throw AxisError("frame index outside {1,2}");
    return g.e_up[a - 1][0] * dx(f, 1) + g.e_up[a - 1][1] * dx(f, 2);
}

// Dual combination (i/2) Theta^{ab} X_b.
template <class A>
A xtilde_apply(const Geometry& g, int a, const A& f) {
    if (a < 1 || a > 2) throw AxisError("frame index outside {1,2}");
    ComplexRational half_i(Rational(0), Rational(1, 2));
    Poly th = Poly::sym(g.ord, Sym::theta);
    A r = th * vf_apply(g, a == 1 ? 2 : 1, f);
    return r.scaled(a == 1 ? half_i : -half_i);
}

// Bidifferential powers Delta^m(u, v) for m = 0..maxm, each including
// its (i theta / 2)^m prefactor.  Index strings are enumerated as
// signed binary prefixes so every frame-field chain is extended once.
template <class A>
std::vector<A> delta_tower(const Geometry& g, const A& u, const A& v, int maxm) {
    std::vector<A> tower;
    tower.push_back(u * v);
    std::vector<A> left{u};
    std::vector<A> right{v};
    ComplexRational pref(1);
    ComplexRational half_i(Rational(0), Rational(1, 2));
    Poly th = Poly::sym(g.ord, Sym::theta);
    Poly th_pow = Poly::constant(g.ord, ComplexRational(1));
    for (int m = 1; m <= maxm; ++m) {
        std::vector<A> nl;
        std::vector<A> nr;
        nl.reserve(left.size() * 2);
        nr.reserve(left.size() * 2);
        for (std::size_t j = 0; j < left.size(); ++j) {
            nl.push_back(vf_apply(g, 1, left[j]));
            nr.push_back(vf_apply(g, 2, right[j]));
            nl.push_back(vf_apply(g, 2, left[j]));
            nr.push_back(vf_apply(g, 1, right[j]));
        }
        left = std::move(nl);
        right = std::move(nr);
        pref *= half_i;
        th_pow = th_pow * th;
        A sum(g.ord);
        for (std::size_t j = 0; j < left.size(); ++j) {
            A prod = left[j] * right[j];
            if (__builtin_popcountll(j) & 1)
                sum -= prod;
            else
                sum += prod;
        }
        tower.push_back((th_pow * sum).scaled(pref));
    }
    return tower;
}

template <class A>
A star_series(const Geometry& g, const A& f, const A& h) {
    auto tower = delta_tower(g, f, h, g.ord.theta);
    A total = tower[0];
    for (std::size_t m = 1; m < tower.size(); ++m)
        total += tower[m].scaled(ComplexRational(Rational::inverse_factorial(unsigned(m))));
    return total;
}

template <class A>
A star_closed(const Geometry& g, const A& f, const A& h) {
    int maxn = g.ord.theta;
    // df[i][j] = d1^i d2^j f; dh likewise.
    std::vector<std::vector<A>> df{{f}};
    std::vector<std::vector<A>> dh{{h}};
    for (int n = 1; n <= maxn; ++n) {
        df.push_back({});
        dh.push_back({});
        for (int i = 0; i <= n; ++i) {
            if (i == 0) {
                df[n].push_back(dx(df[n - 1][0], 2));
                dh[n].push_back(dx(dh[n - 1][0], 2));
            } else {
                df[n].push_back(dx(df[n - 1][i - 1], 1));
                dh[n].push_back(dx(dh[n - 1][i - 1], 1));
            }
        }
    }
    A total = df[0][0] * dh[0][0];
    ComplexRational half_i(Rational(0), Rational(1, 2));
    ComplexRational pref(1);
    Poly th = Poly::sym(g.ord, Sym::theta);
    Poly weight = Poly::constant(g.ord, ComplexRational(1));
    for (int n = 1; n <= maxn; ++n) {
        pref *= half_i;
        weight = weight * th * g.det_frame;
        if (weight.is_zero()) break;
        A sum(g.ord);
        bool any = false;
        for (int k = 0; k <= n; ++k) {
            // d1^k d2^(n-k) f  times  d2^k d1^(n-k) h.
            const A& lf = df[n][k];
            const A& rh = dh[n][n - k];
            if (lf.is_zero() || rh.is_zero()) continue;
            ComplexRational c(Rational::binomial(unsigned(n), unsigned(k)));
            if ((n - k) & 1) c = -c;
            sum += (lf * rh).scaled(c);
            any = true;
        }
        if (!any) continue;
        total += (weight * sum).scaled(pref * ComplexRational(Rational::inverse_factorial(unsigned(n))));
    }
    return total;
}

template <class A>
A star(const Geometry& g, const A& f, const A& h, StarMethod m = StarMethod::closed) {
    return m == StarMethod::closed ? star_closed(g, f, h) : star_series(g, f, h);
}

template <class A>
A star_comm(const Geometry& g, const A& f, const A& h, StarMethod m = StarMethod::closed) {
    return star(g, f, h, m) - star(g, h, f, m);
}

template <class A>
A star_acomm(const Geometry& g, const A& f, const A& h, StarMethod m = StarMethod::closed) {
    return star(g, f, h, m) + star(g, h, f, m);
}

// Series coefficients 1/(m+1)! over all m (full), even m only, or odd
// m only.  These are the three one-argument-reduced expansions of the
// product, commutator, and anticommutator.
enum class BilinearKind { full, even, odd };

template <class A>
A bilinear_series(const Geometry& g, BilinearKind kind, const A& u, const A& v, int a) {
    A vt = xtilde_apply(g, a, v);
    auto tower = delta_tower(g, u, vt, g.ord.theta);
    A total(g.ord);
    for (std::size_t m = 0; m < tower.size(); ++m) {
        if (kind == BilinearKind::even && (m & 1)) continue;
        if (kind == BilinearKind::odd && !(m & 1)) continue;
        total += tower[m].scaled(ComplexRational(Rational::inverse_factorial(unsigned(m + 1))));
    }
    return total;
}

template <class A>
A star_via_bilinear(const Geometry& g, const A& f, const A& h) {
    A total = f * h;
    for (int a = 1; a <= 2; ++a)
        total += bilinear_series(g, BilinearKind::full, vf_apply(g, a, f), h, a);
    return total;
}

template <class A>
A comm_via_bilinear(const Geometry& g, const A& f, const A& h) {
    A total(g.ord);
    for (int a = 1; a <= 2; ++a)
        total += bilinear_series(g, BilinearKind::even, vf_apply(g, a, f), h, a);
    return total.scaled(ComplexRational(2));
}

template <class A>
A acomm_via_bilinear(const Geometry& g, const A& f, const A& h) {
    A total = (f * h).scaled(ComplexRational(2));
    for (int a = 1; a <= 2; ++a)
        total += bilinear_series(g, BilinearKind::odd, vf_apply(g, a, f), h, a).scaled(ComplexRational(2));
    return total;
}

template <class A>
A associativity_residual(const Geometry& g, const A& f, const A& h, const A& k,
                         StarMethod m = StarMethod::closed) {
    return star(g, star(g, f, h, m), k, m) - star(g, f, star(g, h, k, m), m);
}

template <class A>
A leibniz_residual(const Geometry& g, const A& f, const A& h, int axis,
                   StarMethod m = StarMethod::closed) {
    return dx(star(g, f, h, m), axis) - star(g, dx(f, axis), h, m) - star(g, f, dx(h, axis), m);
}

template <class A>
A jacobi_star_cyclic(const Geometry& g, const A& f1, const A& f2, const A& f3,
                     StarMethod m = StarMethod::closed) {
    return star_comm(g, star_comm(g, f1, f2, m), f3, m) +
           star_comm(g, star_comm(g, f3, f1, m), f2, m) +
           star_comm(g, star_comm(g, f2, f3, m), f1, m);
}

// Commutator of a coordinate with f minus the deformation-matrix value
// i * theta_tilde^{mu sigma} d_sigma f.
Poly coord_comm_residual(const Geometry& g, int mu, const Poly& f,
                         StarMethod m = StarMethod::closed);

// Leading term of the closed-form associator.  Writing the frame
// determinant as 1 + w_1 x^1 + w_2 x^2 + ..., the residual
// (f*h)*k - f*(h*k) equals
//   -(1/4) theta^2 (d1 f d2 k - d2 f d1 k)(w_1 d2 h - w_2 d1 h)
// up to terms of third order in theta or second order in the twist.
// The residual vanishes identically only when the frame fields
// commute; for the antisymmetric flavor both methods produce exactly
// this obstruction, while for the symmetric flavor it applies to the
// closed form only and the series form associates at first twist
// order.
Poly associativity_obstruction(const Geometry& g, const Poly& f, const Poly& h, const Poly& k);

// Star exponential of i*alpha truncated at star-power kmax.
Poly star_exponential(const Geometry& g, const Poly& alpha, unsigned kmax,
                      StarMethod m = StarMethod::closed);

// Independent flat-space oracle: the undeformed product expansion with
// plain partial derivatives and explicit index strings, no shared
// prefixes, no frame data.
Poly moyal_flat_direct(Orders ord, const Poly& f, const Poly& h);

} // namespace tmoyal
