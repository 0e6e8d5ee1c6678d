#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "tmoyal/errors.hpp"
#include "tmoyal/rational.hpp"

namespace tmoyal {

// Generators of the coefficient ring, in storage order.  The twist
// coefficients w{ab}^mu are kept with a <= b; flavor symmetry decides
// how the remaining index patterns resolve onto these slots.  a0 is an
// auxiliary constant gauge scalar used to grade infinitesimal gauge
// transformations.
enum class Sym : std::uint8_t {
    x1 = 0,
    x2 = 1,
    theta = 2,
    w11_1 = 3,
    w12_1 = 4,
    w22_1 = 5,
    w11_2 = 6,
    w12_2 = 7,
    w22_2 = 8,
    eps1 = 9,
    eps2 = 10,
    a0 = 11,
};

inline constexpr std::size_t kSymCount = 12;

const char* sym_name(Sym s);
std::optional<Sym> sym_lookup(const std::string& name);

// Storage slot for the symbol w{ab}^mu, 1 <= a <= b <= 2, mu in {1,2}.
Sym omega_sym(int a, int b, int mu);

struct Monomial {
    std::array<std::uint16_t, kSymCount> e{};

    int deg(Sym s) const { return e[static_cast<std::size_t>(s)]; }
    int theta_deg() const { return e[2]; }
    int omega_deg() const { return e[3] + e[4] + e[5] + e[6] + e[7] + e[8]; }
    int eps_deg() const { return e[9] + e[10]; }
    int gauge_deg() const { return e[9] + e[10] + e[11]; }
    int x_deg() const { return e[0] + e[1]; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Canonical term order: theta grade, twist grade, twist exponents,
// gauge-parameter grade and exponents, coordinate degree, coordinate
// exponents.  Rendering and map iteration both follow it.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Orders {
    int theta = 6;
    int omega = 1;

    friend bool operator==(const Orders&, const Orders&) = default;
};

// Sparse polynomial over the Gaussian rationals in the twelve generators,
// reduced by theta^(theta order + 1) = 0 and by dropping any monomial of
// total twist degree above the omega order.  Truncation is applied
// eagerly on every insertion, so arithmetic stays inside the quotient.
class Poly {
  public:
    using TermMap = std::map<Monomial, ComplexRational, MonomialOrder>;

    explicit Poly(Orders ord) : ord_(ord) {}

    static Poly constant(Orders ord, const ComplexRational& c);
    static Poly sym(Orders ord, Sym s);

    Orders orders() const { return ord_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * m, dropping the result of the truncation rules.
    void add_term(const Monomial& m, const ComplexRational& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const ComplexRational& c) const;
    Poly pow(unsigned n) const;
    Poly derivative(int axis) const;
    Poly conj() const;
    Poly filtered(const std::function<bool(const Monomial&)>& keep) const;

    // Drops every monomial containing both a gauge-window factor
    // (eps1/eps2) and a twist factor; models the constraint that
    // eps * w products are negligible.
    Poly drop_eps_omega() const;

    int max_deg(Sym s) const;

    // Throws OrderMismatchError when the operands carry different orders.
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string str() const;

  private:
    void check_orders(const Poly& o, const char* op) const;

    Orders ord_;
    TermMap terms_;
};

Poly dx(const Poly& p, int axis);

// Full evaluation; throws SymbolError naming any generator that appears
// in p but has no binding.
ComplexRational substitute_numeric(const Poly& p,
                                   const std::map<Sym, ComplexRational>& bind);

// Replaces each bound generator by a polynomial, leaving the rest alone.
Poly substitute_syms(const Poly& p, const std::map<Sym, Poly>& bind);

// Inverse of a polynomial of the form c * (1 + nilpotent part), where
// every non-constant monomial must carry a theta or twist factor so the
// geometric series terminates inside the quotient ring.
Poly invert_unit(const Poly& u);

} // namespace tmoyal
