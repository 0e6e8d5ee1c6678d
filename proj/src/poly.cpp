#include "tmoyal/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tmoyal {

namespace {

constexpr const char* kSymNames[kSymCount] = {
    "x1", "x2", "theta", "w11^1", "w12^1", "w22^1",
    "w11^2", "w12^2", "w22^2", "eps1", "eps2", "a0",
};

// Rendering order inside a monomial: grading symbols first, then the
// gauge parameters, then the coordinates.
constexpr Sym kRenderOrder[kSymCount] = {
    Sym::theta,  Sym::w11_1, Sym::w12_1, Sym::w22_1, Sym::w11_2, Sym::w12_2,
    Sym::w22_2,  Sym::eps1,  Sym::eps2,  Sym::a0,    Sym::x1,    Sym::x2,
};

} // namespace

const char* sym_name(Sym s) { return kSymNames[static_cast<std::size_t>(s)]; }

std::optional<Sym> sym_lookup(const std::string& name) {
    for (std::size_t k = 0; k < kSymCount; ++k)
        if (name == kSymNames[k]) return static_cast<Sym>(k);
    return std::nullopt;
}

Sym omega_sym(int a, int b, int mu) {
    if (a < 1 || b < 1 || a > 2 || b > 2 || a > b)
        throw ValueError("twist slot needs 1 <= a <= b <= 2");
    if (mu < 1 || mu > 2) throw AxisError("twist upper index outside {1,2}");
    int pair = (a == 1 && b == 1) ? 0 : (a == 1 ? 1 : 2);
    return static_cast<Sym>(3 + 3 * (mu - 1) + pair);
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    if (a.theta_deg() != b.theta_deg()) return a.theta_deg() < b.theta_deg();
    if (a.omega_deg() != b.omega_deg()) return a.omega_deg() < b.omega_deg();
    for (std::size_t s = 3; s <= 8; ++s)
        if (a.e[s] != b.e[s]) return a.e[s] > b.e[s];
    if (a.gauge_deg() != b.gauge_deg()) return a.gauge_deg() < b.gauge_deg();
    for (std::size_t s = 9; s <= 11; ++s)
        if (a.e[s] != b.e[s]) return a.e[s] > b.e[s];
    if (a.x_deg() != b.x_deg()) return a.x_deg() < b.x_deg();
    if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
    return a.e[1] > b.e[1];
}

Poly Poly::constant(Orders ord, const ComplexRational& c) {
    Poly p(ord);
    p.add_term(Monomial{}, c);
    return p;
}

Poly Poly::sym(Orders ord, Sym s) {
    Poly p(ord);
    Monomial m;
    m.e[static_cast<std::size_t>(s)] = 1;
    p.add_term(m, ComplexRational(1));
    return p;
}

void Poly::add_term(const Monomial& m, const ComplexRational& c) {
    if (c.is_zero()) return;
    if (m.theta_deg() > ord_.theta || m.omega_deg() > ord_.omega) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Poly::check_orders(const Poly& o, const char* op) const {
    if (!(ord_ == o.ord_))
        throw OrderMismatchError(std::string(op) + " on values with different truncation orders");
}

Poly Poly::operator-() const {
    Poly r(ord_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_orders(o, "addition");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_orders(o, "subtraction");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_orders(b, "multiplication");
    Poly r(a.ord_);
    for (const auto& [ma, ca] : a.terms_) {
        int ta = ma.theta_deg();
        int wa = ma.omega_deg();
        for (const auto& [mb, cb] : b.terms_) {
            if (ta + mb.theta_deg() > a.ord_.theta) continue;
            if (wa + mb.omega_deg() > a.ord_.omega) continue;
            Monomial m;
            for (std::size_t s = 0; s < kSymCount; ++s)
                m.e[s] = static_cast<std::uint16_t>(ma.e[s] + mb.e[s]);
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const ComplexRational& c) const {
    Poly r(ord_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly r = Poly::constant(ord_, ComplexRational(1));
    for (unsigned k = 0; k < n; ++k) r = r * *this;
    return r;
}

Poly Poly::derivative(int axis) const {
    if (axis != 1 && axis != 2) throw AxisError("derivative axis outside {1,2}");
    std::size_t slot = static_cast<std::size_t>(axis - 1);
    Poly r(ord_);
    for (const auto& [m, c] : terms_) {
        if (m.e[slot] == 0) continue;
        Monomial d = m;
        d.e[slot] -= 1;
        r.add_term(d, c * ComplexRational(Rational(m.e[slot])));
    }
    return r;
}

Poly Poly::conj() const {
    Poly r(ord_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
    return r;
}

Poly Poly::filtered(const std::function<bool(const Monomial&)>& keep) const {
    Poly r(ord_);
    for (const auto& [m, c] : terms_)
        if (keep(m)) r.terms_.emplace(m, c);
    return r;
}

Poly Poly::drop_eps_omega() const {
    return filtered([](const Monomial& m) { return m.eps_deg() == 0 || m.omega_deg() == 0; });
}

int Poly::max_deg(Sym s) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg(s));
    return d;
}

bool operator==(const Poly& a, const Poly& b) {
    a.check_orders(b, "equality");
    return a.terms_ == b.terms_;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        ComplexRational coef = c;
        bool negative = false;
        if (coef.is_real() || coef.is_imaginary()) {
            const Rational& lead = coef.is_real() ? coef.re : coef.im;
            if (lead.sign() < 0) {
                negative = true;
                coef = -coef;
            }
        }
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        std::string factors;
        for (Sym s : kRenderOrder) {
            int d = m.deg(s);
            if (d == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += sym_name(s);
            if (d > 1) factors += "^" + std::to_string(d);
        }
        bool unit = coef == ComplexRational(1);
        if (factors.empty()) {
            out << coef.str();
        } else if (unit) {
            out << factors;
        } else {
            out << coef.str() << "*" << factors;
        }
    }
    return out.str();
}

Poly dx(const Poly& p, int axis) { return p.derivative(axis); }

ComplexRational substitute_numeric(const Poly& p,
                                   const std::map<Sym, ComplexRational>& bind) {
    std::set<std::string> missing;
    for (const auto& [m, c] : p.terms())
        for (std::size_t s = 0; s < kSymCount; ++s)
            if (m.e[s] > 0 && !bind.count(static_cast<Sym>(s)))
                missing.insert(sym_name(static_cast<Sym>(s)));
    if (!missing.empty()) {
        std::string names;
        for (const auto& n : missing) {
            if (!names.empty()) names += ", ";
            names += n;
        }
        throw SymbolError("unbound symbols: " + names);
    }
    ComplexRational total;
    for (const auto& [m, c] : p.terms()) {
        ComplexRational v = c;
        for (std::size_t s = 0; s < kSymCount; ++s)
            for (int k = 0; k < m.e[s]; ++k) v *= bind.at(static_cast<Sym>(s));
        total += v;
    }
    return total;
}

Poly substitute_syms(const Poly& p, const std::map<Sym, Poly>& bind) {
    for (const auto& [s, q] : bind)
        if (!(q.orders() == p.orders()))
            throw OrderMismatchError("substitution with mismatched truncation orders");
    Poly r(p.orders());
    for (const auto& [m, c] : p.terms()) {
        Poly term = Poly::constant(p.orders(), c);
        Monomial rest;
        for (std::size_t s = 0; s < kSymCount; ++s) {
            if (m.e[s] == 0) continue;
            auto it = bind.find(static_cast<Sym>(s));
            if (it == bind.end())
                rest.e[s] = m.e[s];
            else
                term = term * it->second.pow(m.e[s]);
        }
        Poly carrier(p.orders());
        carrier.add_term(rest, ComplexRational(1));
        r += term * carrier;
    }
    return r;
}

Poly invert_unit(const Poly& u) {
    Monomial unit;
    auto it = u.terms().find(unit);
    if (it == u.terms().end())
        throw ValueError("inverse of a polynomial without constant term");
    ComplexRational c0 = it->second;
    Poly v(u.orders());
    for (const auto& [m, c] : u.terms()) {
        if (m == unit) continue;
        if (m.theta_deg() + m.omega_deg() == 0)
            throw ValueError("inverse of a polynomial that is not unit plus graded part");
        v.add_term(m, -(c / c0));
    }
    Poly sum = Poly::constant(u.orders(), ComplexRational(1));
    Poly power = Poly::constant(u.orders(), ComplexRational(1));
    int bound = u.orders().theta + u.orders().omega + 1;
    for (int k = 0; k < bound; ++k) {
        power = power * v;
        if (power.is_zero()) break;
        sum += power;
    }
    return sum.scaled(ComplexRational(Rational(1)) / c0);
}

} // namespace tmoyal
