#pragma once

#include <array>
#include <vector>

#include "tmoyal/geometry.hpp"
#include "tmoyal/star.hpp"

namespace tmoyal {

// A single wave prefactor(x) * exp(i (k1 x^1 + k2 x^2)) with a purely
// rational carrier.  All deformation corrections live in the prefactor,
// so the type is closed under the truncated star product.
class PlaneWave {
  public:
    explicit PlaneWave(Orders ord) : k_{Rational(0), Rational(0)}, pref_(ord) {}
    PlaneWave(std::array<Rational, 2> k, Poly pref) : k_(k), pref_(std::move(pref)) {}

    const std::array<Rational, 2>& wave_vector() const { return k_; }
    const Poly& prefactor() const { return pref_; }
    Orders orders() const { return pref_.orders(); }
    bool is_zero() const { return pref_.is_zero(); }
    bool carrier_is_zero() const { return k_[0].is_zero() && k_[1].is_zero(); }

    PlaneWave operator-() const { return PlaneWave(k_, -pref_); }

    // A zero wave adopts the other carrier, so accumulators can start
    // empty; otherwise the carriers must agree.
    PlaneWave& operator+=(const PlaneWave& o);
    PlaneWave& operator-=(const PlaneWave& o);
    friend PlaneWave operator+(PlaneWave a, const PlaneWave& b) { return a += b; }
    friend PlaneWave operator-(PlaneWave a, const PlaneWave& b) { return a -= b; }

    friend PlaneWave operator*(const PlaneWave& a, const PlaneWave& b);
    friend PlaneWave operator*(const Poly& p, const PlaneWave& w) {
        return PlaneWave(w.k_, p * w.pref_);
    }

    PlaneWave scaled(const ComplexRational& c) const { return PlaneWave(k_, pref_.scaled(c)); }
    PlaneWave conj() const { return PlaneWave({-k_[0], -k_[1]}, pref_.conj()); }

    friend bool operator==(const PlaneWave& a, const PlaneWave& b);
    friend bool operator!=(const PlaneWave& a, const PlaneWave& b) { return !(a == b); }

    std::string str() const;

  private:
    std::array<Rational, 2> k_;
    Poly pref_;
};

PlaneWave dx(const PlaneWave& w, int axis);

// Finite formal sum of waves with pairwise distinct carriers.
class PlaneWaveSum {
  public:
    explicit PlaneWaveSum(Orders ord) : ord_(ord) {}
    explicit PlaneWaveSum(const PlaneWave& w) : ord_(w.orders()) { add_wave(w); }

    static PlaneWaveSum from_poly(const Poly& p) {
        return PlaneWaveSum(PlaneWave({Rational(0), Rational(0)}, p));
    }

    const std::vector<PlaneWave>& waves() const { return waves_; }
    Orders orders() const { return ord_; }
    bool is_zero() const { return waves_.empty(); }

    // Merges by carrier and drops waves with zero prefactor.
    void add_wave(const PlaneWave& w);

    PlaneWaveSum operator-() const;
    PlaneWaveSum& operator+=(const PlaneWaveSum& o);
    PlaneWaveSum& operator-=(const PlaneWaveSum& o);
    friend PlaneWaveSum operator+(PlaneWaveSum a, const PlaneWaveSum& b) { return a += b; }
    friend PlaneWaveSum operator-(PlaneWaveSum a, const PlaneWaveSum& b) { return a -= b; }

    friend PlaneWaveSum operator*(const PlaneWaveSum& a, const PlaneWaveSum& b);
    friend PlaneWaveSum operator*(const Poly& p, const PlaneWaveSum& s);

    PlaneWaveSum scaled(const ComplexRational& c) const;
    PlaneWaveSum conj() const;

    friend bool operator==(const PlaneWaveSum& a, const PlaneWaveSum& b);
    friend bool operator!=(const PlaneWaveSum& a, const PlaneWaveSum& b) { return !(a == b); }

    std::string str() const;

  private:
    Orders ord_;
    std::vector<PlaneWave> waves_;
};

PlaneWaveSum dx(const PlaneWaveSum& s, int axis);

// Star product of waves: carriers add and the symplectic pairing factor
// is expanded into the truncated prefactor.
PlaneWaveSum plane_wave_star(const Geometry& g, const PlaneWave& u, const PlaneWave& v);
PlaneWaveSum plane_wave_star(const Geometry& g, const PlaneWaveSum& u, const PlaneWaveSum& v);

} // namespace tmoyal
