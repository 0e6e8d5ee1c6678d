#include "tmoyal/planewave.hpp"

#include <algorithm>

namespace tmoyal {

PlaneWave& PlaneWave::operator+=(const PlaneWave& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        k_ = o.k_;
        pref_ = o.pref_;
        return *this;
    }
    if (k_ != o.k_) throw ValueError("sum of waves with different wave vectors");
    pref_ += o.pref_;
    return *this;
}

PlaneWave& PlaneWave::operator-=(const PlaneWave& o) {
    return *this += -o;
}

PlaneWave operator*(const PlaneWave& a, const PlaneWave& b) {
    return PlaneWave({a.k_[0] + b.k_[0], a.k_[1] + b.k_[1]}, a.pref_ * b.pref_);
}

bool operator==(const PlaneWave& a, const PlaneWave& b) {
    if (a.is_zero() && b.is_zero()) return a.pref_ == b.pref_;
    return a.k_ == b.k_ && a.pref_ == b.pref_;
}

std::string PlaneWave::str() const {
    if (is_zero()) return "0";
    std::string p = pref_.str();
    if (carrier_is_zero()) return p;
    std::string wave = "wave(" + k_[0].str() + ", " + k_[1].str() + ")";
    if (pref_.terms().size() == 1 && pref_.terms().begin()->second == ComplexRational(1) &&
        pref_.terms().begin()->first == Monomial{})
        return wave;
    if (pref_.terms().size() > 1) p = "(" + p + ")";
    return p + "*" + wave;
}

PlaneWave dx(const PlaneWave& w, int axis) {
    if (axis != 1 && axis != 2) throw AxisError("derivative axis outside {1,2}");
    ComplexRational ik(Rational(0), w.wave_vector()[axis - 1]);
    return PlaneWave(w.wave_vector(), dx(w.prefactor(), axis) + w.prefactor().scaled(ik));
}

void PlaneWaveSum::add_wave(const PlaneWave& w) {
    if (w.is_zero()) return;
    for (std::size_t j = 0; j < waves_.size(); ++j) {
        if (waves_[j].wave_vector() == w.wave_vector()) {
            waves_[j] += w;
            if (waves_[j].is_zero()) waves_.erase(waves_.begin() + long(j));
            return;
        }
    }
    waves_.push_back(w);
    std::sort(waves_.begin(), waves_.end(), [](const PlaneWave& a, const PlaneWave& b) {
        if (a.wave_vector()[0] != b.wave_vector()[0]) return a.wave_vector()[0] < b.wave_vector()[0];
        return a.wave_vector()[1] < b.wave_vector()[1];
    });
}

PlaneWaveSum PlaneWaveSum::operator-() const {
    PlaneWaveSum r(ord_);
    for (const auto& w : waves_) r.add_wave(-w);
    return r;
}

PlaneWaveSum& PlaneWaveSum::operator+=(const PlaneWaveSum& o) {
    for (const auto& w : o.waves_) add_wave(w);
    return *this;
}

PlaneWaveSum& PlaneWaveSum::operator-=(const PlaneWaveSum& o) {
    for (const auto& w : o.waves_) add_wave(-w);
    return *this;
}

PlaneWaveSum operator*(const PlaneWaveSum& a, const PlaneWaveSum& b) {
    PlaneWaveSum r(a.ord_);
    for (const auto& u : a.waves_)
        for (const auto& v : b.waves_) r.add_wave(u * v);
    return r;
}

PlaneWaveSum operator*(const Poly& p, const PlaneWaveSum& s) {
    PlaneWaveSum r(s.ord_);
    for (const auto& w : s.waves_) r.add_wave(p * w);
    return r;
}

PlaneWaveSum PlaneWaveSum::scaled(const ComplexRational& c) const {
    PlaneWaveSum r(ord_);
    for (const auto& w : waves_) r.add_wave(w.scaled(c));
    return r;
}

PlaneWaveSum PlaneWaveSum::conj() const {
    PlaneWaveSum r(ord_);
    for (const auto& w : waves_) r.add_wave(w.conj());
    return r;
}

bool operator==(const PlaneWaveSum& a, const PlaneWaveSum& b) {
    return (a - b).is_zero();
}

std::string PlaneWaveSum::str() const {
    if (waves_.empty()) return "0";
    std::string s;
    for (std::size_t j = 0; j < waves_.size(); ++j) {
        if (j) s += " + ";
        s += waves_[j].str();
    }
    return s;
}

PlaneWaveSum dx(const PlaneWaveSum& s, int axis) {
    PlaneWaveSum r(s.orders());
    for (const auto& w : s.waves()) r.add_wave(dx(w, axis));
    return r;
}

PlaneWaveSum plane_wave_star(const Geometry& g, const PlaneWave& u, const PlaneWave& v) {
    if (g.cfg.flavor != Flavor::antisymmetric)
        throw FlavorError("wave star product requires the antisymmetric flavor");
    return PlaneWaveSum(star_closed(g, u, v));
}

PlaneWaveSum plane_wave_star(const Geometry& g, const PlaneWaveSum& u, const PlaneWaveSum& v) {
    if (g.cfg.flavor != Flavor::antisymmetric)
        throw FlavorError("wave star product requires the antisymmetric flavor");
    PlaneWaveSum r(u.orders());
    for (const auto& a : u.waves())
        for (const auto& b : v.waves()) r += PlaneWaveSum(star_closed(g, a, b));
    return r;
}

} // namespace tmoyal
