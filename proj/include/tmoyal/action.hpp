#pragma once

#include "tmoyal/gauge.hpp"
#include "tmoyal/gauss.hpp"

namespace tmoyal {

// Yang-Mills-type action of a Gaussian-windowed gauge field: the
// field-strength square is star-multiplied by the inverse volume
// factor and integrated against the volume-weighted measure.
PiScalar ym_action(const Geometry& g, const GaugeField<GaussianDensity>& f,
                   StarMethod m = StarMethod::closed);

struct ActionInvariance {
    PiScalar action;
    PiScalar varied;
    // First-order change of the action when both field-strength
    // factors receive the infinitesimal unitary sandwich F -> F + i[alpha, F].
    PiScalar residual;
    // The same change rewritten through the trace property: the
    // integrand picks up the sandwich obstruction of the inverse
    // volume factor, -i[alpha, e^{-1}].  Equals `residual` exactly.
    PiScalar obstruction_integral;
};

ActionInvariance action_invariance_residual(const Geometry& g,
                                            const GaugeField<GaussianDensity>& f,
                                            const Poly& alpha,
                                            StarMethod m = StarMethod::closed);

} // namespace tmoyal
