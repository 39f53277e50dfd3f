#pragma once

#include <string>
#include <vector>

#include "mollow/hydrogen.hpp"
#include "mollow/units.hpp"

namespace mollow {

/// Second-order AC Stark shift of a bound state in a linearly polarized
/// field, from the two-denominator propagator sum over the pseudo-spectrum:
///   bracket = sum_b |<a|z|b>|^2 [ 1/(E_a-E_b+w) + 1/(E_a-E_b-w) ],
///   shift   = 2 pi alpha I * bracket    (atomic units).
/// At w = 0 the bracket equals minus the static dipole polarizability.
struct StarkShiftResult {
    double bracket = 0.0;        // a.u. of polarizability (negative below resonance)
    double shift = 0.0;          // hartree, includes the 2 pi alpha I prefactor
    std::vector<std::string> resonantDenominatorFlags;  // near-singular states
};

struct ResonanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

StarkShiftResult acStarkShift(const AtomicLevel& state, double omegaL, double intensityAu,
                              const std::vector<RadialBasis>& channels,
                              const PhysicalConstants& consts = {});

/// Stimulated (n_L-proportional) and spontaneous (1/V) parts of the
/// field-squared prefactor n_L w_L / (2 V); the remainder is what the
/// continuum limit at fixed n_L/V drops.
struct PhotonScaling {
    double stimulated = 0.0;  // n_L w_L / (2 V)
    double remainder = 0.0;   // w_L / (2 V), the (n_L+1) - n_L leftover
};
PhotonScaling photonNumberScaling(long modeCount, double volume, double omegaL);

} // namespace mollow
