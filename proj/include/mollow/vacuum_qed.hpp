#pragma once

#include <utility>
#include <vector>

#include "mollow/hydrogen.hpp"
#include "mollow/units.hpp"

namespace mollow {

/// Self-energy of a bound state as a cutoff integral over virtual dipole
/// photons, evaluated on a radial pseudo-spectrum and rendered finite by
/// subtracting the large-k asymptotics of the integrand (the Bethe
/// procedure). Atomic units throughout; the overall prefactor is
/// 2 alpha^3 / (3 pi).
struct SelfEnergyResult {
    double cutoff = 0.0;                 // K in hartree
    double rawIntegral = 0.0;            // k^2- and k-subtracted integral at K
    double subtractedValue = 0.0;        // finite K->inf limit, prefactor included
    double betheLog = 0.0;               // ln k0, photon energies in units Z^2 Ry
    bool lowConfidence = false;          // K below the asymptotic regime
    std::vector<std::pair<int, double>> basisSizeLadder;  // (N, ln k0) samples
};

/// Transition moments of one reference state against the pseudo-spectra of
/// its dipole-coupled l-channels: excitation energies Delta_b = E_b - E_a
/// and orientation-averaged strengths M_b = R_ab^2 max(l_a,l_b)/(2 l_a+1),
/// so that sum_b M_b Delta_b^2 = <p^2>.
class DipoleStrengthTable {
  public:
    /// The reference state is the (n-l-1)-th eigenstate of its own channel.
    DipoleStrengthTable(const AtomicLevel& state,
                        const std::vector<RadialBasis>& channels);

    const std::vector<double>& delta() const { return delta_; }
    const std::vector<double>& strength() const { return strength_; }

    double sumStrengthDelta(int power) const;  // sum_b M_b Delta_b^power

  private:
    std::vector<double> delta_;
    std::vector<double> strength_;
};

class SelfEnergyEvaluator {
  public:
    SelfEnergyEvaluator(const AtomicLevel& state, const std::vector<RadialBasis>& channels,
                        const PhysicalConstants& consts = {});

    /// Integrand (2 alpha^3 / 3 pi) k^3 sum_b M_b / (E_a - E_b - k) of the
    /// cutoff integral, principal value understood at the emission poles.
    double integrand(double k) const;

    /// Integral of [integrand + prefactor (sum M k^2 - sum M Delta k)] from
    /// 0 to K: the two power divergences removed, leaving linear growth
    /// with slope -prefactor <p^2>. Evaluated analytically per state.
    double rawIntegral(double K) const;

    /// rawIntegral with the remaining linear and log pieces removed as well:
    /// rawIntegral(K) + prefactor (<p^2> K - sum M Delta^3 ln K).
    double subtracted(double K) const;

    /// ln k0 = sum M Delta^3 ln(2|Delta|/Z^2) / sum M Delta^3 over the
    /// pseudo-spectrum.
    double betheLog() const;

    double prefactor() const;               // 2 alpha^3 / (3 pi)
    double momentumSquared() const;         // sum M Delta^2
    const DipoleStrengthTable& table() const { return table_; }

  private:
    DipoleStrengthTable table_;
    PhysicalConstants consts_;
};

/// One-shot evaluation; channels must cover the dipole-coupled l values
/// of the state (an empty list models a state with no dipole coupling).
SelfEnergyResult selfEnergySum(const AtomicLevel& state, double cutoff,
                               const std::vector<RadialBasis>& channels,
                               const PhysicalConstants& consts = {});

/// Richardson-extrapolated Bethe logarithm over a basis-size ladder.
/// Defaults reproduce ln k0(1S) and ln k0(2S) to a few parts in 10^3.
double betheLogExtrapolated(const AtomicLevel& state,
                            const std::vector<int>& ladder = {40, 60, 80, 100},
                            double scale = 3.0, const PhysicalConstants& consts = {});

/// Per-N ladder samples (N, ln k0) plus the extrapolated value.
std::pair<std::vector<std::pair<int, double>>, double>
betheLogLadder(const AtomicLevel& state, const std::vector<int>& ladder,
               double scale, const PhysicalConstants& consts = {});

/// Pieces of the discrete -> continuum mode-counting rule
/// sum_k 1/V -> integral d^3k / (2 pi)^3.
struct ContinuumMeasure {
    double modeDensity;        // V / (2 pi)^3, modes per d^3k
    double solidAngle;         // 4 pi
    double transverseAverage;  // angular average of delta_T^{ij} x^i x^j / |x|^2
};
ContinuumMeasure discreteToContinuumWeight(double volume, int modeCount);

/// k^3 weight of the photon-energy integral per unit dk.
double photonPhaseSpaceWeight(double k);

} // namespace mollow
