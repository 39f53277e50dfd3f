#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "mollow/dressed.hpp"
#include "mollow/hydrogen.hpp"
#include "mollow/uncertain.hpp"
#include "mollow/units.hpp"

namespace mollow {

enum class CorrectionKind {
    LambBare,
    BlochSiegert,
    OffResonant,
    RelativisticDipole,
    FieldConfiguration,
    DressedSelfEnergy,
    RadiativeDipole,
    Secular,
};

constexpr std::array<CorrectionKind, 8> kAllCorrections = {
    CorrectionKind::LambBare,          CorrectionKind::BlochSiegert,
    CorrectionKind::OffResonant,       CorrectionKind::RelativisticDipole,
    CorrectionKind::FieldConfiguration, CorrectionKind::DressedSelfEnergy,
    CorrectionKind::RadiativeDipole,   CorrectionKind::Secular,
};

enum class CorrectionTarget { Detuning, Rabi };

std::string correctionName(CorrectionKind kind);
CorrectionTarget correctionTarget(CorrectionKind kind);
bool correctionIsJDependent(CorrectionKind kind);

/// One evaluated correction. `value` is the signed contribution to its
/// target: detuning terms add to Delta_rad (angular s^-1), Rabi terms add
/// to Omega_hat_rad (dimensionless), so
///   Delta_rad = L + B Omega^2 + D_R Omega^2,
///   Omega_hat  = A - C - E - F - S
/// come out of a plain sum over the list.
struct CorrectionTerm {
    CorrectionKind kind;
    CorrectionTarget target;
    UncertainValue value;
    bool jDependent;
};

struct LedgerOptions {
    double cBlochSiegert = 0.25;      // Table I calibration; 1.0 exposes the
                                      // textual B = 1/w_R variant
    SigmaMode sigmaMode = SigmaMode::Quadrature;
    PhysicalConstants consts{};
    UncertainValue omegaHatMulti{6.3e-7, 0.0};  // quoted multi-level shift
};

// Individual correction inputs and closed forms. Tabulated Lamb shifts in
// kHz; everything else from the quoted coefficients.
UncertainValue lambShift1S();              // 8172811(32) kHz
UncertainValue lambShift3P(int twoJ);      // -3473.75(3) / 4037.75(3) kHz
UncertainValue bareLambShift(int twoJ);    // L_3Pj - L_1S, kHz

/// Level with its tabulated Lamb shift attached (1S or 3P_j only).
AtomicLevel taggedLevel(int n, int l, int twoJ);
/// L_upper - L_lower from the levels' own Lamb-shift fields.
UncertainValue bareLambShift(const AtomicLevel& upper, const AtomicLevel& lower);

double blochSiegert(const DriveConfig& drive, double cBs = 0.25);       // angular
UncertainValue offResonant(const DriveConfig& drive);                   // angular
double relativisticDipole(int twoJ, const PhysicalConstants& c = {});   // E_j
double fieldConfiguration(const PhysicalConstants& c = {});             // F
UncertainValue dressedSelfEnergy(int twoJ, const PhysicalConstants& c = {});  // C_j
UncertainValue radiativeDipole(int twoJ, const PhysicalConstants& c = {});    // A_j
double secularCorrection(const DriveConfig& drive);                     // S

/// All eight terms for one drive, signed as described above.
std::vector<CorrectionTerm> buildCorrections(const DriveConfig& drive,
                                             const LedgerOptions& options = {});

/// Corrected displacement of the blue Mollow sideband (the red one is its
/// exact negative):
///   d = Omega_C (1 + multi) - Omega_R,  Omega_C = sqrt(Omega^2 (1+W)^2
///       + (Delta - D)^2),
/// with W, D summed from `terms`. Sigma from linear sensitivities of
/// Omega_C to each uncertain input, combined per `sigmaMode`; the
/// multi-level factor's sigma is reported separately.
struct SidebandDisplacement {
    UncertainValue shiftKhz;      // sigma from the correction terms
    double multiSigmaKhz = 0.0;   // Omega_C * sigma(multi factor), in kHz
    double omegaC = 0.0;          // angular s^-1
    double omegaHatRad = 0.0;
    double deltaRad = 0.0;        // angular s^-1
};

SidebandDisplacement correctedSidebandDisplacement(
    const DriveConfig& drive, const std::vector<CorrectionTerm>& terms,
    const UncertainValue& multiLevelFactor = {1.0, 0.0},
    SigmaMode sigmaMode = SigmaMode::Quadrature);

/// (red, blue) displacements in kHz; antisymmetric by construction.
inline std::pair<double, double> displacementPairKhz(const SidebandDisplacement& d) {
    return {-d.shiftKhz.value, d.shiftKhz.value};
}

/// Table-style report: every correction evaluated alone (exact Omega_C
/// recomputation per row) plus the joint result.
struct LedgerRow {
    CorrectionTerm term;
    UncertainValue shiftKhz;
};

struct CorrectionLedger {
    DriveConfig drive;
    std::vector<CorrectionTerm> terms;
    std::vector<LedgerRow> rows;
    UncertainValue correctedOmega;     // Omega (1 + Omega_hat_rad), angular
    UncertainValue correctedDetuning;  // Delta - Delta_rad, angular
    UncertainValue omegaC;             // angular
    UncertainValue multiLevelFactor;   // 1 + Omega_hat_multi
    UncertainValue combinedShiftKhz;   // sigma from terms, per sigmaMode
    double combinedSigmaQuadratureKhz = 0.0;
    double combinedSigmaLinearKhz = 0.0;
    double multiShiftKhz = 0.0;        // Omega_C * Omega_hat_multi
    SigmaMode sigmaMode = SigmaMode::Quadrature;
};

CorrectionLedger ledgerReport(const DriveConfig& drive, const LedgerOptions& options = {});

/// Reference drive of the worked example: Omega = 1000 Gamma,
/// Delta = 50 Gamma, Gamma = A(3P -> 1S), w_R the reduced-mass 1S-3P
/// frequency.
DriveConfig referenceDrive(int twoJ, const PhysicalConstants& consts = {},
                           double rabiInGamma = 1000.0, double detuningInGamma = 50.0);

/// Serialization: machine-readable JSON and a fixed-width text table with
/// both fine-structure columns.
std::string ledgerToJson(const CorrectionLedger& ledger);
std::string ledgerTable(const CorrectionLedger& half, const CorrectionLedger& threeHalf);

} // namespace mollow
