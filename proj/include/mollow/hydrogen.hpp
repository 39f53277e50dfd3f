#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mollow/uncertain.hpp"
#include "mollow/units.hpp"

namespace mollow {

/// Hydrogenic state label. Energies are nonrelativistic, infinite nuclear
/// mass; the reduced-mass correction is applied only when a transition
/// frequency is built.
struct AtomicLevel {
    int n = 1;
    int l = 0;
    int twoJ = 1;  // 2j, so 1S_1/2 -> 1, 3P_3/2 -> 3
    UncertainValue lambShiftKhz{0.0, 0.0};

    AtomicLevel() = default;
    AtomicLevel(int n_, int l_, int twoJ_);

    std::string label() const;
};

/// -Z^2 / (2 n^2) in hartree. Throws on invalid (n, l).
double levelEnergy(const AtomicLevel& level, int Z = 1);
double levelEnergy(int n, int l, int Z = 1);

/// Gross-structure transition frequency a -> b as an angular rate in s^-1:
/// 2 pi R_inf c Z^2 (1/n_a^2 - 1/n_b^2) / (1 + m_e/m_p). Positive for
/// absorption (n_b > n_a); zero when n_a = n_b.
double transitionFrequency(const AtomicLevel& a, const AtomicLevel& b,
                           const PhysicalConstants& consts = {});

/// Radial integral <n_a l_a | r | n_b l_b> in bohr over the analytic
/// hydrogen functions (evaluated by an exact Gauss-Laguerre rule).
double radialDipoleIntegral(int na, int la, int nb, int lb, int Z = 1);

/// <a, m=0 | z | b, m=0> in bohr, linear polarization convention.
/// Returns 0 for parity-forbidden pairs (|l_a - l_b| != 1).
double dipoleMatrixElement(const AtomicLevel& a, const AtomicLevel& b, int Z = 1);

/// Spontaneous rate upper -> lower in s^-1,
/// A = (4/3) alpha^3 w^3 S / g_upper in atomic units, summed over final m
/// and averaged over initial m. Returns 0 for non-dipole pairs.
double einsteinA(const AtomicLevel& upper, const AtomicLevel& lower,
                 const PhysicalConstants& consts = {});

/// Fixed-l radial pseudo-spectrum: the Coulomb Hamiltonian diagonalized in
/// N orthonormal Laguerre functions u_k(r) ~ (2 s r)^(l+1) e^(-s r)
/// L_k^(2l+2)(2 s r). The low eigenvalues reproduce bound states; the rest
/// discretize the continuum for propagator sums.
class RadialBasis {
  public:
    static RadialBasis build(int l, int size, double scale, int Z = 1);

    int l() const { return l_; }
    int size() const { return size_; }
    double scale() const { return scale_; }
    int Z() const { return Z_; }

    /// Pseudo-energies in hartree, ascending.
    const Eigen::VectorXd& energies() const { return energies_; }
    /// Column k = expansion of pseudo-state k in the Laguerre functions.
    const Eigen::MatrixXd& coefficients() const { return coefficients_; }

    /// <k | k'> over the pseudo-states (diagnostic; identity up to roundoff).
    Eigen::MatrixXd overlap() const;

    /// Raw Laguerre-function dipole matrix <u_j | r | u_k> between this
    /// basis and another channel with the same scale.
    static Eigen::MatrixXd radialDipole(const RadialBasis& a, const RadialBasis& b);

    /// <pseudo_a | r | pseudo_b> for all pseudo-state pairs.
    static Eigen::MatrixXd pseudoStateDipole(const RadialBasis& a, const RadialBasis& b);

  private:
    int l_ = 0;
    int size_ = 0;
    double scale_ = 1.0;
    int Z_ = 1;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd coefficients_;
};

/// Gauss-Laguerre nodes and weights for weight e^-x on [0, inf), with the
/// exponential folded out: integral of f = sum_i w[i] f(x[i]) for
/// f = poly * e^-x. Exact for poly degree <= 2 n - 1.
struct LaguerreQuadrature {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;  // already multiplied by e^{+x_i}
    static LaguerreQuadrature make(int n);
};

/// Associated Laguerre L_k^(a)(x) by forward recurrence.
double assocLaguerre(int k, double a, double x);

/// z-projection angular factor <l_a 0|cos theta|l_b 0>; zero unless
/// |l_a - l_b| = 1.
double angularZFactor(int la, int lb);

/// Summed line-strength weight max(l_a, l_b) / (2 l_a + 1) entering
/// orientation-averaged dipole sums; zero unless |l_a - l_b| = 1.
double channelStrengthWeight(int la, int lb);

} // namespace mollow
