#include "mollow/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mollow {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

LevelScheme LevelScheme::twoLevel(const DriveConfig& drive) {
    LevelScheme s;
    s.dimension = 2;
    s.drive = drive;
    s.decayChannels = {{1, 0, drive.gamma}};
    s.validate();
    return s;
}

LevelScheme LevelScheme::threeLevel(const DriveConfig& drive, double gamma2S,
                                    double gamma3PTo2S) {
    LevelScheme s;
    s.dimension = 3;
    s.drive = drive;
    s.decayChannels = {{1, 0, drive.gamma}, {1, 2, gamma3PTo2S}, {2, 0, gamma2S}};
    s.validate();
    return s;
}

void LevelScheme::validate() const {
    if (dimension != 2 && dimension != 3)
        throw std::invalid_argument("LevelScheme: dimension must be 2 or 3");
    // Omega = 0 is allowed here (undriven limit); gamma still sets the unit.
    if (!(drive.gamma > 0.0) || drive.rabi < 0.0)
        throw std::invalid_argument("LevelScheme: need gamma > 0 and rabi >= 0");
    for (const auto& c : decayChannels) {
        if (c.rate < 0.0) throw std::invalid_argument("LevelScheme: negative decay rate");
        if (c.upper < 0 || c.upper >= dimension || c.lower < 0 || c.lower >= dimension ||
            c.upper == c.lower)
            throw std::invalid_argument("LevelScheme: invalid decay channel indices");
    }
    if (dimension == 3 && decayChannels.size() != 3)
        throw std::invalid_argument(
            "LevelScheme: three-level scheme needs channels 3P->1S, 3P->2S, 2S->1S");
}

void DensityOperator::validate() const {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) throw std::runtime_error("DensityOperator: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12)
        throw std::runtime_error("DensityOperator: trace != 1");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho + rho.adjoint()));
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::runtime_error("DensityOperator: negative eigenvalue");
}

void SpectrumTrace::writeCsv(std::ostream& os) const {
    os << "offset_gamma,offset_khz,intensity\n";
    char buf[128];
    for (size_t i = 0; i < offsets.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", offsets[i] / gamma,
                      angularToKilohertz(offsets[i]), intensities[i]);
        os << buf;
    }
}

namespace {

/// L = -i (I x H - H^T x I) + sum_c rate_c [ C x C - (I x C'C + (C'C)^T x I)/2 ]
/// over column-major vec, all operators real here.
MatrixXcd assembleLiouvillian(const LevelScheme& scheme) {
    const int d = scheme.dimension;
    const double gamma = scheme.drive.gamma;
    const complex<double> im(0.0, 1.0);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    h(1, 1) = -scheme.drive.detuning / gamma;
    h(0, 1) = h(1, 0) = 0.5 * scheme.drive.rabi / gamma;
    // the undriven 2S level sits at zero in the rotating frame; only the
    // dissipators act on it

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    auto kron = [d](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        Eigen::MatrixXd out(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out.block(i * d, j * d, d, d) = a(i, j) * b;
        return out;
    };

    MatrixXcd liou = -im * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& c : scheme.decayChannels) {
        Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(d, d);
        jump(c.lower, c.upper) = 1.0;
        const Eigen::MatrixXd number = jump.transpose() * jump;  // |upper><upper|
        liou += (c.rate / gamma) *
                (kron(jump, jump) - 0.5 * (kron(id, number) + kron(number.transpose(), id)));
    }
    return liou;
}

} // namespace

SpectrumSolver::SpectrumSolver(const LevelScheme& scheme) : scheme_(scheme) {
    scheme_.validate();
    dim_ = scheme_.dimension;
    liouvillian_ = assembleLiouvillian(scheme_);
    const int n = dim_ * dim_;

    // Steady state from the bordered system [L, t; trace, 0] [x; mu] = [0; 1]:
    // the unique trace-one null vector when the kernel is one-dimensional.
    MatrixXcd bordered = MatrixXcd::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = liouvillian_;
    for (int i = 0; i < dim_; ++i) {
        bordered(i * dim_ + i, n) = 1.0;  // column: add mu * vec(I)
        bordered(n, i * dim_ + i) = 1.0;  // row: trace constraint
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
    rhs(n) = 1.0;
    Eigen::FullPivLU<MatrixXcd> lu(bordered);
    if (!lu.isInvertible())
        throw std::runtime_error(
            "steadyState: degenerate kernel; the three-level scheme needs gamma_2S > 0");
    Eigen::VectorXcd sol = lu.solve(rhs);
    // one step of iterative refinement
    Eigen::VectorXcd resid = rhs - bordered * sol;
    sol += lu.solve(resid);

    steadyVec_ = sol.head(n);
    steady_.rho = Eigen::Map<const MatrixXcd>(steadyVec_.data(), dim_, dim_);
    steady_.rho = 0.5 * (steady_.rho + steady_.rho.adjoint()).eval();
    steady_.rho /= steady_.rho.trace().real();
    steadyVec_ = Eigen::Map<const VectorXcd>(steady_.rho.data(), n);

    // Source vector sigma- rho - <sigma-> rho and the read index (g, e).
    MatrixXcd lower = MatrixXcd::Zero(dim_, dim_);
    lower(0, 1) = 1.0;
    const complex<double> coh = steady_.rho(1, 0);  // <sigma-> = rho_eg
    MatrixXcd source = lower * steady_.rho - coh * steady_.rho;
    sourceVec_ = Eigen::Map<const VectorXcd>(source.data(), n);
    readIndex_ = 0 + dim_ * 1;  // component (row g, column e) of vec
}

VectorXcd SpectrumSolver::solveDeflated(complex<double> shift, const VectorXcd& rhs) const {
    const int n = dim_ * dim_;
    MatrixXcd bordered = MatrixXcd::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) =
        shift * MatrixXcd::Identity(n, n) - liouvillian_;
    bordered.col(n).head(n) = steadyVec_;
    for (int i = 0; i < dim_; ++i) bordered(n, i * dim_ + i) = 1.0;  // trace row
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n + 1);
    full.head(n) = rhs;
    Eigen::PartialPivLU<MatrixXcd> lu(bordered);
    Eigen::VectorXcd sol = lu.solve(full);
    sol += lu.solve(full - bordered * sol);
    return sol.head(n);
}

double SpectrumSolver::spectralDensity(double nuGamma) const {
    const complex<double> shift(0.0, nuGamma);
    return solveDeflated(shift, sourceVec_)(readIndex_).real();
}

double SpectrumSolver::spectralDensityEigen(double nuGamma) const {
    if (!eigenReady_) {
        eigen_.compute(liouvillian_);
        if (eigen_.info() != Eigen::Success)
            throw std::runtime_error("spectralDensityEigen: eigen decomposition failed");
        eigenReady_ = true;
    }
    const VectorXcd amp = eigen_.eigenvectors().partialPivLu().solve(sourceVec_);
    const complex<double> im(0.0, 1.0);
    complex<double> acc = 0.0;
    for (int j = 0; j < amp.size(); ++j) {
        if (std::abs(eigen_.eigenvalues()(j)) < 1e-10) continue;  // deflated zero mode
        acc += eigen_.eigenvectors()(readIndex_, j) * amp(j) /
               (im * nuGamma - eigen_.eigenvalues()(j));
    }
    return acc.real();
}

double SpectrumSolver::densityDerivative(double nuGamma) const {
    const complex<double> shift(0.0, nuGamma);
    const VectorXcd v1 = solveDeflated(shift, sourceVec_);
    const VectorXcd v2 = solveDeflated(shift, v1);
    return (complex<double>(0.0, -1.0) * v2(readIndex_)).real();
}

double SpectrumSolver::densityCurvature(double nuGamma) const {
    const complex<double> shift(0.0, nuGamma);
    const VectorXcd v1 = solveDeflated(shift, sourceVec_);
    const VectorXcd v2 = solveDeflated(shift, v1);
    const VectorXcd v3 = solveDeflated(shift, v2);
    return (-2.0 * v3(readIndex_)).real();
}

Eigen::VectorXcd SpectrumSolver::eigenvalues() const {
    Eigen::ComplexEigenSolver<MatrixXcd> es(liouvillian_, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: decomposition failed");
    return es.eigenvalues();
}

PeakEstimate SpectrumSolver::refinePeak(double seedGamma) const {
    double nu = seedGamma;
    double lastRelStep = 1.0;
    std::ostringstream trajectory;
    for (int it = 0; it < 50; ++it) {
        const complex<double> shift(0.0, nu);
        const VectorXcd v1 = solveDeflated(shift, sourceVec_);
        const VectorXcd v2 = solveDeflated(shift, v1);
        const VectorXcd v3 = solveDeflated(shift, v2);
        const double f = (complex<double>(0.0, -1.0) * v2(readIndex_)).real();
        const double fp = (-2.0 * v3(readIndex_)).real();
        if (fp == 0.0) throw std::runtime_error("refinePeak: vanishing curvature");
        const double step = f / fp;
        nu -= step;
        trajectory << " " << nu;
        // relative to the offset, floored at Gamma for the central peak
        lastRelStep = std::abs(step) / std::max(std::abs(nu), 1.0);
        if (lastRelStep < 1e-13) {
            PeakEstimate p;
            p.offset = nu * scheme_.drive.gamma;
            p.curvature = densityCurvature(nu);
            p.refinementResidual = lastRelStep;
            if (p.curvature >= 0.0)
                throw std::runtime_error("refinePeak: converged to a non-maximum");
            return p;
        }
    }
    throw std::runtime_error("refinePeak: no convergence in 50 iterations; trajectory:" +
                             trajectory.str());
}

double SpectrumSolver::coherentPower() const {
    return std::norm(steady_.rho(1, 0));
}

double SpectrumSolver::incoherentPower() const {
    return steady_.rho(1, 1).real() - coherentPower();
}

Eigen::MatrixXcd buildLiouvillian(const LevelScheme& scheme) {
    scheme.validate();
    return assembleLiouvillian(scheme);
}

DensityOperator steadyState(const LevelScheme& scheme) {
    return SpectrumSolver(scheme).steadyState();
}

SpectrumTrace incoherentSpectrum(const LevelScheme& scheme,
                                 const std::vector<double>& offsets) {
    SpectrumSolver solver(scheme);
    SpectrumTrace trace;
    trace.gamma = scheme.drive.gamma;
    trace.dimension = scheme.dimension;
    trace.offsets = offsets;
    trace.intensities.reserve(offsets.size());
    for (double nu : offsets)
        trace.intensities.push_back(solver.spectralDensity(nu / scheme.drive.gamma));
    return trace;
}

PeakEstimate refinePeak(const LevelScheme& scheme, double seedOffset) {
    return SpectrumSolver(scheme).refinePeak(seedOffset / scheme.drive.gamma);
}

double multiLevelSidebandShift(const LevelScheme& twoLevel, const LevelScheme& threeLevel) {
    if (twoLevel.drive.rabi != threeLevel.drive.rabi ||
        twoLevel.drive.detuning != threeLevel.drive.detuning ||
        twoLevel.drive.gamma != threeLevel.drive.gamma)
        throw std::invalid_argument("multiLevelSidebandShift: drives must match");

    const double seed = generalizedRabi(twoLevel.drive);
    const PeakEstimate p2 = refinePeak(twoLevel, seed);
    const PeakEstimate p3 = refinePeak(threeLevel, seed);
    if (p2.refinementResidual > 1e-8 || p3.refinementResidual > 1e-8)
        throw std::runtime_error("multiLevelSidebandShift: peak precision budget violated");
    return (p3.offset - p2.offset) / p2.offset;
}

double sidebandDisplacementRatio(const LevelScheme& scheme) {
    const double omegaR = generalizedRabi(scheme.drive);
    const PeakEstimate p = refinePeak(scheme, omegaR);
    if (p.refinementResidual > 1e-8)
        throw std::runtime_error("sidebandDisplacementRatio: peak precision budget violated");
    return (p.offset - omegaR) / omegaR;
}

} // namespace mollow
