#include "mollow/hydrogen.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mollow {

namespace {

const char* spectroscopicLetter(int l) {
    static const char* letters[] = {"S", "P", "D", "F", "G", "H"};
    return l < 6 ? letters[l] : "?";
}

void checkQuantumNumbers(int n, int l) {
    if (n < 1 || l < 0 || l >= n)
        throw std::domain_error("invalid quantum numbers (n=" + std::to_string(n) +
                                ", l=" + std::to_string(l) + ")");
}

} // namespace

AtomicLevel::AtomicLevel(int n_, int l_, int twoJ_) : n(n_), l(l_), twoJ(twoJ_) {
    checkQuantumNumbers(n, l);
    if (twoJ != 2 * l + 1 && twoJ != 2 * l - 1)
        throw std::domain_error("j must be l +- 1/2 (and >= 1/2)");
}

std::string AtomicLevel::label() const {
    std::ostringstream os;
    os << n << spectroscopicLetter(l);
    if (l > 0) os << "_" << twoJ << "/2";
    return os.str();
}

double levelEnergy(int n, int l, int Z) {
    checkQuantumNumbers(n, l);
    return -0.5 * double(Z) * double(Z) / (double(n) * double(n));
}

double levelEnergy(const AtomicLevel& level, int Z) {
    return levelEnergy(level.n, level.l, Z);
}

double transitionFrequency(const AtomicLevel& a, const AtomicLevel& b,
                           const PhysicalConstants& consts) {
    const double na = a.n, nb = b.n;
    const double gross = consts.rydbergFrequencyHz * consts.Z * consts.Z *
                         (1.0 / (na * na) - 1.0 / (nb * nb));
    return kTwoPi * gross * consts.reducedMassFactor();
}

double assocLaguerre(int k, double a, double x) {
    if (k < 0) return 0.0;
    double lm1 = 1.0;  // L_0
    if (k == 0) return lm1;
    double lc = 1.0 + a - x;  // L_1
    for (int i = 1; i < k; ++i) {
        const double next = ((2.0 * i + 1.0 + a - x) * lc - (i + a) * lm1) / (i + 1.0);
        lm1 = lc;
        lc = next;
    }
    return lc;
}

double angularZFactor(int la, int lb) {
    if (std::abs(la - lb) != 1) return 0.0;
    const int l = std::max(la, lb);  // <l-1,0|cos|l,0> = l/sqrt((2l-1)(2l+1))
    return l / std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0));
}

double channelStrengthWeight(int la, int lb) {
    if (std::abs(la - lb) != 1) return 0.0;
    return double(std::max(la, lb)) / (2.0 * la + 1.0);
}

LaguerreQuadrature LaguerreQuadrature::make(int n) {
    if (n < 1 || n > 180)
        throw std::invalid_argument("LaguerreQuadrature: order out of range");

    static std::map<int, LaguerreQuadrature> cache;
    static std::mutex cacheMutex;
    {
        std::lock_guard<std::mutex> lock(cacheMutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }

    // Golub-Welsch: Jacobi matrix of the Laguerre recurrence.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        jacobi(i, i) = 2.0 * i + 1.0;
        if (i > 0) {
            jacobi(i, i - 1) = double(i);
            jacobi(i - 1, i) = double(i);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("LaguerreQuadrature: eigen decomposition failed");

    LaguerreQuadrature q;
    q.nodes = solver.eigenvalues();
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double w = solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
        if (!(w > 0.0))
            throw std::runtime_error("LaguerreQuadrature: weight underflow at order " +
                                     std::to_string(n));
        q.weights[i] = w * std::exp(q.nodes[i]);
    }

    std::lock_guard<std::mutex> lock(cacheMutex);
    cache.emplace(n, q);
    return q;
}

namespace {

/// u_{nl}(r) = r R_{nl}(r) for the analytic hydrogen bound state.
double hydrogenRadialU(int n, int l, int Z, double r) {
    const double beta = double(Z) / n;
    const double x = 2.0 * beta * r;
    double logNorm = 3.0 * std::log(2.0 * beta) - std::log(2.0 * n);
    for (int m = n - l; m <= n + l; ++m) logNorm -= std::log(double(m));
    const double norm = std::exp(0.5 * logNorm);
    return norm * r * std::pow(x, l) * std::exp(-0.5 * x) *
           assocLaguerre(n - l - 1, 2 * l + 1, x);
}

} // namespace

double radialDipoleIntegral(int na, int la, int nb, int lb, int Z) {
    checkQuantumNumbers(na, la);
    checkQuantumNumbers(nb, lb);
    // integrand = u_a(r) r u_b(r) = poly(r) e^{-c r}; substitute x = c r and
    // the Gauss-Laguerre rule is exact.
    const double c = double(Z) / na + double(Z) / nb;
    const auto quad = LaguerreQuadrature::make(2 * (na + nb) + 8);
    double acc = 0.0;
    for (int i = 0; i < quad.nodes.size(); ++i) {
        const double r = quad.nodes[i] / c;
        acc += quad.weights[i] * hydrogenRadialU(na, la, Z, r) * r *
               hydrogenRadialU(nb, lb, Z, r);
    }
    return acc / c;
}

double dipoleMatrixElement(const AtomicLevel& a, const AtomicLevel& b, int Z) {
    const double angular = angularZFactor(a.l, b.l);
    if (angular == 0.0) return 0.0;
    return angular * radialDipoleIntegral(a.n, a.l, b.n, b.l, Z);
}

double einsteinA(const AtomicLevel& upper, const AtomicLevel& lower,
                 const PhysicalConstants& consts) {
    const double eu = levelEnergy(upper, consts.Z);
    const double el = levelEnergy(lower, consts.Z);
    if (eu <= el)
        throw std::domain_error("einsteinA: upper level must lie above lower");
    if (std::abs(upper.l - lower.l) != 1) return 0.0;

    const double omega = eu - el;  // hartree, infinite nuclear mass
    const double radial = radialDipoleIntegral(upper.n, upper.l, lower.n, lower.l, consts.Z);
    const double lineStrength = radial * radial * std::max(upper.l, lower.l);
    const double gUpper = 2.0 * upper.l + 1.0;
    const double alpha3 = consts.alpha * consts.alpha * consts.alpha;
    const double rateAu = (4.0 / 3.0) * alpha3 * omega * omega * omega * lineStrength / gUpper;
    return rateAu * kHartreePerSecond;
}

namespace {

/// Normalization N_k = sqrt(2 s k! / (k+2l+2)!) of the Laguerre function
/// u_k(r) = N_k x^(l+1) e^(-x/2) L_k^(2l+2)(x), x = 2 s r.
double laguerreNorm(int k, int l, double twoS) {
    double v = twoS;
    for (int m = 1; m <= 2 * l + 2; ++m) v /= double(k + m);
    return std::sqrt(v);
}

/// J^(s)_{jk} = integral x^(2l+2-s) e^-x L_j^(2l+2) L_k^(2l+2) dx for
/// s = 0, 1, 2, from the expansion L_n^(a) = sum_m L_m^(a-1) applied s
/// times. All terms are positive; no cancellation.
double laguerrePowerIntegral(int j, int k, int l, int s) {
    if (j < 0 || k < 0) return 0.0;
    const int alpha = 2 * l + 2;
    auto risingRatio = [](int q, int top) {  // (q+top)! / q!
        double v = 1.0;
        for (int m = 1; m <= top; ++m) v *= double(q + m);
        return v;
    };
    switch (s) {
        case 0:
            return j == k ? risingRatio(k, alpha) : 0.0;
        case 1: {
            double acc = 0.0;
            for (int q = 0; q <= std::min(j, k); ++q) acc += risingRatio(q, alpha - 1);
            return acc;
        }
        case 2: {
            double acc = 0.0;
            for (int q = 0; q <= std::min(j, k); ++q)
                acc += double(j - q + 1) * double(k - q + 1) * risingRatio(q, alpha - 2);
            return acc;
        }
        default:
            throw std::logic_error("laguerrePowerIntegral: unsupported power");
    }
}

} // namespace

RadialBasis RadialBasis::build(int l, int size, double scale, int Z) {
    if (size < 10) throw std::invalid_argument("RadialBasis: size must be >= 10");
    if (!(scale > 0.0)) throw std::invalid_argument("RadialBasis: scale must be > 0");
    if (l < 0) throw std::invalid_argument("RadialBasis: l must be >= 0");

    const int N = size;
    const double twoS = 2.0 * scale;
    const double p = l + 1.0;
    const int alpha = 2 * l + 2;

    // Closed-form H in the orthonormal Laguerre basis. With
    // phi_k = x^p e^(-x/2) L_k^(2p) and the Laguerre ODE,
    //   phi_k'' = e^(-x/2) { [p(p-1) - k] x^(p-2) L_k + (k+2p) x^(p-2) L_{k-1}
    //                        - (p+k) x^(p-1) L_k + x^p L_k / 4 },
    // so T = -1/2 int u_j u_k'' dr reduces to the J^(s) integrals; the
    // centrifugal and Coulomb terms use J^(2) and J^(1).
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            const double nn = laguerreNorm(j, l, twoS) * laguerreNorm(k, l, twoS);
            const double j0 = laguerrePowerIntegral(j, k, l, 0);
            const double j1 = laguerrePowerIntegral(j, k, l, 1);
            const double j2 = laguerrePowerIntegral(j, k, l, 2);
            const double j2m = laguerrePowerIntegral(j, k - 1, l, 2);
            const double kinetic =
                -scale * nn *
                ((p * (p - 1.0) - k) * j2 + (k + alpha) * j2m - (p + k) * j1 + 0.25 * j0);
            const double centrifugal = l * (l + 1.0) * scale * nn * j2;
            const double coulomb = -double(Z) * nn * j1;
            h(j, k) = kinetic + centrifugal + coulomb;
        }
    }
    h = 0.5 * (h + h.transpose()).eval();  // T is symmetric up to roundoff

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("RadialBasis: diagonalization failed (l=" +
                                 std::to_string(l) + ", N=" + std::to_string(N) +
                                 ", scale=" + std::to_string(scale) + ")");

    RadialBasis basis;
    basis.l_ = l;
    basis.size_ = N;
    basis.scale_ = scale;
    basis.Z_ = Z;
    basis.energies_ = solver.eigenvalues();
    basis.coefficients_ = solver.eigenvectors();
    // deterministic eigenvector sign: largest-magnitude coefficient positive
    for (int k = 0; k < N; ++k) {
        int imax = 0;
        basis.coefficients_.col(k).cwiseAbs().maxCoeff(&imax);
        if (basis.coefficients_(imax, k) < 0.0) basis.coefficients_.col(k) *= -1.0;
    }
    return basis;
}

Eigen::MatrixXd RadialBasis::overlap() const {
    return coefficients_.transpose() * coefficients_;
}

Eigen::MatrixXd RadialBasis::radialDipole(const RadialBasis& a, const RadialBasis& b) {
    if (a.scale_ != b.scale_ || a.Z_ != b.Z_)
        throw std::invalid_argument("radialDipole: bases must share scale and Z");
    if (b.l_ == a.l_ - 1) return radialDipole(b, a).transpose();
    if (b.l_ != a.l_ + 1)
        throw std::invalid_argument("radialDipole: channels must differ by one unit of l");

    // For l' = l+1 the integrand is x^(2l+4) e^-x L_j^(2l+2) L_k^(2l+4);
    // two steps of L_n^(a) = L_n^(a+1) - L_{n-1}^(a+1) make the operator a
    // three-band matrix:
    //   <u_j^(l)| r |u_k^(l+1)> = N_j N_k (k+2l+4)!/k! / (2s)^2
    //                             * (d_{j,k} - 2 d_{j,k+1} + d_{j,k+2}).
    const int Na = a.size_, Nb = b.size_;
    const int l = a.l_;
    const double twoS = 2.0 * a.scale_;
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(Na, Nb);
    for (int k = 0; k < Nb; ++k) {
        double fact = 1.0;  // (k+2l+4)! / k!
        for (int m = 1; m <= 2 * l + 4; ++m) fact *= double(k + m);
        const double base = laguerreNorm(k, l + 1, twoS) * fact / (twoS * twoS);
        if (k < Na) d(k, k) = laguerreNorm(k, l, twoS) * base;
        if (k + 1 < Na) d(k + 1, k) = -2.0 * laguerreNorm(k + 1, l, twoS) * base;
        if (k + 2 < Na) d(k + 2, k) = laguerreNorm(k + 2, l, twoS) * base;
    }
    return d;
}

Eigen::MatrixXd RadialBasis::pseudoStateDipole(const RadialBasis& a, const RadialBasis& b) {
    return a.coefficients_.transpose() * radialDipole(a, b) * b.coefficients_;
}

} // namespace mollow
