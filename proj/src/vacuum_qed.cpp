#include "mollow/vacuum_qed.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mollow {

namespace {
constexpr double kDegenerate = 1e-12;  // |Delta| below this counts as degenerate
}

DipoleStrengthTable::DipoleStrengthTable(const AtomicLevel& state,
                                         const std::vector<RadialBasis>& channels) {
    for (const auto& channel : channels) {
        if (std::abs(channel.l() - state.l) != 1)
            throw std::invalid_argument("DipoleStrengthTable: channel l must be l_a +- 1");
    }
    if (channels.empty()) return;  // no coupling: empty table

    const RadialBasis own = RadialBasis::build(state.l, channels.front().size(),
                                               channels.front().scale(),
                                               channels.front().Z());
    const int aIndex = state.n - state.l - 1;
    const double ea = own.energies()[aIndex];
    for (const auto& channel : channels) {
        const double weight = channelStrengthWeight(state.l, channel.l());
        const auto dip = RadialBasis::pseudoStateDipole(own, channel);
        for (int b = 0; b < channel.size(); ++b) {
            delta_.push_back(channel.energies()[b] - ea);
            strength_.push_back(weight * dip(aIndex, b) * dip(aIndex, b));
        }
    }
}

double DipoleStrengthTable::sumStrengthDelta(int power) const {
    double acc = 0.0;
    for (size_t b = 0; b < delta_.size(); ++b)
        acc += strength_[b] * std::pow(delta_[b], power);
    return acc;
}

SelfEnergyEvaluator::SelfEnergyEvaluator(const AtomicLevel& state,
                                         const std::vector<RadialBasis>& channels,
                                         const PhysicalConstants& consts)
    : table_(state, channels), consts_(consts) {}

double SelfEnergyEvaluator::prefactor() const {
    const double a = consts_.alpha;
    return 2.0 * a * a * a / (3.0 * std::numbers::pi);
}

double SelfEnergyEvaluator::momentumSquared() const {
    return table_.sumStrengthDelta(2);
}

double SelfEnergyEvaluator::integrand(double k) const {
    double acc = 0.0;
    for (size_t b = 0; b < table_.delta().size(); ++b)
        acc += table_.strength()[b] * k * k * k / (-table_.delta()[b] - k);
    return prefactor() * acc;
}

double SelfEnergyEvaluator::rawIntegral(double K) const {
    // Per state, with D = Delta_b:
    //   int_0^K k^3/(-D-k) dk = -K^3/3 + D K^2/2 - D^2 K + D^3 ln|(D+K)/D|,
    // principal value for D < 0. Adding back M k^2 + M D k removes the K^3
    // and K^2 pieces.
    double acc = 0.0;
    for (size_t b = 0; b < table_.delta().size(); ++b) {
        const double d = table_.delta()[b];
        const double m = table_.strength()[b];
        if (std::abs(d) < kDegenerate) continue;  // k^3/(-k): no residual term
        acc += m * (-d * d * K + d * d * d * std::log(std::abs((d + K) / d)));
    }
    return prefactor() * acc;
}

double SelfEnergyEvaluator::subtracted(double K) const {
    double logSum = 0.0;
    for (size_t b = 0; b < table_.delta().size(); ++b) {
        const double d = table_.delta()[b];
        if (std::abs(d) < kDegenerate) continue;
        logSum += table_.strength()[b] * d * d * d;
    }
    return rawIntegral(K) + prefactor() * (momentumSquared() * K - logSum * std::log(K));
}

double SelfEnergyEvaluator::betheLog() const {
    const double z2 = double(consts_.Z) * double(consts_.Z);
    double num = 0.0, den = 0.0;
    for (size_t b = 0; b < table_.delta().size(); ++b) {
        const double d = table_.delta()[b];
        if (std::abs(d) < kDegenerate) continue;
        const double w = table_.strength()[b] * d * d * d;
        num += w * std::log(2.0 * std::abs(d) / z2);
        den += w;
    }
    if (den == 0.0) return 0.0;
    return num / den;
}

SelfEnergyResult selfEnergySum(const AtomicLevel& state, double cutoff,
                               const std::vector<RadialBasis>& channels,
                               const PhysicalConstants& consts) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("selfEnergySum: cutoff must be > 0");
    SelfEnergyEvaluator eval(state, channels, consts);

    SelfEnergyResult res;
    res.cutoff = cutoff;
    if (eval.table().delta().empty()) return res;  // no dipole coupling: all zero

    res.rawIntegral = eval.rawIntegral(cutoff);
    res.subtractedValue = -eval.prefactor() * [&] {
        double acc = 0.0;
        for (size_t b = 0; b < eval.table().delta().size(); ++b) {
            const double d = eval.table().delta()[b];
            if (std::abs(d) < kDegenerate) continue;
            acc += eval.table().strength()[b] * d * d * d * std::log(std::abs(d));
        }
        return acc;
    }();
    res.betheLog = eval.betheLog();
    if (!channels.empty())
        res.basisSizeLadder.emplace_back(channels.front().size(), res.betheLog);

    // The subtraction constants are reliable only once K dominates the
    // pseudo-spectrum's excitation range.
    double maxDelta = 0.0;
    for (double d : eval.table().delta()) maxDelta = std::max(maxDelta, std::abs(d));
    res.lowConfidence = cutoff < std::max(50.0, 2.0 * maxDelta);
    return res;
}

std::pair<std::vector<std::pair<int, double>>, double>
betheLogLadder(const AtomicLevel& state, const std::vector<int>& ladder, double scale,
               const PhysicalConstants& consts) {
    if (ladder.size() < 2)
        throw std::invalid_argument("betheLogLadder: need at least two basis sizes");

    std::vector<std::pair<int, double>> samples;
    for (int N : ladder) {
        std::vector<RadialBasis> channels;
        if (state.l > 0) channels.push_back(RadialBasis::build(state.l - 1, N, scale, consts.Z));
        channels.push_back(RadialBasis::build(state.l + 1, N, scale, consts.Z));
        SelfEnergyEvaluator eval(state, channels, consts);
        samples.emplace_back(N, eval.betheLog());
    }

    // Richardson (Neville) table in 1/N.
    const int m = int(samples.size());
    std::vector<std::vector<double>> t(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) t[i][0] = samples[i].second;
    for (int col = 1; col < m; ++col)
        for (int i = col; i < m; ++i)
            t[i][col] = t[i][col - 1] +
                        (t[i][col - 1] - t[i - 1][col - 1]) /
                            (double(samples[i].first) / double(samples[i - col].first) - 1.0);
    return {samples, t[m - 1][m - 1]};
}

double betheLogExtrapolated(const AtomicLevel& state, const std::vector<int>& ladder,
                            double scale, const PhysicalConstants& consts) {
    return betheLogLadder(state, ladder, scale, consts).second;
}

ContinuumMeasure discreteToContinuumWeight(double volume, int modeCount) {
    if (!(volume > 0.0)) throw std::invalid_argument("discreteToContinuumWeight: V must be > 0");
    (void)modeCount;  // the V -> inf rule is independent of the mode count
    ContinuumMeasure m;
    m.modeDensity = volume / std::pow(2.0 * std::numbers::pi, 3);
    m.solidAngle = 4.0 * std::numbers::pi;
    m.transverseAverage = 2.0 / 3.0;
    return m;
}

double photonPhaseSpaceWeight(double k) { return k * k * k; }

} // namespace mollow
