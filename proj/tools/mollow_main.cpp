// Command-line front end: dressed-state correction ledger for the
// hydrogen 1S-3P_j Mollow sidebands plus master-equation spectra.
//
// Commands: ledger, table1, spectrum, scan. Shared options may come from a
// flat key=value config file (--config); command line takes precedence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mollow/ledger.hpp"
#include "mollow/spectrum.hpp"

using namespace mollow;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string j = "both";  // "1/2", "3/2", "both"
    double rabiInGamma = 1000.0;
    double detuningInGamma = 50.0;
    double gammaOverride = 0.0;   // s^-1; 0 = default 1.6725e8
    double omegaROverride = 0.0;  // s^-1; 0 = reduced-mass 1S-3P value
    std::string cBsMode = "quarter";
    std::string sigmaMode = "quadrature";
    double gamma2S = 8.229;
    int levels = 2;
    double gridMin = -1300.0, gridMax = 1300.0;  // Gamma units
    int gridPoints = 521;
    double rabiMin = 1000.0, rabiMax = 1000.0;
    int rabiSteps = 1;
    double detuningMin = 50.0, detuningMax = 50.0;
    int detuningSteps = 1;
    std::string outDir = ".";
    PhysicalConstants consts{};
};

std::vector<int> selectedTwoJ(const std::string& j) {
    if (j == "1/2") return {1};
    if (j == "3/2") return {3};
    return {1, 3};
}

DriveConfig makeDrive(const RunConfig& rc, int twoJ) {
    DriveConfig d = referenceDrive(twoJ, rc.consts, rc.rabiInGamma, rc.detuningInGamma);
    if (rc.gammaOverride > 0.0) {
        d.gamma = rc.gammaOverride;
        d.rabi = rc.rabiInGamma * d.gamma;
        d.detuning = rc.detuningInGamma * d.gamma;
    }
    if (rc.omegaROverride > 0.0) d.omegaR = rc.omegaROverride;
    return d;
}

LedgerOptions makeOptions(const RunConfig& rc) {
    LedgerOptions opt;
    opt.cBlochSiegert = rc.cBsMode == "unity" ? 1.0 : 0.25;
    opt.sigmaMode = rc.sigmaMode == "linear" ? SigmaMode::Linear : SigmaMode::Quadrature;
    opt.consts = rc.consts;
    return opt;
}

void writeFile(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

// ---------------------------------------------------------------- ledger --
int runLedger(const RunConfig& rc) {
    fs::create_directories(rc.outDir);
    const auto opt = makeOptions(rc);
    const auto half = ledgerReport(makeDrive(rc, 1), opt);
    const auto threeHalf = ledgerReport(makeDrive(rc, 3), opt);

    const std::string table = ledgerTable(half, threeHalf);
    std::cout << table;
    writeFile(fs::path(rc.outDir) / "ledger.txt", table);

    nlohmann::ordered_json j;
    j["j=1/2"] = nlohmann::ordered_json::parse(ledgerToJson(half));
    j["j=3/2"] = nlohmann::ordered_json::parse(ledgerToJson(threeHalf));
    writeFile(fs::path(rc.outDir) / "ledger.json", j.dump(2));

    for (int twoJ : selectedTwoJ(rc.j)) {
        const auto& ledger = twoJ == 1 ? half : threeHalf;
        std::printf("combined j=%s: %.1f kHz (terms %.1f, multi %.1f)\n",
                    twoJ == 1 ? "1/2" : "3/2", ledger.combinedShiftKhz.value,
                    ledger.combinedShiftKhz.sigma, ledger.multiShiftKhz);
    }
    return 0;
}

// ---------------------------------------------------------------- table1 --
struct RowCheck {
    CorrectionKind kind;
    double wantHalf, wantThreeHalf;
    double relTol;   // relative tolerance; 0 means use absTol
    double absTol;   // kHz
};

int runTable1(const RunConfig& rc) {
    fs::create_directories(rc.outDir);
    const auto opt = makeOptions(rc);
    const auto half = ledgerReport(makeDrive(rc, 1), opt);
    const auto threeHalf = ledgerReport(makeDrive(rc, 3), opt);

    const std::string table = ledgerTable(half, threeHalf);
    std::cout << table;
    writeFile(fs::path(rc.outDir) / "table1.txt", table);
    nlohmann::ordered_json j;
    j["j=1/2"] = nlohmann::ordered_json::parse(ledgerToJson(half));
    j["j=3/2"] = nlohmann::ordered_json::parse(ledgerToJson(threeHalf));
    writeFile(fs::path(rc.outDir) / "table1.json", j.dump(2));

    // Reference values with their acceptance tolerances.
    const std::vector<RowCheck> checks = {
        {CorrectionKind::LambBare, 1613618.0, 1611093.0, 1e-4, 0.0},
        {CorrectionKind::BlochSiegert, -3.025, -3.025, 1e-2, 0.0},
        {CorrectionKind::OffResonant, -62.91, -62.91, 5e-3, 0.0},
        {CorrectionKind::RelativisticDipole, -799.16, -336.63, 5e-3, 0.0},
        {CorrectionKind::FieldConfiguration, -52.434, -52.434, 5e-3, 0.0},
        {CorrectionKind::DressedSelfEnergy, -29.0, -29.0, 0.0, 1.0},
        {CorrectionKind::RadiativeDipole, 66.0, 66.0, 0.0, 1.0},
        {CorrectionKind::Secular, -13.29, -13.29, 5e-3, 0.0},
    };

    bool allGood = true;
    std::string diff;
    char buf[200];
    auto checkRow = [&](const CorrectionLedger& ledger, const RowCheck& c, double want) {
        double got = 0.0;
        for (const auto& row : ledger.rows)
            if (row.term.kind == c.kind) got = row.shiftKhz.value;
        const double tol = c.relTol > 0.0 ? std::abs(want) * c.relTol : c.absTol;
        const bool ok = std::abs(got - want) <= tol;
        if (!ok) {
            std::snprintf(buf, sizeof buf, "  %-16s got %12.3f want %12.3f (tol %.3f)\n",
                          correctionName(c.kind).c_str(), got, want, tol);
            diff += buf;
            allGood = false;
        }
    };
    for (const auto& c : checks) {
        checkRow(half, c, c.wantHalf);
        checkRow(threeHalf, c, c.wantThreeHalf);
    }
    auto checkCombined = [&](const CorrectionLedger& ledger, double want) {
        if (std::abs(ledger.combinedShiftKhz.value - want) > 10.0) {
            std::snprintf(buf, sizeof buf,
                          "  combined         got %12.1f want %12.1f (tol 10.0)\n",
                          ledger.combinedShiftKhz.value, want);
            diff += buf;
            allGood = false;
        }
    };
    checkCombined(half, 1612394.0);
    checkCombined(threeHalf, 1610305.0);

    if (!allGood) {
        std::cout << "out-of-tolerance rows:\n" << diff;
        return 2;
    }
    std::cout << "all rows within tolerance\n";
    return 0;
}

// -------------------------------------------------------------- spectrum --
int runSpectrum(const RunConfig& rc) {
    fs::create_directories(rc.outDir);
    if (rc.gridPoints < 2 || !(rc.gridMax > rc.gridMin))
        throw CLI::ValidationError("spectrum", "grid must be monotone with >= 2 points");

    const int twoJ = selectedTwoJ(rc.j).front();
    const DriveConfig drive = makeDrive(rc, twoJ);
    const auto twoLevel = LevelScheme::twoLevel(drive);
    const LevelScheme scheme =
        rc.levels == 3 ? LevelScheme::threeLevel(drive, rc.gamma2S) : twoLevel;

    std::vector<double> offsets(rc.gridPoints);
    for (int i = 0; i < rc.gridPoints; ++i)
        offsets[i] = drive.gamma * (rc.gridMin + (rc.gridMax - rc.gridMin) * i /
                                                     double(rc.gridPoints - 1));
    const auto trace = incoherentSpectrum(scheme, offsets);
    {
        std::ofstream os(fs::path(rc.outDir) / "spectrum.csv", std::ios::binary);
        trace.writeCsv(os);
    }

    // Peak summary: seeds at -Omega_R, 0, +Omega_R.
    const double omegaR = generalizedRabi(drive);
    nlohmann::ordered_json peaksJson = nlohmann::ordered_json::array();
    std::string summary;
    char buf[200];
    int peaksInGrid = 0;
    for (double seed : {-omegaR, 0.0, +omegaR}) {
        const auto p = refinePeak(scheme, seed);
        const bool inGrid = p.offset >= offsets.front() && p.offset <= offsets.back();
        peaksInGrid += inGrid;
        std::snprintf(buf, sizeof buf,
                      "peak at %+.9e Gamma (%+.6e kHz), curvature %.3e, residual %.1e%s\n",
                      p.offset / drive.gamma, angularToKilohertz(p.offset), p.curvature,
                      p.refinementResidual, inGrid ? "" : "  [outside grid]");
        summary += buf;
        peaksJson.push_back({{"offset_gamma", p.offset / drive.gamma},
                             {"offset_khz", angularToKilohertz(p.offset)},
                             {"curvature", p.curvature},
                             {"residual", p.refinementResidual},
                             {"in_grid", inGrid}});
    }

    nlohmann::ordered_json out;
    out["levels"] = scheme.dimension;
    out["peaks"] = peaksJson;

    if (rc.levels == 3) {
        const double multi = multiLevelSidebandShift(twoLevel, scheme);
        const double total3 = sidebandDisplacementRatio(scheme);
        const double total2 = sidebandDisplacementRatio(twoLevel);
        std::snprintf(buf, sizeof buf,
                      "omega_hat_multi (peak3-peak2)/peak2 = %+.4e\n"
                      "blue-sideband displacement (peak-OmegaR)/OmegaR: 2-level %+.4e, "
                      "3-level %+.4e (|3-level| is the quoted 6.3e-7 scale)\n",
                      multi, total2, total3);
        summary += buf;
        out["omega_hat_multi"] = multi;
        out["displacement_ratio_2level"] = total2;
        out["displacement_ratio_3level"] = total3;
    }

    std::cout << summary;
    writeFile(fs::path(rc.outDir) / "peaks.txt", summary);
    writeFile(fs::path(rc.outDir) / "peaks.json", out.dump(2));

    if (peaksInGrid == 0) {
        std::cerr << "warning: the sampling grid excludes every spectral peak\n";
        return 3;
    }
    return 0;
}

// ------------------------------------------------------------------ scan --
int runScan(const RunConfig& rc) {
    fs::create_directories(rc.outDir);
    if (rc.rabiSteps < 1 || rc.detuningSteps < 1 || !(rc.rabiMin > 0.0))
        throw CLI::ValidationError("scan", "grid bounds must be positive");

    const auto opt = makeOptions(rc);
    std::string csv =
        "rabi_gamma,detuning_gamma,shift_half_khz,shift_half_sigma_khz,"
        "shift_threehalf_khz,shift_threehalf_sigma_khz,difference_khz\n";
    char buf[320];
    for (int i = 0; i < rc.rabiSteps; ++i) {
        const double w = rc.rabiSteps == 1
                             ? rc.rabiMin
                             : rc.rabiMin + (rc.rabiMax - rc.rabiMin) * i / (rc.rabiSteps - 1.0);
        for (int k = 0; k < rc.detuningSteps; ++k) {
            const double dd = rc.detuningSteps == 1
                                  ? rc.detuningMin
                                  : rc.detuningMin + (rc.detuningMax - rc.detuningMin) * k /
                                                         (rc.detuningSteps - 1.0);
            RunConfig point = rc;
            point.rabiInGamma = w;
            point.detuningInGamma = dd;
            const auto half = ledgerReport(makeDrive(point, 1), opt);
            const auto threeHalf = ledgerReport(makeDrive(point, 3), opt);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", w,
                          dd, half.combinedShiftKhz.value, half.combinedShiftKhz.sigma,
                          threeHalf.combinedShiftKhz.value, threeHalf.combinedShiftKhz.sigma,
                          half.combinedShiftKhz.value - threeHalf.combinedShiftKhz.value);
            csv += buf;
        }
    }
    writeFile(fs::path(rc.outDir) / "scan.csv", csv);
    std::cout << "wrote " << (fs::path(rc.outDir) / "scan.csv").string() << " ("
              << rc.rabiSteps * rc.detuningSteps << " points)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dressed-state corrections and fluorescence spectra for the "
                 "laser-driven hydrogen 1S-3P_j system"};
    app.require_subcommand(1);
    RunConfig rc;

    app.set_config("--config", "", "flat key=value configuration file");
    app.add_option("--j", rc.j, "fine-structure component: 1/2, 3/2 or both")
        ->check(CLI::IsMember({"1/2", "3/2", "both"}))
        ->capture_default_str();
    app.add_option("--rabi", rc.rabiInGamma, "Rabi frequency in units of Gamma")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--detuning", rc.detuningInGamma, "detuning in units of Gamma")
        ->capture_default_str();
    app.add_option("--gamma", rc.gammaOverride, "override Gamma (angular s^-1)");
    app.add_option("--omega-r", rc.omegaROverride, "override omega_R (angular s^-1)");
    app.add_option("--cbs", rc.cBsMode, "Bloch-Siegert coefficient convention")
        ->check(CLI::IsMember({"quarter", "unity"}))
        ->capture_default_str();
    app.add_option("--sigma", rc.sigmaMode, "uncertainty combination mode")
        ->check(CLI::IsMember({"quadrature", "linear"}))
        ->capture_default_str();
    app.add_option("--gamma2s", rc.gamma2S, "2S -> 1S decay rate (s^-1)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--levels", rc.levels, "2- or 3-level simulation")
        ->check(CLI::IsMember({2, 3}))
        ->capture_default_str();
    app.add_option("--grid-min", rc.gridMin, "spectrum grid start (Gamma units)")
        ->capture_default_str();
    app.add_option("--grid-max", rc.gridMax, "spectrum grid end (Gamma units)")
        ->capture_default_str();
    app.add_option("--grid-points", rc.gridPoints, "spectrum grid size")
        ->capture_default_str();
    app.add_option("--rabi-min", rc.rabiMin, "scan: first Rabi value (Gamma units)")
        ->capture_default_str();
    app.add_option("--rabi-max", rc.rabiMax, "scan: last Rabi value (Gamma units)")
        ->capture_default_str();
    app.add_option("--rabi-steps", rc.rabiSteps, "scan: Rabi grid size")
        ->capture_default_str();
    app.add_option("--detuning-min", rc.detuningMin, "scan: first detuning (Gamma units)")
        ->capture_default_str();
    app.add_option("--detuning-max", rc.detuningMax, "scan: last detuning (Gamma units)")
        ->capture_default_str();
    app.add_option("--detuning-steps", rc.detuningSteps, "scan: detuning grid size")
        ->capture_default_str();
    app.add_option("--out", rc.outDir, "output directory")->capture_default_str();
    app.add_option("--alpha", rc.consts.alpha, "fine-structure constant override");
    app.add_option("--rydberg-hz", rc.consts.rydbergFrequencyHz, "R_inf c in Hz");
    app.add_option("--mass-ratio", rc.consts.electronProtonMassRatio, "m_e/m_p");
    app.add_option("--z", rc.consts.Z, "nuclear charge")->check(CLI::PositiveNumber);

    auto* ledgerCmd = app.add_subcommand("ledger", "correction ledger at the given drive");
    auto* table1Cmd =
        app.add_subcommand("table1", "reference-drive table with tolerance checks");
    auto* spectrumCmd =
        app.add_subcommand("spectrum", "incoherent fluorescence spectrum and peaks");
    auto* scanCmd = app.add_subcommand("scan", "sideband shifts over an (Omega, Delta) grid");

    CLI11_PARSE(app, argc, argv);

    try {
        rc.consts.validate();
        if (ledgerCmd->parsed()) return runLedger(rc);
        if (table1Cmd->parsed()) return runTable1(rc);
        if (spectrumCmd->parsed()) return runSpectrum(rc);
        if (scanCmd->parsed()) return runScan(rc);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
