// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "deflection_oracle.hpp"
#include "gravshift/experiments.hpp"
#include "gravshift/gravity.hpp"
#include "gravshift/ray_tracer.hpp"
#include "gravshift/spectra.hpp"

using namespace gravshift;
using units::codata2018;
using units::Length;
using units::Mass;

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;
using Clock = std::chrono::steady_clock;

const std::filesystem::path kData = GRAVSHIFT_TEST_DATA_DIR;

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        ok = ok && cond;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += what + (cond ? "" : " [violated]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const gravity::BodyRegistry& bodies() {
    static const auto reg = gravity::load_body_registry(kData / "bodies.json");
    return reg;
}

const std::vector<experiments::ExperimentRecord>& records() {
    static const auto recs = experiments::load_registry(kData / "experiments.json", bodies());
    return recs;
}

const experiments::ExperimentRecord& record(const std::string& name) {
    for (const auto& r : records()) {
        if (r.name == name) {
            return r;
        }
    }
    throw ConfigurationError("registry lacks " + name);
}

Outcome tower_shift() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto& pr = record("pound_rebka_1960");
    const double predicted = -experiments::predict(pr, spectra::ShiftModel::EmitterMassDefect, bodies()).value();
    const double c2 = codata2018.c.value() * codata2018.c.value();
    const double standard = 9.80665 * 22.5 / c2;
    const auto& earth = bodies().find("earth");
    const double g_local =
        gravity::gradient(gravity::PotentialField({earth}), gravity::FieldPoint::at_altitude(earth, Length(0.0)))
            .value();
    const double elapsed = seconds_since(t0);
    o.require(rel_err(predicted, standard) < 2e-3, "exact/standard-g rel " + fmt("%.3e", rel_err(predicted, standard)));
    o.require(rel_err(predicted, g_local * 22.5 / c2) < 1e-5,
              "exact/local-g rel " + fmt("%.3e", rel_err(predicted, g_local * 22.5 / c2)));
    o.require(elapsed < 1.0, "time " + fmt("%.2e", elapsed) + " s");
    return o;
}

Outcome solar_shift() {
    Outcome o;
    const double predicted = -experiments::predict(record("snider_1972"), spectra::ShiftModel::PhotonInteraction,
                                                   bodies())
                                  .value();
    const auto& sun = bodies().find("sun");
    const double surface = sun.gm() / sun.radius().value() / (codata2018.c.value() * codata2018.c.value());
    o.require(rel_err(predicted, surface) < 1e-2,
              "predicted " + fmt("%.6e", predicted) + " vs GM/(R c^2) " + fmt("%.6e", surface));
    return o;
}

Outcome single_model_ratios() {
    Outcome o;
    for (const auto* name : {"pound_rebka_1960", "snider_1972"}) {
        const auto& r = record(name);
        const double expected = std::abs(r.measured_ratio - 1.0) / r.ratio_uncertainty;
        for (const auto model : {spectra::ShiftModel::EmitterMassDefect, spectra::ShiftModel::PhotonInteraction}) {
            const auto rep = experiments::compare(r, model, bodies());
            o.require(std::abs(rep.sigma_deviation - expected) < 1e-12 &&
                          rep.verdict == experiments::Verdict::Consistent,
                      std::string(name) + "/" + std::string(spectra::to_string(model)) + " sigma " +
                          fmt("%.4f", rep.sigma_deviation));
        }
    }
    return o;
}

Outcome double_effect_excluded() {
    Outcome o;
    const auto rep = experiments::compare(record("pound_snider_1965"), spectra::ShiftModel::DoubleEffect, bodies());
    o.require(std::abs(rep.sigma_deviation - 131.7) < 0.05 && rep.verdict == experiments::Verdict::Excluded,
              "pound_snider_1965 DoubleEffect sigma " + fmt("%.2f", rep.sigma_deviation));
    const auto summary = experiments::double_effect_verdict(records(), bodies());
    o.require(summary.exit_code() == 0, "report exit code " + std::to_string(summary.exit_code()));
    return o;
}

Outcome linearity() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<int> z_dist(1, 100);
    std::uniform_int_distribution<int> n_dist(1, 25);
    std::uniform_real_distribution<double> log_phi(std::log(1e-12), std::log(0.5));
    const BigFloat alpha(codata2018.alpha.value());
    const BigFloat c(codata2018.c.value());
    const BigFloat m(codata2018.m_electron.value());
    constexpr int kPairs = 1000;
    double worst = 0.0;
    for (int i = 0; i < kPairs;) {
        const int z = z_dist(rng);
        const int n1 = n_dist(rng), n2 = n_dist(rng);
        const int j1 = 2 * std::uniform_int_distribution<int>(0, n1 - 1)(rng) + 1;
        const int j2 = 2 * std::uniform_int_distribution<int>(0, n2 - 1)(rng) + 1;
        const auto a = spectra::QuantumState::from_principal(z, n1, j1);
        const auto b = spectra::QuantumState::from_principal(z, n2, j2);
        const BigFloat gap = spectra::level_energy_value(a, m, alpha, c) - spectra::level_energy_value(b, m, alpha, c);
        if (gap == 0) {
            continue;
        }
        const BigFloat x = -BigFloat(std::exp(log_phi(rng)));
        const BigFloat m_eff = m * (1 + x);
        const BigFloat gap_eff =
            spectra::level_energy_value(a, m_eff, alpha, c) - spectra::level_energy_value(b, m_eff, alpha, c);
        worst = std::max(worst, static_cast<double>(abs(((gap_eff - gap) / gap - x) / x)));
        ++i;
    }
    const double elapsed = seconds_since(t0);
    o.require(worst <= 1e-12, std::to_string(kPairs) + " pairs, worst rel " + fmt("%.2e", worst));
    o.require(elapsed < 5.0, "time " + fmt("%.2f", elapsed) + " s");
    return o;
}

Outcome hydrogen_levels() {
    Outcome o;
    const auto m = spectra::EffectiveMass::at_rest(spectra::Emitter::electron());
    const double e1 = units::to_electronvolts(spectra::level_energy(spectra::QuantumState::from_principal(1, 1, 1), m));
    o.require(rel_err(e1, 13.606) < 1e-4, "E(n=1) " + fmt("%.6f", e1) + " eV");
    const double split = units::to_electronvolts(
        spectra::level_energy(spectra::QuantumState::from_principal(1, 2, 1), m) -
        spectra::level_energy(spectra::QuantumState::from_principal(1, 2, 3), m));
    // (alpha^2 m c^2 / 2) (1/4) (alpha^2 / 2) (1 - 1/2)
    const double a = codata2018.alpha.value();
    const double oracle = units::to_electronvolts(
        units::Energy(a * a * codata2018.m_electron.value() * codata2018.c.value() * codata2018.c.value() / 2.0 *
                      0.25 * (a * a / 2.0) * 0.5));
    o.require(rel_err(split, oracle) < 5e-3, "n=2 splitting " + fmt("%.4e", split) + " eV");
    return o;
}

Outcome light_deflection() {
    Outcome o;
    using namespace gravshift::photon;
    const auto& sun = bodies().find("sun");
    const double gm = sun.gm();
    const double rs = sun.radius().value();
    double slowest = 0.0;
    auto timed = [&](const RayPath& path) {
        const auto t0 = Clock::now();
        const auto r = trace_ray(path, {1e-10});
        slowest = std::max(slowest, seconds_since(t0));
        return r;
    };
    const auto limb = timed(periapsis_flyby(sun, Length(rs * (1.0 + 1e-9))));
    const double oracle = test::deflection_quadrature(gm, rs);
    o.require(rel_err(std::abs(limb.deflection_angle), oracle) < 2e-2,
              "limb " + fmt("%.5f", std::abs(limb.deflection_angle) * 206264.80624709636) + " arcsec vs " +
                  fmt("%.5f", oracle * 206264.80624709636));
    const auto r10 = timed(flyby(PlanarField::single(sun), Length(10 * rs)));
    const auto r20 = timed(flyby(PlanarField::single(sun), Length(20 * rs)));
    const double ratio = r20.deflection_angle / r10.deflection_angle;
    o.require(std::abs(ratio - 0.5) / 0.5 < 1e-3, "alpha(20R)/alpha(10R) " + fmt("%.7f", ratio));
    const auto empty = timed(flyby(PlanarField(), Length(rs)));
    o.require(empty.deflection_angle == 0.0 &&
                  rel_err(empty.transit_time.value(), empty.straight_line_time.value()) < 1e-12,
              "empty field deflection " + fmt("%.1e", empty.deflection_angle));
    o.require(slowest < 10.0, "slowest trace " + fmt("%.3f", slowest) + " s");
    return o;
}

Outcome model_algebra() {
    Outcome o;
    std::vector<experiments::ExperimentRecord> geometries = records();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> factor(1.0, 1e4);
    const double rs = bodies().find("sun").radius().value();
    const double re = bodies().find("earth").radius().value();
    for (int i = 0; i < 100; ++i) {
        geometries.push_back(
            {"random", experiments::TwoPointGeometry{
                           gravity::FieldPoint("e", {{"sun", Length(rs * factor(rng))}, {"earth", Length(re * factor(rng))}}),
                           gravity::FieldPoint("o", {{"sun", Length(rs * factor(rng))}, {"earth", Length(re * factor(rng))}})},
             1.0, 0.1, ""});
    }
    int mismatches = 0;
    for (const auto& g : geometries) {
        const double e = experiments::predict(g, spectra::ShiftModel::EmitterMassDefect, bodies()).value();
        const double p = experiments::predict(g, spectra::ShiftModel::PhotonInteraction, bodies()).value();
        const double d = experiments::predict(g, spectra::ShiftModel::DoubleEffect, bodies()).value();
        mismatches += (e != p || d != 2.0 * e) ? 1 : 0;
    }
    o.require(mismatches == 0, std::to_string(geometries.size()) + " geometries, " + std::to_string(mismatches) +
                                   " mismatches");
    return o;
}

Outcome atomic_scale() {
    Outcome o;
    const auto& earth = bodies().find("earth");
    const gravity::PotentialField field({earth});
    const auto p = gravity::FieldPoint::at_altitude(earth, Length(0.0));
    const double bohr = 5.29177210903e-11;
    const double ratio = gravity::atomic_scale_correction(field, p, Length(bohr)).value() /
                         std::abs(gravity::potential(field, p).value());
    const double expected = bohr / earth.radius().value();
    o.require(rel_err(ratio, expected) < 1e-12, "ratio " + fmt("%.6e", ratio) + " vs a/r " + fmt("%.6e", expected));
    o.require(ratio < 1e-16, "below 1e-16");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"tower_shift", tower_shift},
        {"solar_shift", solar_shift},
        {"single_model_ratios", single_model_ratios},
        {"double_effect_excluded", double_effect_excluded},
        {"mass_scaling_linearity", linearity},
        {"hydrogen_levels", hydrogen_levels},
        {"light_deflection", light_deflection},
        {"model_algebra", model_algebra},
        {"atomic_scale_correction", atomic_scale},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.ok ? 0 : 1;
        std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
