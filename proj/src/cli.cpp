#include "gravshift/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "format.hpp"
#include "gravshift/experiments.hpp"
#include "gravshift/gravity.hpp"
#include "gravshift/photon.hpp"
#include "gravshift/ray_tracer.hpp"
#include "gravshift/registry.hpp"
#include "gravshift/spectra.hpp"
#include "gravshift/units.hpp"

namespace gravshift::cli {

namespace {

using units::codata2018;
using units::Length;
using units::Potential;

constexpr double kArcsecPerRadian = 206264.80624709636;

class UsageError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Output tables

using Cell = std::variant<std::string, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

nlohmann::ordered_json row_json(const Table& t, const std::vector<Cell>& row) {
    nlohmann::ordered_json j;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        std::visit([&](const auto& v) { j[t.columns[c]] = v; }, row[c]);
    }
    return j;
}

/// json: an object when `single`, else an array of objects. csv: header plus
/// %.17g rows. text: aligned columns.
void emit_table(const Table& t, const std::string& format, bool single, std::ostream& out) {
    if (format == "json") {
        if (single && t.rows.size() == 1) {
            out << row_json(t, t.rows.front()).dump(2) << "\n";
        } else {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& row : t.rows) {
                arr.push_back(row_json(t, row));
            }
            out << arr.dump(2) << "\n";
        }
        return;
    }
    if (format == "csv") {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            out << (c ? "," : "") << t.columns[c];
        }
        out << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "");
                if (const auto* s = std::get_if<std::string>(&row[c])) {
                    out << csv_escape(*s);
                } else {
                    out << detail::round_trip(std::get<double>(row[c]));
                }
            }
            out << "\n";
        }
        return;
    }
    // text
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (const auto& cell : row) {
            if (const auto* s = std::get_if<std::string>(&cell)) {
                line.push_back(*s);
            } else {
                line.push_back(detail::brief(std::get<double>(cell), 10));
            }
        }
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        width[c] = t.columns[c].size();
        for (const auto& line : cells) {
            width[c] = std::max(width[c], line[c].size());
        }
    }
    auto print = [&](const std::vector<std::string>& line) {
        std::string s;
        for (std::size_t c = 0; c < line.size(); ++c) {
            s += c + 1 < line.size() ? detail::pad_right(line[c], width[c] + 2) : line[c];
        }
        out << s << "\n";
    };
    print(t.columns);
    for (const auto& line : cells) {
        print(line);
    }
}

// ---------------------------------------------------------------------------
// Argument helpers

double parse_number(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw UsageError("invalid number '" + std::string(text) + "' in " + std::string(what));
    }
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        out.emplace_back(s.substr(pos, next - pos));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

std::filesystem::path resolve_data_file(const std::string& flag, const char* file_name) {
    if (flag.empty() || flag == "default") {
        return data_directory() / file_name;
    }
    return flag;
}

/// "body:ALT" (altitude above the surface) or "body:r=R" (distance from the
/// centre), comma separated for several bodies.
gravity::FieldPoint parse_point(const std::string& text, const gravity::BodyRegistry& registry) {
    std::vector<gravity::BodyDistance> distances;
    for (const auto& term : split(text, ',')) {
        const auto colon = term.find(':');
        if (colon == std::string::npos || colon == 0) {
            throw UsageError("field point '" + text + "': expected body:altitude_m or body:r=r_m");
        }
        const auto name = term.substr(0, colon);
        const auto& body = registry.find(name);
        std::string_view value(term);
        value.remove_prefix(colon + 1);
        double r = 0.0;
        if (value.substr(0, 2) == "r=") {
            r = parse_number(value.substr(2), "field point '" + text + "'");
        } else {
            r = body.radius().value() + parse_number(value, "field point '" + text + "'");
        }
        distances.push_back({name, Length(r)});
    }
    return gravity::FieldPoint(text, std::move(distances));
}

gravity::PotentialField field_for(const gravity::FieldPoint& point, const gravity::BodyRegistry& registry) {
    std::vector<gravity::CelestialBody> bodies;
    for (const auto& d : point.distances()) {
        bodies.push_back(registry.find(d.body));
    }
    return gravity::PotentialField(std::move(bodies));
}

int parse_two_j(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = parse_number(std::string_view(text).substr(0, slash), "j");
        const double den = parse_number(std::string_view(text).substr(slash + 1), "j");
        if (den != 2.0 || num != std::floor(num)) {
            throw UsageError("j must be a half-integer such as 1/2 or 3/2");
        }
        return static_cast<int>(num);
    }
    const double twice = 2.0 * parse_number(text, "j");
    if (twice != std::floor(twice)) {
        throw UsageError("j must be a half-integer such as 0.5 or 1.5");
    }
    return static_cast<int>(twice);
}

// ---------------------------------------------------------------------------
// Subcommands

struct CommonOptions {
    std::string format = "json";
    std::string bodies = "default";
};

void add_common(CLI::App* sub, CommonOptions& opts, std::vector<std::string> formats) {
    sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember(std::move(formats)));
    sub->add_option("--bodies", opts.bodies, "Body registry JSON file, or 'default'");
}

int run_constants(const CommonOptions&, std::ostream& out) {
    const auto& k = codata2018;
    nlohmann::ordered_json j;
    j["G"] = k.G.value();
    j["c"] = k.c.value();
    j["h"] = k.h.value();
    j["hbar"] = k.hbar.value();
    j["alpha"] = k.alpha.value();
    j["m_electron"] = k.m_electron.value();
    j["eV"] = k.eV.value();
    out << j.dump(2) << "\n";
    return kExitOk;
}

struct PotentialOptions {
    CommonOptions common;
    std::string point;
    std::optional<double> mass_kg;
    std::optional<double> atomic_scale_m;
};

int run_potential(const PotentialOptions& o, std::ostream& out) {
    const auto registry = gravity::load_body_registry(resolve_data_file(o.common.bodies, "bodies.json"));
    const auto point = parse_point(o.point, registry);
    const auto field = field_for(point, registry);
    const auto phi = gravity::potential(field, point);
    Table t;
    t.columns = {"point", "potential_m2_s2", "phi_over_c2", "gradient_m_s2"};
    std::vector<Cell> row{o.point, phi.value(), (phi / units::c_squared()).value(),
                          gravity::gradient(field, point).value()};
    if (o.mass_kg) {
        t.columns.push_back("binding_energy_J");
        row.emplace_back(gravity::binding_energy(units::Mass(*o.mass_kg), field, point).value());
    }
    if (o.atomic_scale_m) {
        t.columns.push_back("atomic_correction_m2_s2");
        row.emplace_back(gravity::atomic_scale_correction(field, point, Length(*o.atomic_scale_m)).value());
    }
    t.rows.push_back(std::move(row));
    emit_table(t, o.common.format, true, out);
    return kExitOk;
}

struct EndpointOptions {
    std::string body;
    std::optional<double> emit_alt, obs_alt, emit_r, obs_r;
    std::string emit, obs;
};

std::pair<gravity::FieldPoint, gravity::FieldPoint> resolve_endpoints(const EndpointOptions& o,
                                                                      const gravity::BodyRegistry& registry) {
    if (!o.emit.empty() || !o.obs.empty()) {
        if (o.emit.empty() || o.obs.empty() || !o.body.empty()) {
            throw UsageError("use either --emit and --obs, or --body with altitudes/radii");
        }
        return {parse_point(o.emit, registry), parse_point(o.obs, registry)};
    }
    if (o.body.empty()) {
        throw UsageError("--body (or --emit/--obs) is required");
    }
    const auto& body = registry.find(o.body);
    auto end = [&](const std::optional<double>& alt, const std::optional<double>& r, const char* label) {
        if (alt.has_value() == r.has_value()) {
            throw UsageError(std::string("give exactly one of --") + label + "-alt and --" + label + "-r-m");
        }
        return alt ? gravity::FieldPoint::at_altitude(body, Length(*alt), label)
                   : gravity::FieldPoint::at_radius(body, Length(*r), label);
    };
    return {end(o.emit_alt, o.emit_r, "emit"), end(o.obs_alt, o.obs_r, "obs")};
}

void add_endpoint_options(CLI::App* sub, EndpointOptions& o) {
    sub->add_option("--body", o.body, "Single source body");
    sub->add_option("--emit-alt", o.emit_alt, "Emitter altitude above the surface, m");
    sub->add_option("--obs-alt", o.obs_alt, "Observer altitude above the surface, m");
    sub->add_option("--emit-r-m", o.emit_r, "Emitter distance from the body centre, m");
    sub->add_option("--obs-r-m", o.obs_r, "Observer distance from the body centre, m");
    sub->add_option("--emit", o.emit, "Emitter point, e.g. sun:0,earth:r=1.496e11");
    sub->add_option("--obs", o.obs, "Observer point");
}

struct ShiftOptions {
    CommonOptions common;
    EndpointOptions ends;
    std::string model = "all";
};

int run_shift(const ShiftOptions& o, std::ostream& out) {
    const auto registry = gravity::load_body_registry(resolve_data_file(o.common.bodies, "bodies.json"));
    const auto [emit, obs] = resolve_endpoints(o.ends, registry);
    const auto field = field_for(emit, registry);
    const auto phi_emit = gravity::potential(field, emit);
    const auto phi_obs = gravity::potential(field, obs);

    std::vector<spectra::ShiftModel> models;
    if (o.model == "all") {
        models.assign(spectra::kAllShiftModels.begin(), spectra::kAllShiftModels.end());
    } else {
        models.push_back(spectra::parse_shift_model(o.model));
    }
    Table t;
    t.columns = {"model", "phi_emit_m2_s2", "phi_obs_m2_s2", "delta_nu_over_nu", "shift"};
    for (const auto model : models) {
        const auto shift = spectra::fractional_shift(model, phi_emit, phi_obs);
        t.rows.push_back({std::string(spectra::to_string(model)), phi_emit.value(), phi_obs.value(), shift.value(),
                          std::string(spectra::to_string(spectra::classify_shift(shift)))});
    }
    emit_table(t, o.common.format, false, out);
    return kExitOk;
}

struct SpectrumOptions {
    CommonOptions common;
    int z = 1;
    std::optional<int> n_max;
    std::vector<std::string> states;
    std::string point;
    std::optional<double> rest_mass_kg;
};

int run_spectrum(const SpectrumOptions& o, std::ostream& out) {
    std::vector<spectra::QuantumState> states;
    for (const auto& s : o.states) {
        const auto parts = split(s, ',');
        if (parts.size() != 2) {
            throw UsageError("--state expects n_prime,j (e.g. 0,1/2)");
        }
        const double n_prime = parse_number(parts[0], "--state");
        if (n_prime != std::floor(n_prime)) {
            throw UsageError("n' must be an integer");
        }
        states.push_back(spectra::QuantumState::from_radial(o.z, static_cast<int>(n_prime), parse_two_j(parts[1])));
    }
    if (o.n_max) {
        for (int n = 1; n <= *o.n_max; ++n) {
            const auto level = spectra::states_with_principal(o.z, n);
            states.insert(states.end(), level.begin(), level.end());
        }
    }
    if (states.empty()) {
        throw UsageError("give --n-max or at least one --state");
    }

    Potential phi(0.0);
    if (!o.point.empty()) {
        const auto registry = gravity::load_body_registry(resolve_data_file(o.common.bodies, "bodies.json"));
        const auto point = parse_point(o.point, registry);
        phi = gravity::potential(field_for(point, registry), point);
    }
    const spectra::Emitter emitter = o.rest_mass_kg
                                         ? spectra::Emitter(units::Mass(*o.rest_mass_kg), spectra::EmitterKind::Nucleon)
                                         : spectra::Emitter::electron();
    const auto m_eff = spectra::effective_mass(emitter, phi);
    const auto m_rest = spectra::EffectiveMass::at_rest(emitter);

    Table t;
    t.columns = {"state", "E_eV", "nu_Hz", "shift_fractional"};
    for (const auto& s : states) {
        const auto energy = spectra::level_energy(s, m_eff);
        const auto shift = units::fractional(spectra::level_shift(s, emitter, phi), spectra::level_energy(s, m_rest));
        t.rows.push_back({"Z=" + std::to_string(s.z()) + " " + s.label(), units::to_electronvolts(energy),
                          units::energy_to_frequency(energy).value(), shift.value()});
    }
    emit_table(t, o.common.format, false, out);
    return kExitOk;
}

struct PhotonOptions {
    CommonOptions common;
    std::string body;
    std::optional<double> b_m, b_radii;
    bool periapsis = false;
    double tolerance = 1e-10;
    double termination_factor = 1000.0;
    std::optional<double> sweep_from, sweep_to;
    int sweep_count = 0;
};

std::vector<Cell> trace_row(const gravity::CelestialBody& body, double b, const PhotonOptions& o) {
    const auto path = o.periapsis ? photon::periapsis_flyby(body, Length(b), o.termination_factor)
                                  : photon::flyby(photon::PlanarField::single(body), Length(b), o.termination_factor);
    const auto r = photon::trace_ray(path, photon::StepControl{o.tolerance});
    const double deflection = std::abs(r.deflection_angle);
    return {b,
            deflection,
            deflection * kArcsecPerRadian,
            r.transit_time.value(),
            r.time_excess().value(),
            r.closest_approach.value(),
            r.deflection_error_estimate};
}

int run_photon(const PhotonOptions& o, std::ostream& out) {
    const auto registry = gravity::load_body_registry(resolve_data_file(o.common.bodies, "bodies.json"));
    const auto& body = registry.find(o.body);
    const double radius = body.radius().value();
    Table t;
    t.columns = {"impact_parameter_m", "deflection_rad",  "deflection_arcsec",
                 "transit_time_s",     "time_excess_s",   "closest_approach_m",
                 "deflection_error_estimate_rad"};
    if (o.periapsis) {
        t.columns.front() = "periapsis_m";
    }

    const bool sweep = o.sweep_from || o.sweep_to || o.sweep_count;
    if (!sweep) {
        if (o.b_m.has_value() == o.b_radii.has_value()) {
            throw UsageError("give exactly one of --b-m and --b-radii");
        }
        const double b = o.b_m ? *o.b_m : *o.b_radii * radius;
        t.rows.push_back(trace_row(body, b, o));
        emit_table(t, o.common.format, true, out);
        return kExitOk;
    }

    if (!o.sweep_from || !o.sweep_to || o.sweep_count < 2) {
        throw UsageError("sweep needs --sweep-from-radii, --sweep-to-radii and --sweep-count >= 2");
    }
    const int count = o.sweep_count;
    std::vector<double> bs(count);
    for (int i = 0; i < count; ++i) {
        bs[i] = radius * (*o.sweep_from + (*o.sweep_to - *o.sweep_from) * i / (count - 1));
    }
    // Rays are independent; rows keep input order.
    std::vector<std::vector<Cell>> rows(count);
    std::vector<std::string> failures(count);
    std::atomic<int> next{0};
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), count));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    rows[i] = trace_row(body, bs[i], o);
                } catch (const std::exception& e) {
                    failures[i] = e.what();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (int i = 0; i < count; ++i) {
        if (!failures[i].empty()) {
            throw DomainError("sweep ray " + std::to_string(i) + " (b = " + detail::round_trip(bs[i]) +
                              " m): " + failures[i]);
        }
    }
    t.rows = std::move(rows);
    emit_table(t, o.common.format, false, out);
    return kExitOk;
}

struct ExperimentOptions {
    std::string registry = "default";
    std::string bodies = "default";
    std::string report = "text";
    double threshold = experiments::kDefaultExclusionThreshold;
};

int run_experiment(const ExperimentOptions& o, std::ostream& out) {
    const auto bodies = gravity::load_body_registry(resolve_data_file(o.bodies, "bodies.json"));
    const auto records = experiments::load_registry(resolve_data_file(o.registry, "experiments.json"), bodies);
    const auto summary = experiments::double_effect_verdict(records, bodies, o.threshold);
    out << (o.report == "json" ? experiments::report_json(summary) : experiments::report_text(summary));
    return summary.exit_code();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gravitational redshift models: potentials, spectra, shifts, ray deflection and experiment checks",
                 "gravshift"};
    app.require_subcommand(1);

    CommonOptions constants_opts;
    auto* constants_cmd = app.add_subcommand("constants", "Print the physical constants (SI) as JSON");
    constants_cmd->add_option("--format", constants_opts.format)->check(CLI::IsMember({"json"}));

    PotentialOptions potential_opts;
    auto* potential_cmd = app.add_subcommand("potential", "Potential, phi/c^2 and gradient at a field point");
    potential_cmd->add_option("--point", potential_opts.point, "body:altitude_m or body:r=r_m, comma separated")
        ->required();
    potential_cmd->add_option("--mass-kg", potential_opts.mass_kg, "Also report the binding energy of this mass");
    potential_cmd->add_option("--atomic-scale-m", potential_opts.atomic_scale_m,
                              "Also report the first-order potential change across this distance");
    add_common(potential_cmd, potential_opts.common, {"json", "csv", "text"});

    ShiftOptions shift_opts;
    auto* shift_cmd = app.add_subcommand("shift", "Predicted fractional line shift between two points");
    add_endpoint_options(shift_cmd, shift_opts.ends);
    shift_cmd->add_option("--model", shift_opts.model, "emitter, photon, double or all")
        ->check(CLI::IsMember({"all", "emitter", "photon", "double"}));
    add_common(shift_cmd, shift_opts.common, {"json", "csv", "text"});

    SpectrumOptions spectrum_opts;
    spectrum_opts.common.format = "csv";
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Fine-structure levels at the effective mass");
    spectrum_cmd->add_option("--z", spectrum_opts.z, "Nuclear charge")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--n-max", spectrum_opts.n_max, "All states with n = 1..N")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--state", spectrum_opts.states, "n_prime,j e.g. 0,1/2 (repeatable)");
    spectrum_cmd->add_option("--point", spectrum_opts.point, "Emitter location, body:altitude_m or body:r=r_m");
    spectrum_cmd->add_option("--rest-mass-kg", spectrum_opts.rest_mass_kg, "Emitter rest mass (default: electron)");
    add_common(spectrum_cmd, spectrum_opts.common, {"json", "csv", "text"});

    PhotonOptions photon_opts;
    auto* photon_cmd = app.add_subcommand("photon", "Trace a ray past a body in the variable-light-speed medium");
    photon_cmd->add_option("--body", photon_opts.body, "Deflecting body")->required();
    photon_cmd->add_option("--b-m", photon_opts.b_m, "Impact parameter, m")->check(CLI::PositiveNumber);
    photon_cmd->add_option("--b-radii", photon_opts.b_radii, "Impact parameter in body radii")
        ->check(CLI::PositiveNumber);
    photon_cmd->add_flag("--periapsis", photon_opts.periapsis,
                         "Interpret b as the distance of closest approach instead of the impact parameter");
    photon_cmd->add_option("--tolerance", photon_opts.tolerance, "Integrator relative tolerance [1e-12, 1e-6]");
    photon_cmd->add_option("--termination-factor", photon_opts.termination_factor,
                           "Termination radius in units of b (>= 200)");
    photon_cmd->add_option("--sweep-from-radii", photon_opts.sweep_from, "Sweep start, body radii");
    photon_cmd->add_option("--sweep-to-radii", photon_opts.sweep_to, "Sweep end, body radii");
    photon_cmd->add_option("--sweep-count", photon_opts.sweep_count, "Number of rays in the sweep");
    add_common(photon_cmd, photon_opts.common, {"json", "csv", "text"});

    ExperimentOptions experiment_opts;
    auto* experiment_cmd = app.add_subcommand("experiment", "Compare the shift models against the measurements");
    experiment_cmd->add_option("--registry", experiment_opts.registry, "Experiment registry JSON file, or 'default'");
    experiment_cmd->add_option("--bodies", experiment_opts.bodies, "Body registry JSON file, or 'default'");
    experiment_cmd->add_option("--report,--format", experiment_opts.report, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    experiment_cmd->add_option("--threshold", experiment_opts.threshold, "Exclusion threshold in sigma")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(std::move(rest));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        CLI::App* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << failing->help();
        return kExitUsage;
    }

    std::ostringstream buffer;
    try {
        int code = kExitOk;
        if (*constants_cmd) {
            code = run_constants(constants_opts, buffer);
        } else if (*potential_cmd) {
            code = run_potential(potential_opts, buffer);
        } else if (*shift_cmd) {
            code = run_shift(shift_opts, buffer);
        } else if (*spectrum_cmd) {
            code = run_spectrum(spectrum_opts, buffer);
        } else if (*photon_cmd) {
            code = run_photon(photon_opts, buffer);
        } else if (*experiment_cmd) {
            code = run_experiment(experiment_opts, buffer);
        }
        out << buffer.str();
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace gravshift::cli
