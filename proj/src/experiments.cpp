#include "gravshift/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "format.hpp"
#include "json_support.hpp"

namespace gravshift::experiments {

namespace {

using gravity::BodyDistance;
using gravity::FieldPoint;
using units::Length;

std::vector<gravity::CelestialBody> bodies_of(const FieldPoint& point, const gravity::BodyRegistry& registry) {
    std::vector<gravity::CelestialBody> out;
    for (const auto& d : point.distances()) {
        out.push_back(registry.find(d.body));
    }
    return out;
}

struct ResolveVisitor {
    const gravity::BodyRegistry& registry;

    ResolvedGeometry operator()(const TowerGeometry& tower) const {
        const auto& body = registry.find(tower.body);
        auto emit = FieldPoint::at_altitude(body, Length(tower.base_altitude_m), "tower base");
        auto observe = FieldPoint::at_altitude(body, Length(tower.base_altitude_m + tower.height_m), "tower top");
        return {gravity::PotentialField({body}), std::move(emit), std::move(observe)};
    }

    ResolvedGeometry operator()(const TwoPointGeometry& two) const {
        return {gravity::PotentialField(bodies_of(two.emit, registry)), two.emit, two.observe};
    }
};

std::vector<BodyDistance> parse_distances(const nlohmann::json& list, const char* key,
                                          const detail::RecordContext& ctx) {
    std::vector<BodyDistance> out;
    if (list.empty()) {
        ctx.fail(key, "must list at least one body");
    }
    for (const auto& entry : list) {
        if (!entry.is_object()) {
            ctx.fail(key, "entries must be objects {body, r_m}");
        }
        const auto body = ctx.string(entry, "body");
        const double r = ctx.number(entry, "r_m");
        if (r <= 0.0) {
            ctx.fail("r_m", "must be > 0");
        }
        out.push_back({body, Length(r)});
    }
    return out;
}

Geometry parse_geometry(const nlohmann::json& rec, const detail::RecordContext& ctx) {
    const auto& geom = ctx.object(rec, "geometry");
    const auto type = ctx.string(geom, "type");
    if (type == "tower") {
        TowerGeometry tower{ctx.string(geom, "body"), ctx.number(geom, "base_altitude_m"),
                            ctx.number(geom, "height_m")};
        if (tower.base_altitude_m < 0.0) {
            ctx.fail("base_altitude_m", "must be >= 0");
        }
        if (tower.height_m <= 0.0) {
            ctx.fail("height_m", "must be > 0");
        }
        return tower;
    }
    if (type == "two_point") {
        auto emit = parse_distances(ctx.array(geom, "emit"), "emit", ctx);
        auto observe = parse_distances(ctx.array(geom, "observe"), "observe", ctx);
        auto names = [](const std::vector<BodyDistance>& v) {
            std::vector<std::string> n;
            for (const auto& d : v) {
                n.push_back(d.body);
            }
            std::sort(n.begin(), n.end());
            return n;
        };
        if (names(emit) != names(observe)) {
            ctx.fail("observe", "must list the same bodies as 'emit'");
        }
        try {
            return TwoPointGeometry{FieldPoint("emit", std::move(emit)), FieldPoint("observe", std::move(observe))};
        } catch (const ConfigurationError& e) {
            ctx.fail("emit", e.what());
        }
    }
    ctx.fail("type", "must be \"tower\" or \"two_point\"");
}

}  // namespace

ResolvedGeometry resolve(const ExperimentRecord& record, const gravity::BodyRegistry& bodies) {
    return std::visit(ResolveVisitor{bodies}, record.geometry);
}

std::string_view to_string(Verdict verdict) {
    return verdict == Verdict::Consistent ? "Consistent" : "Excluded";
}

Dimensionless predict(const ExperimentRecord& record, ShiftModel model, const gravity::BodyRegistry& bodies) {
    const auto geo = resolve(record, bodies);
    return spectra::fractional_shift(model, gravity::potential(geo.field, geo.emit),
                                     gravity::potential(geo.field, geo.observe));
}

ComparisonReport compare(const ExperimentRecord& record, ShiftModel model, const gravity::BodyRegistry& bodies,
                         double threshold) {
    if (!(threshold > 0.0)) {
        throw ConfigurationError("exclusion threshold must be positive");
    }
    if (!(record.ratio_uncertainty > 0.0)) {
        throw ConfigurationError("experiment '" + record.name + "' has a non-positive uncertainty");
    }
    ComparisonReport report;
    report.experiment = record.name;
    report.model = model;
    report.predicted_shift = predict(record, model, bodies);
    report.threshold = threshold;
    report.ratio = record.measured_ratio;
    report.ratio_uncertainty = record.ratio_uncertainty;
    if (model == ShiftModel::DoubleEffect) {
        report.ratio /= 2.0;
        report.ratio_uncertainty /= 2.0;
    }
    report.sigma_deviation = std::abs(report.ratio - 1.0) / report.ratio_uncertainty;
    report.verdict = report.sigma_deviation > threshold ? Verdict::Excluded : Verdict::Consistent;
    return report;
}

int VerdictSummary::exit_code() const {
    return (single_models_consistent && double_effect_excluded && predictions_red) ? 0 : 1;
}

VerdictSummary double_effect_verdict(const std::vector<ExperimentRecord>& records,
                                     const gravity::BodyRegistry& bodies, double threshold) {
    if (records.empty()) {
        throw ConfigurationError("no experiments loaded");
    }
    VerdictSummary summary;
    summary.threshold = threshold;
    for (const auto& record : records) {
        for (const auto model : spectra::kAllShiftModels) {
            auto report = compare(record, model, bodies, threshold);
            if (model == ShiftModel::DoubleEffect) {
                if (report.verdict == Verdict::Excluded) {
                    summary.double_effect_excluded = true;
                    summary.excluding_experiments.push_back(record.name);
                }
            } else {
                summary.single_models_consistent &= report.verdict == Verdict::Consistent;
                summary.predictions_red &= report.predicted_shift.value() < 0.0;
            }
            summary.reports.push_back(std::move(report));
        }
    }
    return summary;
}

std::vector<ExperimentRecord> parse_experiment_registry(std::string_view json_text,
                                                        const gravity::BodyRegistry& bodies,
                                                        std::string_view source) {
    const auto doc = detail::parse_json_array(json_text, source);
    std::vector<ExperimentRecord> records;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const detail::RecordContext ctx(source, i);
        const auto& rec = doc[i];
        if (!rec.is_object()) {
            ctx.fail("<record>", "must be an object");
        }
        ExperimentRecord record;
        record.name = ctx.string(rec, "name");
        if (record.name.empty()) {
            ctx.fail("name", "must not be empty");
        }
        if (std::any_of(records.begin(), records.end(), [&](const auto& r) { return r.name == record.name; })) {
            ctx.fail("name", "duplicates an earlier record");
        }
        record.geometry = parse_geometry(rec, ctx);
        record.measured_ratio = ctx.number(rec, "measured_ratio");
        record.ratio_uncertainty = ctx.number(rec, "ratio_uncertainty");
        if (!(record.measured_ratio > 0.0)) {
            ctx.fail("measured_ratio", "must be > 0 (stored as a magnitude)");
        }
        if (!(record.ratio_uncertainty > 0.0)) {
            ctx.fail("ratio_uncertainty", "must be > 0");
        }
        if (rec.contains("citation")) {
            record.citation = ctx.string(rec, "citation");
        }
        try {
            const auto geo = resolve(record, bodies);
            gravity::potential(geo.field, geo.emit);
            gravity::potential(geo.field, geo.observe);
        } catch (const RegistryError& e) {
            throw RegistryError(std::string(source) + ": record " + std::to_string(i) + ": " + e.what());
        } catch (const Error& e) {
            ctx.fail("geometry", e.what());
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<ExperimentRecord> load_registry(const std::filesystem::path& path, const gravity::BodyRegistry& bodies) {
    return parse_experiment_registry(read_text_file(path), bodies, path.string());
}

std::string report_json(const VerdictSummary& summary) {
    nlohmann::ordered_json out;
    out["threshold_sigma"] = summary.threshold;
    auto& reports = out["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : summary.reports) {
        nlohmann::ordered_json j;
        j["experiment"] = r.experiment;
        j["model"] = std::string(spectra::to_string(r.model));
        j["predicted_shift"] = r.predicted_shift.value();
        j["ratio_measured_over_predicted"] = r.ratio;
        j["ratio_uncertainty"] = r.ratio_uncertainty;
        j["sigma_deviation"] = r.sigma_deviation;
        j["verdict"] = std::string(to_string(r.verdict));
        reports.push_back(std::move(j));
    }
    out["single_models_consistent"] = summary.single_models_consistent;
    out["predictions_red"] = summary.predictions_red;
    out["double_effect_excluded"] = summary.double_effect_excluded;
    out["excluding_experiments"] = summary.excluding_experiments;
    return out.dump(2) + "\n";
}

std::string report_text(const VerdictSummary& summary) {
    const std::vector<std::string> header{"experiment", "model", "predicted_shift", "ratio", "+/-", "sigma",
                                          "verdict"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : summary.reports) {
        rows.push_back({r.experiment, std::string(spectra::to_string(r.model)),
                        detail::brief(r.predicted_shift.value()), detail::brief(r.ratio, 5),
                        detail::brief(r.ratio_uncertainty, 3), detail::brief(r.sigma_deviation, 4),
                        std::string(to_string(r.verdict))});
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += c + 1 < row.size() ? detail::pad_right(row[c], width[c] + 2) : row[c];
        }
        out << line << "\n";
    };
    emit(header);
    for (const auto& row : rows) {
        emit(row);
    }
    out << "\nthreshold: " << detail::brief(summary.threshold) << " sigma\n";
    out << "single-shift models consistent with all records: " << (summary.single_models_consistent ? "yes" : "no")
        << "\n";
    out << "single-shift predictions red: " << (summary.predictions_red ? "yes" : "no") << "\n";
    out << "DoubleEffect: ";
    if (summary.double_effect_excluded) {
        out << "Excluded by";
        for (const auto& name : summary.excluding_experiments) {
            out << " " << name;
        }
        out << "\n";
    } else {
        out << "not excluded\n";
    }
    return out.str();
}

}  // namespace gravshift::experiments
