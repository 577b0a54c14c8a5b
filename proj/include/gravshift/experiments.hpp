#pragma once

// Registry of redshift measurements and the harness that tests each shift
// hypothesis against them. Measurements are stored the way they are
// published: as the ratio of the measured shift to the single-shift
// prediction (phi_emit - phi_obs)/c^2, with a 1-sigma uncertainty.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gravshift/gravity.hpp"
#include "gravshift/registry.hpp"
#include "gravshift/spectra.hpp"

namespace gravshift::experiments {

using spectra::ShiftModel;
using units::Dimensionless;

/// Emitter at base_altitude above the body's surface, observer height_m above it.
struct TowerGeometry {
    std::string body;
    double base_altitude_m = 0.0;
    double height_m = 0.0;
};

struct TwoPointGeometry {
    gravity::FieldPoint emit;
    gravity::FieldPoint observe;
};

using Geometry = std::variant<TowerGeometry, TwoPointGeometry>;

struct ExperimentRecord {
    std::string name;
    Geometry geometry;
    double measured_ratio = 0.0;
    double ratio_uncertainty = 0.0;
    std::string citation;
};

/// A geometry bound to registry bodies.
struct ResolvedGeometry {
    gravity::PotentialField field;
    gravity::FieldPoint emit;
    gravity::FieldPoint observe;
};

/// Throws RegistryError for unknown bodies.
ResolvedGeometry resolve(const ExperimentRecord& record, const gravity::BodyRegistry& bodies);

enum class Verdict { Consistent, Excluded };

std::string_view to_string(Verdict verdict);

inline constexpr double kDefaultExclusionThreshold = 5.0;

struct ComparisonReport {
    std::string experiment;
    ShiftModel model = ShiftModel::EmitterMassDefect;
    /// Signed delta-nu/nu predicted by the model; negative is red.
    Dimensionless predicted_shift;
    /// Measured shift over this model's prediction, and its 1-sigma error.
    double ratio = 0.0;
    double ratio_uncertainty = 0.0;
    double sigma_deviation = 0.0;
    double threshold = kDefaultExclusionThreshold;
    Verdict verdict = Verdict::Consistent;
};

/// The model's fractional shift between the record's endpoints.
Dimensionless predict(const ExperimentRecord& record, ShiftModel model, const gravity::BodyRegistry& bodies);

/// Single-shift models use the stored ratio as is. For DoubleEffect the
/// prediction doubles while the measurement stays, so ratio and uncertainty
/// are halved before the same |ratio - 1| / sigma test.
ComparisonReport compare(const ExperimentRecord& record, ShiftModel model, const gravity::BodyRegistry& bodies,
                         double threshold = kDefaultExclusionThreshold);

struct VerdictSummary {
    std::vector<ComparisonReport> reports;  // experiment-major, models in kAllShiftModels order
    double threshold = kDefaultExclusionThreshold;
    bool single_models_consistent = true;
    bool double_effect_excluded = false;
    /// Every single-model prediction is a red shift.
    bool predictions_red = true;
    std::vector<std::string> excluding_experiments;

    /// 0 when the single-shift models fit every record and the double effect
    /// is excluded, 1 otherwise.
    int exit_code() const;
};

/// Throws ConfigurationError for an empty record list.
VerdictSummary double_effect_verdict(const std::vector<ExperimentRecord>& records,
                                     const gravity::BodyRegistry& bodies,
                                     double threshold = kDefaultExclusionThreshold);

/// Parses a JSON array of records. Towers are
/// {"type":"tower","body","base_altitude_m","height_m"}, two-point
/// geometries {"type":"two_point","emit":[{"body","r_m"},...],"observe":[...]}.
/// Throws ParseError (with record and field) on malformed or invalid
/// records and RegistryError on unknown bodies.
std::vector<ExperimentRecord> parse_experiment_registry(std::string_view json_text,
                                                        const gravity::BodyRegistry& bodies,
                                                        std::string_view source = "<memory>");

std::vector<ExperimentRecord> load_registry(const std::filesystem::path& path, const gravity::BodyRegistry& bodies);

std::string report_json(const VerdictSummary& summary);
std::string report_text(const VerdictSummary& summary);

}  // namespace gravshift::experiments
