#pragma once

// Body registry file: a JSON array of {"name", "mass_kg", "radius_m"}.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gravshift/gravity.hpp"

namespace gravshift {

/// Directory holding bodies.json and experiments.json. GRAVSHIFT_DATA_DIR
/// overrides the location compiled into the library.
std::filesystem::path data_directory();

std::string read_text_file(const std::filesystem::path& path);

}  // namespace gravshift

namespace gravshift::gravity {

class BodyRegistry {
public:
    /// Throws ConfigurationError on duplicate names.
    explicit BodyRegistry(std::vector<CelestialBody> bodies);

    /// Throws RegistryError for unknown names.
    const CelestialBody& find(std::string_view name) const;
    bool contains(std::string_view name) const;

    const std::vector<CelestialBody>& bodies() const noexcept { return bodies_; }

private:
    std::vector<CelestialBody> bodies_;
};

/// `source` names the input in diagnostics.
BodyRegistry parse_body_registry(std::string_view json_text, std::string_view source = "<memory>");
BodyRegistry load_body_registry(const std::filesystem::path& path);

}  // namespace gravshift::gravity
