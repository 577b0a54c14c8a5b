#include "gravshift/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json_support.hpp"

#ifndef GRAVSHIFT_DEFAULT_DATA_DIR
#define GRAVSHIFT_DEFAULT_DATA_DIR "data"
#endif

namespace gravshift {

std::filesystem::path data_directory() {
    if (const char* env = std::getenv("GRAVSHIFT_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return GRAVSHIFT_DEFAULT_DATA_DIR;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigurationError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace gravshift

namespace gravshift::gravity {

BodyRegistry::BodyRegistry(std::vector<CelestialBody> bodies) : bodies_(std::move(bodies)) {
    std::set<std::string> names;
    for (const auto& b : bodies_) {
        if (!names.insert(b.name()).second) {
            throw ConfigurationError("duplicate body '" + b.name() + "' in registry");
        }
    }
}

const CelestialBody& BodyRegistry::find(std::string_view name) const {
    const auto it = std::find_if(bodies_.begin(), bodies_.end(),
                                 [&](const CelestialBody& b) { return b.name() == name; });
    if (it == bodies_.end()) {
        throw RegistryError("unknown body '" + std::string(name) + "'");
    }
    return *it;
}

bool BodyRegistry::contains(std::string_view name) const {
    return std::any_of(bodies_.begin(), bodies_.end(),
                       [&](const CelestialBody& b) { return b.name() == name; });
}

BodyRegistry parse_body_registry(std::string_view json_text, std::string_view source) {
    const auto doc = detail::parse_json_array(json_text, source);
    std::vector<CelestialBody> bodies;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const detail::RecordContext ctx(source, i);
        const auto& rec = doc[i];
        if (!rec.is_object()) {
            ctx.fail("<record>", "must be an object");
        }
        const auto name = ctx.string(rec, "name");
        const double mass = ctx.number(rec, "mass_kg");
        const double radius = ctx.number(rec, "radius_m");
        if (mass <= 0.0) {
            ctx.fail("mass_kg", "must be > 0");
        }
        if (radius <= 0.0) {
            ctx.fail("radius_m", "must be > 0");
        }
        if (std::any_of(bodies.begin(), bodies.end(), [&](const CelestialBody& b) { return b.name() == name; })) {
            ctx.fail("name", "duplicates an earlier body");
        }
        bodies.emplace_back(name, Mass(mass), Length(radius));
    }
    return BodyRegistry(std::move(bodies));
}

BodyRegistry load_body_registry(const std::filesystem::path& path) {
    return parse_body_registry(read_text_file(path), path.string());
}

}  // namespace gravshift::gravity
