#include "gravshift/gravity.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

namespace gravshift::gravity {

namespace {

using units::codata2018;

// Resolves the point against the field and calls visit(body, r) for each body.
void for_each_distance(const PotentialField& field, const FieldPoint& point,
                       const std::function<void(const CelestialBody&, double)>& visit) {
    for (const auto& d : point.distances()) {
        const bool known = std::any_of(field.bodies().begin(), field.bodies().end(),
                                       [&](const CelestialBody& b) { return b.name() == d.body; });
        if (!known) {
            throw ConfigurationError("field point '" + point.label() + "' references body '" +
                                     d.body + "' which is not part of the field");
        }
    }
    for (const auto& body : field.bodies()) {
        const auto r = point.distance_to(body.name());
        if (!r) {
            throw ConfigurationError("field point '" + point.label() + "' has no distance for body '" +
                                     body.name() + "'");
        }
        if (*r < body.radius()) {
            throw DomainError("field point '" + point.label() + "' lies inside body '" + body.name() +
                              "' (exterior field only)");
        }
        visit(body, r->value());
    }
}

}  // namespace

CelestialBody::CelestialBody(std::string name, Mass mass, Length radius)
    : name_(std::move(name)), mass_(mass), radius_(radius) {
    if (name_.empty()) {
        throw DomainError("celestial body needs a name");
    }
    if (mass_.value() <= 0.0 || radius_.value() <= 0.0) {
        throw DomainError("celestial body '" + name_ + "' needs positive mass and radius");
    }
}

double CelestialBody::gm() const noexcept { return codata2018.G.value() * mass_.value(); }

FieldPoint::FieldPoint(std::string label, std::vector<BodyDistance> distances)
    : label_(std::move(label)), distances_(std::move(distances)) {
    std::set<std::string> seen;
    for (const auto& d : distances_) {
        if (!seen.insert(d.body).second) {
            throw ConfigurationError("field point '" + label_ + "' lists body '" + d.body + "' twice");
        }
        if (d.r.value() < 0.0) {
            throw DomainError("field point '" + label_ + "' has a negative distance");
        }
    }
}

FieldPoint FieldPoint::at_altitude(const CelestialBody& body, Length altitude, std::string label) {
    return at_radius(body, body.radius() + altitude, std::move(label));
}

FieldPoint FieldPoint::at_radius(const CelestialBody& body, Length r, std::string label) {
    if (label.empty()) {
        label = body.name();
    }
    return FieldPoint(std::move(label), {BodyDistance{body.name(), r}});
}

std::optional<Length> FieldPoint::distance_to(const std::string& body) const {
    for (const auto& d : distances_) {
        if (d.body == body) {
            return d.r;
        }
    }
    return std::nullopt;
}

PotentialField::PotentialField(std::vector<CelestialBody> bodies) : bodies_(std::move(bodies)) {
    if (bodies_.empty()) {
        throw ConfigurationError("potential field needs at least one body");
    }
    std::set<std::string> names;
    for (const auto& b : bodies_) {
        if (!names.insert(b.name()).second) {
            throw ConfigurationError("duplicate body '" + b.name() + "' in potential field");
        }
    }
}

Potential potential(const PotentialField& field, const FieldPoint& point) {
    double phi = 0.0;
    for_each_distance(field, point, [&](const CelestialBody& body, double r) { phi -= body.gm() / r; });
    return Potential(phi);
}

Potential potential_difference(const PotentialField& field, const FieldPoint& p1, const FieldPoint& p2) {
    return potential(field, p1) - potential(field, p2);
}

Acceleration gradient(const PotentialField& field, const FieldPoint& point) {
    double g = 0.0;
    for_each_distance(field, point, [&](const CelestialBody& body, double r) { g += body.gm() / (r * r); });
    return Acceleration(g);
}

Potential atomic_scale_correction(const PotentialField& field, const FieldPoint& point, Length a) {
    if (a.value() < 0.0) {
        throw DomainError("atomic scale must be non-negative");
    }
    for_each_distance(field, point, [&](const CelestialBody& body, double r) {
        if (a.value() / r >= kMaxAtomicScaleRatio) {
            throw DomainError("atomic scale is not small against the distance to '" + body.name() +
                              "' (a/r >= 1e-3); first-order form does not apply");
        }
    });
    return a * gradient(field, point);
}

Energy binding_energy(Mass m, const PotentialField& field, const FieldPoint& point) {
    if (m.value() < 0.0) {
        throw DomainError("binding energy needs a non-negative mass");
    }
    return m * potential(field, point);
}

}  // namespace gravshift::gravity
