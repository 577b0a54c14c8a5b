#pragma once

// Newtonian point-mass potentials. A field is a superposition of bodies; a
// field point is described by its radial distance from each body, which is
// all the scalar formulas need. Only the exterior field (r >= radius) is
// modelled.

#include <optional>
#include <string>
#include <vector>

#include "gravshift/units.hpp"

namespace gravshift::gravity {

using units::Acceleration;
using units::Energy;
using units::Length;
using units::Mass;
using units::Potential;

class CelestialBody {
public:
    /// Throws DomainError unless mass > 0 and radius > 0.
    CelestialBody(std::string name, Mass mass, Length radius);

    const std::string& name() const noexcept { return name_; }
    Mass mass() const noexcept { return mass_; }
    Length radius() const noexcept { return radius_; }

    /// G*M, m^3/s^2.
    double gm() const noexcept;

private:
    std::string name_;
    Mass mass_;
    Length radius_;
};

struct BodyDistance {
    std::string body;
    Length r;
};

class FieldPoint {
public:
    FieldPoint(std::string label, std::vector<BodyDistance> distances);

    /// Single-body point at the given altitude above the body's surface.
    static FieldPoint at_altitude(const CelestialBody& body, Length altitude, std::string label = {});
    static FieldPoint at_radius(const CelestialBody& body, Length r, std::string label = {});

    const std::string& label() const noexcept { return label_; }
    const std::vector<BodyDistance>& distances() const noexcept { return distances_; }
    std::optional<Length> distance_to(const std::string& body) const;

private:
    std::string label_;
    std::vector<BodyDistance> distances_;
};

class PotentialField {
public:
    /// Throws ConfigurationError when empty or when two bodies share a name.
    explicit PotentialField(std::vector<CelestialBody> bodies);

    const std::vector<CelestialBody>& bodies() const noexcept { return bodies_; }

private:
    std::vector<CelestialBody> bodies_;
};

/// Sum over bodies of -G M / r. Never positive.
///
/// Throws ConfigurationError if the point lacks a distance for some body (or
/// names a body outside the field), DomainError if any r < radius.
Potential potential(const PotentialField& field, const FieldPoint& point);

/// phi(p1) - phi(p2).
Potential potential_difference(const PotentialField& field, const FieldPoint& p1,
                               const FieldPoint& p2);

/// Sum over bodies of G M / r^2, i.e. d(phi)/dr for a single body.
Acceleration gradient(const PotentialField& field, const FieldPoint& point);

/// First-order change of the potential across an atomic distance a:
/// a * d(phi)/dr. Requires 0 <= a and a / r < 1e-3 for every body distance.
Potential atomic_scale_correction(const PotentialField& field, const FieldPoint& point, Length a);

/// Gravitational binding energy m * phi of a mass at the point.
Energy binding_energy(Mass m, const PotentialField& field, const FieldPoint& point);

inline constexpr double kMaxAtomicScaleRatio = 1e-3;

}  // namespace gravshift::gravity
