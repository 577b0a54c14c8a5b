#pragma once

// Ray optics in the graded-index medium n = 1 - phi/c^2 that follows from
// the variable light speed c' = c / (1 - phi/c^2). Rays obey the eikonal
// equation d/ds (n dx/ds) = grad n, integrated in arc length with an
// adaptive Dormand-Prince 5(4) scheme in the plane of the ray.

#include <cstddef>
#include <string>
#include <vector>

#include "gravshift/gravity.hpp"
#include "gravshift/units.hpp"

namespace gravshift::photon {

using units::Length;
using units::Time;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

struct PlacedBody {
    gravity::CelestialBody body;
    Vec2 position;
};

/// Point masses at fixed positions in the ray plane. May be empty
/// (homogeneous vacuum).
class PlanarField {
public:
    explicit PlanarField(std::vector<PlacedBody> bodies = {});

    /// One body at the origin.
    static PlanarField single(const gravity::CelestialBody& body);

    const std::vector<PlacedBody>& bodies() const noexcept { return bodies_; }

    /// phi(x) in m^2/s^2.
    double potential(Vec2 x) const;
    /// grad phi, m/s^2.
    Vec2 potential_gradient(Vec2 x) const;

private:
    std::vector<PlacedBody> bodies_;
};

class RayPath {
public:
    /// Throws DomainError if |direction| differs from 1 by more than 1e-12,
    /// the start lies inside a body or outside the termination radius, or
    /// the termination radius is not positive.
    RayPath(Vec2 start, Vec2 direction, PlanarField field, Length termination_radius);

    Vec2 start() const noexcept { return start_; }
    Vec2 direction() const noexcept { return direction_; }
    const PlanarField& field() const noexcept { return field_; }
    /// Measured from the origin. The trace ends when the ray leaves it.
    Length termination_radius() const noexcept { return termination_radius_; }

private:
    Vec2 start_;
    Vec2 direction_;
    PlanarField field_;
    Length termination_radius_;
};

struct StepControl {
    /// Allowed range [1e-12, 1e-6].
    double relative_tolerance = 1e-10;
    std::size_t max_steps = 2'000'000;
};

struct RayResult {
    /// Signed angle from the initial to the final direction; positive is
    /// counter-clockwise.
    double deflection_angle = 0.0;
    /// Sum of the local error estimates of the direction, radians.
    double deflection_error_estimate = 0.0;
    Time transit_time;
    /// Chord between entry and exit point at vacuum light speed.
    Time straight_line_time;
    /// Smallest distance to a body centre (to the origin when the field is empty).
    Length closest_approach;
    Vec2 exit_point;
    Vec2 exit_direction;
    std::size_t steps = 0;

    Time time_excess() const { return transit_time - straight_line_time; }
};

/// Throws ImpactError when the ray enters a body, ConvergenceError on
/// step-size underflow or step exhaustion, DomainError for a tolerance
/// outside [1e-12, 1e-6].
RayResult trace_ray(const RayPath& path, const StepControl& control = {});

inline constexpr double kMinTerminationFactor = 200.0;

/// Ray arriving along +x with impact parameter b (offset +y) about the
/// origin, launched on a termination circle of radius factor * b.
/// Throws DomainError for factor < 200 or b <= 0.
RayPath flyby(PlanarField field, Length impact_parameter, double termination_factor = 1000.0);

/// Like flyby, but the offset is chosen so that the ray's periapsis about a
/// single body at the origin equals `closest_approach` (uses conservation
/// of n r sin(angle) in a radially symmetric medium).
RayPath periapsis_flyby(const gravity::CelestialBody& body, Length closest_approach,
                        double termination_factor = 1000.0);

}  // namespace gravshift::photon
