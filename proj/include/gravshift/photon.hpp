#pragma once

// The photon-interaction hypothesis: a photon carries the mass E/c^2, that
// mass changes by m * dphi / c^2 along the path, and light slows to
// c / (1 - phi/c^2) in a potential.

#include "gravshift/units.hpp"

namespace gravshift::photon {

using units::Frequency;
using units::Mass;
using units::Potential;
using units::Velocity;

class Photon {
public:
    /// Throws DomainError unless frequency > 0.
    explicit Photon(Frequency frequency);

    Frequency frequency() const noexcept { return frequency_; }

private:
    Frequency frequency_;
};

/// h nu / c^2.
Mass photon_mass(const Photon& p);

/// m_ph * dphi / c^2, signed.
Mass photon_mass_change(const Photon& p, Potential delta_phi);

/// c / (1 - phi/c^2). Never exceeds c for phi <= 0. Throws DomainError for
/// |phi|/c^2 >= 1.
Velocity local_light_speed(Potential phi);

/// Refractive index c / c'(phi) = 1 - phi/c^2 of the equivalent medium.
double refractive_index(Potential phi);

/// nu * (phi1 - phi2) / c^2: frequency change of a photon travelling from
/// potential phi1 to phi2.
Frequency photon_frequency_shift(const Photon& p, Potential phi1, Potential phi2);

}  // namespace gravshift::photon
