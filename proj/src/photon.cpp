#include "gravshift/photon.hpp"

#include "gravshift/spectra.hpp"

namespace gravshift::photon {

using units::codata2018;

Photon::Photon(Frequency frequency) : frequency_(frequency) {
    if (frequency_.value() <= 0.0) {
        throw DomainError("photon frequency must be positive");
    }
}

Mass photon_mass(const Photon& p) {
    return units::frequency_to_energy(p.frequency()) / (codata2018.c * codata2018.c);
}

Mass photon_mass_change(const Photon& p, Potential delta_phi) {
    spectra::require_weak_field(delta_phi);
    return photon_mass(p) * (delta_phi / units::c_squared()).value();
}

Velocity local_light_speed(Potential phi) {
    spectra::require_weak_field(phi);
    return codata2018.c / refractive_index(phi);
}

double refractive_index(Potential phi) {
    spectra::require_weak_field(phi);
    return 1.0 - (phi / units::c_squared()).value();
}

Frequency photon_frequency_shift(const Photon& p, Potential phi1, Potential phi2) {
    spectra::require_weak_field(phi1);
    spectra::require_weak_field(phi2);
    return p.frequency() * ((phi1 - phi2) / units::c_squared()).value();
}

}  // namespace gravshift::photon
