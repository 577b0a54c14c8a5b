#include "gravshift/spectra.hpp"

#include <cmath>

namespace gravshift::spectra {

namespace {

using units::codata2018;

double alpha() { return codata2018.alpha.value(); }

Energy energy_at_mass(const QuantumState& s, double mass) {
    return Energy(level_energy_value(s, mass, alpha(), codata2018.c.value()));
}

}  // namespace

Emitter::Emitter(Mass rest_mass, EmitterKind kind) : rest_mass_(rest_mass), kind_(kind) {
    if (rest_mass_.value() <= 0.0) {
        throw DomainError("emitter rest mass must be positive");
    }
}

Emitter Emitter::electron() { return Emitter(codata2018.m_electron, EmitterKind::Electron); }

EffectiveMass EffectiveMass::at_rest(const Emitter& emitter) { return effective_mass(emitter, Potential(0.0)); }

QuantumState QuantumState::from_radial(int z, int n_prime, int two_j) {
    if (z < 1) {
        throw DomainError("nuclear charge Z must be >= 1");
    }
    if (n_prime < 0) {
        throw DomainError("radial quantum number n' must be >= 0");
    }
    if (two_j < 1 || two_j % 2 == 0) {
        throw DomainError("j must be a positive half-integer (2j odd)");
    }
    if (alpha() * z >= 1.0) {
        throw DomainError("alpha*Z >= 1 is outside the perturbative level formula");
    }
    return QuantumState(z, n_prime, two_j);
}

QuantumState QuantumState::from_principal(int z, int n, int two_j) {
    if (n < 1) {
        throw DomainError("principal quantum number n must be >= 1");
    }
    if (two_j < 1 || two_j % 2 == 0) {
        throw DomainError("j must be a positive half-integer (2j odd)");
    }
    const int j_plus_half = (two_j + 1) / 2;
    if (j_plus_half > n) {
        throw DomainError("j + 1/2 must not exceed n");
    }
    return from_radial(z, n - j_plus_half, two_j);
}

std::string QuantumState::label() const {
    return "n=" + std::to_string(n()) + " j=" + std::to_string(two_j_) + "/2";
}

std::vector<QuantumState> states_with_principal(int z, int n) {
    std::vector<QuantumState> out;
    for (int n_prime = n - 1; n_prime >= 0; --n_prime) {
        // n' + j + 1/2 = n  =>  2j = 2(n - n') - 1
        out.push_back(QuantumState::from_radial(z, n_prime, 2 * (n - n_prime) - 1));
    }
    return out;
}

std::string_view to_string(ShiftModel model) {
    switch (model) {
    case ShiftModel::EmitterMassDefect: return "EmitterMassDefect";
    case ShiftModel::PhotonInteraction: return "PhotonInteraction";
    case ShiftModel::DoubleEffect: return "DoubleEffect";
    }
    return "?";
}

ShiftModel parse_shift_model(std::string_view text) {
    if (text == "emitter" || text == "EmitterMassDefect") {
        return ShiftModel::EmitterMassDefect;
    }
    if (text == "photon" || text == "PhotonInteraction") {
        return ShiftModel::PhotonInteraction;
    }
    if (text == "double" || text == "DoubleEffect") {
        return ShiftModel::DoubleEffect;
    }
    throw ConfigurationError("unknown shift model '" + std::string(text) + "'");
}

std::string_view to_string(ShiftSign sign) {
    switch (sign) {
    case ShiftSign::Red: return "red";
    case ShiftSign::Violet: return "violet";
    case ShiftSign::None: return "none";
    }
    return "?";
}

ShiftSign classify_shift(Dimensionless fractional) {
    if (fractional.value() < 0.0) {
        return ShiftSign::Red;
    }
    if (fractional.value() > 0.0) {
        return ShiftSign::Violet;
    }
    return ShiftSign::None;
}

void require_weak_field(Potential phi) {
    if (std::abs((phi / units::c_squared()).value()) >= 1.0) {
        throw DomainError("strong field: |phi|/c^2 >= 1");
    }
}

EffectiveMass effective_mass(const Emitter& emitter, Potential phi) {
    require_weak_field(phi);
    if (phi.value() > 0.0) {
        throw DomainError("gravitational potential must be <= 0");
    }
    const auto m = emitter.rest_mass();
    return EffectiveMass(m * (1.0 + (phi / units::c_squared()).value()), phi);
}

Mass mass_defect(const Emitter& emitter, Potential phi) {
    require_weak_field(phi);
    if (phi.value() > 0.0) {
        throw DomainError("gravitational potential must be <= 0");
    }
    return emitter.rest_mass() * units::abs(phi / units::c_squared()).value();
}

Energy level_energy(const QuantumState& state, const EffectiveMass& m_eff) {
    return energy_at_mass(state, m_eff.value().value());
}

Energy level_shift(const QuantumState& state, const Emitter& emitter, Potential phi) {
    // The level formula is linear in the mass, so the shift is the level
    // evaluated at the (signed) mass change.
    return energy_at_mass(state, -mass_defect(emitter, phi).value());
}

Frequency transition_frequency(const QuantumState& upper, const QuantumState& lower, const EffectiveMass& m_eff) {
    if (upper.z() != lower.z()) {
        throw ConfigurationError("transition between states of different Z");
    }
    const double a = alpha();
    const double c = codata2018.c.value();
    const double prefactor = a * a * m_eff.value().value() * c * c / 2.0;
    const double reduced_gap = reduced_level(lower.z(), lower.n(), lower.two_j(), a) -
                               reduced_level(upper.z(), upper.n(), upper.two_j(), a);
    if (!(reduced_gap > 0.0)) {
        throw OrderingError("transition " + upper.label() + " -> " + lower.label() +
                            " has non-positive photon energy");
    }
    return units::energy_to_frequency(Energy(prefactor * reduced_gap));
}

Dimensionless fractional_shift(ShiftModel model, Potential phi_emit, Potential phi_obs) {
    require_weak_field(phi_emit);
    require_weak_field(phi_obs);
    const Dimensionless single = (phi_emit - phi_obs) / units::c_squared();
    switch (model) {
    case ShiftModel::EmitterMassDefect: return single;
    case ShiftModel::PhotonInteraction: return single;
    case ShiftModel::DoubleEffect: return single + single;
    }
    throw ConfigurationError("invalid shift model");
}

ShiftSign nuclear_shift_sign(NuclearScaling scaling, Potential phi_emit, Potential phi_obs) {
    const auto proportional = classify_shift(fractional_shift(ShiftModel::EmitterMassDefect, phi_emit, phi_obs));
    if (scaling == NuclearScaling::ProportionalToMass || proportional == ShiftSign::None) {
        return proportional;
    }
    return proportional == ShiftSign::Red ? ShiftSign::Violet : ShiftSign::Red;
}

}  // namespace gravshift::spectra
