#pragma once

// Bound emitters in a gravitational potential: the effective (defect) mass,
// hydrogen-like fine-structure levels evaluated at that mass, transitions,
// and the fractional line shift predicted by each shift hypothesis.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "gravshift/units.hpp"

namespace gravshift::spectra {

using units::Dimensionless;
using units::Energy;
using units::Frequency;
using units::Mass;
using units::Potential;

enum class EmitterKind { Electron, Nucleon };

class Emitter {
public:
    /// Throws DomainError unless rest_mass > 0.
    Emitter(Mass rest_mass, EmitterKind kind);

    static Emitter electron();

    Mass rest_mass() const noexcept { return rest_mass_; }
    EmitterKind kind() const noexcept { return kind_; }

private:
    Mass rest_mass_;
    EmitterKind kind_;
};

/// m * (1 + phi/c^2). Only produced by effective_mass().
class EffectiveMass {
public:
    Mass value() const noexcept { return value_; }
    Potential source_potential() const noexcept { return source_potential_; }

    /// An unshifted mass (phi = 0), e.g. for rest-frame reference spectra.
    static EffectiveMass at_rest(const Emitter& emitter);

private:
    friend EffectiveMass effective_mass(const Emitter&, Potential);
    EffectiveMass(Mass value, Potential phi) : value_(value), source_potential_(phi) {}

    Mass value_;
    Potential source_potential_;
};

/// (Z, n', j, n) with n = n' + j + 1/2. j is held as the odd integer 2j.
class QuantumState {
public:
    /// From the radial number n' and 2j. Throws DomainError on Z < 1,
    /// n' < 0, even or non-positive 2j, or alpha*Z >= 1.
    static QuantumState from_radial(int z, int n_prime, int two_j);

    /// From the principal number n and 2j; requires j + 1/2 <= n.
    static QuantumState from_principal(int z, int n, int two_j);

    int z() const noexcept { return z_; }
    int n_prime() const noexcept { return n_prime_; }
    int two_j() const noexcept { return two_j_; }
    int n() const noexcept { return n_prime_ + (two_j_ + 1) / 2; }
    double j() const noexcept { return two_j_ / 2.0; }

    /// "n=2 j=1/2"
    std::string label() const;

    friend bool operator==(const QuantumState&, const QuantumState&) = default;

private:
    QuantumState(int z, int n_prime, int two_j) : z_(z), n_prime_(n_prime), two_j_(two_j) {}

    int z_;
    int n_prime_;
    int two_j_;
};

/// All states of principal number n, ordered by increasing j. Exactly n of them.
std::vector<QuantumState> states_with_principal(int z, int n);

enum class ShiftModel { EmitterMassDefect, PhotonInteraction, DoubleEffect };

inline constexpr std::array<ShiftModel, 3> kAllShiftModels{
    ShiftModel::EmitterMassDefect, ShiftModel::PhotonInteraction, ShiftModel::DoubleEffect};

std::string_view to_string(ShiftModel model);
/// Accepts "emitter", "photon", "double" and the enumerator names.
ShiftModel parse_shift_model(std::string_view text);

enum class NuclearScaling { ProportionalToMass, InverselyProportionalToMass };

enum class ShiftSign { Red, Violet, None };

std::string_view to_string(ShiftSign sign);

/// Red for a negative fractional shift, Violet for positive, None for zero.
ShiftSign classify_shift(Dimensionless fractional);

/// Throws DomainError unless |phi| / c^2 < 1.
void require_weak_field(Potential phi);

/// m * (1 + phi/c^2). Throws DomainError for phi > 0 or |phi|/c^2 >= 1.
EffectiveMass effective_mass(const Emitter& emitter, Potential phi);

/// m * |phi| / c^2, the mass lost to gravitational binding.
Mass mass_defect(const Emitter& emitter, Potential phi);

/// Level energy in units of alpha^2 m c^2 / 2:
///   (Z/n)^2 * [1 + (alpha Z)^2 / n * (1/(j + 1/2) - 3/(4n))].
/// The series is truncated after the fine-structure term.
template <class Real>
Real reduced_level(int z, int n, int two_j, const Real& alpha) {
    const Real zz = Real(z) * Real(z);
    const Real nn = Real(n);
    const Real az2 = alpha * alpha * zz;
    const Real bracket = Real(1) + az2 / nn * (Real(2) / Real(two_j + 1) - Real(3) / (Real(4) * nn));
    return zz / (nn * nn) * bracket;
}

/// Binding energy (positive) for a given emitter mass, generic in the scalar
/// type so the formula can be evaluated in extended precision.
template <class Real>
Real level_energy_value(const QuantumState& s, const Real& mass, const Real& alpha, const Real& c) {
    return alpha * alpha * mass * c * c / Real(2) * reduced_level(s.z(), s.n(), s.two_j(), alpha);
}

/// Positive binding energy of the state at the given effective mass.
Energy level_energy(const QuantumState& state, const EffectiveMass& m_eff);

/// E(m_eff) - E(m). Negative (red) for phi < 0. Evaluated from the mass
/// change directly, so small potentials keep full relative precision.
Energy level_shift(const QuantumState& state, const Emitter& emitter, Potential phi);

/// Photon frequency (E_b(lower) - E_b(upper)) / h.
///
/// Throws ConfigurationError if the states have different Z, OrderingError
/// if the photon energy is not positive.
Frequency transition_frequency(const QuantumState& upper, const QuantumState& lower,
                               const EffectiveMass& m_eff);

/// Predicted delta-nu/nu for a line emitted at phi_emit and received at
/// phi_obs. Negative means red. DoubleEffect is the sum of the two single
/// hypotheses, which share the form (phi_emit - phi_obs)/c^2.
Dimensionless fractional_shift(ShiftModel model, Potential phi_emit, Potential phi_obs);

/// Direction of a nuclear line shift when level energies scale with (or
/// inversely with) the nucleon mass.
ShiftSign nuclear_shift_sign(NuclearScaling scaling, Potential phi_emit, Potential phi_obs);

}  // namespace gravshift::spectra
