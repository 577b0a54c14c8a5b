#include "gravshift/units.hpp"

namespace gravshift::units {

Frequency energy_to_frequency(Energy energy) { return energy / codata2018.h; }

Energy frequency_to_energy(Frequency frequency) { return frequency * codata2018.h; }

Energy from_electronvolts(double ev) { return ev * codata2018.eV; }

double to_electronvolts(Energy energy) { return energy.value() / codata2018.eV.value(); }

}  // namespace gravshift::units
