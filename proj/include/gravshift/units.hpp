#pragma once

// Dimension-tagged scalars and the physical constants used throughout the
// library. Internal unit system is SI; electronvolts only appear at I/O.
//
// A Quantity<Dimension<M, L, T>> carries integer exponents of kg, m and s.
// Products and quotients of quantities compute their dimension at compile
// time, so e.g. Potential / (Velocity * Velocity) is Dimensionless and
// adding a Mass to a Length does not compile.

#include <compare>
#include <limits>

#include "gravshift/error.hpp"

namespace gravshift::units {

template <int M, int L, int T>
struct Dimension {
    static constexpr int mass = M;
    static constexpr int length = L;
    static constexpr int time = T;
};

template <class A, class B>
using ProductDimension =
    Dimension<A::mass + B::mass, A::length + B::length, A::time + B::time>;

template <class A, class B>
using QuotientDimension =
    Dimension<A::mass - B::mass, A::length - B::length, A::time - B::time>;

constexpr bool is_finite(double v) noexcept {
    return v == v && v != std::numeric_limits<double>::infinity() &&
           v != -std::numeric_limits<double>::infinity();
}

template <class D>
class Quantity {
public:
    using dimension = D;

    constexpr Quantity() noexcept = default;

    /// Throws DomainError for NaN or infinity.
    constexpr explicit Quantity(double value) : value_(value) {
        if (!is_finite(value)) {
            throw DomainError("non-finite quantity");
        }
    }

    constexpr double value() const noexcept { return value_; }

    constexpr Quantity operator-() const { return Quantity(-value_); }

    constexpr Quantity& operator+=(Quantity rhs) { return *this = *this + rhs; }
    constexpr Quantity& operator-=(Quantity rhs) { return *this = *this - rhs; }

    friend constexpr Quantity operator+(Quantity a, Quantity b) {
        return Quantity(a.value_ + b.value_);
    }
    friend constexpr Quantity operator-(Quantity a, Quantity b) {
        return Quantity(a.value_ - b.value_);
    }
    friend constexpr Quantity operator*(Quantity a, double s) { return Quantity(a.value_ * s); }
    friend constexpr Quantity operator*(double s, Quantity a) { return Quantity(s * a.value_); }
    friend constexpr Quantity operator/(Quantity a, double s) { return Quantity(a.value_ / s); }

    friend constexpr auto operator<=>(Quantity, Quantity) = default;

private:
    double value_ = 0.0;
};

template <class A, class B>
constexpr Quantity<ProductDimension<A, B>> operator*(Quantity<A> a, Quantity<B> b) {
    return Quantity<ProductDimension<A, B>>(a.value() * b.value());
}

template <class A, class B>
constexpr Quantity<QuotientDimension<A, B>> operator/(Quantity<A> a, Quantity<B> b) {
    return Quantity<QuotientDimension<A, B>>(a.value() / b.value());
}

template <class D>
constexpr Quantity<D> abs(Quantity<D> q) {
    return q.value() < 0.0 ? -q : q;
}

using Dimensionless = Quantity<Dimension<0, 0, 0>>;
using Mass = Quantity<Dimension<1, 0, 0>>;
using Length = Quantity<Dimension<0, 1, 0>>;
using Time = Quantity<Dimension<0, 0, 1>>;
using Frequency = Quantity<Dimension<0, 0, -1>>;
using Velocity = Quantity<Dimension<0, 1, -1>>;
using Acceleration = Quantity<Dimension<0, 1, -2>>;
using Energy = Quantity<Dimension<1, 2, -2>>;
using Action = Quantity<Dimension<1, 2, -1>>;
/// Gravitational potential, m^2/s^2. Negative for attractive sources.
using Potential = Quantity<Dimension<0, 2, -2>>;
using GravitationalConstant = Quantity<Dimension<-1, 3, -2>>;

/// CODATA 2018 values, stored as literals. alpha is stored directly and is
/// never derived from the elementary charge.
struct ConstantSet {
    GravitationalConstant G;
    Velocity c;
    Action h;
    Action hbar;
    Dimensionless alpha;
    Mass m_electron;
    Energy eV;
};

inline constexpr ConstantSet codata2018{
    GravitationalConstant(6.67430e-11),
    Velocity(299792458.0),
    Action(6.62607015e-34),
    Action(1.054571817e-34),
    Dimensionless(7.2973525693e-3),
    Mass(9.1093837015e-31),
    Energy(1.602176634e-19),
};

inline constexpr const ConstantSet& constants() { return codata2018; }

/// c^2 as a potential, the normalisation of every fractional shift.
inline constexpr Potential c_squared() { return codata2018.c * codata2018.c; }

/// nu = E / h; sign preserved.
Frequency energy_to_frequency(Energy energy);
Energy frequency_to_energy(Frequency frequency);

Energy from_electronvolts(double ev);
double to_electronvolts(Energy energy);

/// delta / reference for two quantities of the same dimension.
/// Throws DomainError when reference is zero.
template <class D>
Dimensionless fractional(Quantity<D> delta, Quantity<D> reference) {
    if (reference.value() == 0.0) {
        throw DomainError("fractional: division by zero reference");
    }
    return Dimensionless(delta.value() / reference.value());
}

}  // namespace gravshift::units
