#include "gravshift/ray_tracer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace gravshift::photon {

namespace {

using units::codata2018;

// State: position (2), optical direction T = n dx/ds (2), arc length,
// and the optical excess path  integral of (n - 1) ds.
using State = std::array<double, 6>;

constexpr std::size_t kX = 0, kY = 1, kTx = 2, kTy = 3, kArc = 4, kExcess = 5;

Vec2 position(const State& s) { return {s[kX], s[kY]}; }
Vec2 optical(const State& s) { return {s[kTx], s[kTy]}; }

Vec2 unit(Vec2 v) { return (1.0 / norm(v)) * v; }

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

class RaySystem {
public:
    explicit RaySystem(const PlanarField& field) : field_(field), inv_c2_(1.0 / units::c_squared().value()) {}

    State derivative(const State& s) const {
        const Vec2 x = position(s);
        const Vec2 dir = unit(optical(s));
        const Vec2 grad_n = -inv_c2_ * field_.potential_gradient(x);
        const double n_minus_1 = -field_.potential(x) * inv_c2_;
        return {dir.x, dir.y, grad_n.x, grad_n.y, 1.0, n_minus_1};
    }

    double index(Vec2 x) const { return 1.0 - field_.potential(x) * inv_c2_; }

private:
    const PlanarField& field_;
    double inv_c2_;
};

struct Step {
    State next;
    State error;
    State k_next;  // derivative at `next` (first stage of the following step)
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = 0.0;
        for (const auto& [coef, k] : terms) {
            acc += coef * (*k)[i];
        }
        out[i] += h * acc;
    }
    return out;
}

Step dormand_prince(const RaySystem& sys, const State& y, const State& k1, double h) {
    const State k2 = sys.derivative(axpy(y, h, {{a21, &k1}}));
    const State k3 = sys.derivative(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = sys.derivative(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = sys.derivative(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = sys.derivative(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    Step step;
    step.next = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    step.k_next = sys.derivative(step.next);
    step.error = axpy(State{}, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &step.k_next}});
    return step;
}

// Cubic Hermite position on [x0, x1] with unit tangents d0, d1 over arc h.
Vec2 hermite(Vec2 x0, Vec2 d0, Vec2 x1, Vec2 d1, double h, double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * x0 + (h10 * h) * d0 + h01 * x1 + (h11 * h) * d1;
}

// Minimises g over [0, 1]; g is unimodal on the segments where it is used.
template <class F>
double golden_minimum(F g) {
    constexpr double inv_phi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double m1 = hi - inv_phi * (hi - lo), m2 = lo + inv_phi * (hi - lo);
    double g1 = g(m1), g2 = g(m2);
    for (int i = 0; i < 100 && hi - lo > 1e-15; ++i) {
        if (g1 < g2) {
            hi = m2;
            m2 = m1;
            g2 = g1;
            m1 = hi - inv_phi * (hi - lo);
            g1 = g(m1);
        } else {
            lo = m1;
            m1 = m2;
            g1 = g2;
            m2 = lo + inv_phi * (hi - lo);
            g2 = g(m2);
        }
    }
    return std::min({g(lo), g(hi), g1, g2});
}

// Smallest distance from `centre` along the interpolated step.
double segment_min_distance(Vec2 centre, Vec2 x0, Vec2 d0, Vec2 x1, Vec2 d1, double h) {
    const double r0 = norm(x0 - centre);
    const double r1 = norm(x1 - centre);
    const bool approaching = dot(d0, x0 - centre) < 0.0;
    const bool receding = dot(d1, x1 - centre) > 0.0;
    if (!(approaching && receding)) {
        return std::min(r0, r1);
    }
    const double r_mid =
        std::sqrt(golden_minimum([&](double t) {
            const Vec2 p = hermite(x0, d0, x1, d1, h, t) - centre;
            return dot(p, p);
        }));
    return std::min({r0, r1, r_mid});
}

// Bending scale: |phi|/c^2 at each body's distance from the initial line.
double bending_scale(const RayPath& path) {
    double kappa = 0.0;
    for (const auto& pb : path.field().bodies()) {
        const double d = std::abs(cross(path.direction(), pb.position - path.start()));
        const double r = std::max(d, pb.body.radius().value());
        kappa += pb.body.gm() / r;
    }
    kappa /= units::c_squared().value();
    return kappa > 0.0 ? kappa : 1.0;
}

double characteristic_length(const RayPath& path) {
    double len = path.termination_radius().value();
    for (const auto& pb : path.field().bodies()) {
        len = std::min(len, std::max(norm(pb.position - path.start()) - pb.body.radius().value(),
                                     pb.body.radius().value()));
    }
    return len;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

PlanarField::PlanarField(std::vector<PlacedBody> bodies) : bodies_(std::move(bodies)) {
    std::set<std::string> names;
    for (const auto& pb : bodies_) {
        if (!names.insert(pb.body.name()).second) {
            throw ConfigurationError("duplicate body '" + pb.body.name() + "' in planar field");
        }
        if (!units::is_finite(pb.position.x) || !units::is_finite(pb.position.y)) {
            throw DomainError("non-finite body position");
        }
    }
}

PlanarField PlanarField::single(const gravity::CelestialBody& body) {
    return PlanarField({PlacedBody{body, Vec2{0.0, 0.0}}});
}

double PlanarField::potential(Vec2 x) const {
    double phi = 0.0;
    for (const auto& pb : bodies_) {
        phi -= pb.body.gm() / norm(x - pb.position);
    }
    return phi;
}

Vec2 PlanarField::potential_gradient(Vec2 x) const {
    Vec2 g;
    for (const auto& pb : bodies_) {
        const Vec2 d = x - pb.position;
        const double r = norm(d);
        g = g + (pb.body.gm() / (r * r * r)) * d;
    }
    return g;
}

RayPath::RayPath(Vec2 start, Vec2 direction, PlanarField field, Length termination_radius)
    : start_(start), direction_(direction), field_(std::move(field)), termination_radius_(termination_radius) {
    if (!units::is_finite(start.x) || !units::is_finite(start.y) || !units::is_finite(direction.x) ||
        !units::is_finite(direction.y)) {
        throw DomainError("ray start and direction must be finite");
    }
    if (std::abs(norm(direction) - 1.0) > 1e-12) {
        throw DomainError("ray direction must be a unit vector");
    }
    if (termination_radius.value() <= 0.0) {
        throw DomainError("termination radius must be positive");
    }
    if (norm(start) > termination_radius.value() * (1.0 + 1e-12)) {
        throw DomainError("ray starts outside the termination radius");
    }
    for (const auto& pb : field_.bodies()) {
        if (norm(start - pb.position) <= pb.body.radius().value()) {
            throw DomainError("ray starts inside body '" + pb.body.name() + "'");
        }
    }
}

RayResult trace_ray(const RayPath& path, const StepControl& control) {
    const double rtol = control.relative_tolerance;
    if (!(rtol >= 1e-12 && rtol <= 1e-6)) {
        throw DomainError("relative tolerance must lie in [1e-12, 1e-6]");
    }
    const RaySystem sys(path.field());
    const double r_term = path.termination_radius().value();
    const double kappa = bending_scale(path);
    const double length_scale = characteristic_length(path);
    const double c = codata2018.c.value();

    const Vec2 start = path.start();
    const double n0 = sys.index(start);
    State y{start.x, start.y, n0 * path.direction().x, n0 * path.direction().y, 0.0, 0.0};
    State k = sys.derivative(y);

    RayResult result;
    double closest = std::numeric_limits<double>::infinity();
    if (path.field().bodies().empty()) {
        closest = norm(start);
    }
    for (const auto& pb : path.field().bodies()) {
        closest = std::min(closest, norm(start - pb.position));
    }

    const auto error_ratio = [&](const State& from, const Step& st) {
        const double pos_scale =
            rtol * std::max({norm(position(from)), norm(position(st.next)), length_scale});
        const double dir_scale = rtol * kappa * norm(optical(from));
        const double pos_err = norm(position(st.error)) / pos_scale;
        const double dir_err = norm(optical(st.error)) / dir_scale;
        return std::max(pos_err, dir_err);
    };

    // Records a step: periapsis tracking and impact test.
    const auto advance = [&](const State& from, const Step& st, double h) {
        const Vec2 x0 = position(from), x1 = position(st.next);
        const Vec2 d0 = unit(optical(from)), d1 = unit(optical(st.next));
        if (path.field().bodies().empty()) {
            closest = std::min(closest, segment_min_distance(Vec2{}, x0, d0, x1, d1, h));
        }
        for (const auto& pb : path.field().bodies()) {
            const double r = segment_min_distance(pb.position, x0, d0, x1, d1, h);
            closest = std::min(closest, r);
            if (r < pb.body.radius().value()) {
                throw ImpactError("ray impacts body '" + pb.body.name() + "'", r);
            }
        }
        result.deflection_error_estimate += norm(optical(st.error)) / norm(optical(st.next));
        ++result.steps;
    };

    double h = 1e-3 * length_scale;
    const double h_floor_factor = 64.0 * std::numeric_limits<double>::epsilon();
    bool done = false;
    while (!done) {
        if (result.steps >= control.max_steps) {
            throw ConvergenceError("ray trace exceeded the step limit");
        }
        if (h < h_floor_factor * std::max(norm(position(y)), length_scale)) {
            throw ConvergenceError("ray trace step size underflow");
        }
        Step st = dormand_prince(sys, y, k, h);
        const double err = error_ratio(y, st);
        if (!(err <= 1.0)) {
            const double factor = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= factor;
            continue;
        }

        const Vec2 x1 = position(st.next);
        const bool leaving = norm(x1) >= r_term && dot(x1, optical(st.next)) > 0.0;
        if (leaving) {
            // Shorten the step so it ends on the termination circle.
            const Vec2 x0 = position(y);
            const Vec2 d0 = unit(optical(y)), d1 = unit(optical(st.next));
            double lo = 0.0, hi = 1.0;
            for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
                const double mid = 0.5 * (lo + hi);
                (norm(hermite(x0, d0, x1, d1, h, mid)) < r_term ? lo : hi) = mid;
            }
            if (hi < 1.0) {
                h *= hi;
                st = dormand_prince(sys, y, k, h);
            }
            done = true;
        }

        advance(y, st, h);
        y = st.next;
        k = st.k_next;
        if (!done) {
            h *= (err > 0.0) ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
        }
    }

    const Vec2 exit = position(y);
    const Vec2 exit_dir = unit(optical(y));
    result.deflection_angle = std::atan2(cross(path.direction(), exit_dir), dot(path.direction(), exit_dir));
    const double chord = norm(exit - start);
    const double arc = y[kArc];
    // arc >= chord holds exactly; only rounding can make the difference negative.
    const double excess_length = y[kExcess] + std::max(0.0, arc - chord);
    result.straight_line_time = Time(chord / c);
    result.transit_time = Time((chord + excess_length) / c);
    result.closest_approach = Length(closest);
    result.exit_point = exit;
    result.exit_direction = exit_dir;
    return result;
}

RayPath flyby(PlanarField field, Length impact_parameter, double termination_factor) {
    const double b = impact_parameter.value();
    if (b <= 0.0) {
        throw DomainError("impact parameter must be positive");
    }
    if (!(termination_factor >= kMinTerminationFactor)) {
        throw DomainError("termination radius must be at least 200 impact parameters");
    }
    const double r_term = termination_factor * b;
    const Vec2 start{-std::sqrt(r_term * r_term - b * b), b};
    return RayPath(start, Vec2{1.0, 0.0}, std::move(field), Length(r_term));
}

RayPath periapsis_flyby(const gravity::CelestialBody& body, Length closest_approach, double termination_factor) {
    const double r0 = closest_approach.value();
    if (r0 < body.radius().value()) {
        throw DomainError("requested periapsis lies inside the body");
    }
    if (!(termination_factor >= kMinTerminationFactor)) {
        throw DomainError("termination radius must be at least 200 impact parameters");
    }
    const auto field = PlanarField::single(body);
    const double inv_c2 = 1.0 / units::c_squared().value();
    const auto index = [&](Vec2 x) { return 1.0 - field.potential(x) * inv_c2; };
    // n(r0) r0 = n(start) b, with the start depending weakly on b.
    const double invariant = index(Vec2{r0, 0.0}) * r0;
    const double r_term = termination_factor * r0;
    double b = r0;
    for (int i = 0; i < 8; ++i) {
        const Vec2 start{-std::sqrt(r_term * r_term - b * b), b};
        b = invariant / index(start);
    }
    const Vec2 start{-std::sqrt(r_term * r_term - b * b), b};
    return RayPath(start, Vec2{1.0, 0.0}, field, Length(r_term));
}

}  // namespace gravshift::photon
