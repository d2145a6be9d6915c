#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "orbitlaw/calendar.hpp"
#include "orbitlaw/catalog.hpp"
#include "orbitlaw/random.hpp"

namespace orbitlaw {

// Exact two-body orbit used to generate ground truth for the rest of the
// pipeline. Angles are true anomaly (measured from perihelion) unless a
// perihelion longitude translates them into ecliptic longitude.
struct OrbitSpec {
    double eps = 0.0;              // eccentricity, [0, 1)
    double l = 1.0;                // semi-latus rectum, AU
    double period_days = 687.0;
    double perihelion_longitude_rad = 0.0;  // ecliptic longitude of perihelion

    double semi_major_axis() const { return l / (1.0 - eps * eps); }

    void validate() const {
        if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("orbit: eps outside [0,1)");
        if (!(l > 0.0)) throw std::invalid_argument("orbit: semi-latus rectum must be positive");
        if (!(period_days > 0.0)) throw std::invalid_argument("orbit: period must be positive");
    }

    double radius_at_true_anomaly(double nu) const { return l / (1.0 + eps * std::cos(nu)); }
};

namespace detail {

// Eccentric anomaly from true anomaly, continuous over [0, 2*pi).
inline double eccentric_from_true(double nu, double eps) {
    const double e = 2.0 * std::atan2(std::sqrt(1.0 - eps) * std::sin(0.5 * nu),
                                      std::sqrt(1.0 + eps) * std::cos(0.5 * nu));
    return e < 0.0 ? e + 2.0 * std::numbers::pi : e;
}

inline double true_from_eccentric(double ecc_anom, double eps) {
    const double nu = 2.0 * std::atan2(std::sqrt(1.0 + eps) * std::sin(0.5 * ecc_anom),
                                       std::sqrt(1.0 - eps) * std::cos(0.5 * ecc_anom));
    return nu < 0.0 ? nu + 2.0 * std::numbers::pi : nu;
}

// Kepler's equation E - eps*sin(E) = m solved by safeguarded Newton.
inline double solve_eccentric_anomaly(double m, double eps, int max_iter = 200) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double lo = 0.0, hi = two_pi;
    double e = m + eps * std::sin(m);
    for (int it = 0; it < max_iter; ++it) {
        const double f = e - eps * std::sin(e) - m;
        if (f > 0.0) hi = e; else lo = e;
        const double step = f / (1.0 - eps * std::cos(e));
        double next = e - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection safeguard
        if (std::abs(next - e) <= 1e-15 * (1.0 + std::abs(e))) return next;
        e = next;
    }
    throw std::runtime_error("kepler equation: no convergence");
}

}  // namespace detail

// Time since perihelion passage at true anomaly theta:
//   (2*pi/T) t = 2 atan( sqrt((1-eps)/(1+eps)) tan(theta/2) )
//                - eps sqrt(1-eps^2) sin(theta) / (1 + eps cos(theta))
// with the inverse tangent branch chosen so t is continuous and strictly
// increasing, t(0) = 0 and t(2*pi) = T. Whole revolutions are preserved.
inline double time_of_angle(double theta_rad, const OrbitSpec& spec) {
    spec.validate();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double k = std::floor(theta_rad / two_pi);
    const double nu = theta_rad - k * two_pi;
    const double ecc_anom = detail::eccentric_from_true(nu, spec.eps);
    const double mean_anom =
        ecc_anom - spec.eps * std::sqrt(1.0 - spec.eps * spec.eps) * std::sin(nu) /
                       (1.0 + spec.eps * std::cos(nu));
    return (mean_anom / two_pi + k) * spec.period_days;
}

// Numerical inverse of time_of_angle. The transcendental step is Kepler's
// equation, solved in eccentric-anomaly space where Newton is well behaved.
inline double angle_of_time(double t_days, const OrbitSpec& spec, double tol = 1e-12) {
    spec.validate();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double mean_total = two_pi * t_days / spec.period_days;
    const double k = std::floor(mean_total / two_pi);
    const double m = mean_total - k * two_pi;
    const double ecc_anom = detail::solve_eccentric_anomaly(m, spec.eps);
    const double nu = detail::true_from_eccentric(ecc_anom, spec.eps);
    const double theta = nu + k * two_pi;
    if (std::abs(time_of_angle(theta, spec) - t_days) > tol * spec.period_days)
        throw std::runtime_error("angle_of_time: inversion tolerance not met");
    return theta;
}

// Synthetic catalog in the same format the parser consumes. Times are drawn
// uniformly over one period, quantized to the catalog's minute resolution,
// and dated old style from the same epoch as the Tycho file so the outputs
// are interchangeable with it.
inline std::vector<Observation> synth_catalog(const OrbitSpec& spec, int n,
                                              double theta_noise_arcsec, double r_noise_rel,
                                              std::uint64_t seed,
                                              CalendarDate epoch_date = {1582, 11, 23},
                                              ClockTime epoch_clock = {16, 0}) {
    spec.validate();
    if (n < 1) throw std::invalid_argument("synth_catalog: need n >= 1");
    constexpr double two_pi = 2.0 * std::numbers::pi;

    rng::Engine eng(seed);
    std::vector<double> times(static_cast<std::size_t>(n));
    for (double& t : times) t = rng::uniform(eng, 0.0, spec.period_days);
    std::sort(times.begin(), times.end());

    const long epoch_jdn = julian_day_number(epoch_date);
    const long epoch_min = epoch_clock.hour * 60 + epoch_clock.minute;

    std::vector<Observation> out;
    out.reserve(times.size());
    for (const double t : times) {
        const long rounded_min = std::lround(t * 1440.0);
        const double t_quantized = static_cast<double>(rounded_min) / 1440.0;

        const double nu = angle_of_time(t_quantized, spec);
        double theta = std::fmod(nu + spec.perihelion_longitude_rad, two_pi);
        if (theta < 0.0) theta += two_pi;
        double r = spec.radius_at_true_anomaly(nu);

        if (theta_noise_arcsec > 0.0) {
            theta += rng::normal(eng) * theta_noise_arcsec / 3600.0 * std::numbers::pi / 180.0;
            theta = std::fmod(theta, two_pi);
            if (theta < 0.0) theta += two_pi;
        }
        if (r_noise_rel > 0.0) r *= 1.0 + rng::normal(eng) * r_noise_rel;

        Observation obs;
        const long total_min = epoch_min + rounded_min;
        const long day_offset = total_min >= 0 ? total_min / 1440 : (total_min - 1439) / 1440;
        const long minute_of_day = total_min - day_offset * 1440;
        obs.date_old_style = julian_from_day_number(epoch_jdn + day_offset);
        obs.clock = {static_cast<int>(minute_of_day / 60), static_cast<int>(minute_of_day % 60)};
        obs.theta_deg = theta * 180.0 / std::numbers::pi;
        obs.r_au = r;
        obs.residual_arcsec = 0;
        out.push_back(obs);
    }
    return out;
}

}  // namespace orbitlaw
