#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitlaw/catalog.hpp"

namespace orbitlaw {

// Continuous day count from the first catalog observation.
struct EpochTime {
    double days = 0.0;
};

inline EpochTime old_style_to_epoch_days(const Observation& obs, const Observation& epoch) {
    return {days_between(epoch.date_old_style, epoch.clock, obs.date_old_style, obs.clock)};
}

// Fraction of the orbital period elapsed at t, in [0, 1).
inline double fold_to_period(EpochTime t, double period_days) {
    if (!(period_days > 0.0)) throw std::invalid_argument("fold_to_period: period must be positive");
    double m = std::fmod(t.days, period_days);
    if (m < 0.0) m += period_days;
    double f = m / period_days;
    if (f >= 1.0) f = 0.0;  // fmod rounding at the period boundary
    return f;
}

// Longitudes in degrees, ordered by folded time, to a continuous radian
// sequence: a drop of more than half a turn is a wrap and gains 2*pi.
inline std::vector<double> unwrap_longitudes(const std::vector<double>& theta_deg_by_time) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> out;
    out.reserve(theta_deg_by_time.size());
    for (const double deg : theta_deg_by_time) {
        double rad = deg * std::numbers::pi / 180.0;
        if (!out.empty())
            while (rad < out.back() - std::numbers::pi) rad += two_pi;
        out.push_back(rad);
    }
    return out;
}

// Affine map between a physical range [lo, hi] and the unit interval.
struct ScalingRecord {
    double lo = 0.0;
    double hi = 1.0;

    double to_unit(double v) const { return (v - lo) / (hi - lo); }
    double from_unit(double u) const { return lo + u * (hi - lo); }
};

// Dimensionless training pair. provenance is the catalog row index, or
// kAugmented for model-generated samples.
struct NormalizedSample {
    double x = 0.0;
    double y = 0.0;
    int provenance = 0;

    static constexpr int kAugmented = -1;
};

struct NormalizedData {
    std::vector<NormalizedSample> samples;
    ScalingRecord input_scale;
    ScalingRecord target_scale;
};

// Maps inputs onto [0,1] (given range, or observed min/max when lo >= hi is
// passed) and targets onto [0,1] by min/max. A constant target column maps to
// a pure shift so exact-constant data stays representable.
inline NormalizedData normalize(const std::vector<double>& inputs,
                                const std::vector<double>& targets,
                                double input_lo = 0.0, double input_hi = -1.0) {
    if (inputs.empty() || inputs.size() != targets.size())
        throw std::invalid_argument("normalize: need matching nonempty inputs/targets");
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (!std::isfinite(inputs[i]) || !std::isfinite(targets[i]))
            throw std::invalid_argument("normalize: non-finite value at index " + std::to_string(i));

    NormalizedData out;
    if (input_lo < input_hi) {
        out.input_scale = {input_lo, input_hi};
    } else {
        const auto [mn, mx] = std::minmax_element(inputs.begin(), inputs.end());
        out.input_scale = {*mn, *mx};
    }
    if (!(out.input_scale.hi > out.input_scale.lo))
        throw std::invalid_argument("normalize: degenerate input range");

    const auto [tmn, tmx] = std::minmax_element(targets.begin(), targets.end());
    out.target_scale = (*tmx > *tmn) ? ScalingRecord{*tmn, *tmx} : ScalingRecord{*tmn, *tmn + 1.0};

    out.samples.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i)
        out.samples.push_back({out.input_scale.to_unit(inputs[i]),
                               out.target_scale.to_unit(targets[i]), static_cast<int>(i)});
    return out;
}

// ---------------------------------------------------------------------------
// Task assembly

inline constexpr double kMarsPeriodDays = 687.0;

// Distance-versus-longitude regression task: x = theta/2pi, y = min/max
// scaled distance.
inline NormalizedData build_r_of_theta_task(const std::vector<Observation>& catalog) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> theta_rad, r;
    theta_rad.reserve(catalog.size());
    r.reserve(catalog.size());
    for (const Observation& o : catalog) {
        theta_rad.push_back(o.theta_deg * std::numbers::pi / 180.0);
        r.push_back(o.r_au);
    }
    return normalize(theta_rad, r, 0.0, two_pi);
}

struct ThetaTaskRow {
    int obs_index = 0;
    double t_days = 0.0;
    double t_folded = 0.0;           // input, already in [0,1)
    double theta_unwrapped_rad = 0.0;
    bool excluded = false;
};

struct ThetaTask {
    std::vector<ThetaTaskRow> rows;  // sorted by folded time
    NormalizedData data;             // excluded rows are not sampled
    double period_days = kMarsPeriodDays;
};

// Longitude-versus-time task: fold every observation into one orbital period
// from the first observation, sort by phase, unwrap the longitudes, and keep
// the longest strictly-increasing subsequence. For a prograde orbit the
// unwrapped longitude must increase with phase; a row that breaks this cannot
// have a consistent (time, angle) pair and is flagged instead of trained on.
inline ThetaTask build_theta_of_t_task(const std::vector<Observation>& catalog,
                                       double period_days = kMarsPeriodDays) {
    if (catalog.empty()) throw std::invalid_argument("theta task: empty catalog");
    ThetaTask task;
    task.period_days = period_days;

    for (std::size_t i = 0; i < catalog.size(); ++i) {
        ThetaTaskRow row;
        row.obs_index = static_cast<int>(i);
        row.t_days = old_style_to_epoch_days(catalog[i], catalog.front()).days;
        row.t_folded = fold_to_period({row.t_days}, period_days);
        task.rows.push_back(row);
    }
    std::stable_sort(task.rows.begin(), task.rows.end(),
                     [](const ThetaTaskRow& a, const ThetaTaskRow& b) {
                         return a.t_folded < b.t_folded;
                     });

    std::vector<double> theta_deg;
    theta_deg.reserve(task.rows.size());
    for (const ThetaTaskRow& row : task.rows)
        theta_deg.push_back(catalog[static_cast<std::size_t>(row.obs_index)].theta_deg);
    const std::vector<double> unwrapped = unwrap_longitudes(theta_deg);
    for (std::size_t i = 0; i < task.rows.size(); ++i)
        task.rows[i].theta_unwrapped_rad = unwrapped[i];

    // Longest strictly increasing subsequence over the unwrapped longitudes.
    const std::size_t n = task.rows.size();
    std::vector<std::size_t> best_len(n, 1), prev(n, n);
    std::size_t tail = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (unwrapped[j] < unwrapped[i] && best_len[j] + 1 > best_len[i]) {
                best_len[i] = best_len[j] + 1;
                prev[i] = j;
            }
        if (best_len[i] > best_len[tail]) tail = i;
    }
    std::vector<bool> keep(n, false);
    for (std::size_t i = tail; i != n; i = prev[i]) {
        keep[i] = true;
        if (prev[i] == n) break;
    }
    for (std::size_t i = 0; i < n; ++i) task.rows[i].excluded = !keep[i];

    std::vector<double> t_in, theta_out;
    for (const ThetaTaskRow& row : task.rows)
        if (!row.excluded) {
            t_in.push_back(row.t_folded);
            theta_out.push_back(row.theta_unwrapped_rad);
        }
    task.data = normalize(t_in, theta_out, 0.0, 1.0);
    // Re-key provenance to catalog rows rather than positions in the kept list.
    std::size_t k = 0;
    for (const ThetaTaskRow& row : task.rows)
        if (!row.excluded) task.data.samples[k++].provenance = row.obs_index;
    return task;
}

}  // namespace orbitlaw
