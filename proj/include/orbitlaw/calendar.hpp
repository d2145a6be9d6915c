#pragma once

#include <stdexcept>
#include <string>

namespace orbitlaw {

// Calendar handling for the observation catalog. Dates in the catalog are
// old style (Julian calendar, as Kepler recorded them). The Gregorian reform
// of 1582 dropped ten days, so between 1582 and 1700 the Gregorian date is
// the Julian date plus ten days.
struct CalendarDate {
    int year = 0;
    int month = 0;
    int day = 0;

    bool operator==(const CalendarDate&) const = default;
};

struct ClockTime {
    int hour = 0;
    int minute = 0;

    bool operator==(const ClockTime&) const = default;
};

class UnsupportedEraError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline bool is_julian_leap_year(int year) { return year % 4 == 0; }

inline int days_in_julian_month(int year, int month) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_julian_leap_year(year)) return 29;
    return lengths[month - 1];
}

inline bool valid_julian_date(const CalendarDate& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_julian_month(d.year, d.month) && d.year > 0;
}

// Day number (integer Julian day, noon epoch) of a Julian-calendar date.
inline long julian_day_number(const CalendarDate& d) {
    const long a = (14 - d.month) / 12;
    const long y = d.year + 4800 - a;
    const long m = d.month + 12 * a - 3;
    return d.day + (153 * m + 2) / 5 + 365 * y + y / 4 - 32083;
}

inline long gregorian_day_number(const CalendarDate& d) {
    const long a = (14 - d.month) / 12;
    const long y = d.year + 4800 - a;
    const long m = d.month + 12 * a - 3;
    return d.day + (153 * m + 2) / 5 + 365 * y + y / 4 - y / 100 + y / 400 - 32045;
}

inline CalendarDate gregorian_from_day_number(long jdn) {
    const long a = jdn + 32044;
    const long b = (4 * a + 3) / 146097;
    const long c = a - 146097 * b / 4;
    const long d = (4 * c + 3) / 1461;
    const long e = c - 1461 * d / 4;
    const long m = (5 * e + 2) / 153;
    CalendarDate out;
    out.day = static_cast<int>(e - (153 * m + 2) / 5 + 1);
    out.month = static_cast<int>(m + 3 - 12 * (m / 10));
    out.year = static_cast<int>(100 * b + d - 4800 + m / 10);
    return out;
}

inline CalendarDate julian_from_day_number(long jdn) {
    const long c = jdn + 32082;
    const long d = (4 * c + 3) / 1461;
    const long e = c - 1461 * d / 4;
    const long m = (5 * e + 2) / 153;
    CalendarDate out;
    out.day = static_cast<int>(e - (153 * m + 2) / 5 + 1);
    out.month = static_cast<int>(m + 3 - 12 * (m / 10));
    out.year = static_cast<int>(d - 4800 + m / 10);
    return out;
}

// First Gregorian day after the reform: 1582-10-15, day number 2299161.
inline constexpr long kGregorianReformDayNumber = 2299161;

// Old-style (Julian) date to its Gregorian equivalent. For catalog-era dates
// this is the familiar "add 10 days".
inline CalendarDate to_gregorian(const CalendarDate& old_style) {
    const long jdn = julian_day_number(old_style);
    if (jdn < kGregorianReformDayNumber)
        throw UnsupportedEraError("date " + std::to_string(old_style.year) + "/" +
                                  std::to_string(old_style.month) + "/" +
                                  std::to_string(old_style.day) +
                                  " precedes the Gregorian reform (1582-10-15)");
    return gregorian_from_day_number(jdn);
}

// Fractional day count of (date, clock) measured from an epoch (date, clock).
// The ten-day calendar shift cancels in the difference, but both dates must
// lie in the post-reform era.
inline double days_between(const CalendarDate& epoch_date, const ClockTime& epoch_clock,
                           const CalendarDate& date, const ClockTime& clock) {
    to_gregorian(epoch_date);  // era validation
    to_gregorian(date);
    const long whole = julian_day_number(date) - julian_day_number(epoch_date);
    const double frac = (clock.hour - epoch_clock.hour) / 24.0 +
                        (clock.minute - epoch_clock.minute) / 1440.0;
    return static_cast<double>(whole) + frac;
}

}  // namespace orbitlaw
