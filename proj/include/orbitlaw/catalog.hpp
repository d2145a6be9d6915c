#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orbitlaw/calendar.hpp"

namespace orbitlaw {

// One catalog row: heliocentric Mars position at a recorded instant.
//   theta_deg        heliocentric ecliptic longitude, degrees in [0, 360)
//   r_au             Sun-Mars distance, astronomical units
//   residual_arcsec  signed computed-minus-observed geocentric longitude
struct Observation {
    CalendarDate date_old_style;
    ClockTime clock;
    double theta_deg = 0.0;
    double r_au = 0.0;
    int residual_arcsec = 0;
};

class CatalogParseError : public std::runtime_error {
  public:
    CatalogParseError(std::size_t line, const std::string& message)
        : std::runtime_error("catalog line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

namespace detail {

inline int parse_int_field(const std::string& s, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CatalogParseError(lineno, std::string("malformed ") + what + " '" + s + "'");
    }
}

inline double parse_double_field(const std::string& s, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CatalogParseError(lineno, std::string("malformed ") + what + " '" + s + "'");
    }
}

}  // namespace detail

// Parses the catalog CSV. One observation per data line:
//   YYYY/MM/DD HH:MM,theta_deg,r_au,residual_min,residual_sec
// Lines starting with '#' and blank lines are ignored. The residual sign is
// carried on the minutes field ("-0,10" means -10 arcseconds).
inline std::vector<Observation> parse_catalog(std::string_view text) {
    std::vector<Observation> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        std::vector<std::string> fields;
        {
            std::stringstream ss(line);
            std::string f;
            while (std::getline(ss, f, ',')) fields.push_back(f);
        }
        if (fields.size() != 5)
            throw CatalogParseError(lineno, "expected 5 comma-separated fields, got " +
                                                std::to_string(fields.size()));

        Observation obs;
        {
            int y = 0, mo = 0, d = 0, h = 0, mi = 0;
            if (std::sscanf(fields[0].c_str(), "%d/%d/%d %d:%d", &y, &mo, &d, &h, &mi) != 5)
                throw CatalogParseError(lineno, "malformed date '" + fields[0] + "'");
            obs.date_old_style = {y, mo, d};
            obs.clock = {h, mi};
            if (!valid_julian_date(obs.date_old_style))
                throw CatalogParseError(lineno, "invalid calendar date '" + fields[0] + "'");
            if (h < 0 || h > 23 || mi < 0 || mi > 59)
                throw CatalogParseError(lineno, "invalid clock time '" + fields[0] + "'");
        }

        obs.theta_deg = detail::parse_double_field(fields[1], lineno, "longitude");
        if (obs.theta_deg < 0.0 || obs.theta_deg >= 360.0)
            throw CatalogParseError(lineno, "longitude outside [0, 360)");

        obs.r_au = detail::parse_double_field(fields[2], lineno, "distance");
        if (obs.r_au <= 0.0) throw CatalogParseError(lineno, "non-positive distance");

        // Sign lives on the minutes token so "-0" is representable.
        const std::string& min_tok = fields[3];
        if (min_tok.empty()) throw CatalogParseError(lineno, "empty residual minutes");
        const bool negative = min_tok[0] == '-';
        const std::string min_digits =
            (min_tok[0] == '-' || min_tok[0] == '+') ? min_tok.substr(1) : min_tok;
        const int res_min = detail::parse_int_field(min_digits, lineno, "residual minutes");
        const int res_sec = detail::parse_int_field(fields[4], lineno, "residual seconds");
        if (res_min < 0 || res_sec < 0 || res_sec > 59)
            throw CatalogParseError(lineno, "malformed residual");
        obs.residual_arcsec = (negative ? -1 : 1) * (res_min * 60 + res_sec);

        out.push_back(obs);
    }
    return out;
}

// Formats observations back into the catalog CSV format at the catalog's
// printed precision (five decimals for angles and distances).
inline std::string serialize_catalog(const std::vector<Observation>& observations) {
    std::string out;
    char buf[160];
    for (const Observation& o : observations) {
        std::snprintf(buf, sizeof buf, "%04d/%02d/%02d %02d:%02d,%.5f,%.5f,",
                      o.date_old_style.year, o.date_old_style.month, o.date_old_style.day,
                      o.clock.hour, o.clock.minute, o.theta_deg, o.r_au);
        std::string line = buf;
        // A longitude of 359.999996+ would print as the invalid "360.00000".
        if (line.find(",360.00000,") != std::string::npos) {
            const auto pos = line.find(",360.00000,");
            line.replace(pos, 11, ",0.00000,");
        }
        if (o.residual_arcsec == 0) {
            line += "0,0";
        } else {
            const int mag = std::abs(o.residual_arcsec);
            std::snprintf(buf, sizeof buf, "%c%d,%02d", o.residual_arcsec < 0 ? '-' : '+',
                          mag / 60, mag % 60);
            line += buf;
        }
        out += line;
        out += '\n';
    }
    return out;
}

struct ValidationReport {
    std::vector<std::string> warnings;

    bool clean() const { return warnings.empty(); }
};

// Data-quality checks beyond hard parse errors. Range expectations are for
// the Mars catalog and are warnings only, so other catalogs stay loadable.
inline ValidationReport validate_catalog(const std::vector<Observation>& observations) {
    ValidationReport report;
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const Observation& o = observations[i];
        const std::string row = "row " + std::to_string(i + 1);
        if (o.r_au <= 1.3 || o.r_au >= 1.8)
            report.warnings.push_back(row + ": distance " + std::to_string(o.r_au) +
                                      " AU outside the Mars range (1.3, 1.8)");
        if (std::abs(o.residual_arcsec) >= 600)
            report.warnings.push_back(row + ": residual " + std::to_string(o.residual_arcsec) +
                                      "\" exceeds six arc-minutes");
    }
    return report;
}

}  // namespace orbitlaw
