#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "zemach/errors.hpp"

namespace zemach {

// Closed set of unit tags. Anything outside this list is rejected at load
// time; arithmetic never coerces one tag into another.
enum class unit {
    dimensionless,
    MeV,
    meV,
    eV,
    Hz,
    MHz,
    fm,
    inverse_fm,
    GeV2,
    micrometre,
    MeV_fm,     // hbar*c
    eV_per_Hz,  // Planck constant
    m_per_s,    // speed of light
};

inline std::string unit_name(unit u) {
    switch (u) {
        case unit::dimensionless: return "dimensionless";
        case unit::MeV:           return "MeV";
        case unit::meV:           return "meV";
        case unit::eV:            return "eV";
        case unit::Hz:            return "Hz";
        case unit::MHz:           return "MHz";
        case unit::fm:            return "fm";
        case unit::inverse_fm:    return "fm^-1";
        case unit::GeV2:          return "GeV^2";
        case unit::micrometre:    return "um";
        case unit::MeV_fm:        return "MeV fm";
        case unit::eV_per_Hz:     return "eV/Hz";
        case unit::m_per_s:       return "m/s";
    }
    throw unit_error("unit_name: invalid unit tag");
}

inline unit parse_unit(std::string_view s) {
    if (s == "dimensionless") return unit::dimensionless;
    if (s == "MeV")           return unit::MeV;
    if (s == "meV")           return unit::meV;
    if (s == "eV")            return unit::eV;
    if (s == "Hz")            return unit::Hz;
    if (s == "MHz")           return unit::MHz;
    if (s == "fm")            return unit::fm;
    if (s == "fm^-1")         return unit::inverse_fm;
    if (s == "GeV^2")         return unit::GeV2;
    if (s == "um")            return unit::micrometre;
    if (s == "MeV fm")        return unit::MeV_fm;
    if (s == "eV/Hz")         return unit::eV_per_Hz;
    if (s == "m/s")           return unit::m_per_s;
    throw unit_error("unknown unit tag \"" + std::string(s) + "\"");
}

// True if the tag belongs to the photon-energy family (interconvertible
// through exact constants; micrometre joins via lambda = hc/E).
inline bool is_energy(unit u) {
    return u == unit::MeV || u == unit::meV || u == unit::eV ||
           u == unit::Hz || u == unit::MHz;
}

// value +- one-sigma uncertainty with a unit tag; the universal numeric
// carrier of the library.
struct measurement {
    double value = 0.0;
    double sigma = 0.0;
    unit u = unit::dimensionless;

    measurement() = default;
    measurement(double v, double s, unit uu) : value(v), sigma(s), u(uu) {
        if (!std::isfinite(v))
            throw unit_error("measurement: non-finite value");
        if (!(s >= 0.0) || !std::isfinite(s))
            throw unit_error("measurement: uncertainty must be finite and >= 0");
    }

    double relative_sigma() const {
        return value == 0.0 ? 0.0 : sigma / std::fabs(value);
    }
};

inline void require_same_unit(const measurement& a, const measurement& b,
                              const char* op) {
    if (a.u != b.u)
        throw unit_error(std::string(op) + ": mixed units " +
                         std::string(unit_name(a.u)) + " vs " +
                         std::string(unit_name(b.u)));
}

// Independent-error arithmetic. Addition demands identical tags;
// multiplication accepts only a dimensionless partner or a bare scalar.
inline measurement operator+(const measurement& a, const measurement& b) {
    require_same_unit(a, b, "operator+");
    return {a.value + b.value, std::hypot(a.sigma, b.sigma), a.u};
}

inline measurement operator-(const measurement& a, const measurement& b) {
    require_same_unit(a, b, "operator-");
    return {a.value - b.value, std::hypot(a.sigma, b.sigma), a.u};
}

inline measurement operator*(const measurement& a, double c) {
    return {a.value * c, a.sigma * std::fabs(c), a.u};
}

inline measurement operator*(double c, const measurement& a) { return a * c; }

inline measurement operator/(const measurement& a, double c) {
    if (c == 0.0) throw unit_error("operator/: division by zero scalar");
    return {a.value / c, a.sigma / std::fabs(c), a.u};
}

inline measurement operator*(const measurement& a, const measurement& b) {
    if (a.u != unit::dimensionless && b.u != unit::dimensionless)
        throw unit_error("operator*: at least one factor must be dimensionless");
    const unit out = (a.u == unit::dimensionless) ? b.u : a.u;
    const double v = a.value * b.value;
    const double s = std::hypot(a.sigma * b.value, b.sigma * a.value);
    return {v, s, out};
}

inline measurement operator/(const measurement& a, const measurement& b) {
    if (b.u != unit::dimensionless && a.u != b.u)
        throw unit_error("operator/: denominator must be dimensionless or share the numerator's unit");
    if (b.value == 0.0) throw unit_error("operator/: division by zero");
    const unit out = (a.u == b.u) ? unit::dimensionless : a.u;
    const double v = a.value / b.value;
    const double s = std::fabs(v) * std::hypot(a.relative_sigma(), b.relative_sigma());
    return {v, s, out};
}

} // namespace zemach
