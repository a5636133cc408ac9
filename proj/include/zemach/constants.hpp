#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "zemach/builtin_data.hpp"
#include "zemach/errors.hpp"
#include "zemach/measurement.hpp"

namespace zemach {

struct physical_constant {
    std::string name;
    measurement m;
    std::string source;
};

// Versioned registry of physical constants; the single source of truth for
// every downstream number. Immutable after loading.
class constant_set {
  public:
    constant_set(std::string version,
                 std::map<std::string, physical_constant> table)
        : version_(std::move(version)), table_(std::move(table)) {}

    const std::string& version() const { return version_; }

    const physical_constant& at(std::string_view name) const {
        auto it = table_.find(std::string(name));
        if (it == table_.end())
            throw constants_error("constant \"" + std::string(name) +
                                  "\" is not defined in set \"" + version_ +
                                  "\"");
        return it->second;
    }

    measurement meas(std::string_view name) const { return at(name).m; }
    double value(std::string_view name) const { return at(name).m.value; }

    const std::map<std::string, physical_constant>& all() const {
        return table_;
    }

  private:
    std::string version_;
    std::map<std::string, physical_constant> table_;
};

namespace detail {

inline constant_set parse_constant_set(const std::string& text,
                                       const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw constants_error("failed to parse constants from " + origin +
                              ": " + e.what());
    }
    if (!j.is_object() || !j.contains("version") || !j.contains("constants"))
        throw constants_error(origin +
                              ": expected an object with \"version\" and "
                              "\"constants\" keys");

    std::map<std::string, physical_constant> table;
    for (const auto& entry : j.at("constants")) {
        std::string name;
        try {
            name = entry.at("name").get<std::string>();
            const double value = entry.at("value").get<double>();
            const double sigma = entry.at("uncertainty").get<double>();
            const unit u = parse_unit(entry.at("unit").get<std::string>());
            const std::string source = entry.at("source").get<std::string>();
            if (!(sigma >= 0.0))
                throw constants_error("constant \"" + name +
                                      "\" has negative uncertainty");
            table.insert_or_assign(name,
                                   physical_constant{name,
                                                     measurement(value, sigma, u),
                                                     source});
        } catch (const constants_error&) {
            throw;
        } catch (const std::exception& e) {
            throw constants_error(origin + ": malformed entry" +
                                  (name.empty() ? std::string()
                                                : " for \"" + name + "\"") +
                                  ": " + e.what());
        }
    }

    static const char* required[] = {"alpha", "m_e",    "m_mu",        "m_p",
                                     "mu_p",  "hbar_c", "planck_eV_Hz"};
    for (const char* r : required)
        if (!table.count(r))
            throw constants_error(origin + ": required constant \"" +
                                  std::string(r) + "\" is missing");

    return constant_set(j.at("version").get<std::string>(), std::move(table));
}

inline std::string read_text_file(const std::string& path,
                                  const char* what_for) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(std::string(what_for) + ": cannot open file \"" + path +
                       "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

// Loads a bundled set by name ("codata-pinned") or any JSON file by path.
inline constant_set load_constants(const std::string& source) {
    if (source == "codata-pinned")
        return detail::parse_constant_set(builtin::codata_pinned_json,
                                          "builtin set \"codata-pinned\"");
    if (source.find('.') == std::string::npos &&
        source.find('/') == std::string::npos)
        throw constants_error("unknown constant set \"" + source +
                              "\" (bundled sets: codata-pinned)");
    return detail::parse_constant_set(
        detail::read_text_file(source, "load_constants"), source);
}

// ---- atoms -----------------------------------------------------------

enum class lepton { electron, muon };

inline std::string atom_name(lepton l) {
    return l == lepton::electron ? "hydrogen" : "muonic-hydrogen";
}

// Lepton identity plus the derived quantities every formula needs.
struct atom_spec {
    lepton l;
    measurement lepton_mass;    // MeV
    measurement reduced_mass;   // MeV, lepton-proton
    measurement lepton_anomaly; // dimensionless a_l

    atom_spec(lepton ll, measurement lm, measurement rm, measurement an,
              double proton_mass)
        : l(ll), lepton_mass(lm), reduced_mass(rm), lepton_anomaly(an) {
        const double expected =
            lepton_mass.value * proton_mass / (lepton_mass.value + proton_mass);
        if (std::fabs(reduced_mass.value - expected) >
            1e-12 * std::fabs(expected))
            throw constants_error(
                "atom_spec: reduced mass inconsistent with the masses");
        if (!(reduced_mass.value < lepton_mass.value))
            throw constants_error(
                "atom_spec: reduced mass must be below the lepton mass");
    }

    std::string_view name() const { return atom_name(l); }
};

inline atom_spec make_atom(const constant_set& set, lepton l) {
    const measurement ml =
        set.meas(l == lepton::electron ? "m_e" : "m_mu");
    const measurement mp = set.meas("m_p");
    const measurement al =
        set.meas(l == lepton::electron ? "a_e" : "a_mu");

    const double s = ml.value + mp.value;
    const double red = ml.value * mp.value / s;
    // d(red)/d(ml) = (mp/s)^2, d(red)/d(mp) = (ml/s)^2
    const double dml = (mp.value / s) * (mp.value / s);
    const double dmp = (ml.value / s) * (ml.value / s);
    const double sigma = std::hypot(dml * ml.sigma, dmp * mp.sigma);

    return atom_spec(l, ml, measurement(red, sigma, unit::MeV), al, mp.value);
}

// ---- unit conversion -------------------------------------------------

namespace detail {

// Scale factor from an energy-family tag to eV; Hz-family bridges through
// the exact Planck constant.
inline double to_eV_factor(unit u, const constant_set& set) {
    switch (u) {
        case unit::MeV: return 1e6;
        case unit::meV: return 1e-3;
        case unit::eV:  return 1.0;
        case unit::Hz:  return set.value("planck_eV_Hz");
        case unit::MHz: return set.value("planck_eV_Hz") * 1e6;
        default:
            throw unit_error("internal: not an energy unit");
    }
}

inline double hc_eV_um(const constant_set& set) {
    // h[eV/Hz] * c[m/s] = eV*m; times 1e6 gives eV*um.
    return set.value("planck_eV_Hz") * set.value("c") * 1e6;
}

} // namespace detail

// Converts between unit tags along documented paths: within the energy
// family by exact scale factors, and energy <-> wavelength through
// lambda = h*c/E (reciprocal, so sigma_lambda = lambda * sigma_E/E).
inline measurement convert(const measurement& q, unit to,
                           const constant_set& set) {
    if (q.u == to) return q;

    if (is_energy(q.u) && is_energy(to)) {
        const double f =
            detail::to_eV_factor(q.u, set) / detail::to_eV_factor(to, set);
        return {q.value * f, q.sigma * f, to};
    }
    if (is_energy(q.u) && to == unit::micrometre) {
        const double e_eV = q.value * detail::to_eV_factor(q.u, set);
        if (e_eV == 0.0)
            throw unit_error("convert: cannot take the wavelength of zero energy");
        const double lam = detail::hc_eV_um(set) / e_eV;
        return {lam, lam * q.relative_sigma(), unit::micrometre};
    }
    if (q.u == unit::micrometre && is_energy(to)) {
        if (q.value == 0.0)
            throw unit_error("convert: cannot take the energy of zero wavelength");
        const double e_eV = detail::hc_eV_um(set) / q.value;
        const double f = 1.0 / detail::to_eV_factor(to, set);
        return {e_eV * f, e_eV * f * q.relative_sigma(), to};
    }
    throw unit_error("convert: no conversion path from " +
                     std::string(unit_name(q.u)) + " to " +
                     std::string(unit_name(to)));
}

} // namespace zemach
