#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "zemach/builtin_data.hpp"
#include "zemach/constants.hpp"
#include "zemach/errors.hpp"

namespace zemach {

// G = (1 + k^2/Lambda^2)^-2, the classic one-parameter shape.
struct dipole {
    double lambda2 = 0.71; // GeV^2
};

struct multipole_term {
    double a;  // dimensionless
    double m2; // fm^-2
};

// Sum of monopoles a_i/(1 + k^2/m_i^2) (the Simon-fit shape), with separate
// electric and magnetic parameter lists. The magnetic list parametrizes
// G_M/mu_p; if it is empty the model falls back to form-factor scaling
// G_M = mu_p * G_E.
struct multipole_sum {
    std::vector<multipole_term> electric;
    std::vector<multipole_term> magnetic;
};

enum class ff_side { electric, magnetic };

// One side taken unchanged from the base model, the other derived from the
// measured ratio mu_p*G_E/G_M = 1 - slope*(k^2 - intercept). The effective
// ratio is clamped to [ratio_floor, 1]: the line crosses 1 exactly at the
// intercept, and below it both G_E(0)*G_M(0) = mu_p normalization and the
// O(k^2) behaviour of the Zemach integrand require ratio = 1; past the
// zero crossing the line is unphysical and evaluation is out of validity.
struct ratio_hybrid {
    std::variant<dipole, multipole_sum> base;
    ff_side fixed_side = ff_side::electric;
    double intercept = 0.04; // GeV^2
    double slope = 0.13;     // GeV^-2
    static constexpr double ratio_floor = 1e-6;

    double ratio_linear(double k2) const {
        return 1.0 - slope * (k2 - intercept);
    }
    double ratio_effective(double k2) const {
        return std::clamp(ratio_linear(k2), ratio_floor, 1.0);
    }
    bool beyond_validity(double k2) const {
        return ratio_linear(k2) < ratio_floor;
    }
};

using form_factor_model = std::variant<dipole, multipole_sum, ratio_hybrid>;

// A model plus its bookkeeping from the definition file.
struct loaded_model {
    std::string id;
    std::string citation;
    form_factor_model model;
};

namespace detail {

inline constexpr double pi = 3.14159265358979323846;

inline double gev2_to_fm2(const constant_set& set) {
    const double hbar_c_gev_fm = set.value("hbar_c") * 1e-3; // GeV fm
    return 1.0 / (hbar_c_gev_fm * hbar_c_gev_fm);
}

inline double monopole_sum(const std::vector<multipole_term>& terms,
                           double k2_fm2) {
    double s = 0.0;
    for (const auto& t : terms) s += t.a / (1.0 + k2_fm2 / t.m2);
    return s;
}

inline void validate_terms(const std::vector<multipole_term>& terms,
                           const char* side) {
    if (terms.empty())
        throw model_error(std::string("multipole-sum: ") + side +
                          " term list is empty");
    double sum = 0.0;
    for (const auto& t : terms) {
        if (!(t.m2 > 0.0))
            throw model_error(std::string("multipole-sum: ") + side +
                              " pole mass^2 must be positive");
        sum += t.a;
    }
    if (std::fabs(sum - 1.0) > 1e-6)
        throw model_error(std::string("multipole-sum: ") + side +
                          " coefficients must sum to 1 (normalization), got " +
                          std::to_string(sum));
}

} // namespace detail

inline void validate_model(const form_factor_model& m) {
    if (const auto* d = std::get_if<dipole>(&m)) {
        if (!(d->lambda2 > 0.0))
            throw model_error("dipole: lambda2 must be positive");
    } else if (const auto* s = std::get_if<multipole_sum>(&m)) {
        detail::validate_terms(s->electric, "electric");
        if (!s->magnetic.empty()) detail::validate_terms(s->magnetic, "magnetic");
    } else if (const auto* h = std::get_if<ratio_hybrid>(&m)) {
        if (!(h->slope > 0.0) || !(h->intercept >= 0.0))
            throw model_error("ratio-hybrid: slope must be positive and the "
                              "intercept non-negative");
        if (const auto* sb = std::get_if<multipole_sum>(&h->base)) {
            detail::validate_terms(sb->electric, "electric");
            if (!sb->magnetic.empty())
                detail::validate_terms(sb->magnetic, "magnetic");
        } else if (!(std::get<dipole>(h->base).lambda2 > 0.0)) {
            throw model_error("dipole: lambda2 must be positive");
        }
    }
}

namespace detail {

inline void require_spacelike(double k2, const char* op) {
    if (k2 < 0.0)
        throw model_error(std::string(op) +
                          ": k2 must be >= 0 (space-like), got " +
                          std::to_string(k2));
}

// G_E and G_M/mu_p of the two concrete (non-hybrid) shapes.
inline double shape_ge(const dipole& d, double k2, const constant_set&) {
    const double x = 1.0 + k2 / d.lambda2;
    return 1.0 / (x * x);
}

inline double shape_ge(const multipole_sum& s, double k2,
                       const constant_set& set) {
    return monopole_sum(s.electric, k2 * gev2_to_fm2(set));
}

inline double shape_gm_over_mup(const dipole& d, double k2,
                                const constant_set& set) {
    return shape_ge(d, k2, set);
}

inline double shape_gm_over_mup(const multipole_sum& s, double k2,
                                const constant_set& set) {
    const auto& terms = s.magnetic.empty() ? s.electric : s.magnetic;
    return monopole_sum(terms, k2 * gev2_to_fm2(set));
}

inline double base_ge(const std::variant<dipole, multipole_sum>& m, double k2,
                      const constant_set& set) {
    return std::visit([&](const auto& x) { return shape_ge(x, k2, set); }, m);
}

inline double base_gm_over_mup(const std::variant<dipole, multipole_sum>& m,
                               double k2, const constant_set& set) {
    return std::visit(
        [&](const auto& x) { return shape_gm_over_mup(x, k2, set); }, m);
}

inline void require_validity(const ratio_hybrid& h, double k2,
                             const char* op) {
    if (h.ratio_linear(k2) <= 0.0)
        throw model_error(
            std::string(op) +
            ": ratio-hybrid evaluated beyond its validity range (k2 = " +
            std::to_string(k2) + " GeV^2, linear ratio <= 0)");
}

} // namespace detail

// Electric form factor, G_E(0) = 1.
inline double g_e(const form_factor_model& m, double k2,
                  const constant_set& set) {
    detail::require_spacelike(k2, "g_e");
    return std::visit(
        [&](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ratio_hybrid>) {
                if (x.fixed_side == ff_side::electric)
                    return detail::base_ge(x.base, k2, set);
                detail::require_validity(x, k2, "g_e");
                return x.ratio_effective(k2) *
                       detail::base_gm_over_mup(x.base, k2, set);
            } else {
                return detail::shape_ge(x, k2, set);
            }
        },
        m);
}

// Magnetic form factor including the mu_p normalization, G_M(0) = mu_p.
inline double g_m(const form_factor_model& m, double k2,
                  const constant_set& set) {
    detail::require_spacelike(k2, "g_m");
    const double mu_p = set.value("mu_p");
    return std::visit(
        [&](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ratio_hybrid>) {
                if (x.fixed_side == ff_side::magnetic)
                    return mu_p * detail::base_gm_over_mup(x.base, k2, set);
                detail::require_validity(x, k2, "g_m");
                return mu_p * detail::base_ge(x.base, k2, set) /
                       x.ratio_effective(k2);
            } else {
                return mu_p * detail::shape_gm_over_mup(x, k2, set);
            }
        },
        m);
}

// mu_p*G_E/G_M computed from the two evaluators (self-consistency, not a
// separate formula).
inline double ratio(const form_factor_model& m, double k2,
                    const constant_set& set) {
    detail::require_spacelike(k2, "ratio");
    const double gm = g_m(m, k2, set);
    if (gm == 0.0)
        throw model_error("ratio: G_M vanishes at k2 = " + std::to_string(k2));
    return set.value("mu_p") * g_e(m, k2, set) / gm;
}

// The Zemach integrand's product G_E*G_M/mu_p, with the hybrid's
// out-of-validity tail dropped (and flagged) instead of evaluated: past the
// ratio's zero crossing the derived side is unphysical, and the dropped
// contribution is bounded by the base-model tail (< 1e-4 fm on the radius;
// see the tail-truncation test).
inline double zemach_product(const form_factor_model& m, double k2,
                             const constant_set& set,
                             bool* beyond_validity = nullptr) {
    detail::require_spacelike(k2, "zemach_product");
    if (const auto* h = std::get_if<ratio_hybrid>(&m)) {
        if (h->beyond_validity(k2)) {
            if (beyond_validity) *beyond_validity = true;
            return 0.0;
        }
        const double r = h->ratio_effective(k2);
        if (h->fixed_side == ff_side::electric) {
            const double ge = detail::base_ge(h->base, k2, set);
            return ge * ge / r;
        }
        const double gm = detail::base_gm_over_mup(h->base, k2, set);
        return r * gm * gm;
    }
    return g_e(m, k2, set) * g_m(m, k2, set) / set.value("mu_p");
}

// ---- coordinate-space densities ---------------------------------------

// Radial density rho(r) in fm^-3, normalized so 4*pi*int rho r^2 dr = 1.
struct density_profile {
    ff_side kind;
    std::function<double(double)> rho;
    double truncation_radius; // where the density has decayed below 1e-30
};

// Analytic inverse Fourier transforms: dipole -> exponential,
// multipole sum -> sum of Yukawa terms. Hybrids are rejected (no closed
// coordinate-space representation).
inline density_profile density(const form_factor_model& m, ff_side kind,
                               const constant_set& set) {
    constexpr double decay_floor = 1e-30;
    if (std::holds_alternative<ratio_hybrid>(m))
        throw model_error(
            "density: ratio-hybrid has no coordinate-space representation");

    const double hbar_c_gev_fm = set.value("hbar_c") * 1e-3;

    if (const auto* d = std::get_if<dipole>(&m)) {
        const double lam = std::sqrt(d->lambda2) / hbar_c_gev_fm; // fm^-1
        const double norm = lam * lam * lam / (8.0 * detail::pi);
        const double rmax = std::log(norm / decay_floor) / lam;
        return {kind, [lam, norm](double r) { return norm * std::exp(-lam * r); },
                rmax};
    }

    const auto& s = std::get<multipole_sum>(m);
    const auto& terms = (kind == ff_side::electric || s.magnetic.empty())
                            ? s.electric
                            : s.magnetic;
    double m_min = std::numeric_limits<double>::infinity();
    double amp = 0.0;
    for (const auto& t : terms) {
        m_min = std::min(m_min, std::sqrt(t.m2));
        amp += std::fabs(t.a) * t.m2 / (4.0 * detail::pi);
    }
    const double rmax =
        std::max(1.0, std::log(amp / decay_floor) / m_min + 1.0);
    auto rho = [terms](double r) {
        double v = 0.0;
        for (const auto& t : terms)
            v += t.a * t.m2 * std::exp(-std::sqrt(t.m2) * r) / (4.0 * detail::pi * r);
        return v;
    };
    return {kind, std::move(rho), rmax};
}

// ---- model definition files -------------------------------------------

namespace detail {

inline std::vector<multipole_term> parse_terms(const nlohmann::json& arr,
                                               const char* side) {
    std::vector<multipole_term> out;
    for (const auto& t : arr)
        out.push_back({t.at("a").get<double>(), t.at("m2_fm2").get<double>()});
    if (out.empty())
        throw model_error(std::string("model file: empty ") + side +
                          " term list");
    return out;
}

inline loaded_model parse_model_json(const std::string& text,
                                     const std::string& origin,
                                     bool allow_hybrid = true);

inline std::variant<dipole, multipole_sum>
parse_hybrid_base(const nlohmann::json& b, const std::string& origin) {
    if (b.is_string()) {
        const loaded_model base = parse_model_json(
            [&]() -> std::string {
                const std::string name = b.get<std::string>();
                if (name == "dipole") return builtin::model_dipole_json;
                if (name == "simon") return builtin::model_simon_json;
                throw model_error(origin + ": unknown base model \"" + name +
                                  "\" (bundled bases: dipole, simon)");
            }(),
            origin + " (base)", /*allow_hybrid=*/false);
        if (const auto* d = std::get_if<dipole>(&base.model)) return *d;
        return std::get<multipole_sum>(base.model);
    }
    const loaded_model base =
        parse_model_json(b.dump(), origin + " (inline base)",
                         /*allow_hybrid=*/false);
    if (const auto* d = std::get_if<dipole>(&base.model)) return *d;
    return std::get<multipole_sum>(base.model);
}

inline loaded_model parse_model_json(const std::string& text,
                                     const std::string& origin,
                                     bool allow_hybrid) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error("failed to parse model file " + origin + ": " +
                       e.what());
    }
    try {
        const std::string kind = j.at("kind").get<std::string>();
        loaded_model out;
        out.id = j.value("id", std::string("unnamed"));
        out.citation = j.value("citation", std::string());
        if (kind == "dipole") {
            out.model = dipole{j.at("lambda2_gev2").get<double>()};
        } else if (kind == "multipole-sum") {
            multipole_sum s;
            s.electric = parse_terms(j.at("electric"), "electric");
            if (j.contains("magnetic"))
                s.magnetic = parse_terms(j.at("magnetic"), "magnetic");
            out.model = std::move(s);
        } else if (kind == "ratio-hybrid") {
            if (!allow_hybrid)
                throw model_error(origin +
                                  ": a ratio-hybrid cannot be the base of "
                                  "another ratio-hybrid");
            ratio_hybrid h;
            h.base = parse_hybrid_base(j.at("base"), origin);
            const std::string side = j.at("fixed_side").get<std::string>();
            if (side == "electric")
                h.fixed_side = ff_side::electric;
            else if (side == "magnetic")
                h.fixed_side = ff_side::magnetic;
            else
                throw model_error(origin + ": fixed_side must be \"electric\" "
                                           "or \"magnetic\", got \"" +
                                  side + "\"");
            h.slope = j.at("ratio_slope").get<double>();
            h.intercept = j.at("ratio_intercept_k2").get<double>();
            out.model = h;
        } else {
            throw model_error(origin + ": unknown model kind \"" + kind +
                              "\" (known: dipole, multipole-sum, ratio-hybrid)");
        }
        validate_model(out.model);
        return out;
    } catch (const model_error&) {
        throw;
    } catch (const std::exception& e) {
        throw io_error("model file " + origin + ": " + e.what());
    }
}

} // namespace detail

inline std::vector<std::string> builtin_model_names() {
    return {"dipole", "simon", "simon-ratio-electric", "simon-ratio-magnetic"};
}

// Resolves a bundled model name or a JSON file path.
inline loaded_model load_model(const std::string& name_or_path) {
    if (name_or_path == "dipole")
        return detail::parse_model_json(builtin::model_dipole_json,
                                        "builtin \"dipole\"");
    if (name_or_path == "simon")
        return detail::parse_model_json(builtin::model_simon_json,
                                        "builtin \"simon\"");
    if (name_or_path == "simon-ratio-electric")
        return detail::parse_model_json(builtin::model_simon_ratio_electric_json,
                                        "builtin \"simon-ratio-electric\"");
    if (name_or_path == "simon-ratio-magnetic")
        return detail::parse_model_json(builtin::model_simon_ratio_magnetic_json,
                                        "builtin \"simon-ratio-magnetic\"");
    if (name_or_path.find('.') == std::string::npos &&
        name_or_path.find('/') == std::string::npos) {
        std::string known;
        for (const auto& n : builtin_model_names())
            known += (known.empty() ? "" : ", ") + n;
        throw model_error("unknown model \"" + name_or_path +
                          "\" (bundled models: " + known + ")");
    }
    return detail::parse_model_json(
        detail::read_text_file(name_or_path, "load_model"), name_or_path);
}

} // namespace zemach
