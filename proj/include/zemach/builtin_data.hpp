#pragma once

namespace zemach::builtin {

// Pinned constant registry bundled with the library. Mirrored by
// data/constants/codata-pinned.json (kept in sync by a unit test).
inline constexpr const char* codata_pinned_json = R"json({
  "version": "codata-pinned-2018",
  "constants": [
    {"name": "alpha", "value": 7.2973525693e-3, "uncertainty": 1.1e-12,
     "unit": "dimensionless", "source": "CODATA 2018, fine-structure constant"},
    {"name": "m_e", "value": 0.51099895000, "uncertainty": 1.5e-10,
     "unit": "MeV", "source": "CODATA 2018, electron mass energy equivalent"},
    {"name": "m_mu", "value": 105.6583755, "uncertainty": 2.3e-6,
     "unit": "MeV", "source": "CODATA 2018, muon mass energy equivalent"},
    {"name": "m_p", "value": 938.27208816, "uncertainty": 2.9e-7,
     "unit": "MeV", "source": "CODATA 2018, proton mass energy equivalent"},
    {"name": "mu_p", "value": 2.79284734463, "uncertainty": 8.2e-10,
     "unit": "dimensionless",
     "source": "CODATA 2018, proton magnetic moment in nuclear magnetons"},
    {"name": "hbar_c", "value": 197.3269804, "uncertainty": 0.0,
     "unit": "MeV fm",
     "source": "CODATA 2018, hbar*c; exact at the digits carried"},
    {"name": "planck_eV_Hz", "value": 4.135667696923859e-15, "uncertainty": 0.0,
     "unit": "eV/Hz",
     "source": "CODATA 2018, h/e; exact by SI definition"},
    {"name": "c", "value": 299792458.0, "uncertainty": 0.0,
     "unit": "m/s", "source": "SI definition, speed of light (exact)"},
    {"name": "a_e", "value": 1.15965218128e-3, "uncertainty": 1.8e-13,
     "unit": "dimensionless",
     "source": "CODATA 2018, electron magnetic moment anomaly"},
    {"name": "a_mu", "value": 1.16592089e-3, "uncertainty": 6.3e-10,
     "unit": "dimensionless",
     "source": "CODATA 2018, muon magnetic moment anomaly"}
  ]
})json";

// Bundled form-factor model definitions. Mirrored by data/models/*.json.
inline constexpr const char* model_dipole_json = R"json({
  "kind": "dipole",
  "id": "dipole",
  "lambda2_gev2": 0.71,
  "citation": "Standard dipole parametrization, Lambda^2 = 0.71 GeV^2"
})json";

inline constexpr const char* model_simon_json = R"json({
  "kind": "multipole-sum",
  "id": "simon",
  "electric": [
    {"a": 0.312, "m2_fm2": 6.0},
    {"a": 1.312, "m2_fm2": 15.02},
    {"a": -0.709, "m2_fm2": 44.08},
    {"a": 0.085, "m2_fm2": 154.2}
  ],
  "magnetic": [
    {"a": 0.694, "m2_fm2": 8.5},
    {"a": 0.719, "m2_fm2": 15.02},
    {"a": -0.418, "m2_fm2": 44.08},
    {"a": 0.005, "m2_fm2": 355.4}
  ],
  "citation": "G. G. Simon, Ch. Schmitt, F. Borkowski, V. H. Walther, Nucl. Phys. A 333 (1980) 381"
})json";

inline constexpr const char* model_simon_ratio_electric_json = R"json({
  "kind": "ratio-hybrid",
  "id": "simon-ratio-electric",
  "base": "simon",
  "fixed_side": "electric",
  "ratio_slope": 0.13,
  "ratio_intercept_k2": 0.04,
  "citation": "Base: Simon et al., Nucl. Phys. A 333 (1980) 381; ratio: O. Gayou et al., Phys. Rev. Lett. 88 (2002) 092301"
})json";

inline constexpr const char* model_simon_ratio_magnetic_json = R"json({
  "kind": "ratio-hybrid",
  "id": "simon-ratio-magnetic",
  "base": "simon",
  "fixed_side": "magnetic",
  "ratio_slope": 0.13,
  "ratio_intercept_k2": 0.04,
  "citation": "Base: Simon et al., Nucl. Phys. A 333 (1980) 381; ratio: O. Gayou et al., Phys. Rev. Lett. 88 (2002) 092301"
})json";

} // namespace zemach::builtin
