#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "zemach/constants.hpp"

using namespace zemach;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path =
        (std::filesystem::temp_directory_path() / name).string();
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    return path;
}

} // namespace

TEST_CASE("bundled set loads with its version and pinned values",
          "[constants]") {
    const constant_set set = load_constants("codata-pinned");
    REQUIRE(set.version() == "codata-pinned-2018");
    REQUIRE(set.value("alpha") == 7.2973525693e-3);
    REQUIRE(set.value("m_e") == 0.51099895000);
    REQUIRE(set.value("m_mu") == 105.6583755);
    REQUIRE(set.value("m_p") == 938.27208816);
    REQUIRE(set.value("mu_p") == 2.79284734463);
    REQUIRE(set.value("hbar_c") == 197.3269804);
    REQUIRE(set.value("planck_eV_Hz") == 4.135667696923859e-15);
    REQUIRE(set.value("a_e") == 1.15965218128e-3);
    REQUIRE(set.value("a_mu") == 1.16592089e-3);
    REQUIRE(set.meas("alpha").sigma == 1.1e-12);
    REQUIRE(set.meas("m_e").u == unit::MeV);
    REQUIRE(set.meas("hbar_c").u == unit::MeV_fm);
    REQUIRE_THAT(set.at("alpha").source, ContainsSubstring("CODATA"));

    REQUIRE_THROWS_AS(set.at("nope"), constants_error);
    REQUIRE_THROWS_WITH(set.at("nope"),
                        ContainsSubstring("nope") &&
                            ContainsSubstring("codata-pinned-2018"));
}

TEST_CASE("the shipped constants file matches the builtin set exactly",
          "[constants]") {
    const constant_set builtin = load_constants("codata-pinned");
    const constant_set file = load_constants(
        std::string(HFS_DATA_DIR) + "/constants/codata-pinned.json");
    REQUIRE(file.version() == builtin.version());
    REQUIRE(file.all().size() == builtin.all().size());
    for (const auto& [name, pc] : builtin.all()) {
        const physical_constant& other = file.at(name);
        INFO("constant " << name);
        REQUIRE(other.m.value == pc.m.value);
        REQUIRE(other.m.sigma == pc.m.sigma);
        REQUIRE(other.m.u == pc.m.u);
        REQUIRE(other.source == pc.source);
    }
}

TEST_CASE("constant-set loading failures are specific", "[constants]") {
    SECTION("unknown bundled name lists what exists") {
        REQUIRE_THROWS_WITH(load_constants("codata2022"),
                            ContainsSubstring("codata2022") &&
                                ContainsSubstring("codata-pinned"));
    }
    SECTION("missing file") {
        REQUIRE_THROWS_AS(load_constants("/no/such/file.json"), io_error);
    }
    SECTION("malformed JSON") {
        const auto path = write_temp("hfs_bad_constants.json", "{ not json");
        REQUIRE_THROWS_AS(load_constants(path), constants_error);
    }
    SECTION("missing top-level keys") {
        const auto path =
            write_temp("hfs_no_keys.json", R"({"constants": []})");
        REQUIRE_THROWS_AS(load_constants(path), constants_error);
    }
    SECTION("missing required constant is named") {
        const auto path = write_temp("hfs_missing_req.json", R"({
          "version": "tiny",
          "constants": [
            {"name": "alpha", "value": 7.3e-3, "uncertainty": 0.0,
             "unit": "dimensionless", "source": "test"}
          ]
        })");
        REQUIRE_THROWS_WITH(load_constants(path), ContainsSubstring("m_e"));
    }
    SECTION("negative uncertainty is rejected naming the constant") {
        const auto path = write_temp("hfs_neg_sigma.json", R"({
          "version": "tiny",
          "constants": [
            {"name": "alpha", "value": 7.3e-3, "uncertainty": -1e-12,
             "unit": "dimensionless", "source": "test"}
          ]
        })");
        REQUIRE_THROWS_WITH(load_constants(path),
                            ContainsSubstring("alpha"));
    }
    SECTION("unknown unit tag is rejected") {
        const auto path = write_temp("hfs_bad_unit.json", R"({
          "version": "tiny",
          "constants": [
            {"name": "alpha", "value": 7.3e-3, "uncertainty": 0.0,
             "unit": "furlong", "source": "test"}
          ]
        })");
        REQUIRE_THROWS_AS(load_constants(path), zemach::error);
    }
}

TEST_CASE("atoms carry the derived reduced masses and anomalies",
          "[constants]") {
    const constant_set set = load_constants("codata-pinned");

    const atom_spec h = make_atom(set, lepton::electron);
    REQUIRE(h.l == lepton::electron);
    REQUIRE(h.name() == "hydrogen");
    REQUIRE_THAT(h.reduced_mass.value, WithinRel(0.5107208028, 1e-9));
    REQUIRE_THAT(h.reduced_mass.value / h.lepton_mass.value,
                 WithinRel(0.999455679, 1e-8));
    REQUIRE(h.lepton_anomaly.value == set.value("a_e"));
    REQUIRE(h.reduced_mass.sigma > 0.0);
    REQUIRE(h.reduced_mass.sigma < 1e-8);

    const atom_spec mu = make_atom(set, lepton::muon);
    REQUIRE(mu.name() == "muonic-hydrogen");
    REQUIRE_THAT(mu.reduced_mass.value, WithinRel(94.9644713542, 1e-9));
    REQUIRE_THAT(mu.reduced_mass.value / h.reduced_mass.value,
                 WithinRel(185.942047, 1e-8));
    REQUIRE(mu.lepton_anomaly.value == set.value("a_mu"));
}

TEST_CASE("atom_spec validates its reduced mass", "[constants]") {
    const measurement ml(0.511, 0.0, unit::MeV);
    const measurement an(1.16e-3, 0.0, unit::dimensionless);
    REQUIRE_THROWS_AS(
        atom_spec(lepton::electron, ml, measurement(0.3, 0.0, unit::MeV), an,
                  938.272),
        constants_error);
    REQUIRE_THROWS_AS(
        atom_spec(lepton::electron, ml, measurement(0.6, 0.0, unit::MeV), an,
                  938.272),
        constants_error);
}

TEST_CASE("energy conversions use the exact bridge constants",
          "[constants]") {
    const constant_set set = load_constants("codata-pinned");

    SECTION("identity") {
        const measurement e(5.0, 0.1, unit::MeV);
        const measurement same = convert(e, unit::MeV, set);
        REQUIRE(same.value == 5.0);
        REQUIRE(same.sigma == 0.1);
    }
    SECTION("MeV to Hz through the Planck constant") {
        const measurement e(5.867851138116e-12, 0.0, unit::MeV);
        const measurement hz = convert(e, unit::Hz, set);
        REQUIRE(hz.u == unit::Hz);
        REQUIRE_THAT(hz.value, WithinRel(1418840092.612056, 1e-12));
    }
    SECTION("1 eV in Hz") {
        const measurement e(1.0, 0.0, unit::eV);
        REQUIRE_THAT(convert(e, unit::Hz, set).value,
                     WithinRel(2.4179892420849178e14, 1e-12));
    }
    SECTION("MHz joins through the same bridge") {
        const measurement f(1.0, 0.0, unit::MHz);
        REQUIRE_THAT(convert(f, unit::Hz, set).value, WithinRel(1e6, 1e-14));
    }
    SECTION("relative uncertainty is preserved across scale factors") {
        const measurement e(2.0, 0.02, unit::MeV);
        const measurement hz = convert(e, unit::Hz, set);
        REQUIRE_THAT(hz.relative_sigma(), WithinRel(0.01, 1e-14));
    }
    SECTION("photon wavelength of the muonic splitting is 6.8 um, not 6.1") {
        const measurement e(182.443328659, 0.0, unit::meV);
        const measurement lam = convert(e, unit::micrometre, set);
        REQUIRE(lam.u == unit::micrometre);
        REQUIRE_THAT(lam.value, WithinAbs(6.795764983269729, 1e-9));
        REQUIRE_THAT(lam.value, WithinAbs(6.8, 0.01));        // rounds to 6.8
        REQUIRE(std::fabs(lam.value - 6.1) > 0.5);            // never 6.1
        // round trip back to energy
        const measurement back = convert(lam, unit::meV, set);
        REQUIRE_THAT(back.value, WithinRel(182.443328659, 1e-12));
    }
    SECTION("wavelength keeps the relative uncertainty (reciprocal map)") {
        const measurement e(182.443328659, 0.0182443328659, unit::meV);
        const measurement lam = convert(e, unit::micrometre, set);
        REQUIRE_THAT(lam.relative_sigma(), WithinRel(1e-4, 1e-10));
    }
    SECTION("no path between unrelated tags") {
        const measurement r(1.0, 0.0, unit::fm);
        REQUIRE_THROWS_AS(convert(r, unit::Hz, set), unit_error);
        REQUIRE_THROWS_WITH(convert(r, unit::Hz, set),
                            ContainsSubstring("no conversion path"));
        const measurement d(1.0, 0.0, unit::dimensionless);
        REQUIRE_THROWS_AS(convert(d, unit::micrometre, set), unit_error);
    }
    SECTION("zero energy has no wavelength") {
        const measurement e(0.0, 0.0, unit::meV);
        REQUIRE_THROWS_AS(convert(e, unit::micrometre, set), unit_error);
    }
}
