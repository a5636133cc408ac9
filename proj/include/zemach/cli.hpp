#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zemach/budget.hpp"
#include "zemach/constants.hpp"
#include "zemach/extraction.hpp"
#include "zemach/formfactors.hpp"
#include "zemach/radius.hpp"
#include "zemach/report.hpp"

namespace zemach::cli {

namespace detail {

// "name=value" or "name=value,sigma" -> override with user-input provenance.
inline budget_override parse_override(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError(
            "--override", "expected name=value or name=value,sigma, got \"" +
                              text + "\"");
    const std::string name = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    double value = 0.0, sigma = 0.0;
    try {
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            value = std::stod(rest);
        } else {
            value = std::stod(rest.substr(0, comma));
            sigma = std::stod(rest.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError(
            "--override", "could not parse numbers in \"" + text + "\"");
    }
    try {
        return budget_override{parse_term_name(name),
                               measurement(value, sigma,
                                           unit::dimensionless)};
    } catch (const zemach::error& e) {
        throw CLI::ValidationError("--override", e.what());
    }
}

inline lepton parse_atom(const std::string& name) {
    if (name == "hydrogen") return lepton::electron;
    if (name == "muonic-hydrogen") return lepton::muon;
    throw CLI::ValidationError("--atom", "unknown atom \"" + name + "\"");
}

inline pol_preset parse_preset(const std::string& name) {
    if (name == "text") return pol_preset::text;
    if (name == "table1") return pol_preset::table1;
    throw CLI::ValidationError("--pol-preset",
                               "unknown preset \"" + name + "\"");
}

} // namespace detail

// Runs one invocation. Reports go to `out`, diagnostics to `err`.
// Exit status: 0 success, 1 computation failure, 2 argument errors.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"Hyperfine-splitting error budget and proton Zemach radius "
                 "toolkit"};
    app.name("hfs");
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string constants_src = "codata-pinned";
    app.add_option("--constants", constants_src,
                   "Constant set: a bundled name or a JSON file path")
        ->envname("HFS_CONSTANTS")
        ->capture_default_str();
    std::string format = "table";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();

    // ---- budget ----
    auto* budget_cmd = app.add_subcommand(
        "budget", "Compute the hyperfine-splitting error budget");
    std::string budget_atom = "hydrogen";
    budget_cmd->add_option("--atom", budget_atom, "Atom")
        ->check(CLI::IsMember({"hydrogen", "muonic-hydrogen"}))
        ->capture_default_str();
    double budget_rp = 1.040;
    budget_cmd
        ->add_option("--rp-fm", budget_rp, "Assumed Zemach radius in fm")
        ->capture_default_str();
    double budget_rp_sigma = 0.0;
    budget_cmd
        ->add_option("--rp-sigma-fm", budget_rp_sigma,
                     "Uncertainty of the assumed Zemach radius in fm")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    std::string budget_preset = "text";
    budget_cmd
        ->add_option("--pol-preset", budget_preset,
                     "Polarizability default: text or table1")
        ->check(CLI::IsMember({"text", "table1"}))
        ->capture_default_str();
    bool budget_linear = false;
    budget_cmd->add_flag("--linear-sum", budget_linear,
                         "Combine term uncertainties by linear sum instead "
                         "of quadrature");
    std::vector<budget_override> budget_overrides;
    budget_cmd
        ->add_option_function<std::string>(
            "--override",
            [&budget_overrides](const std::string& text) {
                budget_overrides.push_back(detail::parse_override(text));
            },
            "Replace a correction term: name=value or name=value,sigma "
            "(names: qed, zemach, recoil, pol, hvp)")
        ->take_all()
        ->allow_extra_args(false);

    // ---- zemach ----
    auto* zemach_cmd = app.add_subcommand(
        "zemach", "Evaluate the Zemach radius of a form-factor model");
    std::string zemach_model = "dipole";
    zemach_cmd
        ->add_option("--model", zemach_model,
                     "Form-factor model: bundled name or JSON file path")
        ->capture_default_str();
    double zemach_lambda2 = 0.0;
    auto* lambda2_opt = zemach_cmd->add_option(
        "--lambda2", zemach_lambda2,
        "Dipole mass-squared parameter in GeV^2 (dipole models only)");
    lambda2_opt->check(CLI::PositiveNumber);
    std::string zemach_route = "momentum";
    zemach_cmd->add_option("--method", zemach_route, "Evaluation route")
        ->check(CLI::IsMember({"momentum", "coordinate", "analytic", "all"}))
        ->capture_default_str();
    double zemach_tol = 1e-10;
    zemach_cmd
        ->add_option("--tol", zemach_tol, "Relative quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // ---- extract ----
    auto* extract_cmd = app.add_subcommand(
        "extract", "Extract the Zemach radius from a measured splitting");
    std::string extract_atom = "hydrogen";
    extract_cmd->add_option("--atom", extract_atom, "Atom")
        ->check(CLI::IsMember({"hydrogen", "muonic-hydrogen"}))
        ->capture_default_str();
    double exp_hz = 0.0, exp_sigma_hz = 0.0009;
    auto* exp_hz_opt = extract_cmd->add_option(
        "--exp-hfs-hz", exp_hz, "Measured splitting in Hz (hydrogen default: "
                                "1420405751.7667)");
    extract_cmd
        ->add_option("--exp-sigma-hz", exp_sigma_hz,
                     "Uncertainty of the measured splitting in Hz")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    double exp_mev = 0.0, exp_sigma_mev = 0.0;
    auto* exp_mev_opt = extract_cmd->add_option(
        "--exp-hfs-mev", exp_mev, "Measured splitting in meV");
    extract_cmd
        ->add_option("--exp-sigma-mev", exp_sigma_mev,
                     "Uncertainty of the measured splitting in meV")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    std::string extract_preset = "text";
    extract_cmd
        ->add_option("--pol-preset", extract_preset,
                     "Polarizability default: text or table1")
        ->check(CLI::IsMember({"text", "table1"}))
        ->capture_default_str();
    std::vector<budget_override> extract_overrides;
    extract_cmd
        ->add_option_function<std::string>(
            "--override",
            [&extract_overrides](const std::string& text) {
                extract_overrides.push_back(detail::parse_override(text));
            },
            "Replace a correction term: name=value or name=value,sigma "
            "(names: qed, recoil, pol, hvp)")
        ->take_all()
        ->allow_extra_args(false);
    long mc_samples = 0;
    extract_cmd
        ->add_option("--mc-samples", mc_samples,
                     "Monte-Carlo sample count (0 disables)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    std::uint64_t mc_seed = 12345;
    extract_cmd->add_option("--seed", mc_seed, "Monte-Carlo seed")
        ->capture_default_str();
    std::string mc_csv_path;
    extract_cmd->add_option("--mc-csv", mc_csv_path,
                            "Write Monte-Carlo samples to this CSV file");

    // ---- plan ----
    auto* plan_cmd = app.add_subcommand(
        "plan", "Plan the experimental precision needed for a target radius "
                "uncertainty");
    std::string plan_atom = "muonic-hydrogen";
    plan_cmd->add_option("--atom", plan_atom, "Atom")
        ->check(CLI::IsMember({"hydrogen", "muonic-hydrogen"}))
        ->capture_default_str();
    double plan_target = 0.0;
    plan_cmd
        ->add_option("--target-rel", plan_target,
                     "Target relative uncertainty of the Zemach radius")
        ->required()
        ->check(CLI::PositiveNumber);
    double plan_pol_sigma = -1.0;
    auto* plan_pol_opt = plan_cmd->add_option(
        "--pol-sigma", plan_pol_sigma,
        "Polarizability uncertainty (defaults to the atom's standard value)");
    plan_pol_opt->check(CLI::NonNegativeNumber);
    double plan_rp = 1.040;
    plan_cmd
        ->add_option("--rp-fm", plan_rp, "Assumed Zemach radius in fm")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // ---- models ----
    auto* models_cmd =
        app.add_subcommand("models", "List the bundled form-factor models");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const zemach::error& e) {
        err << "argument error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    if (app.get_subcommands().empty()) {
        err << "argument error: a subcommand is required\n\n" << app.help();
        return 2;
    }

    try {
        const constant_set set = load_constants(constants_src);

        if (budget_cmd->parsed()) {
            const atom_spec atom =
                make_atom(set, detail::parse_atom(budget_atom));
            const hfs_budget b = assemble_budget(
                atom, measurement(budget_rp, budget_rp_sigma, unit::fm),
                budget_overrides, set, detail::parse_preset(budget_preset),
                budget_linear);
            if (format == "json")
                out << budget_json(b, set).dump(2) << "\n";
            else if (format == "table")
                out << budget_table(b, set);
            else {
                err << "argument error: --format csv applies only to "
                       "extract with --mc-samples\n";
                return 2;
            }
            return 0;
        }

        if (zemach_cmd->parsed()) {
            loaded_model lm = load_model(zemach_model);
            if (lambda2_opt->count() > 0) {
                if (auto* d = std::get_if<dipole>(&lm.model)) {
                    d->lambda2 = zemach_lambda2;
                } else {
                    err << "argument error: --lambda2 applies only to "
                           "dipole models\n";
                    return 2;
                }
            }
            const bool is_dipole =
                std::holds_alternative<dipole>(lm.model);
            const bool is_hybrid =
                std::holds_alternative<ratio_hybrid>(lm.model);

            std::vector<zemach_method> methods;
            if (zemach_route == "momentum")
                methods = {zemach_method::momentum};
            else if (zemach_route == "coordinate")
                methods = {zemach_method::coordinate};
            else if (zemach_route == "analytic")
                methods = {zemach_method::analytic};
            else {
                methods = {zemach_method::momentum};
                if (!is_hybrid) methods.push_back(zemach_method::coordinate);
                if (is_dipole) methods.push_back(zemach_method::analytic);
            }
            if (std::find(methods.begin(), methods.end(),
                          zemach_method::analytic) != methods.end() &&
                !is_dipole) {
                err << "argument error: the analytic route applies only to "
                       "dipole models\n";
                return 2;
            }

            std::vector<zemach_result> results;
            for (zemach_method m : methods) {
                switch (m) {
                case zemach_method::momentum:
                    results.push_back(zemach_radius_momentum(
                        lm.model, set, zemach_tol, lm.id));
                    break;
                case zemach_method::coordinate:
                    results.push_back(zemach_radius_coordinate(
                        lm.model, set, zemach_tol, lm.id));
                    break;
                case zemach_method::analytic:
                    results.push_back(zemach_radius_dipole_analytic(
                        std::get<dipole>(lm.model).lambda2, set, lm.id));
                    break;
                }
            }
            if (format == "json")
                out << radius_json(results, lm, set).dump(2) << "\n";
            else if (format == "table")
                out << radius_table(results, lm, set);
            else {
                err << "argument error: --format csv applies only to "
                       "extract with --mc-samples\n";
                return 2;
            }
            return 0;
        }

        if (extract_cmd->parsed()) {
            const atom_spec atom =
                make_atom(set, detail::parse_atom(extract_atom));
            if (exp_hz_opt->count() > 0 && exp_mev_opt->count() > 0) {
                err << "argument error: give at most one of --exp-hfs-hz "
                       "and --exp-hfs-mev\n";
                return 2;
            }
            measurement exp_hfs(0.0, 0.0, unit::Hz);
            if (exp_mev_opt->count() > 0) {
                exp_hfs = measurement(exp_mev, exp_sigma_mev, unit::meV);
            } else if (exp_hz_opt->count() > 0) {
                exp_hfs = measurement(exp_hz, exp_sigma_hz, unit::Hz);
            } else if (atom.l == lepton::electron) {
                exp_hfs = measurement(1420405751.7667, 0.0009, unit::Hz);
            } else {
                err << "argument error: no measured splitting is bundled "
                       "for muonic hydrogen; give --exp-hfs-mev or "
                       "--exp-hfs-hz\n";
                return 2;
            }

            std::vector<correction_term> corrections = standard_corrections(
                atom, set, detail::parse_preset(extract_preset));
            for (const auto& o : extract_overrides) {
                bool found = false;
                for (auto& t : corrections) {
                    if (t.name != o.name) continue;
                    t = correction_term(o.name, o.value,
                                        provenance::user_input,
                                        "user override");
                    found = true;
                }
                if (!found) {
                    err << "argument error: cannot override term \"" +
                               std::string(term_label(o.name)) +
                               "\" in an extraction\n";
                    return 2;
                }
            }

            const extraction_input input(atom, exp_hfs,
                                         std::move(corrections));
            const extraction_result r = extract_zemach_radius(input, set);

            monte_carlo_result mc;
            const bool with_mc = mc_samples > 0;
            if (with_mc)
                mc = propagate_monte_carlo(input, set, mc_samples, mc_seed);
            if (!mc_csv_path.empty()) {
                if (!with_mc) {
                    err << "argument error: --mc-csv requires "
                           "--mc-samples\n";
                    return 2;
                }
                std::ofstream f(mc_csv_path, std::ios::binary);
                if (!f)
                    throw io_error("could not open \"" + mc_csv_path +
                                   "\" for writing");
                f << monte_carlo_csv(mc);
            }

            if (format == "json") {
                out << extraction_json(r, input, set,
                                       with_mc ? &mc : nullptr)
                           .dump(2)
                    << "\n";
            } else if (format == "table") {
                out << extraction_table(r, input, set,
                                        with_mc ? &mc : nullptr);
            } else { // csv
                if (!with_mc) {
                    err << "argument error: --format csv requires "
                           "--mc-samples\n";
                    return 2;
                }
                out << monte_carlo_csv(mc);
            }
            return 0;
        }

        if (plan_cmd->parsed()) {
            const atom_spec atom =
                make_atom(set, detail::parse_atom(plan_atom));
            double pol_sigma = plan_pol_sigma;
            if (plan_pol_opt->count() == 0) {
                for (const auto& t : default_corrections(atom))
                    if (t.name == term_name::pol) pol_sigma = t.value.sigma;
            }
            const measurement rp(plan_rp, 0.0, unit::fm);
            const precision_plan p =
                plan_precision(atom, plan_target, pol_sigma, set, rp);
            if (format == "json")
                out << plan_json(p, atom, rp, pol_sigma, set).dump(2)
                    << "\n";
            else if (format == "table")
                out << plan_table(p, atom, rp, pol_sigma, set);
            else {
                err << "argument error: --format csv applies only to "
                       "extract with --mc-samples\n";
                return 2;
            }
            return 0;
        }

        if (models_cmd->parsed()) {
            if (format == "json") {
                ordered_json arr = ordered_json::array();
                for (const auto& name : builtin_model_names()) {
                    const loaded_model lm = load_model(name);
                    arr.push_back(ordered_json{{"id", lm.id},
                                               {"citation", lm.citation}});
                }
                ordered_json j;
                j["schema"] = "model-list/1";
                j["models"] = std::move(arr);
                out << j.dump(2) << "\n";
            } else {
                out << "bundled form-factor models:\n";
                for (const auto& name : builtin_model_names()) {
                    const loaded_model lm = load_model(name);
                    out << "  " << lm.id << "\n      " << lm.citation
                        << "\n";
                }
            }
            return 0;
        }
    } catch (const zemach::error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    err << "argument error: unrecognized invocation\n\n" << app.help();
    return 2;
}

} // namespace zemach::cli
