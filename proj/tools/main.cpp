#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "vbp/audit.hpp"
#include "vbp/io.hpp"

namespace {

// Bare filenames are also looked up in $VBP_FIXTURE_DIR.
std::string resolve_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("VBP_FIXTURE_DIR")) {
        const fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

int emit(const vbp::audit::Result& result) {
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational Bewley preference profiles: validation, dominance, and Pareto audits"};
    app.require_subcommand(1);

    std::string profile_path;
    std::uint64_t seed = 0;
    int grid = 100;
    double tolerance = vbp::kDecisionTol;
    std::size_t samples = 1000;

    auto* validate = app.add_subcommand("validate", "check every representation side condition");
    validate->add_option("profile", profile_path, "profile JSON file")->required();

    auto* audit = app.add_subcommand("audit", "full aggregation audit with witnesses and sampled oracle");
    audit->add_option("profile", profile_path, "profile JSON file")->required();
    audit->add_option("--seed", seed, "PRNG seed for the sampled audits");
    audit->add_option("--grid", grid, "simplex grid resolution for the oracle");
    audit->add_option("--tolerance", tolerance, "decision tolerance (epsilon_dec)");
    audit->add_option("--samples", samples, "number of sampled act pairs");

    std::size_t agent_index = 0;
    std::string acts_path, f_name, g_name;
    auto* dom = app.add_subcommand("dominance", "margins and relation verdict for a pair of acts");
    dom->add_option("profile", profile_path, "profile JSON file")->required();
    dom->add_option("--agent", agent_index, "preference index (0 = social)")->required();
    dom->add_option("--acts", acts_path, "acts JSON file (defaults to acts bundled in the profile)");
    dom->add_option("--f", f_name, "name of the first act (default: first in file)");
    dom->add_option("--g", g_name, "name of the second act (default: second in file)");
    dom->add_option("--tolerance", tolerance, "decision tolerance (epsilon_dec)");

    CLI11_PARSE(app, argc, argv);

    try {
        const vbp::Profile profile = vbp::io::load_profile(resolve_path(profile_path));

        if (validate->parsed()) return emit(vbp::audit::run_validation(profile));

        if (audit->parsed()) {
            vbp::audit::Options options;
            options.seed = seed;
            options.grid = grid;
            options.tolerance = tolerance;
            options.samples = samples;
            return emit(vbp::audit::run_audit(profile, options));
        }

        // dominance
        const auto validation = vbp::audit::run_validation(profile);
        if (validation.exit_code != 0) return emit(validation);
        if (agent_index > profile.num_agents()) {
            std::cerr << "unknown agent " << agent_index << " (profile has " << profile.num_agents()
                      << " individuals)\n";
            return vbp::audit::kExitValidation;
        }
        const std::vector<vbp::NamedAct> acts =
            acts_path.empty()
                ? profile.acts
                : vbp::io::load_acts(resolve_path(acts_path), profile.num_states(), profile.outcome_dim);
        if (acts.size() < 2) {
            std::cerr << "need at least two acts to compare\n";
            return vbp::audit::kExitValidation;
        }
        auto find = [&](const std::string& name, std::size_t fallback) -> const vbp::NamedAct& {
            if (name.empty()) return acts[fallback];
            for (const auto& a : acts)
                if (a.name == name) return a;
            throw vbp::io::ParseError("no act named '" + name + "'");
        };
        const vbp::NamedAct& f = find(f_name, 0);
        const vbp::NamedAct& g = find(g_name, 1);
        std::cout << vbp::audit::dominance_report(profile, agent_index, f.name, f.act, g.name, g.act,
                                                  tolerance)
                         .dump(2)
                  << "\n";
        return 0;
    } catch (const vbp::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbp::audit::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return vbp::audit::kExitInternalFailure;
    }
}
