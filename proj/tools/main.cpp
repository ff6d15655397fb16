// varspec: finds the complete excitation spectrum of small two-level pairing
// Hamiltonians on a simulated quantum device by minimising the Hamiltonian
// variance over a two-parameter ansatz.

#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "varspec/run.hpp"
#include "varspec/version.hpp"

namespace {

using varspec::RunConfig;

// Raw flag values; only flags actually passed override the config file.
struct FlagValues {
    std::string config_path;
    int n = 0;
    double epsilon = 0.0, v = 0.0, w = 0.0;
    std::string mode, padding, out, in;
    std::uint64_t shots = 0, seed = 0;
    int grid = 0, starts = 0, trials = 0;
    bool mitigate = false;
    double noise_p01 = 0.0, noise_p10 = 0.0;
};

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
    cmd->add_option("--config", flags.config_path, "key = value config file; flags override it");
    cmd->add_option("--n", flags.n, "particle count N");
    cmd->add_option("--epsilon", flags.epsilon, "level splitting (energy unit)");
    cmd->add_option("--v", flags.v, "pair-scattering strength V (units of epsilon)");
    cmd->add_option("--w", flags.w, "exchange-scattering strength W (units of epsilon)");
    cmd->add_option("--mode", flags.mode, "estimator mode: exact or shots")
        ->check(CLI::IsMember({"exact", "shots"}));
    cmd->add_option("--shots", flags.shots, "shots per Pauli term (shot mode)");
    cmd->add_option("--seed", flags.seed, "root seed for all sampling");
    cmd->add_option("--grid", flags.grid, "sweep resolution per axis");
    cmd->add_option("--starts", flags.starts, "multistart grid per axis");
    cmd->add_option("--trials", flags.trials, "noise-demo trials");
    cmd->add_option("--noise-p01", flags.noise_p01, "P(read 1 | true 0), all qubits");
    cmd->add_option("--noise-p10", flags.noise_p10, "P(read 0 | true 1), all qubits");
    cmd->add_flag("--mitigate,!--no-mitigate", flags.mitigate,
                  "apply readout-bias correction");
    cmd->add_option("--padding", flags.padding, "padding mode: zero or penalty")
        ->check(CLI::IsMember({"zero", "penalty"}));
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--in", flags.in, "input file (matrix for encode, Pauli sum for spectrum)");
}

// defaults -> config file -> explicitly passed flags.
RunConfig assemble(const CLI::App* cmd, const FlagValues& flags) {
    RunConfig cfg;
    if (cmd->count("--config") > 0) {
        varspec::apply_config_file(cfg, flags.config_path);
    }
    const auto set = [&](const std::string& flag, const std::string& key,
                         const std::string& value) {
        if (cmd->count(flag) > 0) {
            varspec::apply_setting(cfg, key, value);
        }
    };
    set("--n", "n", std::to_string(flags.n));
    set("--epsilon", "epsilon", std::to_string(flags.epsilon));
    set("--v", "v", std::to_string(flags.v));
    set("--w", "w", std::to_string(flags.w));
    set("--mode", "mode", flags.mode);
    set("--shots", "shots", std::to_string(flags.shots));
    set("--seed", "seed", std::to_string(flags.seed));
    set("--grid", "grid", std::to_string(flags.grid));
    set("--starts", "starts", std::to_string(flags.starts));
    set("--trials", "trials", std::to_string(flags.trials));
    set("--noise-p01", "noise-p01", std::to_string(flags.noise_p01));
    set("--noise-p10", "noise-p10", std::to_string(flags.noise_p10));
    set("--mitigate", "mitigate", flags.mitigate ? "on" : "off");
    set("--padding", "padding", flags.padding);
    set("--out", "out", flags.out);
    set("--in", "in", flags.in);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variance-minimisation spectroscopy of two-level pairing Hamiltonians"};
    app.set_version_flag("--version", std::string("varspec ") + varspec::kVersion);
    app.require_subcommand(1);

    struct Sub {
        CLI::App* cmd;
        FlagValues flags;
        std::function<int(const RunConfig&, std::ostream&)> fn;
    };
    Sub subs[] = {
        {app.add_subcommand("model",
                            "build the quasispin Hamiltonian and its Pauli encoding"),
         {}, varspec::cmd_model},
        {app.add_subcommand("encode", "encode a Hermitian matrix file as a Pauli sum"),
         {}, varspec::cmd_encode},
        {app.add_subcommand("sweep", "variance landscape over the parameter torus"),
         {}, varspec::cmd_sweep},
        {app.add_subcommand("spectrum", "multistart variance-VQE spectrum recovery"),
         {}, varspec::cmd_spectrum},
        {app.add_subcommand("noise-demo",
                            "readout-noise mitigation comparison at the eigenstate points"),
         {}, varspec::cmd_noise_demo},
    };
    for (auto& sub : subs) {
        add_common_flags(sub.cmd, sub.flags);
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& sub : subs) {
        if (!sub.cmd->parsed()) continue;
        try {
            return sub.fn(assemble(sub.cmd, sub.flags), std::cout);
        } catch (const std::exception& e) {
            std::cerr << "varspec: " << e.what() << "\n";
            return varspec::kExitUsage;
        }
    }
    return varspec::kExitUsage;
}
