#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varspec/encode.hpp"
#include "varspec/lmg.hpp"
#include "varspec/vqe.hpp"

namespace varspec {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIncompleteSpectrum = 2;

// Effective configuration of one run, assembled from defaults, an optional
// key-value config file, and command-line flags (in that order). The full
// effective configuration is echoed into every output file.
struct RunConfig {
    LmgParams lmg;
    EstimatorConfig::Mode mode = EstimatorConfig::Mode::exact;
    std::uint64_t shots = 20000;
    std::uint64_t seed = 0;
    bool mitigate = false;
    std::map<int, ReadoutNoiseModel::QubitFlips> noise;  // per-qubit settings
    std::optional<double> noise_p01_all;  // uniform override, all qubits
    std::optional<double> noise_p10_all;
    int grid = 100;    // sweep resolution per axis
    int starts = 8;    // multistart grid per axis
    int trials = 20;   // noise-demo seed count
    PaddingPolicy::Mode padding = PaddingPolicy::Mode::penalty;
    std::string out_dir = "varspec-out";
    std::string in_path;  // input file for `encode`, optional for `spectrum`

    // Estimator for a Hamiltonian on n_qubits; an all-zero noise setup
    // counts as "no noise".
    EstimatorConfig estimator(int n_qubits) const;
    ReadoutNoiseModel noise_model(int n_qubits) const;
    bool has_noise() const;
};

// Applies one `key = value` setting; unknown keys throw. Keys mirror the
// flag names plus per-qubit noise entries `noise.q<k>.p01` / `noise.q<k>.p10`.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// Reads a whole config file of such lines ('#' comments, blank lines ok).
void apply_config_file(RunConfig& cfg, const std::string& path);

// Parameter-landscape grid: axis values in [0, 2pi), exclusive of 2pi, and
// the variance at each (theta1, theta2) cell in row-major order.
struct SweepGrid {
    std::vector<double> theta1;
    std::vector<double> theta2;
    std::vector<double> variance;  // [i1 * theta2.size() + i2]
};

SweepGrid compute_sweep(const PauliSum& h, const EstimatorConfig& cfg, int resolution);
void write_sweep_csv(std::ostream& out, const SweepGrid& grid, const std::string& header);

// Subcommands. Each writes its outputs under cfg.out_dir (created if needed)
// and reports human-readable results on `out`.
int cmd_model(const RunConfig& cfg, std::ostream& out);
int cmd_encode(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_noise_demo(const RunConfig& cfg, std::ostream& out);

// The Hamiltonian a run works on: the quasispin matrix of cfg.lmg, encoded
// per the padding policy (or the Pauli file at cfg.in_path when set).
PauliSum run_hamiltonian(const RunConfig& cfg);

// '#'-prefixed effective-config block used as the header of text outputs.
std::string config_echo(const RunConfig& cfg, const std::string& command);

}  // namespace varspec
