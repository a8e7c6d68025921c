#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>
#include <stdexcept>

namespace sfl {

// Unit conventions: everything is stored in SI base units internally
// (Hz, W, seconds, bits, FLOPs). Config keys carry unit suffixes and are
// converted on load. 1 KB = 1024 bytes = 8192 bits.
inline constexpr double kBitsPerKB = 8192.0;

inline double kb_to_bits(double kb) { return kb * kBitsPerKB; }
inline double bits_to_kb(double bits) { return bits / kBitsPerKB; }
inline double gflops_to_flops(double g) { return g * 1e9; }
inline double dbm_per_mhz_to_w_per_hz(double dbm_mhz) {
    return std::pow(10.0, dbm_mhz / 10.0) * 1e-3 / 1e6;
}

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-split-point FLOP and byte costs of the partitioned model.
struct SplitProfile {
    int split_point = 0;  // u
    double psi_cf = 0;    // FLOPs/sample, client forward pass
    double psi_sf = 0;    // FLOPs/sample, server forward pass
    double psi_cb = 0;    // FLOPs/sample, client backward pass
    double psi_sb = 0;    // FLOPs/sample, server backward pass
    double gamma_m = 0;   // bits, client-side trainable parameters
    double gamma_a = 0;   // bits/sample, smashed data
    double gamma_g = 0;   // bits/sample, smashed-data gradients
};

struct ClientProfile {
    double transmit_power_w = 0;  // p_k
    double freq_hz = 0;           // f_k, cycles/s
    double intensity = 0;         // kappa_k, FLOPs/cycle
    double energy_coeff = 0;      // omega_k, W/(cycle/s)^3
    int ring = 0;                 // annulus index this UAV is confined to
};

struct ServerProfile {
    double total_power_w = 0;   // P_S
    double freq_hz = 0;         // f_S, cycles/s
    double intensity = 0;       // kappa_S, FLOPs/cycle
    double uplink_bw_hz = 0;    // W_U
    double downlink_bw_hz = 0;  // W_D
    double noise_psd = 0;       // N0, W/Hz
    double alpha_min = 0;
    double beta_min = 0;
    double rho_min = 0;
};

struct RingBounds {
    double inner_m = 0;
    double outer_m = 0;
};

// Mobility geometry shared by all trajectory generation.
struct MobilityConfig {
    std::array<double, 3> bs_pos_m{0, 0, 0};
    double uav_height_m = 0;
    double speed_min_mps = 0;
    double speed_max_mps = 0;
    double carrier_hz = 0;  // f_c
    std::vector<RingBounds> rings;
};

struct ScenarioConfig {
    int num_clients = 0;      // K
    int local_iterations = 0; // I
    int rounds = 0;           // N (default experiment horizon)
    int batch_size = 0;       // B
    double sigma = 0;         // BP/FP compute ratio
    double slot_seconds = 0;  // tau0
    double energy_weight = 0; // lambda, s/J
    std::vector<int> split_set;
    uint64_t rng_seed = 0;
};

struct Scenario {
    ScenarioConfig config;
    ServerProfile server;
    std::vector<ClientProfile> clients;
    std::vector<SplitProfile> splits;
    MobilityConfig mobility;

    const SplitProfile& split(int u) const;
    int num_clients() const { return config.num_clients; }
};

// Parses and validates a config document (throws ConfigError with the field
// name and offending value on the first violation found).
Scenario load_scenario(const std::string& toml_text);
Scenario load_scenario_file(const std::string& path);

// Serializes a scenario back into the document format; loading the result
// reproduces the scenario exactly (all numbers written with full precision).
std::string save_scenario(const Scenario& s);

// The bundled evaluation setup: 10 UAVs in three annuli around a base
// station, Swin-L/LoRA split cost table, heterogeneous transmit powers.
Scenario builtin_paper_scenario();

void validate_scenario(const Scenario& s);

}  // namespace sfl
