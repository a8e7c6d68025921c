#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sfl/rng.hpp"
#include "sfl/scenario.hpp"

namespace sfl {

struct Position {
    double x = 0, y = 0, z = 0;
};

inline double horizontal_distance(const Position& p, const std::array<double, 3>& bs) {
    double dx = p.x - bs[0], dy = p.y - bs[1];
    return std::sqrt(dx * dx + dy * dy);
}

inline double distance_3d(const Position& p, const std::array<double, 3>& bs) {
    double dx = p.x - bs[0], dy = p.y - bs[1], dz = p.z - bs[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// RMa-AV line-of-sight path loss (TR 36.777 Table B-2, LOS branch):
//   PL = max(23.9 - 1.8 log10(h_UT), 20) * log10(d_3D)
//        + 20 log10(40 pi f_c/3),   f_c in GHz, distances in meters.
// Throws if the UAV height is outside the model's 10-300 m validity range.
double path_loss_db(const Position& uav, const std::array<double, 3>& bs_pos, double carrier_hz);

inline double gain_from_path_loss_db(double pl_db) { return std::pow(10.0, -pl_db / 10.0); }

// Shannon-style rates; bandwidth in Hz, powers in W, N0 in W/Hz, gain linear.
double uplink_rate(double bw_hz, double power_w, double gain, double noise_psd);
double downlink_rate_full(double bw_hz, double power_w, double gain, double noise_psd);
double downlink_rate_fraction(double beta, double rho, double bw_hz, double power_w,
                              double gain, double noise_psd);

// Per-slot UAV path confined to one annulus around the BS. Positions are
// sampled at slot boundaries; motion is straight per leg at a constant speed
// drawn per leg, so consecutive positions are between v_min*tau0 and
// v_max*tau0 apart. The series extends itself on demand from its own RNG
// stream, so a fixed seed always yields the same path regardless of how far
// a simulation reads ahead. Not safe for concurrent extension; give each
// worker its own instance.
class Trajectory {
public:
    Trajectory(RingBounds ring, double height_m, double speed_min, double speed_max,
               std::array<double, 3> bs_pos, double carrier_hz, double slot_seconds,
               uint64_t seed);

    const Position& position(int64_t slot) const;
    double distance_m(int64_t slot) const;  // 3D distance to the BS
    double gain(int64_t slot) const;        // linear channel power gain

    int64_t generated_slots() const { return int64_t(points_.size()); }
    void ensure(int64_t slot) const;
    double slot_seconds() const { return slot_seconds_; }

private:
    void extend() const;

    RingBounds ring_;
    double height_m_;
    double speed_min_, speed_max_;
    std::array<double, 3> bs_pos_;
    double carrier_hz_;
    double slot_seconds_;

    mutable Rng rng_;
    mutable Position pos_;           // current end-of-path position
    mutable Position leg_dir_;       // unit direction of the active leg
    mutable double leg_speed_ = 0;
    mutable int64_t leg_slots_left_ = 0;

    struct SlotPoint {
        Position pos;
        double dist_m;
        double gain;
    };
    mutable std::vector<SlotPoint> points_;
};

// Builds one trajectory per client of the scenario, seeded from the given
// base seed so that reruns consume identical mobility.
std::vector<Trajectory> make_trajectories(const Scenario& s, uint64_t seed);

// Solves the implicit "payload = duration x time-averaged rate" relation
// exactly by walking slot capacities: within each slot bits accrue linearly
// at that slot's rate. Returns the duration from t_start until data_bits
// have been delivered. rate_of_slot must be >= 0 with an eventually positive
// tail; a zero-rate stretch longer than the walk guard throws.
double transmit_duration(double data_bits, const std::function<double(int64_t)>& rate_of_slot,
                         double t_start, double slot_seconds);

inline int64_t slot_of(double t, double slot_seconds) {
    return int64_t(std::floor(t / slot_seconds));
}

}  // namespace sfl
