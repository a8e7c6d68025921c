#include "sfl/airspace.hpp"

#include <cmath>
#include <stdexcept>

namespace sfl {

double path_loss_db(const Position& uav, const std::array<double, 3>& bs_pos,
                    double carrier_hz) {
    const double h_ut = uav.z;
    if (h_ut < 10.0 || h_ut > 300.0)
        throw std::domain_error("path_loss_db: UAV height " + std::to_string(h_ut) +
                                " m outside RMa-AV validity range [10, 300] m");
    const double d3d = distance_3d(uav, bs_pos);
    const double slope = std::max(23.9 - 1.8 * std::log10(h_ut), 20.0);
    const double fc_ghz = carrier_hz / 1e9;
    return slope * std::log10(d3d) + 20.0 * std::log10(40.0 * M_PI * fc_ghz / 3.0);
}

double uplink_rate(double bw_hz, double power_w, double gain, double noise_psd) {
    return bw_hz * std::log2(1.0 + power_w * gain / (bw_hz * noise_psd));
}

double downlink_rate_full(double bw_hz, double power_w, double gain, double noise_psd) {
    return bw_hz * std::log2(1.0 + power_w * gain / (bw_hz * noise_psd));
}

double downlink_rate_fraction(double beta, double rho, double bw_hz, double power_w,
                              double gain, double noise_psd) {
    const double w = beta * bw_hz;
    return w * std::log2(1.0 + rho * power_w * gain / (w * noise_psd));
}

namespace {

// squared distance from segment a-b to the origin-centred vertical axis,
// evaluated in the horizontal plane relative to the BS
double min_horizontal_dist_sq(const Position& a, const Position& b,
                              const std::array<double, 3>& bs) {
    const double ax = a.x - bs[0], ay = a.y - bs[1];
    const double bx = b.x - bs[0], by = b.y - bs[1];
    const double dx = bx - ax, dy = by - ay;
    const double len_sq = dx * dx + dy * dy;
    double t = 0.0;
    if (len_sq > 0.0) t = std::clamp(-(ax * dx + ay * dy) / len_sq, 0.0, 1.0);
    const double px = ax + t * dx, py = ay + t * dy;
    return px * px + py * py;
}

}  // namespace

Trajectory::Trajectory(RingBounds ring, double height_m, double speed_min, double speed_max,
                       std::array<double, 3> bs_pos, double carrier_hz, double slot_seconds,
                       uint64_t seed)
    : ring_(ring),
      height_m_(height_m),
      speed_min_(speed_min),
      speed_max_(speed_max),
      bs_pos_(bs_pos),
      carrier_hz_(carrier_hz),
      slot_seconds_(slot_seconds),
      rng_(seed) {
    if (!(ring.inner_m < ring.outer_m))
        throw std::invalid_argument("trajectory: ring inner bound must be < outer bound");
    if (speed_min < 0 || speed_max < speed_min)
        throw std::invalid_argument("trajectory: invalid speed bounds");

    // uniform start position in the annulus (area-uniform radius)
    const double r = std::sqrt(rng_.uniform(ring.inner_m * ring.inner_m,
                                            ring.outer_m * ring.outer_m));
    const double theta = rng_.uniform(0.0, 2.0 * M_PI);
    pos_ = {bs_pos_[0] + r * std::cos(theta), bs_pos_[1] + r * std::sin(theta), height_m_};

    SlotPoint p0;
    p0.pos = pos_;
    p0.dist_m = distance_3d(pos_, bs_pos_);
    p0.gain = gain_from_path_loss_db(path_loss_db(pos_, bs_pos_, carrier_hz_));
    points_.push_back(p0);
}

void Trajectory::extend() const {
    if (speed_max_ == 0.0) {
        // degenerate stationary UAV
        points_.push_back(points_.back());
        return;
    }
    if (leg_slots_left_ == 0) {
        // pick a fresh leg: a waypoint inside the annulus whose straight
        // connecting segment stays inside (the chord must clear the inner
        // circle), then an integer number of whole slots toward it
        for (int attempt = 0;; ++attempt) {
            if (attempt > 10000)
                throw std::runtime_error("trajectory: cannot find a feasible leg");
            const double r = std::sqrt(rng_.uniform(ring_.inner_m * ring_.inner_m,
                                                    ring_.outer_m * ring_.outer_m));
            const double theta = rng_.uniform(0.0, 2.0 * M_PI);
            Position wp{bs_pos_[0] + r * std::cos(theta), bs_pos_[1] + r * std::sin(theta),
                        height_m_};
            if (min_horizontal_dist_sq(pos_, wp, bs_pos_) < ring_.inner_m * ring_.inner_m)
                continue;
            const double dx = wp.x - pos_.x, dy = wp.y - pos_.y;
            const double dist = std::sqrt(dx * dx + dy * dy);
            if (dist < speed_min_ * slot_seconds_ || dist <= 0.0) continue;
            const double v_hi = std::min(speed_max_, dist / slot_seconds_);
            const double v = rng_.uniform(speed_min_, v_hi);
            if (v <= 0.0) continue;
            leg_speed_ = v;
            leg_slots_left_ = std::max<int64_t>(1, int64_t(dist / (v * slot_seconds_)));
            leg_dir_ = {dx / dist, dy / dist, 0.0};
            break;
        }
    }
    const double step = leg_speed_ * slot_seconds_;
    pos_.x += leg_dir_.x * step;
    pos_.y += leg_dir_.y * step;
    --leg_slots_left_;

    SlotPoint p;
    p.pos = pos_;
    p.dist_m = distance_3d(pos_, bs_pos_);
    p.gain = gain_from_path_loss_db(path_loss_db(pos_, bs_pos_, carrier_hz_));
    points_.push_back(p);
}

void Trajectory::ensure(int64_t slot) const {
    while (int64_t(points_.size()) <= slot) extend();
}

const Position& Trajectory::position(int64_t slot) const {
    ensure(slot);
    return points_[size_t(slot)].pos;
}

double Trajectory::distance_m(int64_t slot) const {
    ensure(slot);
    return points_[size_t(slot)].dist_m;
}

double Trajectory::gain(int64_t slot) const {
    ensure(slot);
    return points_[size_t(slot)].gain;
}

std::vector<Trajectory> make_trajectories(const Scenario& s, uint64_t seed) {
    std::vector<Trajectory> out;
    out.reserve(s.clients.size());
    Rng base(seed);
    for (size_t k = 0; k < s.clients.size(); ++k) {
        const auto& m = s.mobility;
        out.emplace_back(m.rings.at(size_t(s.clients[k].ring)), m.uav_height_m,
                         m.speed_min_mps, m.speed_max_mps, m.bs_pos_m, m.carrier_hz,
                         s.config.slot_seconds, base.fork(uint64_t(k)).next_u64());
    }
    return out;
}

double transmit_duration(double data_bits, const std::function<double(int64_t)>& rate_of_slot,
                         double t_start, double slot_seconds) {
    if (data_bits <= 0.0) return 0.0;
    if (t_start < 0.0) throw std::invalid_argument("transmit_duration: negative start time");

    constexpr int64_t kZeroRateGuard = 100'000'000;  // consecutive zero-rate slots
    int64_t s = slot_of(t_start, slot_seconds);
    double remaining = data_bits;
    // head fragment of the starting slot
    double frag = double(s + 1) * slot_seconds - t_start;
    int64_t zero_run = 0;
    double elapsed = 0.0;
    for (;;) {
        const double r = rate_of_slot(s);
        if (r < 0.0) throw std::domain_error("transmit_duration: negative rate");
        const double cap = r * frag;
        if (cap >= remaining) {
            return elapsed + (r > 0.0 ? remaining / r : frag);
        }
        if (r == 0.0) {
            if (++zero_run > kZeroRateGuard)
                throw std::runtime_error("transmit_duration: rate stuck at zero");
        } else {
            zero_run = 0;
        }
        remaining -= cap;
        elapsed += frag;
        ++s;
        frag = slot_seconds;
    }
}

}  // namespace sfl
