#pragma once

#include <cstdint>
#include <cmath>
#include <string>
#include <sstream>

namespace sfl {

// Deterministic PRNG used everywhere in the simulator. All draws go through
// explicit transforms (no std::*_distribution) so that streams are identical
// across standard library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    // splitmix64 step
    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform over [lo, hi], lo > 0
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // integer in [0, n)
    uint64_t uniform_index(uint64_t n) { return n ? next_u64() % n : 0; }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + int(uniform_index(uint64_t(hi - lo + 1)));
    }

    // standard normal via Box-Muller (cached spare kept for determinism)
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // derive an independent child stream (stable: depends only on parent seed
    // identity and the tag, not on parent draw position)
    Rng fork(uint64_t tag) const {
        Rng child(state_ ^ (0xd1342543de82ef95ULL * (tag + 1)));
        return child;
    }

    std::string serialize() const {
        std::ostringstream os;
        os << state_ << " " << (has_spare_ ? 1 : 0) << " ";
        os.precision(17);
        os << spare_;
        return os.str();
    }

    static Rng deserialize(const std::string& s) {
        std::istringstream is(s);
        Rng r(1);
        int hs = 0;
        is >> r.state_ >> hs >> r.spare_;
        r.has_spare_ = hs != 0;
        return r;
    }

private:
    uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sfl
