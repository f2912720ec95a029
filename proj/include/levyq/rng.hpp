#pragma once

#include <cmath>
#include <cstdint>

namespace levyq::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a2c62a2fc0ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ keyed by (master seed, replication, substream). Each replication
// owns an independent stream, so results do not depend on how replications are
// scheduled across worker threads.
class Stream {
public:
    Stream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t substream = 0) {
        std::uint64_t key = master_seed;
        key ^= 0x6a09e667f3bcc909ULL + replication * 0x9e3779b97f4a7c15ULL;
        key ^= substream * 0xd1b54a32d192ed03ULL;
        for (auto& word : s_)
            word = splitmix64(key);
        has_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe to pass to log or negative powers.
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    double pareto(double gamma, double k) { return k * std::pow(uniform_pos(), -1.0 / gamma); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double a = 6.283185307179586476925286766559 * uniform01();
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int s) { return (x << s) | (x >> (64 - s)); }

    std::uint64_t s_[4];
    double spare_;
    bool has_spare_;
};

} // namespace levyq::rng
