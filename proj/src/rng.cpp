#include "bienayme/rng.hpp"

namespace bienayme {

namespace {
constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace

std::array<std::uint32_t, 4> Philox::block(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
    for (int r = 0; r < 10; ++r) {
        std::uint64_t p0 = std::uint64_t(M0) * c[0];
        std::uint64_t p1 = std::uint64_t(M1) * c[2];
        std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += W0;
        k[1] += W1;
    }
    return c;
}

void Philox::refill() {
    std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(counter_),
                                     static_cast<std::uint32_t>(counter_ >> 32),
                                     static_cast<std::uint32_t>(stream_),
                                     static_cast<std::uint32_t>(stream_ >> 32)};
    auto out = block(ctr, key_);
    buf_[0] = (std::uint64_t(out[1]) << 32) | out[0];
    buf_[1] = (std::uint64_t(out[3]) << 32) | out[2];
    ++counter_;
    pos_ = 0;
}

std::uint64_t Philox::below(std::uint64_t n) {
    if (n <= 1) return 0;
    // Lemire's multiply-shift with rejection
    unsigned __int128 m = (unsigned __int128)(*this)() * n;
    std::uint64_t lo = std::uint64_t(m);
    if (lo < n) {
        std::uint64_t t = (0 - n) % n;
        while (lo < t) {
            m = (unsigned __int128)(*this)() * n;
            lo = std::uint64_t(m);
        }
    }
    return std::uint64_t(m >> 64);
}

Philox Philox::split(std::uint64_t sub) const {
    std::uint64_t seed = (std::uint64_t(key_[1]) << 32) | key_[0];
    return Philox(seed, mix64(stream_ ^ mix64(sub + 1)));
}

}  // namespace bienayme
