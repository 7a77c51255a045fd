#pragma once
// Counter-based generator (Philox4x32-10). A stream is identified by
// (seed, stream id); the draw index is the counter, so replicate r of a
// run always sees the same bits regardless of scheduling.

#include <array>
#include <cstdint>
#include <limits>

namespace bienayme {

class Philox {
public:
    using result_type = std::uint64_t;

    Philox(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (pos_ >= 2) refill();
        return buf_[pos_++];
    }

    // uniform on (0, 1], never exactly 0
    double uniform() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

    // unbiased integer in [0, n)
    std::uint64_t below(std::uint64_t n);

    std::uint64_t draws() const { return counter_; }
    std::uint64_t stream() const { return stream_; }

    // child stream for replicate-level splitting
    Philox split(std::uint64_t sub) const;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int pos_ = 2;
};

}  // namespace bienayme
