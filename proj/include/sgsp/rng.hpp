#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace sgsp {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The output for a given (key, counter) is a pure function, so streams can
/// be derived per grid cell and drawn in any order without changing results.
class Philox {
public:
    using result_type = std::uint64_t;

    explicit Philox(std::uint64_t key, std::uint64_t stream = 0) noexcept
        : key_(key), stream_(stream) {}

    /// Four 32-bit words for block `counter` of this stream.
    std::array<std::uint32_t, 4> block(std::uint64_t counter) const noexcept;

    /// 53-bit uniform in [0, 1) taken from block `counter`.
    double uniform_at(std::uint64_t counter) const noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() noexcept;
    /// Uniform integer in [0, bound) without modulo bias. bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t stream() const noexcept { return stream_; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() noexcept { return next_u64(); }

private:
    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;
};

/// Mixes a parent seed with sub-stream coordinates (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Fisher-Yates shuffle driven by `rng`; portable across standard libraries.
template <typename T>
void shuffle(std::span<T> items, Philox& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace sgsp
