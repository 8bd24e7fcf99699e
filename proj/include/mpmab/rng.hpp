#pragma once

#include <cstdint>
#include <random>

namespace mpmab {

/// SplitMix64 finalizer. Used to derive independent seeds and as the
/// counter-based generator behind arm reward streams.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a child seed for a tagged sub-stream (player id, epoch, ...).
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag)
{
    return mix64(parent ^ mix64(tag + 0x632BE59BD9B4E019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag,
                                    std::uint64_t sub)
{
    return derive_seed(derive_seed(parent, tag), sub);
}

/// Top 53 bits to a double in [0, 1).
constexpr double to_unit(std::uint64_t bits)
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Deterministic random source. The standard distributions are
/// implementation-defined, so draws are made by hand to keep traces
/// bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform01() { return to_unit(engine_()); }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t n)
    {
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % n;
    }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi)
    {
        return lo + static_cast<int>(uniform_index(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mpmab
