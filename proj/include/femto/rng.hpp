#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace femto {

// Stream purposes used when deriving child seeds. The numeric values are
// part of the reproducibility contract: changing them changes every result.
enum class StreamPurpose : std::uint64_t {
    placement = 1,
    link_state = 2,
    fading = 3,
    topology_seed = 4,
    channel_seed = 5,
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Derives an independent child seed from a parent seed, a purpose tag and
/// up to two integer tokens (e.g. FAP and user indices).
inline std::uint64_t derive_seed(std::uint64_t parent, StreamPurpose purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0)
{
    std::uint64_t s = detail::splitmix64(parent);
    s = detail::splitmix64(s ^ static_cast<std::uint64_t>(purpose));
    s = detail::splitmix64(s ^ a);
    s = detail::splitmix64(s ^ b);
    return s;
}

/// Deterministic random stream. All variates are inverted by hand from the
/// raw engine output so that results do not depend on the standard
/// library's distribution implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Unit-mean exponential via inverse CDF.
    double exponential_unit_mean() { return -std::log1p(-uniform()); }

    /// Gaussian via Box-Muller; one variate per call.
    double normal(double mean, double stddev)
    {
        double u1 = 1.0 - uniform(); // in (0, 1], keeps the log finite
        double u2 = uniform();
        double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * 3.14159265358979323846 * u2);
        return mean + stddev * z;
    }

    bool coin() { return uniform() < 0.5; }

private:
    std::mt19937_64 engine_;
};

} // namespace femto
