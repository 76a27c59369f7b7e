#ifndef ZONOREACH_RNG_HPP_
#define ZONOREACH_RNG_HPP_

#include <cstdint>

namespace zonoreach
{

/// Small deterministic generator (splitmix64). Used instead of the standard
/// library distributions so that sampled values are identical across
/// platforms and library versions.
class SplitMix64
{
    public:
        explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

        std::uint64_t next()
        {
            std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        /// Uniform double in [0, 1).
        double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

        /// Uniform double in [-1, 1).
        double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    private:
        std::uint64_t state_;
};

/// Derives an independent substream id from a base seed and up to three
/// counters (trajectory, time step, channel). Generating data in parallel
/// with per-substream generators gives the same result as serial generation.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0)
{
    SplitMix64 h(seed);
    std::uint64_t s = h.next();
    s ^= a + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    SplitMix64 h2(s);
    s = h2.next();
    s ^= b + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    SplitMix64 h3(s);
    s = h3.next();
    s ^= c + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    SplitMix64 h4(s);
    return h4.next();
}

} // namespace zonoreach

#endif
