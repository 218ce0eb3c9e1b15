#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace sndn {

using NodeId = std::int32_t;
using ComponentId = std::uint32_t;
using ItemId = std::int32_t;
/// Simulation time in whole seconds.
using Time = std::int64_t;

constexpr NodeId kNoNode = -1;
constexpr ItemId kNoItem = -1;

/// Raised by file loaders and validators; message carries file/line context.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// --- deterministic RNG -----------------------------------------------------
//
// All randomness in the project flows through SplitMix64 streams so that a
// run is a pure function of its seeds, independent of platform and of the
// C++ standard library's distribution implementations.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Collapse an arbitrary key tuple into one 64-bit stream seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    std::uint64_t s = a;
    splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ULL;
    splitmix64(s);
    s ^= c + 0xd1b54a32d192ed03ULL;
    std::uint64_t t = s;
    return splitmix64(t);
}

/// Deterministic uniform/exponential/categorical sampler over a SplitMix64
/// stream. Intentionally avoids std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    double next_exponential(double rate);

    /// Index sampled proportionally to non-negative weights (CDF walk).
    /// Weights summing to zero fall back to uniform.
    std::size_t next_categorical(const std::vector<double>& weights);

private:
    std::uint64_t state_;
};

// --- hashing ---------------------------------------------------------------

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a64(s.data(), s.size(), h);
}

std::string to_hex16(std::uint64_t v);

// --- formatting ------------------------------------------------------------
//
// CSV output must be byte-stable across runs, so all floating-point
// formatting goes through these fixed printf formats.

std::string format_double(double v, int precision);
std::string format_compact(double v);  // shortest %.*g that round-trips visually (%.10g)

// --- small string utilities ------------------------------------------------

std::vector<std::string> split(const std::string& line, char sep);
std::string trim(const std::string& s);

}  // namespace sndn
