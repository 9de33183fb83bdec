#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cgame {

// Single absolute tolerance used for every floating-point comparison in the
// model code (exit boundaries, P-membership, tie detection, value checks).
constexpr double kTol = 1e-9;

// Bad or inconsistent configuration (schema violations, non-monotone tables,
// infeasible horizons without --force, ...). CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver refused to start because the enumeration/DP size bound was
// exceeded. CLI maps this to exit code 3.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stateless counter RNG: the value for a given (seed, round, stream) triple is
// fixed forever, independent of platform and of how many draws other code
// consumed. std::uniform_real_distribution is implementation-defined, which
// would break byte-identical seeded runs, so we stay away from it.
inline double uniform01(std::uint64_t seed, std::uint64_t round, std::uint64_t stream = 0) {
    std::uint64_t h = splitmix64(splitmix64(seed ^ 0x4cf5ad432745937fULL) ^ round);
    h = splitmix64(h ^ splitmix64(stream ^ 0xff51afd7ed558ccdULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Small sequential generator for test-instance sampling (not used by any
// seeded run that must be replayable round-by-round).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() { return splitmix64(state++); }
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

// Float formatting used by every CSV writer: 10 significant digits, shortest
// form. Keeps files byte-identical across runs.
std::string format_double(double v);

}  // namespace cgame
