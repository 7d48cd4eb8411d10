#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tornpaper {

using Symbol = std::uint8_t;

// Error taxonomy; the CLI maps these onto distinct exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Bad arguments / invalid configuration.
struct ParamError : Error {
    using Error::Error;
};
// Input violates a decoder precondition in a detectable way.
struct CorruptionError : Error {
    using Error::Error;
};
// A decode pipeline could not produce a message.
struct DecodeError : Error {
    using Error::Error;
};
// An enumeration/sampling cap was exceeded.
struct ResourceError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// Substitution / segment-deletion budget for one channel experiment. The two
// noise models are handled by separate codecs, so at most one may be nonzero.
struct ErrorBudget {
    std::size_t t_sub = 0;
    std::size_t t_del = 0;

    void validate() const {
        if (t_sub > 0 && t_del > 0)
            throw ParamError("ErrorBudget: t_sub and t_del cannot both be nonzero");
    }
};

// Deterministic 64-bit generator (splitmix64). std::uniform_int_distribution
// is implementation-defined, so bounded draws are done by rejection here;
// replay of a seeded run is bit-identical on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ParamError("Rng::below: zero bound");
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

    // Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) throw ParamError("Rng::range: lo > hi");
        return lo + below(hi - lo + 1);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace tornpaper
