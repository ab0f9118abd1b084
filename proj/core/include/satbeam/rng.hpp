#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace satbeam {

/// Independent random stream. Streams derived from the same master seed with
/// different `stream` ids are uncorrelated, so switching one noise source on or
/// off does not shift the draws of the others.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::array<std::uint32_t, 4> words{
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }

    /// Standard normal draw.
    double normal() { return normal_(engine_); }

    /// Uniform draw of -1 or +1.
    int sign() { return (engine_() >> 63) != 0U ? 1 : -1; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stream ids used by the closed-loop simulation.
enum class RngStream : std::uint64_t {
    kSensors = 1,
    kChannel = 2,
    kPerturbation = 3,
};

inline Rng make_stream(std::uint64_t seed, RngStream stream) {
    return Rng(seed, static_cast<std::uint64_t>(stream));
}

}  // namespace satbeam
