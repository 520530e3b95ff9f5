#pragma once

#include <cstdint>
#include <random>

namespace tdalab {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-item seed derived from a master seed. Independent of evaluation
/// order, so items can be generated in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seeded generator with library-independent distributions, so datasets are
/// bit-identical across standard library implementations.
class Rng {
public:
	explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

	std::uint64_t next() { return engine_(); }

	/// Uniform on [0, 1) with 53 random bits.
	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

	/// Uniform integer in [0, n).
	std::uint64_t index(std::uint64_t n);

	/// Standard normal via Box-Muller (the spare value is cached).
	double normal();
	double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
	std::mt19937_64 engine_;
	bool has_spare_ = false;
	double spare_ = 0.0;
};

} // namespace tdalab
