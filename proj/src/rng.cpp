#include "tdalab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tdalab {

std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
	return splitmix64(splitmix64(master) ^ (0xd1b54a32d192ed03ULL * (index + 1)));
}

std::uint64_t Rng::index(std::uint64_t n) {
	if (n == 0) throw std::invalid_argument("Rng::index: empty range");
	// reject the incomplete top block so every residue is equally likely
	const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
	std::uint64_t x;
	do {
		x = engine_();
	} while (x >= limit);
	return x % n;
}

double Rng::normal() {
	if (has_spare_) {
		has_spare_ = false;
		return spare_;
	}
	double u1 = uniform();
	while (u1 <= 0.0) u1 = uniform();
	const double u2 = uniform();
	const double r = std::sqrt(-2.0 * std::log(u1));
	const double theta = 2.0 * std::numbers::pi * u2;
	spare_ = r * std::sin(theta);
	has_spare_ = true;
	return r * std::cos(theta);
}

} // namespace tdalab
