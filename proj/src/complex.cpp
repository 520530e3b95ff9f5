#include "tdalab/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace tdalab {

bool filtration_less(const Simplex& a, const Simplex& b) {
	if (a.value != b.value) return a.value < b.value;
	if (a.dim != b.dim) return a.dim < b.dim;
	return a.vertices < b.vertices;
}

std::size_t FilteredComplex::count(int dim) const {
	return static_cast<std::size_t>(
	    std::count_if(simplices_.begin(), simplices_.end(), [dim](const Simplex& s) { return s.dim == dim; }));
}

int FilteredComplex::max_dim() const {
	int d = -1;
	for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.dim));
	return d;
}

FilteredComplex FilteredComplex::from_simplices(std::vector<Simplex> simplices) {
	using Key = std::array<std::uint32_t, 4>;
	auto key = [](const Simplex& s) { return Key{s.dim, s.vertices[0], s.vertices[1], s.vertices[2]}; };
	std::set<Key> seen;
	std::size_t bound = 0;
	for (auto& s : simplices) {
		if (s.dim > 2) throw std::invalid_argument("FilteredComplex: simplex dimension above 2");
		if (!std::isfinite(s.value)) throw std::invalid_argument("FilteredComplex: non-finite filtration value");
		for (int i = s.dim + 1; i < 3; ++i) s.vertices[i] = 0;
		for (int i = 0; i < s.dim; ++i)
			if (!(s.vertices[i] < s.vertices[i + 1]))
				throw std::invalid_argument("FilteredComplex: vertices must be strictly ascending");
		bound = std::max<std::size_t>(bound, s.vertices[s.dim] + 1);
		if (!seen.insert(key(s)).second) throw std::invalid_argument("FilteredComplex: duplicate simplex");
	}
	std::sort(simplices.begin(), simplices.end(), filtration_less);
	std::map<Key, double> value_of;
	for (const auto& s : simplices) value_of[key(s)] = s.value;
	for (const auto& s : simplices) {
		if (s.dim == 0) continue;
		for (int drop = 0; drop <= s.dim; ++drop) {
			Simplex face;
			face.dim = static_cast<std::uint8_t>(s.dim - 1);
			for (int i = 0, j = 0; i <= s.dim; ++i)
				if (i != drop) face.vertices[j++] = s.vertices[i];
			auto it = value_of.find(key(face));
			if (it == value_of.end()) throw std::invalid_argument("FilteredComplex: missing face");
			if (it->second > s.value) throw std::invalid_argument("FilteredComplex: filtration is not monotone");
		}
	}
	return FilteredComplex(std::move(simplices), bound);
}

// Shared flag-complex builder: vertex v at vertex_values[v], edge (u, v) at
// edge_value(u, v), triangle at the max of its edges.
FilteredComplex build_flag_complex(std::size_t n, std::span<const double> vertex_values, const DistanceMatrix& matrix,
                                   std::span<const double> weights, int max_dim, double r_max) {
	const bool weighted = !weights.empty();
	auto edge_value = [&](std::size_t u, std::size_t v) {
		return weighted ? weighted_edge_value(weights[u], weights[v], matrix(u, v)) : matrix(u, v);
	};
	std::vector<double> ev(max_dim >= 1 ? n * n : 0, 0.0);
	std::vector<Simplex> out;
	for (std::size_t v = 0; v < n; ++v)
		if (vertex_values[v] <= r_max) out.push_back({{static_cast<std::uint32_t>(v), 0, 0}, 0, vertex_values[v]});
	if (max_dim >= 1) {
		for (std::size_t u = 0; u < n; ++u)
			for (std::size_t v = u + 1; v < n; ++v) {
				const double e = edge_value(u, v);
				ev[u * n + v] = ev[v * n + u] = e;
				if (e <= r_max)
					out.push_back({{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), 0}, 1, e});
			}
	}
	if (max_dim >= 2) {
		for (std::size_t a = 0; a < n; ++a)
			for (std::size_t b = a + 1; b < n; ++b) {
				const double ab = ev[a * n + b];
				if (ab > r_max) continue;
				for (std::size_t c = b + 1; c < n; ++c) {
					const double t = std::max({ab, ev[a * n + c], ev[b * n + c]});
					if (t <= r_max)
						out.push_back({{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
						                static_cast<std::uint32_t>(c)},
						               2,
						               t});
				}
			}
	}
	std::sort(out.begin(), out.end(), filtration_less);
	return FilteredComplex(std::move(out), n);
}

namespace {

void check_options(const RipsOptions& options, std::size_t n) {
	if (options.max_dim < 0 || options.max_dim > 2) throw std::invalid_argument("rips: max_dim must lie in [0, 2]");
	if (options.r_max && !(*options.r_max > 0.0)) throw std::invalid_argument("rips: r_max must be positive");
	if (options.max_dim == 2 && n > kRipsTriangleGuard && !options.force)
		throw std::invalid_argument("rips: " + std::to_string(n) +
		                            " points exceed the triangle budget; subsample or pass force");
}

} // namespace

FilteredComplex rips_complex(const DistanceMatrix& matrix, const RipsOptions& options) {
	const std::size_t n = matrix.size();
	check_options(options, n);
	const double r_max = options.r_max.value_or(std::numeric_limits<double>::infinity());
	const std::vector<double> zeros(n, 0.0);
	return build_flag_complex(n, zeros, matrix, {}, options.max_dim, r_max);
}

double weighted_edge_value(double fu, double fv, double distance) {
	if (distance <= std::abs(fu - fv)) return std::max(fu, fv);
	return 0.5 * (fu + fv + distance);
}

FilteredComplex weighted_rips_complex(const DistanceMatrix& matrix, std::span<const double> vertex_values,
                                      const RipsOptions& options) {
	const std::size_t n = matrix.size();
	if (vertex_values.size() != n) throw std::invalid_argument("weighted_rips_complex: vertex value count mismatch");
	for (double f : vertex_values)
		if (!std::isfinite(f)) throw std::invalid_argument("weighted_rips_complex: non-finite vertex value");
	check_options(options, n);
	const double r_max = options.r_max.value_or(std::numeric_limits<double>::infinity());
	return build_flag_complex(n, vertex_values, matrix, vertex_values, options.max_dim, r_max);
}

// ---------------------------------------------------------------------------

double evaluate(const CellFunction& fn, Point2 p) {
	return std::visit(
	    [p](const auto& f) -> double {
		    using T = std::decay_t<decltype(f)>;
		    if constexpr (std::is_same_v<T, TubularFunction>) {
			    return tubular_distance(p, f.line);
		    } else {
			    const double v[2] = {f.direction.x, f.direction.y};
			    const double q[2] = {p.x, p.y};
			    if constexpr (std::is_same_v<T, HeightFunction>)
				    return height(q, v);
			    else
				    return absolute_height(q, v);
		    }
	    },
	    fn);
}

FilteredCubicalGrid::FilteredCubicalGrid(std::size_t side, std::vector<double> top_values)
    : side_(side), top_(std::move(top_values)) {
	if (side_ < 1) throw std::invalid_argument("FilteredCubicalGrid: empty grid");
	if (top_.size() != side_ * side_) throw std::invalid_argument("FilteredCubicalGrid: value count is not side^2");
	for (double v : top_)
		if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
			throw std::invalid_argument("FilteredCubicalGrid: invalid top-cell value");
}

double FilteredCubicalGrid::cell_value(std::size_t kx, std::size_t ky) const {
	// top cells incident to (kx, ky) have odd coordinates within one step
	double v = kAbsent;
	const std::size_t x0 = (kx & 1) ? kx : (kx == 0 ? 1 : kx - 1);
	const std::size_t x1 = (kx & 1) ? kx : std::min(kx + 1, 2 * side_ - 1);
	const std::size_t y0 = (ky & 1) ? ky : (ky == 0 ? 1 : ky - 1);
	const std::size_t y1 = (ky & 1) ? ky : std::min(ky + 1, 2 * side_ - 1);
	for (std::size_t y = y0; y <= y1; y += 2)
		for (std::size_t x = x0; x <= x1; x += 2) v = std::min(v, top_value(x / 2, y / 2));
	return v;
}

FilteredCubicalGrid cubical_complex(const BinaryMask& mask, const CellFunction& fn) {
	const std::size_t c = mask.side();
	std::vector<double> top(c * c, FilteredCubicalGrid::kAbsent);
	for (std::size_t iy = 0; iy < c; ++iy)
		for (std::size_t ix = 0; ix < c; ++ix)
			if (mask.occupied(ix, iy)) top[iy * c + ix] = evaluate(fn, mask.center(ix, iy));
	return FilteredCubicalGrid(c, std::move(top));
}

} // namespace tdalab
