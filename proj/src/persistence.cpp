#include "tdalab/persistence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace tdalab {

bool interval_less(const Interval& a, const Interval& b) {
	if (a.dim != b.dim) return a.dim < b.dim;
	if (a.birth != b.birth) return a.birth < b.birth;
	return a.death < b.death;
}

PersistenceDiagram::PersistenceDiagram(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
	for (const auto& iv : intervals_) {
		if (iv.dim < 0) throw std::invalid_argument("PersistenceDiagram: negative dimension");
		if (std::isnan(iv.birth) || std::isnan(iv.death) || !(iv.death >= iv.birth) || iv.birth == kInfinity)
			throw std::invalid_argument("PersistenceDiagram: interval with death < birth");
	}
	std::stable_sort(intervals_.begin(), intervals_.end(), interval_less);
}

std::vector<Interval> PersistenceDiagram::in_dim(int dim) const {
	std::vector<Interval> out;
	for (const auto& iv : intervals_)
		if (iv.dim == dim) out.push_back(iv);
	return out;
}

std::vector<double> PersistenceDiagram::finite_lifespans(int dim) const {
	std::vector<double> out;
	for (const auto& iv : intervals_)
		if (iv.dim == dim && iv.finite()) out.push_back(iv.lifespan());
	return out;
}

PersistenceDiagram PersistenceDiagram::restricted(int max_dim) const {
	std::vector<Interval> out;
	for (const auto& iv : intervals_)
		if (iv.dim <= max_dim) out.push_back(iv);
	return PersistenceDiagram(std::move(out));
}

// ---------------------------------------------------------------------------

void BoundaryMatrix::push(double value, int dim, std::span<const std::uint32_t> facets) {
	values_.push_back(value);
	dims_.push_back(static_cast<std::uint8_t>(dim));
	entries_.insert(entries_.end(), facets.begin(), facets.end());
	offsets_.push_back(entries_.size());
}

BoundaryMatrix BoundaryMatrix::from_complex(const FilteredComplex& complex, int max_cell_dim) {
	constexpr std::uint32_t none = UINT32_MAX;
	const std::size_t n = complex.vertex_bound();
	const bool dense = n <= 4096;
	std::vector<std::uint32_t> vertex_pos(n, none);
	std::vector<std::uint32_t> edge_dense(dense && max_cell_dim >= 2 ? n * n : 0, none);
	std::unordered_map<std::uint64_t, std::uint32_t> edge_sparse;
	auto edge_key = [n](std::uint32_t u, std::uint32_t v) { return static_cast<std::uint64_t>(u) * n + v; };
	auto edge_pos = [&](std::uint32_t u, std::uint32_t v) -> std::uint32_t {
		if (dense) return edge_dense[edge_key(u, v)];
		auto it = edge_sparse.find(edge_key(u, v));
		return it == edge_sparse.end() ? none : it->second;
	};

	BoundaryMatrix m;
	std::array<std::uint32_t, 3> facets{};
	for (const auto& s : complex.simplices()) {
		if (s.dim > max_cell_dim) continue;
		const auto pos = static_cast<std::uint32_t>(m.size());
		const auto& v = s.vertices;
		if (s.dim == 0) {
			vertex_pos[v[0]] = pos;
			m.push(s.value, 0, {});
		} else if (s.dim == 1) {
			facets = {vertex_pos[v[0]], vertex_pos[v[1]], 0};
			std::sort(facets.begin(), facets.begin() + 2);
			m.push(s.value, 1, std::span(facets.data(), 2));
			if (max_cell_dim >= 2) {
				if (dense)
					edge_dense[edge_key(v[0], v[1])] = pos;
				else
					edge_sparse.emplace(edge_key(v[0], v[1]), pos);
			}
		} else {
			facets = {edge_pos(v[1], v[2]), edge_pos(v[0], v[2]), edge_pos(v[0], v[1])};
			std::sort(facets.begin(), facets.end());
			m.push(s.value, 2, facets);
		}
	}
	return m;
}

BoundaryMatrix BoundaryMatrix::from_grid(const FilteredCubicalGrid& grid, int max_cell_dim) {
	const std::size_t e = grid.extent();
	struct Cell {
		double value;
		int dim;
		std::uint32_t index;
	};
	std::vector<Cell> cells;
	for (std::size_t ky = 0; ky < e; ++ky)
		for (std::size_t kx = 0; kx < e; ++kx) {
			const int d = FilteredCubicalGrid::cell_dim(kx, ky);
			if (d > max_cell_dim) continue;
			const double v = grid.cell_value(kx, ky);
			if (v == FilteredCubicalGrid::kAbsent) continue;
			cells.push_back({v, d, static_cast<std::uint32_t>(ky * e + kx)});
		}
	std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
		if (a.value != b.value) return a.value < b.value;
		if (a.dim != b.dim) return a.dim < b.dim;
		return a.index < b.index;
	});
	std::vector<std::uint32_t> pos(e * e, UINT32_MAX);
	BoundaryMatrix m;
	std::vector<std::uint32_t> facets;
	for (const auto& c : cells) {
		const std::size_t kx = c.index % e, ky = c.index / e;
		facets.clear();
		if (kx & 1) {
			facets.push_back(pos[ky * e + kx - 1]);
			facets.push_back(pos[ky * e + kx + 1]);
		}
		if (ky & 1) {
			facets.push_back(pos[(ky - 1) * e + kx]);
			facets.push_back(pos[(ky + 1) * e + kx]);
		}
		std::sort(facets.begin(), facets.end());
		pos[c.index] = static_cast<std::uint32_t>(m.size());
		m.push(c.value, c.dim, facets);
	}
	return m;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

// Z/2 column addition of sorted index sets.
void add_column(std::vector<std::uint32_t>& work, const std::vector<std::uint32_t>& other,
                std::vector<std::uint32_t>& scratch) {
	scratch.clear();
	std::set_symmetric_difference(work.begin(), work.end(), other.begin(), other.end(), std::back_inserter(scratch));
	work.swap(scratch);
}

} // namespace

PersistenceDiagram compute_ph(const BoundaryMatrix& m, int max_dim) {
	if (max_dim < 0) throw std::invalid_argument("compute_ph: max_dim must be nonnegative");
	const std::size_t n = m.size();
	const int top = max_dim + 1;
	std::vector<std::vector<std::uint32_t>> by_dim(static_cast<std::size_t>(top) + 1);
	for (std::size_t j = 0; j < n; ++j)
		if (m.dim(j) <= top) by_dim[static_cast<std::size_t>(m.dim(j))].push_back(static_cast<std::uint32_t>(j));

	std::vector<std::uint32_t> pivot_owner(n, kNone);
	std::vector<std::vector<std::uint32_t>> reduced(n);
	std::vector<char> cleared(n, 0), zero(n, 0);
	std::vector<Interval> intervals;
	std::vector<std::uint32_t> work, scratch;

	// highest dimension first, so each new pivot clears a column of the next pass
	for (int d = top; d >= 1; --d) {
		for (std::uint32_t j : by_dim[static_cast<std::size_t>(d)]) {
			if (cleared[j]) continue;
			const auto col = m.column(j);
			work.assign(col.begin(), col.end());
			while (!work.empty()) {
				const std::uint32_t owner = pivot_owner[work.back()];
				if (owner == kNone) break;
				add_column(work, reduced[owner], scratch);
			}
			if (work.empty()) {
				zero[j] = 1;
				continue;
			}
			const std::uint32_t p = work.back();
			pivot_owner[p] = j;
			cleared[p] = 1;
			if (d - 1 <= max_dim && m.value(p) < m.value(j)) intervals.push_back({d - 1, m.value(p), m.value(j)});
			reduced[j] = work;
		}
	}
	for (std::size_t j = 0; j < n; ++j) {
		const int d = m.dim(j);
		if (d > max_dim || pivot_owner[j] != kNone) continue;
		if (d == 0 || zero[j]) intervals.push_back({d, m.value(j), kInfinity});
	}
	return PersistenceDiagram(std::move(intervals));
}

PersistenceDiagram compute_ph(const FilteredComplex& complex, int max_dim) {
	return compute_ph(BoundaryMatrix::from_complex(complex, max_dim + 1), max_dim);
}

PersistenceDiagram compute_ph(const FilteredCubicalGrid& grid, int max_dim) {
	return compute_ph(BoundaryMatrix::from_grid(grid, max_dim + 1), max_dim);
}

PersistenceDiagram rips_persistence(const DistanceMatrix& matrix, std::span<const double> vertex_values, int max_dim,
                                    bool force) {
	if (max_dim < 0 || max_dim > 1) throw std::invalid_argument("rips_persistence: max_dim must be 0 or 1");
	const std::size_t n = matrix.size();
	const bool weighted = !vertex_values.empty();
	if (weighted && vertex_values.size() != n)
		throw std::invalid_argument("rips_persistence: vertex value count mismatch");
	RipsOptions options;
	options.max_dim = max_dim + 1;
	options.force = force;
	auto build = [&](std::optional<double> r) {
		options.r_max = r;
		return weighted ? weighted_rips_complex(matrix, vertex_values, options) : rips_complex(matrix, options);
	};
	if (n < 2 || max_dim == 0) return compute_ph(build(std::nullopt), max_dim);

	// Prim on edge values: the bottleneck edge is where the 1-skeleton connects.
	auto edge = [&](std::size_t u, std::size_t v) {
		return weighted ? weighted_edge_value(vertex_values[u], vertex_values[v], matrix(u, v)) : matrix(u, v);
	};
	std::vector<double> best(n, kInfinity);
	std::vector<bool> in(n, false);
	double connect = 0.0, top = 0.0;
	best[0] = 0.0;
	for (std::size_t it = 0; it < n; ++it) {
		std::size_t u = n;
		for (std::size_t v = 0; v < n; ++v)
			if (!in[v] && (u == n || best[v] < best[u])) u = v;
		in[u] = true;
		connect = std::max(connect, best[u]);
		for (std::size_t v = 0; v < n; ++v) {
			if (v == u) continue;
			const double e = edge(u, v);
			top = std::max(top, e);
			if (!in[v]) best[v] = std::min(best[v], e);
		}
	}
	if (weighted)
		for (double f : vertex_values) connect = std::max(connect, f);

	double r = connect > 0.0 ? 1.5 * connect : top;
	while (r < top) {
		auto pd = compute_ph(build(r), max_dim);
		const bool open = std::any_of(pd.intervals().begin(), pd.intervals().end(),
		                              [](const Interval& iv) { return iv.dim >= 1 && !iv.finite(); });
		if (!open) return pd;
		r *= 2.0;
	}
	return compute_ph(build(std::nullopt), max_dim);
}

// ---------------------------------------------------------------------------

namespace {

class UnionFind {
public:
	explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0u); }

	std::uint32_t find(std::uint32_t x) {
		while (parent_[x] != x) {
			parent_[x] = parent_[parent_[x]];
			x = parent_[x];
		}
		return x;
	}

	// returns the new root
	std::uint32_t link(std::uint32_t a, std::uint32_t b) {
		if (rank_[a] < rank_[b]) std::swap(a, b);
		parent_[b] = a;
		if (rank_[a] == rank_[b]) ++rank_[a];
		return a;
	}

private:
	std::vector<std::uint32_t> parent_;
	std::vector<std::uint8_t> rank_;
};

} // namespace

PersistenceDiagram compute_ph0_unionfind(const BoundaryMatrix& m) {
	const std::size_t n = m.size();
	UnionFind sets(n);
	// oldest[root] = earliest-born vertex (filtration position) of the component
	std::vector<std::uint32_t> oldest(n, kNone);
	std::vector<Interval> intervals;
	for (std::size_t j = 0; j < n; ++j) {
		if (m.dim(j) == 0) {
			oldest[j] = static_cast<std::uint32_t>(j);
			continue;
		}
		if (m.dim(j) != 1) continue;
		const auto col = m.column(j);
		const std::uint32_t a = sets.find(col[0]), b = sets.find(col[1]);
		if (a == b) continue;
		const std::uint32_t elder = std::min(oldest[a], oldest[b]);
		const std::uint32_t younger = std::max(oldest[a], oldest[b]);
		if (m.value(younger) < m.value(j)) intervals.push_back({0, m.value(younger), m.value(j)});
		oldest[sets.link(a, b)] = elder;
	}
	for (std::size_t j = 0; j < n; ++j)
		if (m.dim(j) == 0 && sets.find(static_cast<std::uint32_t>(j)) == j)
			intervals.push_back({0, m.value(oldest[j]), kInfinity});
	return PersistenceDiagram(std::move(intervals));
}

PersistenceDiagram compute_ph0_unionfind(const FilteredComplex& complex) {
	return compute_ph0_unionfind(BoundaryMatrix::from_complex(complex, 1));
}

PersistenceDiagram compute_ph0_unionfind(const FilteredCubicalGrid& grid) {
	return compute_ph0_unionfind(BoundaryMatrix::from_grid(grid, 1));
}

// ---------------------------------------------------------------------------

namespace {

struct OracleCell {
	double value;
	int dim;
	std::vector<std::uint32_t> key; // vertex labels or Khalimsky coordinates
};

// Dense textbook reduction: every column, no clearing, no sparsity.
PersistenceDiagram dense_reduction(std::vector<OracleCell> cells,
                                   const std::function<std::vector<std::vector<std::uint32_t>>(const OracleCell&)>& faces,
                                   int max_dim) {
	std::sort(cells.begin(), cells.end(), [](const OracleCell& a, const OracleCell& b) {
		if (a.value != b.value) return a.value < b.value;
		if (a.dim != b.dim) return a.dim < b.dim;
		return a.key < b.key;
	});
	const std::size_t n = cells.size();
	std::map<std::vector<std::uint32_t>, std::size_t> index_of;
	for (std::size_t i = 0; i < n; ++i) index_of[cells[i].key] = i;
	std::vector<std::vector<std::uint8_t>> matrix(n, std::vector<std::uint8_t>(n, 0));
	for (std::size_t j = 0; j < n; ++j)
		for (const auto& f : faces(cells[j])) {
			auto it = index_of.find(f);
			if (it == index_of.end()) throw std::invalid_argument("naive_reduction_oracle: missing face");
			matrix[j][it->second] ^= 1;
		}
	auto low = [&](std::size_t j) -> long {
		for (std::size_t i = n; i-- > 0;)
			if (matrix[j][i]) return static_cast<long>(i);
		return -1;
	};
	std::vector<long> lows(n, -1);
	for (std::size_t j = 0; j < n; ++j) {
		bool changed = true;
		while (changed) {
			changed = false;
			const long l = low(j);
			if (l < 0) break;
			for (std::size_t k = 0; k < j; ++k)
				if (lows[k] == l) {
					for (std::size_t i = 0; i < n; ++i) matrix[j][i] ^= matrix[k][i];
					changed = true;
					break;
				}
		}
		lows[j] = low(j);
	}
	std::vector<bool> is_low(n, false);
	std::vector<Interval> intervals;
	for (std::size_t j = 0; j < n; ++j) {
		if (lows[j] < 0) continue;
		const auto i = static_cast<std::size_t>(lows[j]);
		is_low[i] = true;
		if (cells[i].dim <= max_dim && cells[i].value < cells[j].value)
			intervals.push_back({cells[i].dim, cells[i].value, cells[j].value});
	}
	for (std::size_t j = 0; j < n; ++j)
		if (lows[j] < 0 && !is_low[j] && cells[j].dim <= max_dim)
			intervals.push_back({cells[j].dim, cells[j].value, kInfinity});
	return PersistenceDiagram(std::move(intervals));
}

} // namespace

PersistenceDiagram naive_reduction_oracle(const FilteredComplex& complex, int max_dim) {
	std::vector<OracleCell> cells;
	for (const auto& s : complex.simplices()) {
		if (s.dim > max_dim + 1) continue;
		cells.push_back({s.value, s.dim, std::vector<std::uint32_t>(s.vertices.begin(), s.vertices.begin() + s.dim + 1)});
	}
	if (cells.size() > kOracleMaxCells) throw std::invalid_argument("naive_reduction_oracle: complex too large");
	auto faces = [](const OracleCell& c) {
		std::vector<std::vector<std::uint32_t>> out;
		if (c.dim == 0) return out;
		for (std::size_t drop = 0; drop < c.key.size(); ++drop) {
			std::vector<std::uint32_t> f;
			for (std::size_t i = 0; i < c.key.size(); ++i)
				if (i != drop) f.push_back(c.key[i]);
			out.push_back(std::move(f));
		}
		return out;
	};
	return dense_reduction(std::move(cells), faces, max_dim);
}

PersistenceDiagram naive_reduction_oracle(const FilteredCubicalGrid& grid, int max_dim) {
	std::vector<OracleCell> cells;
	const std::size_t e = grid.extent();
	for (std::uint32_t ky = 0; ky < e; ++ky)
		for (std::uint32_t kx = 0; kx < e; ++kx) {
			const int d = FilteredCubicalGrid::cell_dim(kx, ky);
			if (d > max_dim + 1) continue;
			const double v = grid.cell_value(kx, ky);
			if (v == FilteredCubicalGrid::kAbsent) continue;
			cells.push_back({v, d, {ky, kx}});
		}
	if (cells.size() > kOracleMaxCells) throw std::invalid_argument("naive_reduction_oracle: complex too large");
	auto faces = [](const OracleCell& c) {
		std::vector<std::vector<std::uint32_t>> out;
		const std::uint32_t ky = c.key[0], kx = c.key[1];
		if (kx & 1) {
			out.push_back({ky, kx - 1});
			out.push_back({ky, kx + 1});
		}
		if (ky & 1) {
			out.push_back({ky - 1, kx});
			out.push_back({ky + 1, kx});
		}
		return out;
	};
	return dense_reduction(std::move(cells), faces, max_dim);
}

} // namespace tdalab
