#pragma once

#include "tdalab/complex.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace tdalab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Interval {
	int dim = 0;
	double birth = 0.0;
	double death = kInfinity;

	bool finite() const { return death != kInfinity; }
	double lifespan() const { return death - birth; }

	friend bool operator==(const Interval&, const Interval&) = default;
};

/// Orders by (dim, birth, death).
bool interval_less(const Interval& a, const Interval& b);

class PersistenceDiagram {
public:
	PersistenceDiagram() = default;
	explicit PersistenceDiagram(std::vector<Interval> intervals);

	const std::vector<Interval>& intervals() const { return intervals_; }
	std::size_t size() const { return intervals_.size(); }
	bool empty() const { return intervals_.empty(); }

	std::vector<Interval> in_dim(int dim) const;
	/// Lifespans of the finite intervals of one dimension, in diagram order.
	std::vector<double> finite_lifespans(int dim) const;
	PersistenceDiagram restricted(int max_dim) const;

	/// Multiset equality (exact values).
	friend bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
		return a.intervals_ == b.intervals_;
	}

private:
	std::vector<Interval> intervals_; // sorted by interval_less
};

/// Z/2 boundary matrix in filtration order. Column j lists the row indices
/// of its facets, ascending and strictly below j.
class BoundaryMatrix {
public:
	static BoundaryMatrix from_complex(const FilteredComplex& complex, int max_cell_dim = 2);
	static BoundaryMatrix from_grid(const FilteredCubicalGrid& grid, int max_cell_dim = 2);

	std::size_t size() const { return values_.size(); }
	double value(std::size_t j) const { return values_[j]; }
	int dim(std::size_t j) const { return dims_[j]; }
	std::span<const std::uint32_t> column(std::size_t j) const {
		return {entries_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
	}

private:
	void push(double value, int dim, std::span<const std::uint32_t> facets);

	std::vector<double> values_;
	std::vector<std::uint8_t> dims_;
	std::vector<std::size_t> offsets_{0};
	std::vector<std::uint32_t> entries_;
};

/// Persistence in degrees 0..max_dim by left-to-right reduction with clearing.
/// Zero-length intervals are dropped; unpaired classes die at +inf.
PersistenceDiagram compute_ph(const BoundaryMatrix& matrix, int max_dim = 1);
PersistenceDiagram compute_ph(const FilteredComplex& complex, int max_dim = 1);
PersistenceDiagram compute_ph(const FilteredCubicalGrid& grid, int max_dim = 1);

/// Degree-0 persistence from the 1-skeleton with union-find and the elder rule.
PersistenceDiagram compute_ph0_unionfind(const BoundaryMatrix& matrix);
PersistenceDiagram compute_ph0_unionfind(const FilteredComplex& complex);
PersistenceDiagram compute_ph0_unionfind(const FilteredCubicalGrid& grid);

/// Persistence of the (weighted) flag filtration up to max_dim, without
/// materializing triangles that cannot matter. The filtration is truncated at a
/// threshold r, which doubles until every class of degree >= 1 has died; the
/// truncated complex is a prefix of the full one, so the result equals
/// compute_ph(rips_complex(...)) exactly. Empty `vertex_values` means plain Rips.
PersistenceDiagram rips_persistence(const DistanceMatrix& matrix, std::span<const double> vertex_values = {},
                                    int max_dim = 1, bool force = false);

inline constexpr std::size_t kOracleMaxCells = 5000;

/// Textbook dense reduction over all columns, built from its own face lookup.
/// For testing only; refuses inputs above kOracleMaxCells cells.
PersistenceDiagram naive_reduction_oracle(const FilteredComplex& complex, int max_dim = 1);
PersistenceDiagram naive_reduction_oracle(const FilteredCubicalGrid& grid, int max_dim = 1);

} // namespace tdalab
