#pragma once

#include "tdalab/geometry.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace tdalab {

/// A simplex of dimension <= 2; unused vertex slots are zero.
struct Simplex {
	std::array<std::uint32_t, 3> vertices{};
	std::uint8_t dim = 0;
	double value = 0.0;

	friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Filtration order: value, then dimension, then lexicographic vertices.
bool filtration_less(const Simplex& a, const Simplex& b);

/// Simplicial complex (dimension <= 2) with monotone filtration values,
/// stored in filtration order.
class FilteredComplex {
public:
	/// Validates closure under faces and monotonicity, then sorts.
	static FilteredComplex from_simplices(std::vector<Simplex> simplices);

	const std::vector<Simplex>& simplices() const { return simplices_; }
	std::size_t size() const { return simplices_.size(); }
	std::size_t count(int dim) const;
	/// One past the largest vertex label.
	std::size_t vertex_bound() const { return vertex_bound_; }
	int max_dim() const;

private:
	FilteredComplex(std::vector<Simplex> sorted, std::size_t vertex_bound)
	    : simplices_(std::move(sorted)), vertex_bound_(vertex_bound) {}
	friend FilteredComplex build_flag_complex(std::size_t, std::span<const double>, const DistanceMatrix&,
	                                          std::span<const double>, int, double);

	std::vector<Simplex> simplices_;
	std::size_t vertex_bound_ = 0;
};

inline constexpr std::size_t kRipsTriangleGuard = 400;

struct RipsOptions {
	int max_dim = 2;
	/// Largest filtration value kept; defaults to the complete filtration.
	std::optional<double> r_max;
	/// Allow max_dim = 2 beyond kRipsTriangleGuard points.
	bool force = false;
};

FilteredComplex rips_complex(const DistanceMatrix& matrix, const RipsOptions& options = {});

/// Edge value of the weighted flag filtration: the radius at which the balls
/// of radius (r - f(u)) and (r - f(v)) first meet, never before both endpoints exist.
double weighted_edge_value(double fu, double fv, double distance);

FilteredComplex weighted_rips_complex(const DistanceMatrix& matrix, std::span<const double> vertex_values,
                                      const RipsOptions& options = {});

// ---------------------------------------------------------------------------
// Cubical grids

struct TubularFunction {
	Line line;
};
struct HeightFunction {
	Point2 direction;
};
struct AbsoluteHeightFunction {
	Point2 direction;
};
using CellFunction = std::variant<TubularFunction, HeightFunction, AbsoluteHeightFunction>;

double evaluate(const CellFunction& fn, Point2 p);

/// Top-cell filtered cubical complex on a side x side grid. Lower cells take the
/// minimum over incident top cells; cells whose value is +inf are absent.
/// Cells are addressed by Khalimsky coordinates (kx, ky) in [0, 2*side].
class FilteredCubicalGrid {
public:
	static constexpr double kAbsent = std::numeric_limits<double>::infinity();

	FilteredCubicalGrid(std::size_t side, std::vector<double> top_values);

	std::size_t side() const { return side_; }
	std::size_t extent() const { return 2 * side_ + 1; }
	double top_value(std::size_t ix, std::size_t iy) const { return top_[iy * side_ + ix]; }
	const std::vector<double>& top_values() const { return top_; }

	static int cell_dim(std::size_t kx, std::size_t ky) { return static_cast<int>((kx & 1) + (ky & 1)); }
	double cell_value(std::size_t kx, std::size_t ky) const;

private:
	std::size_t side_;
	std::vector<double> top_;
};

FilteredCubicalGrid cubical_complex(const BinaryMask& mask, const CellFunction& fn);

} // namespace tdalab
