#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tdalab {

struct Point2 {
	double x = 0.0;
	double y = 0.0;

	friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
	friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
	friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
	friend bool operator==(Point2 a, Point2 b) = default;
};

double dot(Point2 a, Point2 b);
double cross(Point2 a, Point2 b);
double norm(Point2 a);

/// Finite set of points in R^2 or R^3, stored row-major.
class PointCloud {
public:
	PointCloud(std::size_t dim, std::vector<double> coords);
	static PointCloud from_points(const std::vector<std::vector<double>>& points);
	static PointCloud from_points(const std::vector<Point2>& points);

	std::size_t size() const { return coords_.size() / dim_; }
	std::size_t dim() const { return dim_; }
	std::span<const double> operator[](std::size_t i) const {
		return {coords_.data() + i * dim_, dim_};
	}
	double coord(std::size_t i, std::size_t axis) const { return coords_[i * dim_ + axis]; }
	Point2 xy(std::size_t i) const { return {coord(i, 0), coord(i, 1)}; }
	const std::vector<double>& coords() const { return coords_; }

	friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
	std::size_t dim_;
	std::vector<double> coords_;
};

/// Geodesic-polar coordinate on a unit disk of constant curvature.
struct PolarPoint {
	double rho = 0.0;
	double phi = 0.0;
	friend bool operator==(PolarPoint, PolarPoint) = default;
};

class PolarCloud {
public:
	PolarCloud(std::vector<PolarPoint> coords, double curvature);

	std::size_t size() const { return coords_.size(); }
	const PolarPoint& operator[](std::size_t i) const { return coords_[i]; }
	const std::vector<PolarPoint>& coords() const { return coords_; }
	double curvature() const { return curvature_; }

	friend bool operator==(const PolarCloud&, const PolarCloud&) = default;

private:
	std::vector<PolarPoint> coords_;
	double curvature_;
};

/// Symmetric, zero-diagonal, nonnegative n x n matrix.
class DistanceMatrix {
public:
	/// Validates symmetry, zero diagonal and finiteness of `entries` (row-major n*n).
	DistanceMatrix(std::size_t n, std::vector<double> entries);

	std::size_t size() const { return n_; }
	double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
	const std::vector<double>& entries() const { return entries_; }
	double max_entry() const;
	/// Rows and columns restricted to `indices`, in that order.
	DistanceMatrix submatrix(std::span<const std::size_t> indices) const;

private:
	struct Trusted {};
	DistanceMatrix(Trusted, std::size_t n, std::vector<double> entries)
	    : n_(n), entries_(std::move(entries)) {}
	friend DistanceMatrix euclidean_distance_matrix(const PointCloud&);
	friend DistanceMatrix geodesic_distance_matrix(const PolarCloud&);

	std::size_t n_;
	std::vector<double> entries_;
};

/// Infinite line in the plane.
class Line {
public:
	/// `direction` must already be a unit vector (within 1e-12).
	Line(Point2 anchor, Point2 direction);
	static Line through(Point2 a, Point2 b);
	static Line with_direction(Point2 anchor, Point2 direction);

	Point2 anchor() const { return anchor_; }
	Point2 direction() const { return direction_; }

private:
	Point2 anchor_;
	Point2 direction_;
};

/// Square occupancy grid. Cell (ix, iy) covers
/// [origin.x + ix*h, origin.x + (ix+1)*h] x [origin.y + iy*h, origin.y + (iy+1)*h].
class BinaryMask {
public:
	BinaryMask(std::size_t side, std::vector<std::uint8_t> cells, Point2 origin = {0.0, 0.0},
	           double cell_width = 1.0);

	std::size_t side() const { return side_; }
	bool occupied(std::size_t ix, std::size_t iy) const { return cells_[iy * side_ + ix] != 0; }
	Point2 center(std::size_t ix, std::size_t iy) const;
	Point2 origin() const { return origin_; }
	double cell_width() const { return cell_width_; }
	std::size_t count() const;
	const std::vector<std::uint8_t>& cells() const { return cells_; }

	friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
	std::size_t side_;
	std::vector<std::uint8_t> cells_;
	Point2 origin_;
	double cell_width_;
};

/// Simple polygon with counter-clockwise vertex order.
class Polygon {
public:
	explicit Polygon(std::vector<Point2> vertices);

	std::size_t size() const { return vertices_.size(); }
	const std::vector<Point2>& vertices() const { return vertices_; }
	const Point2& operator[](std::size_t i) const { return vertices_[i]; }

private:
	std::vector<Point2> vertices_;
};

enum class TransformKind { translation, rotation, stretch, shear, gaussian, outliers };

std::string_view to_string(TransformKind kind);
TransformKind parse_transform_kind(std::string_view name);
const std::vector<TransformKind>& all_transform_kinds();

/// A transformation family plus the range its magnitude is drawn from:
/// translation offset per axis, rotation angle in degrees (clockwise),
/// stretch factor on x, shear factor, noise standard deviation, or
/// outlier fraction.
struct TransformSpec {
	TransformKind kind = TransformKind::translation;
	double lo = 0.0;
	double hi = 0.0;

	/// The default range for each kind.
	static TransformSpec standard(TransformKind kind);
};

// Metrics and filtration functions

DistanceMatrix euclidean_distance_matrix(const PointCloud& cloud);
DistanceMatrix geodesic_distance_matrix(const PolarCloud& cloud);

/// Geodesic distance between two polar points on the disk of curvature kappa.
double geodesic_distance(PolarPoint a, PolarPoint b, double kappa);

/// Distance-to-measure: root-mean-square distance from each point to its
/// ceil(m*n) nearest other points.
std::vector<double> dtm(const DistanceMatrix& matrix, double m);
/// Distance-to-measure of the whole matrix evaluated at a subset of its points.
std::vector<double> dtm(const DistanceMatrix& matrix, std::span<const std::size_t> queries, double m);

double tubular_distance(Point2 point, const Line& line);
double height(std::span<const double> point, std::span<const double> direction);
double absolute_height(std::span<const double> point, std::span<const double> direction);

/// Greedy maximin selection starting from a seeded random point; ties go to
/// the smallest index.
std::vector<std::size_t> farthest_point_indices(const PointCloud& cloud, std::size_t k, std::uint64_t seed);
PointCloud farthest_point_subsample(const PointCloud& cloud, std::size_t k, std::uint64_t seed);
PointCloud select_points(const PointCloud& cloud, std::span<const std::size_t> indices);

/// Magnitude of a transform drawn uniformly from its [lo, hi] range.
double draw_transform_magnitude(const TransformSpec& spec, std::uint64_t seed);
PointCloud apply_transform(const PointCloud& cloud, const TransformSpec& spec, std::uint64_t seed);

// Planar shapes

Polygon convex_hull(std::span<const Point2> points);
double polygon_area(const Polygon& polygon);
double signed_area(std::span<const Point2> vertices);
bool point_in_polygon(Point2 q, const Polygon& polygon);
bool is_simple(std::span<const Point2> vertices);

BinaryMask rasterize(const PointCloud& cloud, std::size_t side);
BinaryMask rasterize(const Polygon& polygon, std::size_t side);

/// Nearest-neighbour resampling over the same extent: a target cell is
/// occupied when its center falls in an occupied source cell.
BinaryMask resample(const BinaryMask& mask, std::size_t side);

/// Occupied cells over the cells whose centers lie in the convex hull of the
/// occupied centers, in (0, 1]. Exactly 1 for digitally convex masks.
double convexity_measure(const BinaryMask& mask);

} // namespace tdalab
