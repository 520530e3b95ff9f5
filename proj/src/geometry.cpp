#include "tdalab/geometry.hpp"

#include "tdalab/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <numbers>
#include <stdexcept>

namespace tdalab {

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a) { return std::hypot(a.x, a.y); }

// ---------------------------------------------------------------------------
// Value types

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
	if (dim_ != 2 && dim_ != 3) throw std::invalid_argument("PointCloud: dimension must be 2 or 3");
	if (coords_.empty()) throw std::invalid_argument("PointCloud: empty cloud");
	if (coords_.size() % dim_ != 0)
		throw std::invalid_argument("PointCloud: coordinate count is not a multiple of the dimension");
	for (double c : coords_)
		if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
}

PointCloud PointCloud::from_points(const std::vector<std::vector<double>>& points) {
	if (points.empty()) throw std::invalid_argument("PointCloud: empty cloud");
	const std::size_t dim = points.front().size();
	std::vector<double> coords;
	coords.reserve(points.size() * dim);
	for (const auto& p : points) {
		if (p.size() != dim) throw std::invalid_argument("PointCloud: points differ in dimension");
		coords.insert(coords.end(), p.begin(), p.end());
	}
	return PointCloud(dim, std::move(coords));
}

PointCloud PointCloud::from_points(const std::vector<Point2>& points) {
	std::vector<double> coords;
	coords.reserve(points.size() * 2);
	for (const auto& p : points) {
		coords.push_back(p.x);
		coords.push_back(p.y);
	}
	return PointCloud(2, std::move(coords));
}

PolarCloud::PolarCloud(std::vector<PolarPoint> coords, double curvature)
    : coords_(std::move(coords)), curvature_(curvature) {
	if (!(curvature_ >= -2.0 && curvature_ <= 2.0))
		throw std::invalid_argument("PolarCloud: curvature must lie in [-2, 2]");
	if (coords_.empty()) throw std::invalid_argument("PolarCloud: empty cloud");
	for (const auto& p : coords_) {
		if (!(p.rho >= 0.0 && p.rho <= 1.0))
			throw std::invalid_argument("PolarCloud: radius outside the unit disk");
		if (!(p.phi >= 0.0 && p.phi < 2.0 * std::numbers::pi))
			throw std::invalid_argument("PolarCloud: azimuth outside [0, 2pi)");
	}
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
	if (n_ == 0) throw std::invalid_argument("DistanceMatrix: empty matrix");
	if (entries_.size() != n_ * n_) throw std::invalid_argument("DistanceMatrix: entry count is not n*n");
	for (std::size_t i = 0; i < n_; ++i) {
		if (entries_[i * n_ + i] != 0.0) throw std::invalid_argument("DistanceMatrix: nonzero diagonal");
		for (std::size_t j = i + 1; j < n_; ++j) {
			const double a = entries_[i * n_ + j], b = entries_[j * n_ + i];
			if (!std::isfinite(a) || a < 0.0)
				throw std::invalid_argument("DistanceMatrix: entries must be finite and nonnegative");
			if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
				throw std::invalid_argument("DistanceMatrix: matrix is not symmetric");
			entries_[j * n_ + i] = a;
		}
	}
}

double DistanceMatrix::max_entry() const { return *std::max_element(entries_.begin(), entries_.end()); }

Line::Line(Point2 anchor, Point2 direction) : anchor_(anchor), direction_(direction) {
	if (!std::isfinite(anchor.x) || !std::isfinite(anchor.y))
		throw std::invalid_argument("Line: non-finite anchor");
	if (std::abs(norm(direction) - 1.0) > 1e-12) throw std::invalid_argument("Line: direction is not a unit vector");
}

Line Line::through(Point2 a, Point2 b) { return with_direction(a, b - a); }

Line Line::with_direction(Point2 anchor, Point2 direction) {
	const double len = norm(direction);
	if (!(len > 0.0) || !std::isfinite(len)) throw std::invalid_argument("Line: degenerate direction");
	return Line(anchor, (1.0 / len) * direction);
}

BinaryMask::BinaryMask(std::size_t side, std::vector<std::uint8_t> cells, Point2 origin, double cell_width)
    : side_(side), cells_(std::move(cells)), origin_(origin), cell_width_(cell_width) {
	if (side_ < 2) throw std::invalid_argument("BinaryMask: side must be at least 2");
	if (cells_.size() != side_ * side_) throw std::invalid_argument("BinaryMask: cell count is not side^2");
	if (!(cell_width_ > 0.0) || !std::isfinite(cell_width_))
		throw std::invalid_argument("BinaryMask: cell width must be positive");
	for (auto& c : cells_) c = c ? 1 : 0;
}

Point2 BinaryMask::center(std::size_t ix, std::size_t iy) const {
	return {origin_.x + (static_cast<double>(ix) + 0.5) * cell_width_,
	        origin_.y + (static_cast<double>(iy) + 0.5) * cell_width_};
}

std::size_t BinaryMask::count() const {
	return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
	if (vertices_.size() < 3) throw std::invalid_argument("Polygon: fewer than 3 vertices");
	for (const auto& v : vertices_)
		if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw std::invalid_argument("Polygon: non-finite vertex");
	if (!(signed_area(vertices_) > 0.0)) throw std::invalid_argument("Polygon: vertices are not counter-clockwise");
	if (!is_simple(vertices_)) throw std::invalid_argument("Polygon: polygon is not simple");
}

std::string_view to_string(TransformKind kind) {
	switch (kind) {
	case TransformKind::translation: return "translation";
	case TransformKind::rotation: return "rotation";
	case TransformKind::stretch: return "stretch";
	case TransformKind::shear: return "shear";
	case TransformKind::gaussian: return "gaussian";
	case TransformKind::outliers: return "outliers";
	}
	return "unknown";
}

const std::vector<TransformKind>& all_transform_kinds() {
	static const std::vector<TransformKind> kinds = {TransformKind::translation, TransformKind::rotation,
	                                                 TransformKind::stretch,     TransformKind::shear,
	                                                 TransformKind::gaussian,    TransformKind::outliers};
	return kinds;
}

TransformKind parse_transform_kind(std::string_view name) {
	for (auto kind : all_transform_kinds())
		if (to_string(kind) == name) return kind;
	throw std::invalid_argument("unknown transform kind: " + std::string(name));
}

TransformSpec TransformSpec::standard(TransformKind kind) {
	switch (kind) {
	case TransformKind::translation: return {kind, -1.0, 1.0};
	case TransformKind::rotation: return {kind, -20.0, 20.0};
	case TransformKind::stretch: return {kind, 0.8, 1.2};
	case TransformKind::shear: return {kind, -0.2, 0.2};
	case TransformKind::gaussian: return {kind, 0.0, 0.1};
	case TransformKind::outliers: return {kind, 0.0, 0.1};
	}
	throw std::invalid_argument("unknown transform kind");
}

// ---------------------------------------------------------------------------
// Metrics

DistanceMatrix euclidean_distance_matrix(const PointCloud& cloud) {
	const std::size_t n = cloud.size(), dim = cloud.dim();
	std::vector<double> d(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i) {
		const auto p = cloud[i];
		for (std::size_t j = i + 1; j < n; ++j) {
			const auto q = cloud[j];
			double s = 0.0;
			for (std::size_t a = 0; a < dim; ++a) s += (p[a] - q[a]) * (p[a] - q[a]);
			d[i * n + j] = d[j * n + i] = std::sqrt(s);
		}
	}
	return DistanceMatrix(DistanceMatrix::Trusted{}, n, std::move(d));
}

// Law of cosines in half-angle form: sin^2(d/2R) = sin^2((a-b)/2) + sin a sin b sin^2(dphi/2)
// with a = rho1/R, b = rho2/R (sinh in the hyperbolic case). Algebraically identical to
// the cosine rule, but keeps full precision for short distances and small |kappa|.
double geodesic_distance(PolarPoint p, PolarPoint q, double kappa) {
	if (!(kappa >= -2.0 && kappa <= 2.0)) throw std::invalid_argument("geodesic_distance: curvature outside [-2, 2]");
	const double s = std::sin(0.5 * (p.phi - q.phi));
	const double sin2_half_dphi = s * s;
	if (kappa == 0.0) {
		const double dr = p.rho - q.rho;
		return std::sqrt(std::max(0.0, dr * dr + 4.0 * p.rho * q.rho * sin2_half_dphi));
	}
	const double radius = 1.0 / std::sqrt(std::abs(kappa));
	const double a = p.rho / radius, b = q.rho / radius;
	if (kappa > 0.0) {
		const double h = std::sin(0.5 * (a - b));
		const double hav = h * h + std::sin(a) * std::sin(b) * sin2_half_dphi;
		return 2.0 * radius * std::asin(std::min(1.0, std::sqrt(std::max(0.0, hav))));
	}
	const double h = std::sinh(0.5 * (a - b));
	const double hav = h * h + std::sinh(a) * std::sinh(b) * sin2_half_dphi;
	return 2.0 * radius * std::asinh(std::sqrt(std::max(0.0, hav)));
}

DistanceMatrix geodesic_distance_matrix(const PolarCloud& cloud) {
	const std::size_t n = cloud.size();
	const double kappa = cloud.curvature();
	std::vector<double> d(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = geodesic_distance(cloud[i], cloud[j], kappa);
	return DistanceMatrix(DistanceMatrix::Trusted{}, n, std::move(d));
}

std::vector<double> dtm(const DistanceMatrix& matrix, std::span<const std::size_t> queries, double m) {
	if (!(m > 0.0 && m <= 1.0)) throw std::invalid_argument("dtm: mass parameter must lie in (0, 1]");
	const std::size_t n = matrix.size();
	std::vector<double> out(queries.size(), 0.0);
	if (n < 2) return out;
	const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(m * static_cast<double>(n))), n - 1);
	std::vector<double> row;
	row.reserve(n);
	for (std::size_t q = 0; q < queries.size(); ++q) {
		const std::size_t i = queries[q];
		if (i >= n) throw std::out_of_range("dtm: query index out of range");
		row.clear();
		for (std::size_t j = 0; j < n; ++j)
			if (j != i) row.push_back(matrix(i, j));
		std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k - 1), row.end());
		double s = 0.0;
		for (std::size_t a = 0; a < k; ++a) s += row[a] * row[a];
		out[q] = std::sqrt(s / static_cast<double>(k));
	}
	return out;
}

std::vector<double> dtm(const DistanceMatrix& matrix, double m) {
	std::vector<std::size_t> all(matrix.size());
	std::iota(all.begin(), all.end(), std::size_t{0});
	return dtm(matrix, all, m);
}

DistanceMatrix DistanceMatrix::submatrix(std::span<const std::size_t> indices) const {
	const std::size_t k = indices.size();
	std::vector<double> e(k * k);
	for (std::size_t a = 0; a < k; ++a)
		for (std::size_t b = 0; b < k; ++b) {
			if (indices[a] >= n_ || indices[b] >= n_) throw std::out_of_range("submatrix: index out of range");
			e[a * k + b] = (*this)(indices[a], indices[b]);
		}
	return DistanceMatrix(Trusted{}, k, std::move(e));
}

double tubular_distance(Point2 point, const Line& line) {
	return std::abs(cross(point - line.anchor(), line.direction()));
}

double height(std::span<const double> point, std::span<const double> direction) {
	if (point.size() != direction.size()) throw std::invalid_argument("height: dimension mismatch");
	double s = 0.0, len = 0.0;
	for (std::size_t a = 0; a < point.size(); ++a) {
		s += point[a] * direction[a];
		len += direction[a] * direction[a];
	}
	if (std::abs(std::sqrt(len) - 1.0) > 1e-9) throw std::invalid_argument("height: direction is not a unit vector");
	return s;
}

double absolute_height(std::span<const double> point, std::span<const double> direction) {
	return std::abs(height(point, direction));
}

std::vector<std::size_t> farthest_point_indices(const PointCloud& cloud, std::size_t k, std::uint64_t seed) {
	const std::size_t n = cloud.size(), dim = cloud.dim();
	if (k < 1 || k > n) throw std::invalid_argument("farthest_point_subsample: need 1 <= k <= n");
	Rng rng(seed);
	std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
	std::vector<std::size_t> picked;
	picked.reserve(k);
	std::size_t current = static_cast<std::size_t>(rng.index(n));
	while (picked.size() < k) {
		picked.push_back(current);
		const auto p = cloud[current];
		min_dist[current] = -1.0;
		std::size_t best = 0;
		double best_dist = -1.0;
		for (std::size_t j = 0; j < n; ++j) {
			if (min_dist[j] < 0.0) continue;
			const auto q = cloud[j];
			double s = 0.0;
			for (std::size_t a = 0; a < dim; ++a) s += (p[a] - q[a]) * (p[a] - q[a]);
			min_dist[j] = std::min(min_dist[j], s);
			if (min_dist[j] > best_dist) {
				best_dist = min_dist[j];
				best = j;
			}
		}
		current = best;
	}
	return picked;
}

PointCloud select_points(const PointCloud& cloud, std::span<const std::size_t> indices) {
	std::vector<double> coords;
	coords.reserve(indices.size() * cloud.dim());
	for (std::size_t i : indices) {
		if (i >= cloud.size()) throw std::out_of_range("select_points: index out of range");
		const auto p = cloud[i];
		coords.insert(coords.end(), p.begin(), p.end());
	}
	return PointCloud(cloud.dim(), std::move(coords));
}

PointCloud farthest_point_subsample(const PointCloud& cloud, std::size_t k, std::uint64_t seed) {
	return select_points(cloud, farthest_point_indices(cloud, k, seed));
}

double draw_transform_magnitude(const TransformSpec& spec, std::uint64_t seed) {
	if (!(spec.lo <= spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
		throw std::invalid_argument("TransformSpec: invalid range");
	Rng rng(seed);
	return rng.uniform(spec.lo, spec.hi);
}

PointCloud apply_transform(const PointCloud& cloud, const TransformSpec& spec, std::uint64_t seed) {
	if (!(spec.lo <= spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
		throw std::invalid_argument("TransformSpec: invalid range");
	Rng rng(seed);
	const double magnitude = rng.uniform(spec.lo, spec.hi);
	const std::size_t n = cloud.size(), dim = cloud.dim();
	std::vector<double> c = cloud.coords();
	switch (spec.kind) {
	case TransformKind::translation: {
		std::vector<double> offset(dim);
		offset[0] = magnitude;
		for (std::size_t a = 1; a < dim; ++a) offset[a] = rng.uniform(spec.lo, spec.hi);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t a = 0; a < dim; ++a) c[i * dim + a] += offset[a];
		break;
	}
	case TransformKind::rotation: {
		// clockwise in the xy-plane
		const double theta = magnitude * std::numbers::pi / 180.0;
		const double cs = std::cos(theta), sn = std::sin(theta);
		for (std::size_t i = 0; i < n; ++i) {
			const double x = c[i * dim], y = c[i * dim + 1];
			c[i * dim] = cs * x + sn * y;
			c[i * dim + 1] = -sn * x + cs * y;
		}
		break;
	}
	case TransformKind::stretch:
		for (std::size_t i = 0; i < n; ++i) c[i * dim] *= magnitude;
		break;
	case TransformKind::shear:
		// a factor of 1 maps horizontal lines to 45-degree lines
		for (std::size_t i = 0; i < n; ++i) c[i * dim + 1] += magnitude * c[i * dim];
		break;
	case TransformKind::gaussian:
		if (magnitude > 0.0)
			for (auto& v : c) v += rng.normal(0.0, magnitude);
		break;
	case TransformKind::outliers: {
		const auto count = static_cast<std::size_t>(std::llround(magnitude * static_cast<double>(n)));
		if (count == 0) break;
		std::vector<double> lo(dim, std::numeric_limits<double>::infinity()), hi(dim, -lo[0]);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t a = 0; a < dim; ++a) {
				lo[a] = std::min(lo[a], c[i * dim + a]);
				hi[a] = std::max(hi[a], c[i * dim + a]);
			}
		std::vector<std::size_t> order(n);
		for (std::size_t i = 0; i < n; ++i) order[i] = i;
		for (std::size_t i = 0; i < count; ++i) {
			std::swap(order[i], order[i + rng.index(n - i)]);
			for (std::size_t a = 0; a < dim; ++a) c[order[i] * dim + a] = rng.uniform(lo[a], hi[a]);
		}
		break;
	}
	}
	return PointCloud(dim, std::move(c));
}

// ---------------------------------------------------------------------------
// Planar shapes

double signed_area(std::span<const Point2> v) {
	double s = 0.0;
	for (std::size_t i = 0, n = v.size(); i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
	return 0.5 * s;
}

double polygon_area(const Polygon& polygon) { return signed_area(polygon.vertices()); }

Polygon convex_hull(std::span<const Point2> input) {
	// Andrew's monotone chain; collinear boundary points are dropped.
	std::vector<Point2> pts(input.begin(), input.end());
	std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
	pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
	if (pts.size() < 3) throw std::invalid_argument("convex_hull: fewer than 3 distinct points");
	std::vector<Point2> hull(2 * pts.size());
	std::size_t k = 0;
	for (std::size_t i = 0; i < pts.size(); ++i) {
		while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
		hull[k++] = pts[i];
	}
	for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
		while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
		hull[k++] = pts[i];
	}
	hull.resize(k - 1);
	if (hull.size() < 3 || !(signed_area(hull) > 0.0))
		throw std::invalid_argument("convex_hull: points are collinear");
	return Polygon(std::move(hull));
}

namespace {

bool on_segment(Point2 q, Point2 a, Point2 b) {
	const Point2 ab = b - a, aq = q - a;
	const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y)});
	if (std::abs(cross(ab, aq)) > 1e-12 * scale * std::max(1.0, norm(ab))) return false;
	return dot(aq, ab) >= 0.0 && dot(q - b, a - b) >= 0.0;
}

int orientation(Point2 a, Point2 b, Point2 c) {
	const double v = cross(b - a, c - a);
	return (v > 0.0) - (v < 0.0);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
	const int o1 = orientation(p1, p2, q1), o2 = orientation(p1, p2, q2);
	const int o3 = orientation(q1, q2, p1), o4 = orientation(q1, q2, p2);
	if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
	return (o1 == 0 && on_segment(q1, p1, p2)) || (o2 == 0 && on_segment(q2, p1, p2)) ||
	       (o3 == 0 && on_segment(p1, q1, q2)) || (o4 == 0 && on_segment(p2, q1, q2));
}

} // namespace

bool is_simple(std::span<const Point2> v) {
	const std::size_t n = v.size();
	if (n < 3) return false;
	for (std::size_t i = 0; i < n; ++i) {
		const Point2 a = v[i], b = v[(i + 1) % n];
		if (a == b) return false;
		for (std::size_t j = i + 1; j < n; ++j) {
			const Point2 c = v[j], d = v[(j + 1) % n];
			const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
			if (adjacent) {
				// adjacent edges share one endpoint; they must not fold back over each other
				const Point2 shared = (j == i + 1) ? b : a;
				const Point2 other_i = (j == i + 1) ? a : b;
				const Point2 other_j = (j == i + 1) ? d : c;
				if (orientation(other_i, shared, other_j) == 0 && dot(other_i - shared, other_j - shared) > 0.0)
					return false;
				continue;
			}
			if (segments_intersect(a, b, c, d)) return false;
		}
	}
	return true;
}

bool point_in_polygon(Point2 q, const Polygon& polygon) {
	const auto& v = polygon.vertices();
	const std::size_t n = v.size();
	bool inside = false;
	for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
		if (on_segment(q, v[j], v[i])) return true;
		if ((v[i].y > q.y) != (v[j].y > q.y)) {
			const double x = v[j].x + (q.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
			if (q.x < x) inside = !inside;
		}
	}
	return inside;
}

namespace {

struct SquareExtent {
	Point2 origin;
	double width;
};

SquareExtent padded_extent(double xmin, double xmax, double ymin, double ymax) {
	double width = std::max(xmax - xmin, ymax - ymin);
	if (!(width > 0.0)) width = 1.0;
	const Point2 center{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
	return {{center.x - 0.5 * width, center.y - 0.5 * width}, width};
}

std::size_t cell_index(double v, double origin, double h, std::size_t side) {
	const double t = std::floor((v - origin) / h);
	if (t < 0.0) return 0;
	return std::min(side - 1, static_cast<std::size_t>(t));
}

} // namespace

BinaryMask rasterize(const PointCloud& cloud, std::size_t side) {
	if (cloud.dim() != 2) throw std::invalid_argument("rasterize: only planar clouds can be rasterized");
	if (side < 2) throw std::invalid_argument("rasterize: side must be at least 2");
	double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
	for (std::size_t i = 0; i < cloud.size(); ++i) {
		xmin = std::min(xmin, cloud.coord(i, 0));
		xmax = std::max(xmax, cloud.coord(i, 0));
		ymin = std::min(ymin, cloud.coord(i, 1));
		ymax = std::max(ymax, cloud.coord(i, 1));
	}
	const auto ext = padded_extent(xmin, xmax, ymin, ymax);
	const double h = ext.width / static_cast<double>(side);
	std::vector<std::uint8_t> cells(side * side, 0);
	for (std::size_t i = 0; i < cloud.size(); ++i) {
		const auto ix = cell_index(cloud.coord(i, 0), ext.origin.x, h, side);
		const auto iy = cell_index(cloud.coord(i, 1), ext.origin.y, h, side);
		cells[iy * side + ix] = 1;
	}
	return BinaryMask(side, std::move(cells), ext.origin, h);
}

BinaryMask rasterize(const Polygon& polygon, std::size_t side) {
	if (side < 2) throw std::invalid_argument("rasterize: side must be at least 2");
	double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
	for (const auto& v : polygon.vertices()) {
		xmin = std::min(xmin, v.x);
		xmax = std::max(xmax, v.x);
		ymin = std::min(ymin, v.y);
		ymax = std::max(ymax, v.y);
	}
	const auto ext = padded_extent(xmin, xmax, ymin, ymax);
	const double h = ext.width / static_cast<double>(side);
	BinaryMask frame(side, std::vector<std::uint8_t>(side * side, 0), ext.origin, h);
	std::vector<std::uint8_t> cells(side * side, 0);
	for (std::size_t iy = 0; iy < side; ++iy)
		for (std::size_t ix = 0; ix < side; ++ix)
			cells[iy * side + ix] = point_in_polygon(frame.center(ix, iy), polygon) ? 1 : 0;
	return BinaryMask(side, std::move(cells), ext.origin, h);
}

BinaryMask resample(const BinaryMask& mask, std::size_t side) {
	if (side < 2) throw std::invalid_argument("resample: side must be at least 2");
	if (side == mask.side()) return mask;
	if (mask.count() == 0) throw std::invalid_argument("resample: empty mask");
	const std::size_t old = mask.side();
	// Source cell under the center of target cell j, in integer arithmetic.
	const auto src = [&](std::size_t j) { return std::min(old - 1, ((2 * j + 1) * old) / (2 * side)); };
	std::vector<std::uint8_t> cells(side * side, 0);
	for (std::size_t iy = 0; iy < side; ++iy)
		for (std::size_t ix = 0; ix < side; ++ix)
			cells[iy * side + ix] = mask.occupied(src(ix), src(iy)) ? 1 : 0;
	return BinaryMask(side, std::move(cells), mask.origin(),
	                  mask.cell_width() * static_cast<double>(old) / static_cast<double>(side));
}

double convexity_measure(const BinaryMask& mask) {
	const std::size_t c = mask.side();
	// Work in cell-index coordinates, where every center is an integer point and
	// the hull tests below are exact.
	std::vector<Point2> centers;
	for (std::size_t iy = 0; iy < c; ++iy) {
		std::size_t first = c, last = 0;
		for (std::size_t ix = 0; ix < c; ++ix)
			if (mask.occupied(ix, iy)) {
				first = std::min(first, ix);
				last = ix;
			}
		if (first == c) continue;
		centers.push_back({static_cast<double>(first), static_cast<double>(iy)});
		if (last != first) centers.push_back({static_cast<double>(last), static_cast<double>(iy)});
	}
	std::optional<Polygon> hull;
	try {
		hull = convex_hull(centers);
	} catch (const std::invalid_argument&) {
		throw std::invalid_argument("convexity_measure: degenerate mask (occupied cells are collinear)");
	}
	const auto& v = hull->vertices();
	std::size_t inside = 0;
	for (std::size_t iy = 0; iy < c; ++iy)
		for (std::size_t ix = 0; ix < c; ++ix) {
			const Point2 q{static_cast<double>(ix), static_cast<double>(iy)};
			bool in = true;
			for (std::size_t k = 0; k < v.size() && in; ++k) in = cross(v[(k + 1) % v.size()] - v[k], q - v[k]) >= 0.0;
			inside += in;
		}
	return static_cast<double>(mask.count()) / static_cast<double>(inside);
}

} // namespace tdalab
