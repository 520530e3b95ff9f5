#include "tdalab/datagen.hpp"

#include "tdalab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tdalab {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

// ---------------------------------------------------------------------------
// Holes

std::string ShapeSpec::id() const {
	std::string s = region == RegionKind::disk_round_holes ? "disk-round" : "square-square";
	s += "-" + std::to_string(holes) + (extruded ? "-3d" : "-2d");
	return s;
}

const std::vector<int>& hole_counts() {
	static const std::vector<int> counts = {0, 1, 2, 4, 9};
	return counts;
}

std::vector<ShapeSpec> holes_catalog() {
	std::vector<ShapeSpec> out;
	for (int k : hole_counts())
		for (bool extruded : {false, true})
			for (auto region : {RegionKind::disk_round_holes, RegionKind::square_square_holes})
				out.push_back({region, k, extruded});
	return out;
}

// Holes sit on a g_x x g_y grid inside the unit square with equal hole and
// wall widths: pitch 1/(2g+1) along the longer grid axis.
HoleLayout hole_layout(int holes) {
	int gx = 0, gy = 0;
	switch (holes) {
	case 0: return {};
	case 1: gx = gy = 1; break;
	case 2: gx = 2, gy = 1; break;
	case 4: gx = gy = 2; break;
	case 9: gx = gy = 3; break;
	default: throw std::invalid_argument("hole_layout: hole count must be one of 0, 1, 2, 4, 9");
	}
	// g holes and g + 1 walls per row of the g x g grid, in units of the region width
	const int g = std::max(gx, gy);
	const double size = (1.0 - (g + 1) * kWallFraction) / g;
	auto axis = [&](int count) {
		std::vector<double> c;
		const double span = count * size + (count - 1) * kWallFraction;
		const double start = 0.5 - 0.5 * span + 0.5 * size;
		for (int i = 0; i < count; ++i) c.push_back(kRegionWidth * (start + i * (size + kWallFraction)));
		return c;
	};
	HoleLayout layout;
	layout.size = kRegionWidth * size;
	for (double y : axis(gy))
		for (double x : axis(gx)) layout.centers.push_back({x, y});
	return layout;
}

bool shape_contains(const ShapeSpec& shape, Point2 p) {
	const Point2 mid{0.5 * kRegionWidth, 0.5 * kRegionWidth};
	if (shape.region == RegionKind::disk_round_holes) {
		if (norm(p - mid) > kDiskRegionRadius * kRegionWidth) return false;
	} else if (p.x < 0.0 || p.x > kRegionWidth || p.y < 0.0 || p.y > kRegionWidth) {
		return false;
	}
	const auto layout = hole_layout(shape.holes);
	const double half = 0.5 * layout.size;
	for (const auto& c : layout.centers) {
		if (shape.region == RegionKind::disk_round_holes) {
			if (norm(p - c) < half) return false;
		} else if (std::abs(p.x - c.x) < half && std::abs(p.y - c.y) < half) {
			return false;
		}
	}
	return true;
}

PointCloud sample_shape(const ShapeSpec& shape, std::size_t n, std::uint64_t seed) {
	if (n < 1) throw std::invalid_argument("sample_shape: need at least one point");
	Rng rng(seed);
	const bool disk = shape.region == RegionKind::disk_round_holes;
	const double lo = kRegionWidth * (disk ? 0.5 - kDiskRegionRadius : 0.0);
	const double hi = kRegionWidth * (disk ? 0.5 + kDiskRegionRadius : 1.0);
	const std::size_t dim = shape.dim();
	std::vector<double> coords;
	coords.reserve(n * dim);
	while (coords.size() < n * dim) {
		const Point2 p{rng.uniform(lo, hi), rng.uniform(lo, hi)};
		if (!shape_contains(shape, p)) continue;
		coords.push_back(p.x);
		coords.push_back(p.y);
		if (shape.extruded) coords.push_back(rng.uniform(0.0, kSlabThickness));
	}
	return PointCloud(dim, std::move(coords));
}

CloudDataset gen_holes_dataset(std::size_t clouds_per_shape, std::size_t points_per_cloud, std::uint64_t seed) {
	if (clouds_per_shape < 1 || points_per_cloud < 1)
		throw std::invalid_argument("gen_holes_dataset: counts must be positive");
	CloudDataset ds;
	ds.meta.generator = "holes";
	ds.meta.master_seed = seed;
	std::uint64_t index = 0;
	for (const auto& shape : holes_catalog())
		for (std::size_t r = 0; r < clouds_per_shape; ++r, ++index) {
			const auto item_seed = derive_seed(seed, index);
			ds.items.push_back(sample_shape(shape, points_per_cloud, item_seed));
			ds.labels.push_back(shape.holes);
			ds.meta.item_seeds.push_back(item_seed);
			ds.meta.shape_ids.push_back(shape.id());
		}
	return ds;
}

// ---------------------------------------------------------------------------
// Curvature

// Area element on the disk: rho for kappa = 0, R sin(rho/R) for kappa > 0 and
// R sinh(rho/R) for kappa < 0. Inverse CDFs are written in half-angle form.
double curvature_radius_quantile(double u, double kappa) {
	if (!(kappa >= -2.0 && kappa <= 2.0)) throw std::invalid_argument("curvature outside [-2, 2]");
	u = std::clamp(u, 0.0, 1.0);
	if (kappa == 0.0) return std::sqrt(u);
	const double radius = 1.0 / std::sqrt(std::abs(kappa));
	double rho;
	if (kappa > 0.0)
		rho = 2.0 * radius * std::asin(std::sqrt(u) * std::sin(0.5 / radius));
	else
		rho = 2.0 * radius * std::asinh(std::sqrt(u) * std::sinh(0.5 / radius));
	return std::min(rho, 1.0);
}

double curvature_radius_cdf(double r, double kappa) {
	if (!(kappa >= -2.0 && kappa <= 2.0)) throw std::invalid_argument("curvature outside [-2, 2]");
	r = std::clamp(r, 0.0, 1.0);
	if (kappa == 0.0) return r * r;
	const double radius = 1.0 / std::sqrt(std::abs(kappa));
	if (kappa > 0.0) {
		const double a = std::sin(0.5 * r / radius), b = std::sin(0.5 / radius);
		return (a * a) / (b * b);
	}
	const double a = std::sinh(0.5 * r / radius), b = std::sinh(0.5 / radius);
	return (a * a) / (b * b);
}

PolarCloud sample_constant_curvature_disk(double kappa, std::size_t n, std::uint64_t seed) {
	if (!(kappa >= -2.0 && kappa <= 2.0)) throw std::invalid_argument("curvature outside [-2, 2]");
	if (n < 1) throw std::invalid_argument("sample_constant_curvature_disk: need at least one point");
	Rng rng(seed);
	std::vector<PolarPoint> coords(n);
	for (auto& p : coords) {
		p.rho = curvature_radius_quantile(rng.uniform(), kappa);
		p.phi = 2.0 * kPi * rng.uniform();
	}
	return PolarCloud(std::move(coords), kappa);
}

std::vector<double> curvature_grid() {
	std::vector<double> grid;
	for (int i = -50; i <= 50; ++i) grid.push_back(i / 25.0);
	return grid;
}

std::pair<PolarDataset, PolarDataset> gen_curvature_dataset(const CurvatureDataConfig& config, std::uint64_t seed) {
	if (config.clouds_per_kappa < 1 || config.points_per_cloud < 1)
		throw std::invalid_argument("gen_curvature_dataset: counts must be positive");
	PolarDataset train, test;
	train.meta.generator = "curvature-train";
	test.meta.generator = "curvature-test";
	train.meta.master_seed = test.meta.master_seed = seed;
	const auto train_seed = derive_seed(seed, 0), test_seed = derive_seed(seed, 1);
	std::uint64_t index = 0;
	for (double kappa : curvature_grid())
		for (std::size_t r = 0; r < config.clouds_per_kappa; ++r, ++index) {
			const auto s = derive_seed(train_seed, index);
			train.items.push_back(sample_constant_curvature_disk(kappa, config.points_per_cloud, s));
			train.labels.push_back(kappa);
			train.meta.item_seeds.push_back(s);
			train.meta.shape_ids.push_back("disk");
		}
	for (std::size_t i = 0; i < config.test_clouds; ++i) {
		const auto s = derive_seed(test_seed, i);
		Rng rng(s);
		const double kappa = rng.uniform(-2.0, 2.0);
		test.items.push_back(sample_constant_curvature_disk(kappa, config.points_per_cloud, rng.next()));
		test.labels.push_back(kappa);
		test.meta.item_seeds.push_back(s);
		test.meta.shape_ids.push_back("disk");
	}
	return {std::move(train), std::move(test)};
}

// ---------------------------------------------------------------------------
// Convexity shapes

Polygon regular_polygon(std::size_t sides, double radius, double rotation) {
	if (sides < 3) throw std::invalid_argument("regular_polygon: need at least 3 sides");
	std::vector<Point2> v;
	for (std::size_t i = 0; i < sides; ++i) {
		const double t = rotation + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(sides);
		v.push_back({radius * std::cos(t), radius * std::sin(t)});
	}
	return Polygon(std::move(v));
}

Polygon disk_polygon(double radius, std::size_t segments) { return regular_polygon(segments, radius); }

Polygon star_polygon(std::size_t points, double ratio, double radius, double rotation) {
	if (points < 3) throw std::invalid_argument("star_polygon: need at least 3 tips");
	if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("star_polygon: radius ratio must lie in (0, 1)");
	// At or above the apothem ratio the inner vertices sit on or outside the tip polygon's edges.
	if (ratio >= std::cos(kPi / static_cast<double>(points)) - 1e-12)
		throw std::invalid_argument("star_polygon: radius ratio too large, the star would be convex");
	std::vector<Point2> v;
	for (std::size_t i = 0; i < 2 * points; ++i) {
		const double t = rotation + kPi * static_cast<double>(i) / static_cast<double>(points);
		const double r = (i % 2 == 0) ? radius : ratio * radius;
		v.push_back({r * std::cos(t), r * std::sin(t)});
	}
	return Polygon(std::move(v));
}

double star_ratio(std::size_t points) {
	return kStarIndentation * std::cos(kPi / static_cast<double>(points));
}

Polygon wedge_disk_polygon(double wedge_degrees, double radius, double rotation, std::size_t segments) {
	if (!(wedge_degrees > 0.0 && wedge_degrees < 180.0))
		throw std::invalid_argument("wedge_disk_polygon: wedge must lie in (0, 180) degrees");
	const double span = 2.0 * kPi - wedge_degrees * kPi / 180.0;
	std::vector<Point2> v{{0.0, 0.0}};
	for (std::size_t i = 0; i <= segments; ++i) {
		const double t = rotation + span * static_cast<double>(i) / static_cast<double>(segments);
		v.push_back({radius * std::cos(t), radius * std::sin(t)});
	}
	return Polygon(std::move(v));
}

namespace {

std::vector<Point2> random_points(Rng& rng, std::size_t n) {
	std::vector<Point2> pts(n);
	for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
	return pts;
}

Point2 centroid(const std::vector<Point2>& v) {
	// area centroid
	double a = 0.0, cx = 0.0, cy = 0.0;
	for (std::size_t i = 0, n = v.size(); i < n; ++i) {
		const Point2 p = v[i], q = v[(i + 1) % n];
		const double w = cross(p, q);
		a += w;
		cx += (p.x + q.x) * w;
		cy += (p.y + q.y) * w;
	}
	return {cx / (3.0 * a), cy / (3.0 * a)};
}

} // namespace

Polygon gen_random_convex_polygon(std::uint64_t seed) {
	Rng rng(seed);
	for (int attempt = 0; attempt < 100; ++attempt) {
		try {
			return convex_hull(random_points(rng, 10));
		} catch (const std::invalid_argument&) {
		}
	}
	throw std::runtime_error("gen_random_convex_polygon: retry budget exhausted");
}

Polygon gen_random_concave_polygon(std::uint64_t seed) {
	Rng rng(seed);
	for (int attempt = 0; attempt < 100; ++attempt) {
		std::vector<Point2> hull;
		try {
			hull = convex_hull(random_points(rng, 10)).vertices();
		} catch (const std::invalid_argument&) {
			continue;
		}
		const std::size_t m = hull.size();
		const Point2 c = centroid(hull);
		// choose 1..ceil(m/2) edges to indent
		const std::size_t count = 1 + rng.index((m + 1) / 2);
		std::vector<std::size_t> edges(m);
		for (std::size_t i = 0; i < m; ++i) edges[i] = i;
		for (std::size_t i = 0; i < count; ++i) std::swap(edges[i], edges[i + rng.index(m - i)]);
		std::vector<bool> indent(m, false);
		for (std::size_t i = 0; i < count; ++i) indent[edges[i]] = true;
		std::vector<Point2> v;
		for (std::size_t i = 0; i < m; ++i) {
			v.push_back(hull[i]);
			if (!indent[i]) continue;
			const Point2 mid = 0.5 * (hull[i] + hull[(i + 1) % m]);
			const double f = rng.uniform(0.3, 0.8);
			v.push_back(mid + f * (c - mid));
		}
		bool reflex = false;
		for (std::size_t i = 0, n = v.size(); i < n; ++i)
			if (cross(v[i] - v[(i + n - 1) % n], v[(i + 1) % n] - v[i]) < 0.0) reflex = true;
		if (!reflex || !(signed_area(v) > 0.0) || !is_simple(v)) continue;
		// Shallow dents vanish under rasterization.
		if (signed_area(v) > kMaxConcaveAreaRatio * polygon_area(Polygon(hull))) continue;
		return Polygon(std::move(v));
	}
	throw std::runtime_error("gen_random_concave_polygon: retry budget exhausted");
}

double indentation_depth(const Polygon& polygon) {
	const auto hull = convex_hull(polygon.vertices());
	const auto& h = hull.vertices();
	double depth = 0.0;
	for (const auto& p : polygon.vertices()) {
		double best = std::numeric_limits<double>::infinity();
		for (std::size_t i = 0, n = h.size(); i < n; ++i) {
			const Point2 a = h[i], b = h[(i + 1) % n], ab = b - a;
			const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
			best = std::min(best, norm(p - (a + t * ab)));
		}
		depth = std::max(depth, best);
	}
	return depth;
}

PointCloud sample_polygon(const Polygon& polygon, std::size_t n, std::uint64_t seed) {
	if (n < 1) throw std::invalid_argument("sample_polygon: need at least one point");
	double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
	for (const auto& v : polygon.vertices()) {
		xmin = std::min(xmin, v.x);
		xmax = std::max(xmax, v.x);
		ymin = std::min(ymin, v.y);
		ymax = std::max(ymax, v.y);
	}
	Rng rng(seed);
	std::vector<Point2> pts;
	pts.reserve(n);
	while (pts.size() < n) {
		const Point2 p{rng.uniform(xmin, xmax), rng.uniform(ymin, ymax)};
		if (point_in_polygon(p, polygon)) pts.push_back(p);
	}
	return PointCloud::from_points(pts);
}

std::string to_string(ConvexityKind kind) { return kind == ConvexityKind::regular ? "regular" : "random"; }

ConvexityKind parse_convexity_kind(const std::string& name) {
	if (name == "regular") return ConvexityKind::regular;
	if (name == "random") return ConvexityKind::random;
	throw std::invalid_argument("unknown convexity dataset kind: " + name);
}

CloudDataset gen_convexity_dataset(ConvexityKind kind, const ConvexityDataConfig& config, std::uint64_t seed) {
	CloudDataset ds;
	ds.meta.generator = "convexity-" + to_string(kind);
	ds.meta.master_seed = seed;
	std::uint64_t index = 0;
	auto add = [&](const Polygon& polygon, int label, std::string shape_id, std::uint64_t item_seed) {
		ds.items.push_back(sample_polygon(polygon, config.points_per_cloud, splitmix64(item_seed)));
		ds.labels.push_back(label);
		ds.meta.item_seeds.push_back(item_seed);
		ds.meta.shape_ids.push_back(std::move(shape_id));
	};
	if (kind == ConvexityKind::regular) {
		// convex: triangle, square, pentagon, disk; concave: 3/4/5-pointed stars, wedge disk
		for (int shape = 0; shape < 8; ++shape)
			for (std::size_t r = 0; r < config.clouds_per_regular_shape; ++r, ++index) {
				const auto item_seed = derive_seed(seed, index);
				// Upright: one tip points up, the wedge opens downward.
				const double rot = 0.5 * kPi;
				switch (shape) {
				case 0: add(regular_polygon(3, 1.0, rot), 1, "triangle", item_seed); break;
				case 1: add(regular_polygon(4, 1.0, rot), 1, "square", item_seed); break;
				case 2: add(regular_polygon(5, 1.0, rot), 1, "pentagon", item_seed); break;
				case 3: add(disk_polygon(1.0), 1, "disk", item_seed); break;
				case 4: add(star_polygon(3, star_ratio(3), 1.0, rot), 0, "star3", item_seed); break;
				case 5: add(star_polygon(4, star_ratio(4), 1.0, rot), 0, "star4", item_seed); break;
				case 6: add(star_polygon(5, star_ratio(5), 1.0, rot), 0, "star5", item_seed); break;
				default: add(wedge_disk_polygon(90.0, 1.0, -0.25 * kPi), 0, "wedge-disk", item_seed); break;
				}
			}
	} else {
		for (int label : {1, 0})
			for (std::size_t r = 0; r < config.random_per_label; ++r, ++index) {
				const auto item_seed = derive_seed(seed, index);
				if (label == 1)
					add(gen_random_convex_polygon(item_seed), 1, "random-convex", item_seed);
				else
					add(gen_random_concave_polygon(item_seed), 0, "random-concave", item_seed);
			}
	}
	return ds;
}

MaskDataset gen_mask_dataset(std::size_t count, std::size_t side, std::uint64_t seed) {
	MaskDataset ds;
	ds.meta.generator = "masks";
	ds.meta.master_seed = seed;
	for (std::size_t i = 0; i < count; ++i) {
		const auto item_seed = derive_seed(seed, i);
		const bool convex = i % 2 == 0;
		const Polygon polygon = convex ? gen_random_convex_polygon(item_seed) : gen_random_concave_polygon(item_seed);
		auto mask = rasterize(polygon, side);
		ds.labels.push_back(convexity_measure(mask));
		ds.items.push_back(std::move(mask));
		ds.meta.item_seeds.push_back(item_seed);
		ds.meta.shape_ids.push_back(convex ? "random-convex" : "random-concave");
	}
	return ds;
}

} // namespace tdalab
