#pragma once

#include "tdalab/geometry.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tdalab {

struct DatasetMeta {
	std::string generator;
	std::uint64_t master_seed = 0;
	std::vector<std::uint64_t> item_seeds;
	std::vector<std::string> shape_ids;
};

/// Items with one label each (class index or real value).
template <class Item>
struct LabeledDataset {
	std::vector<Item> items;
	std::vector<double> labels;
	DatasetMeta meta;

	std::size_t size() const { return items.size(); }
};

using CloudDataset = LabeledDataset<PointCloud>;
using PolarDataset = LabeledDataset<PolarCloud>;
using MaskDataset = LabeledDataset<BinaryMask>;

// ---------------------------------------------------------------------------
// Holes corpus: 5 hole counts x {disk with round holes, square with square
// holes} x {planar, slab extrusion}.

enum class RegionKind { disk_round_holes, square_square_holes };

struct ShapeSpec {
	RegionKind region = RegionKind::square_square_holes;
	int holes = 0;
	bool extruded = false;

	std::string id() const;
	std::size_t dim() const { return extruded ? 3 : 2; }
};

/// Regions live in [0, kRegionWidth]^2; extruded shapes span z in [0, kSlabThickness].
inline constexpr double kRegionWidth = 2.0;
inline constexpr double kSlabThickness = 0.3;
/// Disk region radius as a fraction of the region width (centered).
inline constexpr double kDiskRegionRadius = 0.62;
/// Wall thickness between and around holes as a fraction of the region width.
inline constexpr double kWallFraction = 0.08;

/// The 20 catalog shapes, ordered by hole count.
std::vector<ShapeSpec> holes_catalog();
const std::vector<int>& hole_counts();

/// Centers of the holes and their size (side length or diameter), in region coordinates.
struct HoleLayout {
	std::vector<Point2> centers;
	double size = 0.0;
};
HoleLayout hole_layout(int holes);

/// Planar cross-section membership (ignores the slab coordinate).
bool shape_contains(const ShapeSpec& shape, Point2 p);
PointCloud sample_shape(const ShapeSpec& shape, std::size_t n, std::uint64_t seed);

CloudDataset gen_holes_dataset(std::size_t clouds_per_shape, std::size_t points_per_cloud, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Constant-curvature disks.

/// Geodesic radius with area-proportional CDF value u on the unit disk of curvature kappa.
double curvature_radius_quantile(double u, double kappa);
/// P(rho <= r) for area-uniform samples on the unit disk of curvature kappa.
double curvature_radius_cdf(double r, double kappa);

PolarCloud sample_constant_curvature_disk(double kappa, std::size_t n, std::uint64_t seed);

struct CurvatureDataConfig {
	std::size_t clouds_per_kappa = 10;
	std::size_t points_per_cloud = 500;
	std::size_t test_clouds = 100;
};

/// The 101-value training grid -2, -1.96, ..., 2.
std::vector<double> curvature_grid();

std::pair<PolarDataset, PolarDataset> gen_curvature_dataset(const CurvatureDataConfig& config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Convex and concave planar shapes.

Polygon regular_polygon(std::size_t sides, double radius = 1.0, double rotation = 0.0);
Polygon disk_polygon(double radius = 1.0, std::size_t segments = 256);
/// Star with `points` tips; inner/outer radius ratio must lie in (0, cos(pi/points)),
/// otherwise the inner vertices do not indent the tip polygon.
Polygon star_polygon(std::size_t points, double ratio, double radius = 1.0, double rotation = 0.0);

/// Inner radius of the dataset stars as a fraction of the tip polygon's apothem.
inline constexpr double kStarIndentation = 0.5;
/// Inner/outer radius ratio of the dataset star with `points` tips.
double star_ratio(std::size_t points);
/// Disk with a wedge of `wedge_degrees` removed at the center.
Polygon wedge_disk_polygon(double wedge_degrees = 90.0, double radius = 1.0, double rotation = 0.0,
                           std::size_t segments = 256);

/// Concave polygons cover at most this fraction of their convex hull.
inline constexpr double kMaxConcaveAreaRatio = 0.95;

Polygon gen_random_convex_polygon(std::uint64_t seed);
Polygon gen_random_concave_polygon(std::uint64_t seed);

/// Largest distance from a polygon vertex to the boundary of the polygon's convex hull.
double indentation_depth(const Polygon& polygon);

PointCloud sample_polygon(const Polygon& polygon, std::size_t n, std::uint64_t seed);

enum class ConvexityKind { regular, random };
std::string to_string(ConvexityKind kind);
ConvexityKind parse_convexity_kind(const std::string& name);

struct ConvexityDataConfig {
	std::size_t clouds_per_regular_shape = 60;
	std::size_t random_per_label = 240;
	std::size_t points_per_cloud = 5000;
};

/// Label 1 for convex shapes, 0 for concave.
CloudDataset gen_convexity_dataset(ConvexityKind kind, const ConvexityDataConfig& config, std::uint64_t seed);

/// Rasterized random convex/concave polygons (alternating), labeled by convexity_measure.
MaskDataset gen_mask_dataset(std::size_t count, std::size_t side, std::uint64_t seed);

} // namespace tdalab
