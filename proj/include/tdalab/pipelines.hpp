#pragma once

#include "tdalab/datagen.hpp"
#include "tdalab/learn.hpp"
#include "tdalab/persistence.hpp"
#include "tdalab/signatures.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tdalab {

struct RegimeResult {
	std::string name;
	std::string metric;
	double value = 0.0;
};

struct ItemResult {
	std::string id;
	double label = 0.0;
	double prediction = 0.0;
	std::string regime;
};

struct ExperimentReport {
	std::string experiment;
	nlohmann::json config = nlohmann::json::object();
	std::uint64_t seed = 0;
	std::vector<RegimeResult> regimes;
	std::vector<ItemResult> items;
	std::vector<std::string> warnings;
	/// Not serialized, so reports stay bit-identical across reruns.
	double wall_seconds = 0.0;

	/// Value of the named regime; throws if absent.
	double metric(const std::string& regime) const;
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

std::string to_string(SignatureKind kind);

/// The signature grid for one degree, optionally restricted to one family.
std::vector<SignatureConfig> tuned_grid(int dim, std::optional<SignatureKind> kind);

// ---------------------------------------------------------------------------
// Holes

enum class FeatureMode { simple, tuned };
std::string to_string(FeatureMode mode);

struct HolesConfig {
	std::size_t subsample = 150;
	double dtm_mass = 0.03;
	std::size_t top_k = 10;
	double train_fraction = 0.8;
	FeatureMode features = FeatureMode::simple;
	/// Restricts the tuned grid to one signature family.
	std::optional<SignatureKind> tuned_kind;
	std::vector<std::size_t> knn_k{1, 5, 15};
	std::size_t folds = 3;
	std::vector<TransformKind> transforms = all_transform_kinds();
	std::size_t jobs = 1;

	nlohmann::json to_json() const;
};

/// Degree-1 diagram of a cloud: farthest-point subsample, DTM of the full
/// cloud at the kept points, weighted Rips.
PersistenceDiagram holes_diagram(const PointCloud& cloud, std::size_t subsample, double dtm_mass, std::uint64_t seed);

/// Trains on the clean split, reports accuracy on the clean test split and on
/// each configured transform of it.
ExperimentReport holes_pipeline(const CloudDataset& dataset, const HolesConfig& config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Curvature

enum class CurvatureVariant { simple, simple10, tuned };
std::string to_string(CurvatureVariant v);

struct CurvatureConfig {
	std::vector<int> dims{0, 1};
	std::vector<CurvatureVariant> variants{CurvatureVariant::simple, CurvatureVariant::simple10};
	std::optional<SignatureKind> tuned_kind;
	std::vector<std::size_t> knn_k{1, 5, 15};
	std::size_t folds = 3;
	/// Sign accuracy is measured on test items with |kappa| above this.
	double sign_margin = 0.25;
	std::size_t jobs = 1;

	nlohmann::json to_json() const;
};

PersistenceDiagram curvature_diagram(const PolarCloud& cloud);

/// Regimes "dim<d>-<variant>" (MSE) and "dim<d>-<variant>-sign" (sign accuracy).
ExperimentReport curvature_pipeline(const PolarDataset& train, const PolarDataset& test,
                                    const CurvatureConfig& config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Convexity

struct LineSet {
	std::vector<Line> lines;
};

/// Nine lines from the occupied bounding box: horizontals at y0, yc, y1,
/// verticals at x0, xc, x1, both box diagonals, and a 45-degree line through
/// (xc, y0).
LineSet default_lines(const BinaryMask& mask);

/// Lifespan of the second most persisting dim-0 class of each line's tubular
/// filtration, in cell units; divided by the occupied-cell count when normalize is set.
std::vector<double> concavity_features(const BinaryMask& mask, const LineSet& lines, bool normalize);
std::vector<double> concavity_features(const BinaryMask& mask, bool normalize = false);

/// Second most persisting lifespan of a dim-0 diagram where essential classes
/// count as living until `end`.
double second_component_lifespan(const PersistenceDiagram& pd, double end);

inline constexpr double kConcavityFallbackThreshold = 1.5;

struct ConvexityConfig {
	std::size_t grid_side = 20;
	std::size_t train_size = 400;
	std::size_t test_size = 80;
	ConvexityDataConfig data{60, 240, 1000};
	std::size_t jobs = 1;

	nlohmann::json to_json() const;
};

/// Max concavity feature of a rasterized cloud.
double concavity_scalar(const PointCloud& cloud, std::size_t grid_side);

/// One regime: train on `train_kind`, test on `test_kind`.
ExperimentReport convexity_pipeline(ConvexityKind train_kind, ConvexityKind test_kind, const ConvexityConfig& config,
                                    std::uint64_t seed);

ExperimentReport convexity_pipeline(const CloudDataset& train, ConvexityKind train_kind, const CloudDataset& test,
                                    ConvexityKind test_kind, const ConvexityConfig& config, std::uint64_t seed);

/// All four regimes over shared datasets and splits.
ExperimentReport convexity_experiment(const ConvexityConfig& config, std::uint64_t seed);
ExperimentReport convexity_experiment(const CloudDataset& regular, const CloudDataset& random,
                                      const ConvexityConfig& config, std::uint64_t seed);

struct ConvexityRegressionConfig {
	std::size_t grid_side = 30;
	double train_fraction = 0.7;
	double lambda = 1e-3;
	std::size_t jobs = 1;

	nlohmann::json to_json() const;
};

ExperimentReport convexity_regression(const MaskDataset& masks, const ConvexityRegressionConfig& config,
                                      std::uint64_t seed);

} // namespace tdalab
