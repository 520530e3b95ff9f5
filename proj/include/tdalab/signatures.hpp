#pragma once

#include "tdalab/persistence.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdalab {

/// Finite lifespans of one dimension, sorted descending, truncated or
/// zero-padded to length k.
std::vector<double> lifespans_topk(const PersistenceDiagram& pd, int dim, std::size_t k);

// ---------------------------------------------------------------------------
// Persistence images

/// Weight of a Gaussian bump as a function of lifespan y: 1, y or y^2.
enum class ImageWeight { constant, linear, quadratic };

std::string to_string(ImageWeight w);
ImageWeight parse_image_weight(const std::string& name);

/// Grid over (birth, lifespan) in [birth_min, birth_max] x [0, lifespan_max].
struct ImageScheme {
	int dim = 1;
	std::size_t resolution = 10;
	double sigma = 0.1;
	ImageWeight weight = ImageWeight::constant;
	double birth_min = 0.0;
	double birth_max = 1.0;
	double lifespan_max = 1.0;
};

/// Fits the grid range to the finite intervals of `diagrams`.
ImageScheme fit_image_scheme(std::span<const PersistenceDiagram> diagrams, int dim, std::size_t resolution,
                             double sigma, ImageWeight weight);

/// Row-major resolution x resolution image (rows along lifespan).
std::vector<double> persistence_image(const PersistenceDiagram& pd, const ImageScheme& scheme);
std::vector<double> persistence_image(const PersistenceDiagram& pd, int dim, std::size_t resolution, double sigma,
                                      ImageWeight weight);

// ---------------------------------------------------------------------------
// Persistence landscapes

struct LandscapeScheme {
	int dim = 1;
	std::size_t resolution = 100;
	std::size_t levels = 1;
	/// Keep only the `longest` most persistent intervals before evaluating.
	std::optional<std::size_t> longest;
	double t_min = 0.0;
	double t_max = 1.0;
};

/// k-th largest tent value max(0, min(t - b, d - t)) over the finite intervals (k >= 1).
double landscape_value(std::span<const Interval> intervals, std::size_t k, double t);

LandscapeScheme fit_landscape_scheme(std::span<const PersistenceDiagram> diagrams, int dim, std::size_t resolution,
                                     std::size_t levels, std::optional<std::size_t> longest = std::nullopt);

/// Concatenation of lambda_1..lambda_levels, each sampled at `resolution` points.
std::vector<double> persistence_landscape(const PersistenceDiagram& pd, const LandscapeScheme& scheme);
std::vector<double> persistence_landscape(const PersistenceDiagram& pd, int dim, std::size_t resolution,
                                          std::size_t levels);

// ---------------------------------------------------------------------------

struct ScalarSummaries {
	std::size_t cardinality = 0;
	double max_lifespan = 0.0;
	double total_lifespan = 0.0;
	double second_longest_lifespan = 0.0;
};

ScalarSummaries scalar_summaries(const PersistenceDiagram& pd, int dim);

// ---------------------------------------------------------------------------
// Signature schemes as used by the pipelines.

enum class SignatureKind { lifespans, image, landscape };

/// A point of the signature hyperparameter grid. For lifespans, k = 0 means
/// "all": the length is fitted to the longest training diagram.
struct SignatureConfig {
	SignatureKind kind = SignatureKind::lifespans;
	int dim = 1;
	std::size_t k = 10;
	std::size_t resolution = 10;
	double sigma = 0.1;
	ImageWeight weight = ImageWeight::constant;
	std::optional<std::size_t> longest;

	std::string describe() const;
};

/// A config with its data-driven ranges fixed from training diagrams.
struct SignatureScheme {
	SignatureConfig config;
	std::size_t length = 0;
	ImageScheme image;
	LandscapeScheme landscape;

	std::vector<double> operator()(const PersistenceDiagram& pd) const;
};

SignatureScheme fit_signature(const SignatureConfig& config, std::span<const PersistenceDiagram> train);

/// Images (sigma in {0.1, 0.5, 1, 10} x weight in {1, y, y^2}), landscapes over
/// the longest {1, 10, all} intervals, and the top-10 lifespans: 16 configs.
std::vector<SignatureConfig> signature_grid(int dim);

} // namespace tdalab
