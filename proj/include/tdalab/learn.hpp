#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tdalab {

/// Dense row-major feature matrix, rows = items.
class FeatureMatrix {
public:
	FeatureMatrix() = default;
	FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
	static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
	double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
	const std::vector<double>& data() const { return data_; }

	FeatureMatrix select(std::span<const std::size_t> rows) const;

private:
	std::size_t rows_ = 0;
	std::size_t cols_ = 0;
	std::vector<double> data_;
};

/// Per-column z-scoring. Constant columns get scale 1.
struct Standardizer {
	std::vector<double> mean;
	std::vector<double> scale;

	static Standardizer fit(const FeatureMatrix& x);
	static Standardizer identity(std::size_t cols);
	FeatureMatrix transform(const FeatureMatrix& x) const;
};

enum class TaskMode { classify, regress };

std::string to_string(TaskMode mode);

/// Plain Euclidean k-NN on the given features. Neighbors are ranked by
/// (distance, label, row contents) so results do not depend on row order.
/// Classification ties go to the smallest label.
std::vector<double> knn_fit_predict(const FeatureMatrix& train, std::span<const double> labels,
                                    const FeatureMatrix& test, std::size_t k, TaskMode mode);

struct KnnModel {
	std::size_t k = 1;
	TaskMode mode = TaskMode::classify;
	Standardizer standardizer;
	FeatureMatrix train; // standardized
	std::vector<double> labels;

	static KnnModel fit(const FeatureMatrix& x, std::span<const double> y, std::size_t k, TaskMode mode);
	std::vector<double> predict(const FeatureMatrix& x) const;
};

struct RidgeFit {
	std::vector<double> weights;
	double intercept = 0.0;
};

/// Minimizes |y - Xw - b|^2 + lambda |w|^2 with b unpenalized.
RidgeFit ridge_fit(const FeatureMatrix& x, std::span<const double> y, double lambda);
std::vector<double> ridge_predict(const RidgeFit& fit, const FeatureMatrix& x);

struct RidgeModel {
	double lambda = 0.0;
	Standardizer standardizer;
	RidgeFit fit_result;

	static RidgeModel fit(const FeatureMatrix& x, std::span<const double> y, double lambda);
	std::vector<double> predict(const FeatureMatrix& x) const;
};

/// Predicts label_above when the scalar exceeds the threshold, else label_below.
struct ThresholdModel {
	double threshold = 0.0;
	double label_above = 1.0;
	double label_below = 0.0;

	std::vector<double> predict(std::span<const double> scalars) const;
};

ThresholdModel threshold_fit(std::span<const double> scalars, std::span<const double> labels);

using Model = std::variant<KnnModel, RidgeModel, ThresholdModel>;

double accuracy(std::span<const double> predictions, std::span<const double> labels);
double mean_squared_error(std::span<const double> predictions, std::span<const double> labels);
/// Rank correlation with average ranks for ties; 0 when either side is constant.
double spearman(std::span<const double> a, std::span<const double> b);

enum class Metric { accuracy, mse };

/// Fold index per item from a seeded permutation. Stratified mode deals each
/// class round-robin so every fold sees every class.
std::vector<std::size_t> fold_assignment(std::span<const double> labels, std::size_t folds, std::uint64_t seed,
                                         bool stratified);

/// Seeded train/test split. Stratified mode keeps class proportions.
struct Split {
	std::vector<std::size_t> train;
	std::vector<std::size_t> test;
};
Split train_test_split(std::span<const double> labels, double train_fraction, std::uint64_t seed, bool stratified);

struct GridSearchResult {
	std::size_t best = 0;
	double best_score = 0.0;
	std::vector<double> scores;
};

/// `evaluate(config, train_idx, val_idx)` returns predictions for val_idx.
using FoldEvaluator =
    std::function<std::vector<double>(std::size_t, std::span<const std::size_t>, std::span<const std::size_t>)>;

/// Mean validation metric per config; the first best config wins ties.
GridSearchResult kfold_grid_search(std::size_t n_configs, std::span<const double> labels, const FoldEvaluator& evaluate,
                                   Metric metric, std::size_t folds, std::uint64_t seed, bool stratified);

} // namespace tdalab
