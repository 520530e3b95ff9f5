#include "tdalab/learn.hpp"

#include "tdalab/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tdalab {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
	if (data_.size() != rows_ * cols_) throw std::invalid_argument("FeatureMatrix: data size is not rows * cols");
	for (double v : data_)
		if (!std::isfinite(v)) throw std::invalid_argument("FeatureMatrix: non-finite entry");
}

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
	const std::size_t cols = rows.empty() ? 0 : rows[0].size();
	std::vector<double> data;
	data.reserve(rows.size() * cols);
	for (const auto& r : rows) {
		if (r.size() != cols) throw std::invalid_argument("FeatureMatrix: ragged rows");
		data.insert(data.end(), r.begin(), r.end());
	}
	return FeatureMatrix(rows.size(), cols, std::move(data));
}

FeatureMatrix FeatureMatrix::select(std::span<const std::size_t> rows) const {
	std::vector<double> data;
	data.reserve(rows.size() * cols_);
	for (std::size_t i : rows) {
		if (i >= rows_) throw std::out_of_range("FeatureMatrix::select: row out of range");
		auto r = row(i);
		data.insert(data.end(), r.begin(), r.end());
	}
	return FeatureMatrix(rows.size(), cols_, std::move(data));
}

Standardizer Standardizer::fit(const FeatureMatrix& x) {
	const std::size_t n = x.rows(), d = x.cols();
	if (n == 0) throw std::invalid_argument("Standardizer: empty matrix");
	Standardizer s{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
	for (std::size_t j = 0; j < d; ++j) {
		double m = 0.0;
		for (std::size_t i = 0; i < n; ++i) m += x(i, j);
		m /= static_cast<double>(n);
		double v = 0.0;
		for (std::size_t i = 0; i < n; ++i) v += (x(i, j) - m) * (x(i, j) - m);
		v /= static_cast<double>(n);
		s.mean[j] = m;
		const double sd = std::sqrt(v);
		s.scale[j] = sd > 1e-12 * std::max(1.0, std::abs(m)) ? sd : 1.0;
	}
	return s;
}

Standardizer Standardizer::identity(std::size_t cols) {
	return {std::vector<double>(cols, 0.0), std::vector<double>(cols, 1.0)};
}

FeatureMatrix Standardizer::transform(const FeatureMatrix& x) const {
	if (x.cols() != mean.size()) throw std::invalid_argument("Standardizer: column count mismatch");
	std::vector<double> data(x.data());
	for (std::size_t i = 0; i < x.rows(); ++i)
		for (std::size_t j = 0; j < x.cols(); ++j) data[i * x.cols() + j] = (x(i, j) - mean[j]) / scale[j];
	return FeatureMatrix(x.rows(), x.cols(), std::move(data));
}

std::string to_string(TaskMode mode) { return mode == TaskMode::classify ? "classify" : "regress"; }

// ---------------------------------------------------------------------------

std::vector<double> knn_fit_predict(const FeatureMatrix& train, std::span<const double> labels,
                                    const FeatureMatrix& test, std::size_t k, TaskMode mode) {
	const std::size_t n = train.rows();
	if (n == 0) throw std::invalid_argument("knn: empty training set");
	if (labels.size() != n) throw std::invalid_argument("knn: label count mismatch");
	if (k < 1 || k > n) throw std::invalid_argument("knn: k must lie in [1, |train|]");
	if (test.rows() > 0 && test.cols() != train.cols()) throw std::invalid_argument("knn: column count mismatch");

	std::vector<double> out(test.rows());
	std::vector<std::size_t> order(n);
	std::vector<double> dist(n);
	for (std::size_t q = 0; q < test.rows(); ++q) {
		auto query = test.row(q);
		for (std::size_t i = 0; i < n; ++i) {
			auto r = train.row(i);
			double s = 0.0;
			for (std::size_t j = 0; j < r.size(); ++j) s += (r[j] - query[j]) * (r[j] - query[j]);
			dist[i] = s;
		}
		std::iota(order.begin(), order.end(), 0);
		std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
		                  [&](std::size_t a, std::size_t b) {
			                  if (dist[a] != dist[b]) return dist[a] < dist[b];
			                  if (labels[a] != labels[b]) return labels[a] < labels[b];
			                  auto ra = train.row(a), rb = train.row(b);
			                  return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
		                  });
		if (mode == TaskMode::regress) {
			double s = 0.0;
			for (std::size_t i = 0; i < k; ++i) s += labels[order[i]];
			out[q] = s / static_cast<double>(k);
		} else {
			std::map<double, std::size_t> votes;
			for (std::size_t i = 0; i < k; ++i) ++votes[labels[order[i]]];
			double best = votes.begin()->first;
			std::size_t best_count = 0;
			for (auto [label, count] : votes)
				if (count > best_count) {
					best = label;
					best_count = count;
				}
			out[q] = best;
		}
	}
	return out;
}

KnnModel KnnModel::fit(const FeatureMatrix& x, std::span<const double> y, std::size_t k, TaskMode mode) {
	if (x.rows() == 0) throw std::invalid_argument("knn: empty training set");
	if (y.size() != x.rows()) throw std::invalid_argument("knn: label count mismatch");
	if (k < 1 || k > x.rows()) throw std::invalid_argument("knn: k must lie in [1, |train|]");
	KnnModel m;
	m.k = k;
	m.mode = mode;
	m.standardizer = Standardizer::fit(x);
	m.train = m.standardizer.transform(x);
	m.labels.assign(y.begin(), y.end());
	return m;
}

std::vector<double> KnnModel::predict(const FeatureMatrix& x) const {
	return knn_fit_predict(train, labels, standardizer.transform(x), k, mode);
}

// ---------------------------------------------------------------------------

RidgeFit ridge_fit(const FeatureMatrix& x, std::span<const double> y, double lambda) {
	const std::size_t n = x.rows(), d = x.cols();
	if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("ridge: lambda must be >= 0");
	if (n == 0) throw std::invalid_argument("ridge: empty training set");
	if (y.size() != n) throw std::invalid_argument("ridge: label count mismatch");

	Eigen::MatrixXd xc(n, d);
	Eigen::VectorXd yc(n);
	Eigen::VectorXd xm = Eigen::VectorXd::Zero(d);
	double ym = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < d; ++j) xm[j] += x(i, j);
		ym += y[i];
	}
	xm /= static_cast<double>(n);
	ym /= static_cast<double>(n);
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < d; ++j) xc(i, j) = x(i, j) - xm[j];
		yc[i] = y[i] - ym;
	}

	RidgeFit fit;
	fit.weights.assign(d, 0.0);
	if (d > 0) {
		Eigen::MatrixXd a = xc.transpose() * xc;
		a.diagonal().array() += lambda;
		const Eigen::VectorXd rhs = xc.transpose() * yc;
		Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
		const double scale = std::max(1.0, a.diagonal().cwiseAbs().maxCoeff());
		const auto& dvec = ldlt.vectorD();
		const bool singular =
		    ldlt.info() != Eigen::Success || (dvec.array().abs() <= 1e-12 * scale).any() || (dvec.array() < 0).any();
		if (singular)
			throw std::runtime_error("ridge: normal equations are singular; use lambda > 0");
		const Eigen::VectorXd w = ldlt.solve(rhs);
		for (std::size_t j = 0; j < d; ++j) fit.weights[j] = w[j];
		fit.intercept = ym - w.dot(xm);
	} else {
		fit.intercept = ym;
	}
	return fit;
}

std::vector<double> ridge_predict(const RidgeFit& fit, const FeatureMatrix& x) {
	if (x.rows() > 0 && x.cols() != fit.weights.size()) throw std::invalid_argument("ridge: column count mismatch");
	std::vector<double> out(x.rows(), fit.intercept);
	for (std::size_t i = 0; i < x.rows(); ++i)
		for (std::size_t j = 0; j < x.cols(); ++j) out[i] += fit.weights[j] * x(i, j);
	return out;
}

RidgeModel RidgeModel::fit(const FeatureMatrix& x, std::span<const double> y, double lambda) {
	RidgeModel m;
	m.lambda = lambda;
	m.standardizer = Standardizer::fit(x);
	m.fit_result = ridge_fit(m.standardizer.transform(x), y, lambda);
	return m;
}

std::vector<double> RidgeModel::predict(const FeatureMatrix& x) const {
	return ridge_predict(fit_result, standardizer.transform(x));
}

// ---------------------------------------------------------------------------

std::vector<double> ThresholdModel::predict(std::span<const double> scalars) const {
	std::vector<double> out(scalars.size());
	for (std::size_t i = 0; i < scalars.size(); ++i) out[i] = scalars[i] > threshold ? label_above : label_below;
	return out;
}

ThresholdModel threshold_fit(std::span<const double> scalars, std::span<const double> labels) {
	const std::size_t n = scalars.size();
	if (labels.size() != n) throw std::invalid_argument("threshold_fit: length mismatch");
	std::vector<double> classes(labels.begin(), labels.end());
	std::sort(classes.begin(), classes.end());
	classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
	if (classes.size() != 2) throw std::invalid_argument("threshold_fit: need exactly two classes");
	for (double s : scalars)
		if (!std::isfinite(s)) throw std::invalid_argument("threshold_fit: non-finite scalar");
	const double lo = classes[0], hi = classes[1];

	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scalars[a] < scalars[b]; });

	// Sweep candidate thresholds ascending. `hi_below` counts items with label
	// `hi` at or below the threshold.
	std::size_t hi_total = 0;
	for (double l : labels) hi_total += (l == hi);
	const std::size_t lo_total = n - hi_total;

	ThresholdModel best;
	std::size_t best_correct = 0;
	bool have = false;
	auto consider = [&](double t, std::size_t lo_below, std::size_t hi_below) {
		const std::size_t above_hi = (hi_total - hi_below) + lo_below;          // predict hi above
		const std::size_t above_lo = (lo_total - lo_below) + hi_below;          // predict lo above
		if (!have || above_hi > best_correct) {
			best = {t, hi, lo};
			best_correct = above_hi;
			have = true;
		}
		if (above_lo > best_correct) {
			best = {t, lo, hi};
			best_correct = above_lo;
		}
	};

	std::size_t lo_below = 0, hi_below = 0;
	consider(scalars[order[0]] - 1.0, 0, 0);
	for (std::size_t i = 0; i < n; ++i) {
		const double s = scalars[order[i]];
		(labels[order[i]] == hi ? hi_below : lo_below) += 1;
		if (i + 1 < n && scalars[order[i + 1]] > s) consider(0.5 * (s + scalars[order[i + 1]]), lo_below, hi_below);
	}
	return best;
}

// ---------------------------------------------------------------------------

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
	if (a.size() != b.size()) throw std::invalid_argument("metrics: length mismatch");
	if (a.empty()) throw std::invalid_argument("metrics: empty input");
}

std::vector<double> average_ranks(std::span<const double> v) {
	const std::size_t n = v.size();
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
	std::vector<double> rank(n);
	for (std::size_t i = 0; i < n;) {
		std::size_t j = i;
		while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
		const double r = 0.5 * static_cast<double>(i + j) + 1.0;
		for (std::size_t t = i; t <= j; ++t) rank[order[t]] = r;
		i = j + 1;
	}
	return rank;
}

} // namespace

double accuracy(std::span<const double> predictions, std::span<const double> labels) {
	check_lengths(predictions, labels);
	std::size_t hit = 0;
	for (std::size_t i = 0; i < labels.size(); ++i) hit += predictions[i] == labels[i];
	return static_cast<double>(hit) / static_cast<double>(labels.size());
}

double mean_squared_error(std::span<const double> predictions, std::span<const double> labels) {
	check_lengths(predictions, labels);
	double s = 0.0;
	for (std::size_t i = 0; i < labels.size(); ++i) s += (predictions[i] - labels[i]) * (predictions[i] - labels[i]);
	return s / static_cast<double>(labels.size());
}

double spearman(std::span<const double> a, std::span<const double> b) {
	check_lengths(a, b);
	const auto ra = average_ranks(a), rb = average_ranks(b);
	const double n = static_cast<double>(a.size());
	const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
	const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
	double sab = 0.0, saa = 0.0, sbb = 0.0;
	for (std::size_t i = 0; i < ra.size(); ++i) {
		sab += (ra[i] - ma) * (rb[i] - mb);
		saa += (ra[i] - ma) * (ra[i] - ma);
		sbb += (rb[i] - mb) * (rb[i] - mb);
	}
	if (saa == 0.0 || sbb == 0.0) return 0.0;
	return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> shuffled(std::size_t n, Rng& rng) {
	std::vector<std::size_t> p(n);
	std::iota(p.begin(), p.end(), 0);
	for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.index(i)]);
	return p;
}

std::map<double, std::vector<std::size_t>> by_class(std::span<const double> labels, const std::vector<std::size_t>& perm) {
	std::map<double, std::vector<std::size_t>> groups;
	for (std::size_t i : perm) groups[labels[i]].push_back(i);
	return groups;
}

} // namespace

std::vector<std::size_t> fold_assignment(std::span<const double> labels, std::size_t folds, std::uint64_t seed,
                                         bool stratified) {
	const std::size_t n = labels.size();
	if (folds < 2) throw std::invalid_argument("fold_assignment: need at least 2 folds");
	if (n < folds) throw std::invalid_argument("fold_assignment: fewer items than folds");
	Rng rng(seed);
	const auto perm = shuffled(n, rng);
	std::vector<std::size_t> fold(n);
	if (!stratified) {
		for (std::size_t i = 0; i < n; ++i) fold[perm[i]] = i % folds;
		return fold;
	}
	std::size_t offset = 0;
	for (const auto& [label, members] : by_class(labels, perm)) {
		if (members.size() < folds)
			throw std::invalid_argument("fold_assignment: a class has fewer members than folds");
		for (std::size_t i = 0; i < members.size(); ++i) fold[members[i]] = (offset + i) % folds;
		offset += members.size();
	}
	return fold;
}

Split train_test_split(std::span<const double> labels, double train_fraction, std::uint64_t seed, bool stratified) {
	if (!(train_fraction > 0.0 && train_fraction < 1.0))
		throw std::invalid_argument("train_test_split: fraction must lie in (0, 1)");
	Rng rng(seed);
	const auto perm = shuffled(labels.size(), rng);
	Split s;
	auto take = [&](const std::vector<std::size_t>& items) {
		const auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(items.size())));
		s.train.insert(s.train.end(), items.begin(), items.begin() + static_cast<std::ptrdiff_t>(cut));
		s.test.insert(s.test.end(), items.begin() + static_cast<std::ptrdiff_t>(cut), items.end());
	};
	if (stratified)
		for (const auto& [label, members] : by_class(labels, perm)) take(members);
	else
		take(perm);
	std::sort(s.train.begin(), s.train.end());
	std::sort(s.test.begin(), s.test.end());
	return s;
}

GridSearchResult kfold_grid_search(std::size_t n_configs, std::span<const double> labels, const FoldEvaluator& evaluate,
                                   Metric metric, std::size_t folds, std::uint64_t seed, bool stratified) {
	if (n_configs == 0) throw std::invalid_argument("kfold_grid_search: empty grid");
	const auto fold = fold_assignment(labels, folds, seed, stratified);
	GridSearchResult r;
	r.scores.assign(n_configs, 0.0);
	for (std::size_t f = 0; f < folds; ++f) {
		std::vector<std::size_t> tr, va;
		for (std::size_t i = 0; i < labels.size(); ++i) (fold[i] == f ? va : tr).push_back(i);
		std::vector<double> truth;
		for (std::size_t i : va) truth.push_back(labels[i]);
		for (std::size_t c = 0; c < n_configs; ++c) {
			const auto pred = evaluate(c, tr, va);
			r.scores[c] += (metric == Metric::accuracy ? accuracy(pred, truth) : mean_squared_error(pred, truth)) /
			               static_cast<double>(folds);
		}
	}
	r.best = 0;
	for (std::size_t c = 1; c < n_configs; ++c) {
		const bool better = metric == Metric::accuracy ? r.scores[c] > r.scores[r.best] : r.scores[c] < r.scores[r.best];
		if (better) r.best = c;
	}
	r.best_score = r.scores[r.best];
	return r;
}

} // namespace tdalab
