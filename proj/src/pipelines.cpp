#include "tdalab/pipelines.hpp"

#include "tdalab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace tdalab {

double ExperimentReport::metric(const std::string& regime) const {
	for (const auto& r : regimes)
		if (r.name == regime) return r.value;
	throw std::out_of_range("report has no regime " + regime);
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
	jobs = std::max<std::size_t>(1, std::min(jobs, n));
	std::vector<std::exception_ptr> errors(n);
	if (jobs == 1) {
		for (std::size_t i = 0; i < n; ++i) {
			try {
				fn(i);
			} catch (...) {
				errors[i] = std::current_exception();
			}
		}
	} else {
		std::atomic<std::size_t> next{0};
		std::vector<std::thread> workers;
		for (std::size_t w = 0; w < jobs; ++w)
			workers.emplace_back([&] {
				for (std::size_t i = next++; i < n; i = next++) {
					try {
						fn(i);
					} catch (...) {
						errors[i] = std::current_exception();
					}
				}
			});
		for (auto& t : workers) t.join();
	}
	for (auto& e : errors)
		if (e) std::rethrow_exception(e);
}

namespace {

// Stream tags for derive_seed, so every random decision has its own stream.
constexpr std::uint64_t kTagSubsample = 1;
constexpr std::uint64_t kTagSplit = 2;
constexpr std::uint64_t kTagFolds = 3;
constexpr std::uint64_t kTagData = 4;
constexpr std::uint64_t kTagTransform = 100;

std::uint64_t stream(std::uint64_t seed, std::uint64_t tag) { return derive_seed(seed, tag); }

double elapsed(std::chrono::steady_clock::time_point start) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FeatureMatrix vectorize(const SignatureScheme& scheme, const std::vector<PersistenceDiagram>& pds,
                        std::span<const std::size_t> rows) {
	std::vector<double> data;
	data.reserve(rows.size() * scheme.length);
	for (std::size_t i : rows) {
		const auto v = scheme(pds[i]);
		data.insert(data.end(), v.begin(), v.end());
	}
	return FeatureMatrix(rows.size(), scheme.length, std::move(data));
}

std::vector<std::size_t> iota_vec(std::size_t n) {
	std::vector<std::size_t> v(n);
	for (std::size_t i = 0; i < n; ++i) v[i] = i;
	return v;
}

std::vector<double> pick(std::span<const double> v, std::span<const std::size_t> idx) {
	std::vector<double> out;
	out.reserve(idx.size());
	for (std::size_t i : idx) out.push_back(v[i]);
	return out;
}

std::vector<PersistenceDiagram> pick(const std::vector<PersistenceDiagram>& v, std::span<const std::size_t> idx) {
	std::vector<PersistenceDiagram> out;
	out.reserve(idx.size());
	for (std::size_t i : idx) out.push_back(v[i]);
	return out;
}

// Signature + k-NN model chosen by k-fold search over (signature config, k).
struct SignatureKnn {
	SignatureConfig config;
	std::size_t k = 1;
	double cv_score = 0.0;
	SignatureScheme scheme;
	KnnModel model;

	nlohmann::json describe() const {
		return {{"signature", config.describe()}, {"k", k}, {"cv_score", cv_score}};
	}
};

SignatureKnn select_signature_knn(const std::vector<PersistenceDiagram>& pds, std::span<const double> labels,
                                  const std::vector<SignatureConfig>& configs, const std::vector<std::size_t>& ks,
                                  TaskMode mode, std::size_t folds, std::uint64_t seed) {
	if (configs.empty() || ks.empty()) throw std::invalid_argument("model selection: empty grid");
	const Metric metric = mode == TaskMode::classify ? Metric::accuracy : Metric::mse;
	const std::size_t n_configs = configs.size() * ks.size();
	auto evaluate = [&](std::size_t c, std::span<const std::size_t> tr, std::span<const std::size_t> va) {
		const auto& cfg = configs[c / ks.size()];
		const std::size_t k = std::min(ks[c % ks.size()], tr.size());
		const auto train_pds = pick(pds, tr);
		const auto scheme = fit_signature(cfg, train_pds);
		const auto ytr = pick(labels, tr);
		const auto model = KnnModel::fit(vectorize(scheme, pds, tr), ytr, k, mode);
		return model.predict(vectorize(scheme, pds, va));
	};
	SignatureKnn out;
	std::size_t best = 0;
	if (n_configs > 1) {
		const auto r = kfold_grid_search(n_configs, labels, evaluate, metric, folds, seed, mode == TaskMode::classify);
		best = r.best;
		out.cv_score = r.best_score;
	}
	out.config = configs[best / ks.size()];
	out.k = std::min(ks[best % ks.size()], pds.size());
	out.scheme = fit_signature(out.config, pds);
	const auto all = iota_vec(pds.size());
	out.model = KnnModel::fit(vectorize(out.scheme, pds, all), labels, out.k, mode);
	return out;
}

std::vector<double> predict(const SignatureKnn& m, const std::vector<PersistenceDiagram>& pds) {
	return m.model.predict(vectorize(m.scheme, pds, iota_vec(pds.size())));
}

nlohmann::json ks_json(const std::vector<std::size_t>& ks) { return nlohmann::json(ks); }

} // namespace

// ---------------------------------------------------------------------------

std::string to_string(SignatureKind kind) {
	switch (kind) {
	case SignatureKind::lifespans: return "lifespans";
	case SignatureKind::image: return "image";
	case SignatureKind::landscape: return "landscape";
	}
	return "?";
}

std::vector<SignatureConfig> tuned_grid(int dim, std::optional<SignatureKind> kind) {
	auto grid = signature_grid(dim);
	if (kind) std::erase_if(grid, [&](const SignatureConfig& c) { return c.kind != *kind; });
	return grid;
}

std::string to_string(FeatureMode mode) { return mode == FeatureMode::simple ? "simple" : "tuned"; }

nlohmann::json HolesConfig::to_json() const {
	nlohmann::json t = nlohmann::json::array();
	for (auto k : transforms) t.push_back(std::string(tdalab::to_string(k)));
	return {{"subsample", subsample}, {"dtm_mass", dtm_mass},   {"top_k", top_k},     {"train_fraction", train_fraction},
	        {"features", tdalab::to_string(features)}, {"knn_k", ks_json(knn_k)}, {"folds", folds}, {"transforms", t},
	        {"tuned_kind", tuned_kind ? nlohmann::json(tdalab::to_string(*tuned_kind)) : nlohmann::json("all")}};
}

PersistenceDiagram holes_diagram(const PointCloud& cloud, std::size_t subsample, double dtm_mass, std::uint64_t seed) {
	const auto full = euclidean_distance_matrix(cloud);
	const auto keep = farthest_point_indices(cloud, std::min(subsample, cloud.size()), seed);
	const auto weights = dtm(full, keep, dtm_mass);
	return rips_persistence(full.submatrix(keep), weights, 1);
}

ExperimentReport holes_pipeline(const CloudDataset& dataset, const HolesConfig& config, std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	const std::size_t n = dataset.size();
	if (n == 0) throw std::invalid_argument("holes_pipeline: empty dataset");
	if (config.subsample < 2) throw std::invalid_argument("holes_pipeline: subsample must be at least 2");

	std::vector<PersistenceDiagram> pds(n);
	parallel_for(n, config.jobs, [&](std::size_t i) {
		pds[i] = holes_diagram(dataset.items[i], config.subsample, config.dtm_mass,
		                       derive_seed(stream(seed, kTagSubsample), i));
	});

	const auto split = train_test_split(dataset.labels, config.train_fraction, stream(seed, kTagSplit), true);
	const auto train_pds = pick(pds, split.train);
	const auto ytr = pick(dataset.labels, split.train);
	const auto yte = pick(dataset.labels, split.test);

	std::vector<SignatureConfig> configs;
	if (config.features == FeatureMode::simple) {
		SignatureConfig c;
		c.kind = SignatureKind::lifespans;
		c.dim = 1;
		c.k = config.top_k;
		configs.push_back(c);
	} else {
		configs = tuned_grid(1, config.tuned_kind);
	}
	const auto model = select_signature_knn(train_pds, ytr, configs, config.knn_k, TaskMode::classify, config.folds,
	                                        stream(seed, kTagFolds));

	ExperimentReport report;
	report.experiment = "holes";
	report.seed = seed;
	report.config = config.to_json();
	report.config["selected"] = model.describe();
	report.config["train_items"] = split.train.size();
	report.config["test_items"] = split.test.size();

	auto record = [&](const std::string& regime, const std::vector<double>& pred) {
		report.regimes.push_back({regime, "accuracy", accuracy(pred, yte)});
		for (std::size_t j = 0; j < split.test.size(); ++j) {
			const std::size_t i = split.test[j];
			const std::string id =
			    (i < dataset.meta.shape_ids.size() ? dataset.meta.shape_ids[i] + "/" : std::string()) + std::to_string(i);
			report.items.push_back({id, yte[j], pred[j], regime});
		}
	};
	record("clean", predict(model, pick(pds, split.test)));

	for (auto kind : config.transforms) {
		const auto spec = TransformSpec::standard(kind);
		const auto tseed = stream(seed, kTagTransform + static_cast<std::uint64_t>(kind));
		std::vector<PersistenceDiagram> tpds(split.test.size());
		parallel_for(split.test.size(), config.jobs, [&](std::size_t j) {
			const std::size_t i = split.test[j];
			const auto moved = apply_transform(dataset.items[i], spec, derive_seed(tseed, i));
			tpds[j] = holes_diagram(moved, config.subsample, config.dtm_mass, derive_seed(stream(seed, kTagSubsample), i));
		});
		record(std::string(to_string(kind)), predict(model, tpds));
	}
	report.wall_seconds = elapsed(start);
	return report;
}

// ---------------------------------------------------------------------------

std::string to_string(CurvatureVariant v) {
	switch (v) {
	case CurvatureVariant::simple: return "simple";
	case CurvatureVariant::simple10: return "simple10";
	case CurvatureVariant::tuned: return "tuned";
	}
	return "?";
}

nlohmann::json CurvatureConfig::to_json() const {
	nlohmann::json v = nlohmann::json::array();
	for (auto x : variants) v.push_back(tdalab::to_string(x));
	return {{"dims", dims},   {"variants", v},           {"knn_k", ks_json(knn_k)},
	        {"folds", folds}, {"sign_margin", sign_margin},
	        {"tuned_kind", tuned_kind ? nlohmann::json(tdalab::to_string(*tuned_kind)) : nlohmann::json("all")}};
}

PersistenceDiagram curvature_diagram(const PolarCloud& cloud) {
	return rips_persistence(geodesic_distance_matrix(cloud), {}, 1, true);
}

ExperimentReport curvature_pipeline(const PolarDataset& train, const PolarDataset& test,
                                    const CurvatureConfig& config, std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	if (train.size() == 0 || test.size() == 0) throw std::invalid_argument("curvature_pipeline: empty dataset");
	std::vector<PersistenceDiagram> train_pds(train.size()), test_pds(test.size());
	parallel_for(train.size() + test.size(), config.jobs, [&](std::size_t i) {
		if (i < train.size())
			train_pds[i] = curvature_diagram(train.items[i]);
		else
			test_pds[i - train.size()] = curvature_diagram(test.items[i - train.size()]);
	});

	ExperimentReport report;
	report.experiment = "curvature";
	report.seed = seed;
	report.config = config.to_json();
	report.config["train_items"] = train.size();
	report.config["test_items"] = test.size();
	report.config["selected"] = nlohmann::json::object();

	for (int dim : config.dims) {
		if (dim < 0 || dim > 1) throw std::invalid_argument("curvature_pipeline: dims must be 0 or 1");
		for (auto variant : config.variants) {
			std::vector<SignatureConfig> configs;
			if (variant == CurvatureVariant::tuned) {
				configs = tuned_grid(dim, config.tuned_kind);
			} else {
				SignatureConfig c;
				c.kind = SignatureKind::lifespans;
				c.dim = dim;
				c.k = variant == CurvatureVariant::simple ? 0 : 10;
				configs.push_back(c);
			}
			const auto model = select_signature_knn(train_pds, train.labels, configs, config.knn_k, TaskMode::regress,
			                                        config.folds, stream(seed, kTagFolds));
			const auto pred = predict(model, test_pds);
			const std::string name = "dim" + std::to_string(dim) + "-" + to_string(variant);
			report.config["selected"][name] = model.describe();
			report.regimes.push_back({name, "mse", mean_squared_error(pred, test.labels)});

			std::size_t counted = 0, right = 0;
			for (std::size_t j = 0; j < test.size(); ++j) {
				report.items.push_back({"test/" + std::to_string(j), test.labels[j], pred[j], name});
				if (std::abs(test.labels[j]) > config.sign_margin) {
					++counted;
					right += (pred[j] > 0.0) == (test.labels[j] > 0.0);
				}
			}
			if (counted > 0)
				report.regimes.push_back(
				    {name + "-sign", "accuracy", static_cast<double>(right) / static_cast<double>(counted)});
			else
				report.warnings.push_back(name + ": no test items beyond the sign margin");
		}
	}
	report.wall_seconds = elapsed(start);
	return report;
}

// ---------------------------------------------------------------------------

LineSet default_lines(const BinaryMask& mask) {
	const std::size_t c = mask.side();
	std::size_t ix0 = c, ix1 = 0, iy0 = c, iy1 = 0;
	for (std::size_t iy = 0; iy < c; ++iy)
		for (std::size_t ix = 0; ix < c; ++ix)
			if (mask.occupied(ix, iy)) {
				ix0 = std::min(ix0, ix);
				ix1 = std::max(ix1, ix);
				iy0 = std::min(iy0, iy);
				iy1 = std::max(iy1, iy);
			}
	if (ix0 == c) throw std::invalid_argument("default_lines: empty mask");
	const double h = mask.cell_width();
	const Point2 o = mask.origin();
	const double x0 = o.x + static_cast<double>(ix0) * h, x1 = o.x + static_cast<double>(ix1 + 1) * h;
	const double y0 = o.y + static_cast<double>(iy0) * h, y1 = o.y + static_cast<double>(iy1 + 1) * h;
	const double xc = 0.5 * (x0 + x1), yc = 0.5 * (y0 + y1);
	LineSet s;
	for (double y : {y0, yc, y1}) s.lines.push_back(Line({x0, y}, {1.0, 0.0}));
	for (double x : {x0, xc, x1}) s.lines.push_back(Line({x, y0}, {0.0, 1.0}));
	s.lines.push_back(Line::through({x0, y0}, {x1, y1}));
	s.lines.push_back(Line::through({x0, y1}, {x1, y0}));
	s.lines.push_back(Line::with_direction({xc, y0}, {1.0, 1.0}));
	return s;
}

double second_component_lifespan(const PersistenceDiagram& pd, double end) {
	std::vector<double> life;
	for (const auto& iv : pd.intervals())
		if (iv.dim == 0) life.push_back(iv.finite() ? iv.lifespan() : std::max(0.0, end - iv.birth));
	if (life.size() < 2) return 0.0;
	std::nth_element(life.begin(), life.begin() + 1, life.end(), std::greater<>());
	return life[1];
}

std::vector<double> concavity_features(const BinaryMask& mask, const LineSet& lines, bool normalize) {
	const std::size_t count = mask.count();
	if (count == 0) throw std::invalid_argument("concavity_features: empty mask");
	std::vector<double> out;
	out.reserve(lines.lines.size());
	for (const auto& line : lines.lines) {
		const auto grid = cubical_complex(mask, TubularFunction{line});
		double end = 0.0;
		for (double v : grid.top_values())
			if (v != FilteredCubicalGrid::kAbsent) end = std::max(end, v);
		double life = second_component_lifespan(compute_ph0_unionfind(grid), end) / mask.cell_width();
		if (normalize) life /= static_cast<double>(count);
		out.push_back(life);
	}
	return out;
}

std::vector<double> concavity_features(const BinaryMask& mask, bool normalize) {
	return concavity_features(mask, default_lines(mask), normalize);
}

double concavity_scalar(const PointCloud& cloud, std::size_t grid_side) {
	const auto f = concavity_features(rasterize(cloud, grid_side), false);
	return *std::max_element(f.begin(), f.end());
}

nlohmann::json ConvexityConfig::to_json() const {
	return {{"grid_side", grid_side},
	        {"train_size", train_size},
	        {"test_size", test_size},
	        {"clouds_per_regular_shape", data.clouds_per_regular_shape},
	        {"random_per_label", data.random_per_label},
	        {"points_per_cloud", data.points_per_cloud}};
}

namespace {

struct ConvexityData {
	CloudDataset dataset;
	std::vector<double> scalars;
	Split split;
};

ConvexityData convexity_data(CloudDataset dataset, ConvexityKind kind, const ConvexityConfig& config,
                             std::uint64_t seed) {
	ConvexityData d;
	d.dataset = std::move(dataset);
	const std::size_t n = d.dataset.size();
	d.scalars.assign(n, 0.0);
	parallel_for(n, config.jobs, [&](std::size_t i) { d.scalars[i] = concavity_scalar(d.dataset.items[i], config.grid_side); });
	const std::size_t want = config.train_size + config.test_size;
	if (config.train_size == 0 || config.test_size == 0)
		throw std::invalid_argument("convexity: train and test sizes must be positive");
	const double fraction = static_cast<double>(config.train_size) / static_cast<double>(want);
	d.split = train_test_split(d.dataset.labels, fraction,
	                           derive_seed(stream(seed, kTagSplit), static_cast<int>(kind)), true);
	if (d.split.train.size() > config.train_size) d.split.train.resize(config.train_size);
	if (d.split.test.size() > config.test_size) d.split.test.resize(config.test_size);
	return d;
}

ConvexityData convexity_data(ConvexityKind kind, const ConvexityConfig& config, std::uint64_t seed) {
	return convexity_data(
	    gen_convexity_dataset(kind, config.data, derive_seed(stream(seed, kTagData), static_cast<int>(kind))), kind,
	    config, seed);
}

ThresholdModel fit_or_fallback(const std::vector<double>& scalars, const std::vector<double>& labels,
                               std::vector<std::string>& warnings) {
	try {
		return threshold_fit(scalars, labels);
	} catch (const std::invalid_argument&) {
		warnings.push_back("single-class training set; using the fallback threshold");
		return ThresholdModel{kConcavityFallbackThreshold, 0.0, 1.0};
	}
}

void convexity_regime(ExperimentReport& report, const ConvexityData& tr, const ConvexityData& te,
                      ConvexityKind train_kind, ConvexityKind test_kind) {
	const auto xs = pick(tr.scalars, tr.split.train);
	const auto ys = pick(tr.dataset.labels, tr.split.train);
	const auto model = fit_or_fallback(xs, ys, report.warnings);
	const auto xt = pick(te.scalars, te.split.test);
	const auto yt = pick(te.dataset.labels, te.split.test);
	const auto pred = model.predict(xt);
	const std::string name = to_string(train_kind) + "-" + to_string(test_kind);
	report.regimes.push_back({name, "accuracy", accuracy(pred, yt)});
	report.config["thresholds"][name] = {{"threshold", model.threshold},
	                                     {"label_above", model.label_above},
	                                     {"label_below", model.label_below}};
	for (std::size_t j = 0; j < xt.size(); ++j) {
		const std::size_t i = te.split.test[j];
		const std::string id =
		    (i < te.dataset.meta.shape_ids.size() ? te.dataset.meta.shape_ids[i] + "/" : std::string()) +
		    std::to_string(i);
		report.items.push_back({id, yt[j], pred[j], name});
	}
}

} // namespace

namespace {

ExperimentReport convexity_report(const ConvexityConfig& config, std::uint64_t seed) {
	ExperimentReport report;
	report.experiment = "convexity";
	report.seed = seed;
	report.config = config.to_json();
	return report;
}

} // namespace

ExperimentReport convexity_pipeline(ConvexityKind train_kind, ConvexityKind test_kind, const ConvexityConfig& config,
                                    std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	auto report = convexity_report(config, seed);
	const auto tr = convexity_data(train_kind, config, seed);
	if (test_kind == train_kind) {
		convexity_regime(report, tr, tr, train_kind, test_kind);
	} else {
		const auto te = convexity_data(test_kind, config, seed);
		convexity_regime(report, tr, te, train_kind, test_kind);
	}
	report.wall_seconds = elapsed(start);
	return report;
}

ExperimentReport convexity_pipeline(const CloudDataset& train, ConvexityKind train_kind, const CloudDataset& test,
                                    ConvexityKind test_kind, const ConvexityConfig& config, std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	auto report = convexity_report(config, seed);
	const auto tr = convexity_data(train, train_kind, config, seed);
	const auto te = convexity_data(test, test_kind, config, seed);
	convexity_regime(report, tr, te, train_kind, test_kind);
	report.wall_seconds = elapsed(start);
	return report;
}

namespace {

ExperimentReport four_regimes(const ConvexityData& regular, const ConvexityData& random,
                              const ConvexityConfig& config, std::uint64_t seed) {
	auto report = convexity_report(config, seed);
	convexity_regime(report, regular, regular, ConvexityKind::regular, ConvexityKind::regular);
	convexity_regime(report, random, random, ConvexityKind::random, ConvexityKind::random);
	convexity_regime(report, regular, random, ConvexityKind::regular, ConvexityKind::random);
	convexity_regime(report, random, regular, ConvexityKind::random, ConvexityKind::regular);
	return report;
}

} // namespace

ExperimentReport convexity_experiment(const ConvexityConfig& config, std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	auto report = four_regimes(convexity_data(ConvexityKind::regular, config, seed),
	                           convexity_data(ConvexityKind::random, config, seed), config, seed);
	report.wall_seconds = elapsed(start);
	return report;
}

ExperimentReport convexity_experiment(const CloudDataset& regular, const CloudDataset& random,
                                      const ConvexityConfig& config, std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	auto report = four_regimes(convexity_data(regular, ConvexityKind::regular, config, seed),
	                           convexity_data(random, ConvexityKind::random, config, seed), config, seed);
	report.wall_seconds = elapsed(start);
	return report;
}

// ---------------------------------------------------------------------------

nlohmann::json ConvexityRegressionConfig::to_json() const {
	return {{"grid_side", grid_side}, {"train_fraction", train_fraction}, {"lambda", lambda}};
}

ExperimentReport convexity_regression(const MaskDataset& masks, const ConvexityRegressionConfig& config,
                                      std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	if (masks.size() < 20) throw std::invalid_argument("convexity_regression: need at least 20 masks");
	const std::size_t n = masks.size();
	std::vector<std::vector<double>> features(n);
	std::vector<double> measure(n, 0.0);
	std::vector<std::string> failure(n);
	parallel_for(n, config.jobs, [&](std::size_t i) {
		try {
			const auto& m = masks.items[i];
			measure[i] = convexity_measure(m);
			features[i] = concavity_features(m.side() == config.grid_side ? m : resample(m, config.grid_side), true);
		} catch (const std::exception& e) {
			failure[i] = e.what();
		}
	});

	ExperimentReport report;
	report.experiment = "convexity-measure";
	report.seed = seed;
	report.config = config.to_json();
	std::vector<std::size_t> kept;
	for (std::size_t i = 0; i < n; ++i) {
		if (failure[i].empty())
			kept.push_back(i);
		else
			report.warnings.push_back("mask " + std::to_string(i) + " skipped: " + failure[i]);
	}
	if (kept.size() < 20) throw std::runtime_error("convexity_regression: fewer than 20 usable masks");

	std::vector<double> labels;
	std::vector<std::vector<double>> rows;
	for (std::size_t i : kept) {
		labels.push_back(measure[i]);
		rows.push_back(features[i]);
	}
	const auto x = FeatureMatrix::from_rows(rows);
	const auto split = train_test_split(labels, config.train_fraction, stream(seed, kTagSplit), false);
	const auto model = RidgeModel::fit(x.select(split.train), pick(labels, split.train), config.lambda);
	auto pred = model.predict(x.select(split.test));
	// The measure is an area ratio in (0, 1]; deep thin notches otherwise extrapolate past it.
	for (auto& p : pred) p = std::clamp(p, 0.0, 1.0);
	const auto yte = pick(labels, split.test);
	report.regimes.push_back({"test", "mse", mean_squared_error(pred, yte)});

	std::vector<double> concavity, total;
	for (std::size_t r = 0; r < kept.size(); ++r) {
		concavity.push_back(1.0 - labels[r]);
		double s = 0.0;
		for (double v : rows[r]) s += v;
		total.push_back(s);
	}
	report.regimes.push_back({"feature-sum", "spearman", spearman(concavity, total)});
	report.config["train_items"] = split.train.size();
	report.config["test_items"] = split.test.size();
	report.config["weights"] = model.fit_result.weights;
	report.config["intercept"] = model.fit_result.intercept;
	for (std::size_t j = 0; j < split.test.size(); ++j)
		report.items.push_back({"mask/" + std::to_string(kept[split.test[j]]), yte[j], pred[j], "test"});
	report.wall_seconds = elapsed(start);
	return report;
}

} // namespace tdalab
