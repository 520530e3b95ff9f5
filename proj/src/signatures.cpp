#include "tdalab/signatures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tdalab {

namespace {

std::vector<Interval> finite_intervals(const PersistenceDiagram& pd, int dim) {
	std::vector<Interval> out;
	for (const auto& iv : pd.intervals())
		if (iv.dim == dim && iv.finite()) out.push_back(iv);
	return out;
}

} // namespace

std::vector<double> lifespans_topk(const PersistenceDiagram& pd, int dim, std::size_t k) {
	if (k < 1) throw std::invalid_argument("lifespans_topk: k must be positive");
	auto life = pd.finite_lifespans(dim);
	std::sort(life.begin(), life.end(), std::greater<>());
	life.resize(k, 0.0);
	return life;
}

// ---------------------------------------------------------------------------

std::string to_string(ImageWeight w) {
	switch (w) {
	case ImageWeight::constant: return "1";
	case ImageWeight::linear: return "y";
	case ImageWeight::quadratic: return "y^2";
	}
	return "?";
}

ImageWeight parse_image_weight(const std::string& name) {
	if (name == "1") return ImageWeight::constant;
	if (name == "y") return ImageWeight::linear;
	if (name == "y^2") return ImageWeight::quadratic;
	throw std::invalid_argument("unknown image weight: " + name);
}

ImageScheme fit_image_scheme(std::span<const PersistenceDiagram> diagrams, int dim, std::size_t resolution,
                             double sigma, ImageWeight weight) {
	if (resolution < 1) throw std::invalid_argument("persistence_image: resolution must be positive");
	if (!(sigma > 0.0)) throw std::invalid_argument("persistence_image: sigma must be positive");
	ImageScheme s{dim, resolution, sigma, weight, 0.0, 0.0, 0.0};
	bool any = false;
	for (const auto& pd : diagrams)
		for (const auto& iv : finite_intervals(pd, dim)) {
			s.birth_min = any ? std::min(s.birth_min, iv.birth) : iv.birth;
			s.birth_max = any ? std::max(s.birth_max, iv.birth) : iv.birth;
			s.lifespan_max = std::max(s.lifespan_max, iv.lifespan());
			any = true;
		}
	if (!(s.birth_max > s.birth_min)) {
		s.birth_min -= 0.5;
		s.birth_max += 0.5;
	}
	if (!(s.lifespan_max > 0.0)) s.lifespan_max = 1.0;
	return s;
}

std::vector<double> persistence_image(const PersistenceDiagram& pd, const ImageScheme& s) {
	if (!(s.sigma > 0.0)) throw std::invalid_argument("persistence_image: sigma must be positive");
	if (s.resolution < 1) throw std::invalid_argument("persistence_image: resolution must be positive");
	const std::size_t r = s.resolution;
	const double bw = (s.birth_max - s.birth_min) / static_cast<double>(r);
	const double lw = s.lifespan_max / static_cast<double>(r);
	const double norm = 1.0 / (2.0 * std::numbers::pi * s.sigma * s.sigma);
	const double inv2s2 = 1.0 / (2.0 * s.sigma * s.sigma);
	std::vector<double> img(r * r, 0.0);
	for (const auto& iv : finite_intervals(pd, s.dim)) {
		const double y = iv.lifespan();
		const double w = s.weight == ImageWeight::constant ? 1.0 : (s.weight == ImageWeight::linear ? y : y * y);
		if (w == 0.0) continue;
		for (std::size_t row = 0; row < r; ++row) {
			const double cy = (static_cast<double>(row) + 0.5) * lw;
			const double gy = (cy - y) * (cy - y);
			for (std::size_t col = 0; col < r; ++col) {
				const double cx = s.birth_min + (static_cast<double>(col) + 0.5) * bw;
				const double gx = (cx - iv.birth) * (cx - iv.birth);
				img[row * r + col] += w * norm * std::exp(-(gx + gy) * inv2s2) * bw * lw;
			}
		}
	}
	return img;
}

std::vector<double> persistence_image(const PersistenceDiagram& pd, int dim, std::size_t resolution, double sigma,
                                      ImageWeight weight) {
	return persistence_image(pd, fit_image_scheme(std::span(&pd, 1), dim, resolution, sigma, weight));
}

// ---------------------------------------------------------------------------

double landscape_value(std::span<const Interval> intervals, std::size_t k, double t) {
	if (k < 1) throw std::invalid_argument("landscape_value: levels start at 1");
	std::vector<double> tents;
	for (const auto& iv : intervals) {
		if (!iv.finite()) continue;
		const double v = std::min(t - iv.birth, iv.death - t);
		if (v > 0.0) tents.push_back(v);
	}
	if (tents.size() < k) return 0.0;
	std::nth_element(tents.begin(), tents.begin() + static_cast<std::ptrdiff_t>(k - 1), tents.end(), std::greater<>());
	return tents[k - 1];
}

namespace {

std::vector<Interval> longest_intervals(const PersistenceDiagram& pd, int dim, std::optional<std::size_t> longest) {
	auto iv = finite_intervals(pd, dim);
	if (longest && iv.size() > *longest) {
		std::stable_sort(iv.begin(), iv.end(),
		                 [](const Interval& a, const Interval& b) { return a.lifespan() > b.lifespan(); });
		iv.resize(*longest);
	}
	return iv;
}

} // namespace

LandscapeScheme fit_landscape_scheme(std::span<const PersistenceDiagram> diagrams, int dim, std::size_t resolution,
                                     std::size_t levels, std::optional<std::size_t> longest) {
	if (resolution < 2) throw std::invalid_argument("persistence_landscape: resolution must be at least 2");
	if (levels < 1) throw std::invalid_argument("persistence_landscape: levels must be positive");
	LandscapeScheme s{dim, resolution, levels, longest, 0.0, 0.0};
	bool any = false;
	for (const auto& pd : diagrams)
		for (const auto& iv : longest_intervals(pd, dim, longest)) {
			s.t_min = any ? std::min(s.t_min, iv.birth) : iv.birth;
			s.t_max = any ? std::max(s.t_max, iv.death) : iv.death;
			any = true;
		}
	if (!(s.t_max > s.t_min)) s.t_max = s.t_min + 1.0;
	return s;
}

std::vector<double> persistence_landscape(const PersistenceDiagram& pd, const LandscapeScheme& s) {
	if (s.resolution < 2) throw std::invalid_argument("persistence_landscape: resolution must be at least 2");
	if (s.levels < 1) throw std::invalid_argument("persistence_landscape: levels must be positive");
	const auto iv = longest_intervals(pd, s.dim, s.longest);
	std::vector<double> out(s.levels * s.resolution, 0.0);
	std::vector<double> tents;
	const double step = (s.t_max - s.t_min) / static_cast<double>(s.resolution - 1);
	for (std::size_t i = 0; i < s.resolution; ++i) {
		const double t = (i + 1 == s.resolution) ? s.t_max : s.t_min + static_cast<double>(i) * step;
		tents.clear();
		for (const auto& x : iv) {
			const double v = std::min(t - x.birth, x.death - t);
			if (v > 0.0) tents.push_back(v);
		}
		std::sort(tents.begin(), tents.end(), std::greater<>());
		for (std::size_t k = 0; k < s.levels && k < tents.size(); ++k) out[k * s.resolution + i] = tents[k];
	}
	return out;
}

std::vector<double> persistence_landscape(const PersistenceDiagram& pd, int dim, std::size_t resolution,
                                          std::size_t levels) {
	return persistence_landscape(pd, fit_landscape_scheme(std::span(&pd, 1), dim, resolution, levels));
}

// ---------------------------------------------------------------------------

ScalarSummaries scalar_summaries(const PersistenceDiagram& pd, int dim) {
	auto life = pd.finite_lifespans(dim);
	std::sort(life.begin(), life.end(), std::greater<>());
	ScalarSummaries s;
	s.cardinality = life.size();
	for (double l : life) s.total_lifespan += l;
	if (!life.empty()) s.max_lifespan = life[0];
	if (life.size() >= 2) s.second_longest_lifespan = life[1];
	return s;
}

// ---------------------------------------------------------------------------

std::string SignatureConfig::describe() const {
	std::ostringstream os;
	switch (kind) {
	case SignatureKind::lifespans:
		os << "lifespans(dim=" << dim << ", k=" << (k == 0 ? std::string("all") : std::to_string(k)) << ")";
		break;
	case SignatureKind::image:
		os << "image(dim=" << dim << ", res=" << resolution << ", sigma=" << sigma << ", w=" << to_string(weight)
		   << ")";
		break;
	case SignatureKind::landscape:
		os << "landscape(dim=" << dim << ", res=" << resolution << ", longest="
		   << (longest ? std::to_string(*longest) : std::string("all")) << ")";
		break;
	}
	return os.str();
}

std::vector<double> SignatureScheme::operator()(const PersistenceDiagram& pd) const {
	switch (config.kind) {
	case SignatureKind::lifespans: return lifespans_topk(pd, config.dim, length);
	case SignatureKind::image: return persistence_image(pd, image);
	case SignatureKind::landscape: return persistence_landscape(pd, landscape);
	}
	throw std::logic_error("unknown signature kind");
}

SignatureScheme fit_signature(const SignatureConfig& config, std::span<const PersistenceDiagram> train) {
	SignatureScheme s;
	s.config = config;
	switch (config.kind) {
	case SignatureKind::lifespans:
		if (config.k > 0) {
			s.length = config.k;
		} else {
			s.length = 1;
			for (const auto& pd : train) s.length = std::max(s.length, pd.finite_lifespans(config.dim).size());
		}
		break;
	case SignatureKind::image:
		s.image = fit_image_scheme(train, config.dim, config.resolution, config.sigma, config.weight);
		s.length = config.resolution * config.resolution;
		break;
	case SignatureKind::landscape: {
		const std::size_t levels = config.longest ? std::min<std::size_t>(*config.longest, 10) : 10;
		s.landscape = fit_landscape_scheme(train, config.dim, config.resolution, levels, config.longest);
		s.length = levels * config.resolution;
		break;
	}
	}
	return s;
}

std::vector<SignatureConfig> signature_grid(int dim) {
	std::vector<SignatureConfig> grid;
	for (double sigma : {0.1, 0.5, 1.0, 10.0})
		for (auto w : {ImageWeight::constant, ImageWeight::linear, ImageWeight::quadratic}) {
			SignatureConfig c;
			c.kind = SignatureKind::image;
			c.dim = dim;
			c.resolution = 10;
			c.sigma = sigma;
			c.weight = w;
			grid.push_back(c);
		}
	for (std::optional<std::size_t> longest : {std::optional<std::size_t>(1), std::optional<std::size_t>(10),
	                                            std::optional<std::size_t>()}) {
		SignatureConfig c;
		c.kind = SignatureKind::landscape;
		c.dim = dim;
		c.resolution = 100;
		c.longest = longest;
		grid.push_back(c);
	}
	SignatureConfig c;
	c.kind = SignatureKind::lifespans;
	c.dim = dim;
	c.k = 10;
	grid.push_back(c);
	return grid;
}

} // namespace tdalab
