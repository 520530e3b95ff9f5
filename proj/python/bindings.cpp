#include "tdalab/io.hpp"
#include "tdalab/pipelines.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>

namespace py = pybind11;
using namespace tdalab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

PointCloud to_cloud(const Array& points) {
	if (points.ndim() != 2 || (points.shape(1) != 2 && points.shape(1) != 3))
		throw std::invalid_argument("points must be an (n, 2) or (n, 3) array");
	const auto n = static_cast<std::size_t>(points.shape(0) * points.shape(1));
	return PointCloud(static_cast<std::size_t>(points.shape(1)), std::vector<double>(points.data(), points.data() + n));
}

Array from_cloud(const PointCloud& cloud) {
	Array out({cloud.size(), cloud.dim()});
	std::copy(cloud.coords().begin(), cloud.coords().end(), out.mutable_data());
	return out;
}

// Image convention: row 0 is the top of the mask.
BinaryMask to_mask(const MaskArray& image) {
	if (image.ndim() != 2 || image.shape(0) != image.shape(1)) throw std::invalid_argument("mask must be square");
	const auto side = static_cast<std::size_t>(image.shape(0));
	std::vector<std::uint8_t> cells(side * side);
	auto r = image.unchecked<2>();
	for (std::size_t row = 0; row < side; ++row)
		for (std::size_t ix = 0; ix < side; ++ix)
			cells[(side - 1 - row) * side + ix] = r(static_cast<py::ssize_t>(row), static_cast<py::ssize_t>(ix)) ? 1 : 0;
	return BinaryMask(side, std::move(cells));
}

MaskArray from_mask(const BinaryMask& mask) {
	const auto side = mask.side();
	MaskArray out({side, side});
	auto w = out.mutable_unchecked<2>();
	for (std::size_t row = 0; row < side; ++row)
		for (std::size_t ix = 0; ix < side; ++ix)
			w(static_cast<py::ssize_t>(row), static_cast<py::ssize_t>(ix)) = mask.occupied(ix, side - 1 - row);
	return out;
}

Array from_diagram(const PersistenceDiagram& pd) {
	Array out({pd.size(), std::size_t{3}});
	double* p = out.mutable_data();
	for (const auto& iv : pd.intervals()) {
		*p++ = iv.dim;
		*p++ = iv.birth;
		*p++ = iv.death;
	}
	return out;
}

PersistenceDiagram to_diagram(const Array& rows) {
	if (rows.ndim() != 2 || rows.shape(1) != 3) throw std::invalid_argument("diagram must be an (n, 3) array");
	std::vector<Interval> iv;
	auto r = rows.unchecked<2>();
	for (py::ssize_t i = 0; i < rows.shape(0); ++i) iv.push_back({static_cast<int>(r(i, 0)), r(i, 1), r(i, 2)});
	return PersistenceDiagram(std::move(iv));
}

DistanceMatrix to_matrix(const Array& m) {
	if (m.ndim() != 2 || m.shape(0) != m.shape(1)) throw std::invalid_argument("distance matrix must be square");
	const auto n = static_cast<std::size_t>(m.shape(0));
	return DistanceMatrix(n, std::vector<double>(m.data(), m.data() + n * n));
}

Array from_matrix(const DistanceMatrix& m) {
	Array out({m.size(), m.size()});
	std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
	return out;
}

py::dict cloud_dataset(const CloudDataset& ds) {
	py::list items;
	for (const auto& c : ds.items) items.append(from_cloud(c));
	py::dict d;
	d["items"] = items;
	d["labels"] = ds.labels;
	d["shape_ids"] = ds.meta.shape_ids;
	return d;
}

std::string report_json(const ExperimentReport& r) { return io::to_json(r).dump(); }

} // namespace

PYBIND11_MODULE(_core, m) {
	m.doc() = "Persistent homology pipelines for point clouds and binary masks";

	// geometry
	m.def("euclidean_distance_matrix",
	      [](const Array& pts) { return from_matrix(euclidean_distance_matrix(to_cloud(pts))); }, py::arg("points"));
	m.def("dtm",
	      [](const Array& distances, double mass) {
		      const auto v = dtm(to_matrix(distances), mass);
		      return Array(static_cast<py::ssize_t>(v.size()), v.data());
	      },
	      py::arg("distances"), py::arg("mass") = 0.03);
	m.def("farthest_point_indices",
	      [](const Array& pts, std::size_t k, std::uint64_t seed) { return farthest_point_indices(to_cloud(pts), k, seed); },
	      py::arg("points"), py::arg("k"), py::arg("seed") = 0);
	m.def("rasterize", [](const Array& pts, std::size_t side) { return from_mask(rasterize(to_cloud(pts), side)); },
	      py::arg("points"), py::arg("side") = 20);
	m.def("convexity_measure", [](const MaskArray& mask) { return convexity_measure(to_mask(mask)); }, py::arg("mask"));

	// persistence
	m.def("rips_persistence",
	      [](const Array& distances, std::optional<std::vector<double>> weights, int max_dim) {
		      const std::vector<double> w = weights.value_or(std::vector<double>{});
		      return from_diagram(rips_persistence(to_matrix(distances), w, max_dim));
	      },
	      py::arg("distances"), py::arg("weights") = py::none(), py::arg("max_dim") = 1,
	      "Diagram rows (dim, birth, death) of the (weighted) Rips filtration.");
	m.def("tubular_persistence",
	      [](const MaskArray& mask, std::string line) {
		      static const std::vector<std::string> names{"bottom",   "center-h", "top",          "left",       "center-v",
		                                                  "right",    "diagonal", "antidiagonal", "diagonal-45"};
		      const auto it = std::find(names.begin(), names.end(), line);
		      if (it == names.end()) throw std::invalid_argument("unknown line " + line);
		      const auto bm = to_mask(mask);
		      const auto lines = default_lines(bm);
		      const auto grid = cubical_complex(bm, TubularFunction{lines.lines[static_cast<std::size_t>(it - names.begin())]});
		      return from_diagram(compute_ph(grid, 1));
	      },
	      py::arg("mask"), py::arg("line") = "bottom");
	m.def("concavity_features",
	      [](const MaskArray& mask, bool normalize) { return concavity_features(to_mask(mask), normalize); },
	      py::arg("mask"), py::arg("normalize") = false);

	// signatures
	m.def("lifespans_topk",
	      [](const Array& pd, int dim, std::size_t k) { return lifespans_topk(to_diagram(pd), dim, k); },
	      py::arg("diagram"), py::arg("dim"), py::arg("k"));
	m.def("persistence_image",
	      [](const Array& pd, int dim, std::size_t resolution, double sigma, const std::string& weight) {
		      return persistence_image(to_diagram(pd), dim, resolution, sigma, parse_image_weight(weight));
	      },
	      py::arg("diagram"), py::arg("dim"), py::arg("resolution") = 10, py::arg("sigma") = 0.1,
	      py::arg("weight") = "y");
	m.def("persistence_landscape",
	      [](const Array& pd, int dim, std::size_t resolution, std::size_t levels) {
		      return persistence_landscape(to_diagram(pd), dim, resolution, levels);
	      },
	      py::arg("diagram"), py::arg("dim"), py::arg("resolution") = 100, py::arg("levels") = 5);

	// datasets
	m.def("gen_holes_dataset",
	      [](std::size_t per_shape, std::size_t points, std::uint64_t seed) {
		      return cloud_dataset(gen_holes_dataset(per_shape, points, seed));
	      },
	      py::arg("clouds_per_shape") = 10, py::arg("points") = 300, py::arg("seed") = 0);
	m.def("gen_convexity_dataset",
	      [](const std::string& kind, std::size_t points, std::uint64_t seed) {
		      ConvexityDataConfig c;
		      c.points_per_cloud = points;
		      return cloud_dataset(gen_convexity_dataset(parse_convexity_kind(kind), c, seed));
	      },
	      py::arg("kind") = "regular", py::arg("points") = 1000, py::arg("seed") = 0);
	m.def("sample_constant_curvature_disk",
	      [](double kappa, std::size_t n, std::uint64_t seed) {
		      const auto c = sample_constant_curvature_disk(kappa, n, seed);
		      Array out({c.size(), std::size_t{2}});
		      double* p = out.mutable_data();
		      for (const auto& q : c.coords()) {
			      *p++ = q.rho;
			      *p++ = q.phi;
		      }
		      return out;
	      },
	      py::arg("kappa"), py::arg("n"), py::arg("seed") = 0, "Rows (rho, phi) in geodesic polar coordinates.");

	// experiments; reports come back as JSON text
	m.def("run_holes",
	      [](const std::string& data_dir, std::uint64_t seed, std::size_t jobs) {
		      HolesConfig c;
		      c.jobs = jobs;
		      return report_json(holes_pipeline(io::read_cloud_dataset(data_dir), c, seed));
	      },
	      py::arg("data_dir"), py::arg("seed") = 0, py::arg("jobs") = 1);
	m.def("run_convexity",
	      [](std::uint64_t seed, std::size_t points, std::size_t jobs) {
		      ConvexityConfig c;
		      c.data.points_per_cloud = points;
		      c.jobs = jobs;
		      return report_json(convexity_experiment(c, seed));
	      },
	      py::arg("seed") = 0, py::arg("points") = 1000, py::arg("jobs") = 1);
	m.def("run_convexity_measure",
	      [](std::size_t count, std::uint64_t seed) {
		      return report_json(convexity_regression(gen_mask_dataset(count, 30, seed), {}, seed));
	      },
	      py::arg("count") = 200, py::arg("seed") = 0);
}
