#include "tdalab/io.hpp"
#include "tdalab/pipelines.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace tdalab;

namespace {

struct Global {
	std::optional<std::uint64_t> seed;
	std::size_t jobs = 1;
	std::optional<std::size_t> grid_side;
	std::optional<std::size_t> subsample;
	std::string signature = "lifespans";
	bool paper_scale = false;
	std::string format = "csv";
};

std::uint64_t resolve_seed(const Global& g) {
	if (g.seed) return *g.seed;
	if (const char* env = std::getenv("TDA_LAB_SEED")) {
		try {
			std::size_t used = 0;
			const auto v = std::stoull(env, &used);
			if (used == std::strlen(env)) return v;
		} catch (const std::exception&) {
		}
		throw std::runtime_error(std::string("TDA_LAB_SEED is not an unsigned integer: ") + env);
	}
	return 0;
}

// Parsed flags that affect results; --jobs and output paths are left out.
nlohmann::json cli_echo(const Global& g, std::uint64_t seed) {
	nlohmann::json j{{"seed", seed}, {"signature", g.signature}, {"paper_scale", g.paper_scale}};
	j["grid_side"] = g.grid_side ? nlohmann::json(*g.grid_side) : nlohmann::json(nullptr);
	j["subsample"] = g.subsample ? nlohmann::json(*g.subsample) : nlohmann::json(nullptr);
	return j;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
	std::string kind;
	fs::path out;
	std::optional<std::size_t> clouds_per_shape;
	std::optional<std::size_t> points;
	std::optional<std::size_t> test_clouds;
	std::optional<std::size_t> per_label;
	std::optional<std::size_t> count;
	std::string convexity_kind = "both";
};

void cmd_generate(const Global& g, const GenerateArgs& a) {
	const auto seed = resolve_seed(g);
	auto config_echo = [&](nlohmann::json knobs) {
		// Output paths stay out of the manifest so reruns are byte-identical.
		knobs["seed"] = seed;
		knobs["paper_scale"] = g.paper_scale;
		return knobs;
	};
	if (a.kind == "holes") {
		const std::size_t per = a.clouds_per_shape.value_or(g.paper_scale ? 50 : 10);
		const std::size_t pts = a.points.value_or(g.paper_scale ? 1000 : 300);
		const auto ds = gen_holes_dataset(per, pts, seed);
		io::write_dataset(a.out, ds, config_echo({{"clouds_per_shape", per}, {"points", pts}}));
		std::cerr << "wrote " << ds.size() << " clouds to " << a.out.string() << "\n";
	} else if (a.kind == "curvature") {
		CurvatureDataConfig c;
		c.clouds_per_kappa = a.clouds_per_shape.value_or(g.paper_scale ? 10 : 3);
		c.points_per_cloud = a.points.value_or(g.paper_scale ? 500 : 200);
		c.test_clouds = a.test_clouds.value_or(g.paper_scale ? 100 : 30);
		const auto [train, test] = gen_curvature_dataset(c, seed);
		const auto echo = config_echo({{"clouds_per_kappa", c.clouds_per_kappa},
		                               {"points", c.points_per_cloud},
		                               {"test_clouds", c.test_clouds}});
		io::write_dataset(a.out / "train", train, echo);
		io::write_dataset(a.out / "test", test, echo);
		std::cerr << "wrote " << train.size() << " train and " << test.size() << " test clouds to "
		          << a.out.string() << "\n";
	} else if (a.kind == "convexity") {
		ConvexityDataConfig c;
		c.clouds_per_regular_shape = a.clouds_per_shape.value_or(60);
		c.random_per_label = a.per_label.value_or(240);
		c.points_per_cloud = a.points.value_or(g.paper_scale ? 5000 : 1000);
		const auto echo = config_echo({{"clouds_per_regular_shape", c.clouds_per_regular_shape},
		                               {"random_per_label", c.random_per_label},
		                               {"points", c.points_per_cloud}});
		auto one = [&](ConvexityKind kind, const fs::path& dir) {
			const auto ds = gen_convexity_dataset(kind, c, seed);
			io::write_dataset(dir, ds, echo);
			std::cerr << "wrote " << ds.size() << " " << to_string(kind) << " clouds to " << dir.string() << "\n";
		};
		if (a.convexity_kind == "both") {
			one(ConvexityKind::regular, a.out / "regular");
			one(ConvexityKind::random, a.out / "random");
		} else {
			one(parse_convexity_kind(a.convexity_kind), a.out);
		}
	} else if (a.kind == "masks") {
		const std::size_t n = a.count.value_or(200);
		const std::size_t side = g.grid_side.value_or(30);
		const auto ds = gen_mask_dataset(n, side, seed);
		io::write_dataset(a.out, ds, config_echo({{"count", n}, {"side", side}}));
		std::cerr << "wrote " << ds.size() << " masks to " << a.out.string() << "\n";
	} else {
		throw std::invalid_argument("unknown dataset kind " + a.kind);
	}
}

// ---------------------------------------------------------------------------
// ph

struct PhArgs {
	fs::path input;
	std::string output;
	std::optional<fs::path> svg;
	std::optional<fs::path> complex_dump;
	std::string filtration;
	std::string line = "bottom";
	std::vector<double> direction{0.0, 1.0};
	int max_dim = 1;
	double dtm_mass = 0.03;
	std::optional<double> r_max;
	bool force = false;
};

const std::map<std::string, std::size_t>& line_names() {
	static const std::map<std::string, std::size_t> names{
	    {"bottom", 0}, {"center-h", 1}, {"top", 2},          {"left", 3},          {"center-v", 4},
	    {"right", 5},  {"diagonal", 6}, {"antidiagonal", 7}, {"diagonal-45", 8}};
	return names;
}

bool is_mask_path(const fs::path& p) { return p.extension() == ".pbm"; }

std::string diagram_json(const PersistenceDiagram& pd) {
	nlohmann::json rows = nlohmann::json::array();
	for (const auto& iv : pd.intervals()) {
		rows.push_back({{"dim", iv.dim},
		                {"birth", io::format_double(iv.birth)},
		                {"death", io::format_double(iv.death)}});
	}
	return nlohmann::json{{"intervals", rows}}.dump(2) + "\n";
}

void cmd_ph(const Global& g, const PhArgs& a) {
	const bool mask_input = is_mask_path(a.input) || a.filtration == "tubular" || a.filtration == "height" ||
	                        a.filtration == "abs-height";
	std::string filtration = a.filtration;
	if (filtration.empty()) filtration = mask_input ? "tubular" : "rips";

	PersistenceDiagram pd;
	if (mask_input) {
		auto mask = io::read_mask(a.input);
		if (g.grid_side) mask = resample(mask, *g.grid_side);
		if (mask.count() == 0) throw std::runtime_error(a.input.string() + ": mask has no occupied cells");
		std::optional<CellFunction> fn;
		if (filtration == "tubular") {
			const auto it = line_names().find(a.line);
			if (it == line_names().end()) throw std::invalid_argument("unknown line " + a.line);
			fn = TubularFunction{default_lines(mask).lines.at(it->second)};
		} else if (filtration == "height" || filtration == "abs-height") {
			if (a.direction.size() != 2) throw std::invalid_argument("--direction needs two components");
			const Point2 d{a.direction[0], a.direction[1]};
			if (filtration == "height")
				fn = HeightFunction{d};
			else
				fn = AbsoluteHeightFunction{d};
		} else {
			throw std::invalid_argument("filtration " + filtration + " does not apply to masks");
		}
		const auto grid = cubical_complex(mask, *fn);
		pd = compute_ph(grid, a.max_dim);
	} else {
		auto cloud = io::read_cloud_csv(a.input);
		std::vector<std::size_t> keep(cloud.size());
		for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
		if (g.subsample && *g.subsample < cloud.size())
			keep = farthest_point_indices(cloud, *g.subsample, resolve_seed(g));
		const auto full = euclidean_distance_matrix(cloud);
		const auto matrix = full.submatrix(keep);
		std::vector<double> weights;
		if (filtration == "weighted") {
			weights = dtm(full, keep, a.dtm_mass);
		} else if (filtration != "rips") {
			throw std::invalid_argument("filtration " + filtration + " does not apply to point clouds");
		}
		RipsOptions opt;
		opt.max_dim = a.max_dim + 1;
		opt.r_max = a.r_max;
		opt.force = a.force;
		if (a.complex_dump || a.r_max) {
			const auto complex = weights.empty() ? rips_complex(matrix, opt) : weighted_rips_complex(matrix, weights, opt);
			if (a.complex_dump) {
				std::ofstream out(*a.complex_dump);
				if (!out) throw std::runtime_error("cannot write " + a.complex_dump->string());
				io::write_complex_csv(out, complex);
			}
			pd = compute_ph(complex, a.max_dim);
		} else {
			if (a.max_dim > 1) throw std::invalid_argument("point-cloud diagrams support --max-dim 0 or 1");
			pd = rips_persistence(matrix, weights, a.max_dim, a.force);
		}
	}

	std::string text;
	if (g.format == "json") {
		text = diagram_json(pd);
	} else {
		std::ostringstream os;
		io::write_diagram_csv(os, pd);
		text = os.str();
	}
	if (a.output == "-")
		std::cout << text;
	else
		io::write_text(a.output, text);
	if (a.svg) io::write_text(*a.svg, io::diagram_svg(pd));
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
	std::string experiment;
	fs::path data;
	fs::path output = "report.json";
	std::string features;
};

std::optional<SignatureKind> signature_family(const std::string& s) {
	if (s == "pi") return SignatureKind::image;
	if (s == "pl") return SignatureKind::landscape;
	return std::nullopt;
}

void require_generator(const fs::path& dir, const std::string& prefix) {
	const auto m = io::read_manifest(dir);
	const auto gen = m.value("generator", "");
	if (gen.rfind(prefix, 0) != 0)
		throw std::runtime_error(dir.string() + ": manifest generator '" + gen + "' does not match experiment (" +
		                         prefix + ")");
}

void print_summary(const Global& g, const ExperimentReport& r) {
	if (g.format == "json") {
		nlohmann::json rows = nlohmann::json::array();
		for (const auto& reg : r.regimes) rows.push_back({{"name", reg.name}, {"metric", reg.metric}, {"value", reg.value}});
		std::cout << rows.dump(2) << "\n";
		return;
	}
	std::size_t w = 6;
	for (const auto& reg : r.regimes) w = std::max(w, reg.name.size());
	std::cout << std::left << std::setw(static_cast<int>(w)) << "regime" << "  " << std::setw(8) << "metric"
	          << "  value\n";
	for (const auto& reg : r.regimes) {
		std::cout << std::left << std::setw(static_cast<int>(w)) << reg.name << "  " << std::setw(8) << reg.metric
		          << "  " << std::fixed << std::setprecision(4) << reg.value << "\n";
	}
	std::cout.unsetf(std::ios::floatfield);
}

void cmd_run(const Global& g, const RunArgs& a) {
	const auto seed = resolve_seed(g);
	const bool tuned = g.signature != "lifespans";
	ExperimentReport report;
	if (a.experiment == "holes") {
		require_generator(a.data, "holes");
		HolesConfig c;
		c.jobs = g.jobs;
		if (g.subsample) c.subsample = *g.subsample;
		c.features = tuned ? FeatureMode::tuned : FeatureMode::simple;
		c.tuned_kind = signature_family(g.signature);
		report = holes_pipeline(io::read_cloud_dataset(a.data), c, seed);
	} else if (a.experiment == "curvature") {
		require_generator(a.data / "train", "curvature-train");
		require_generator(a.data / "test", "curvature-test");
		CurvatureConfig c;
		c.jobs = g.jobs;
		if (tuned) c.variants = {CurvatureVariant::tuned};
		c.tuned_kind = signature_family(g.signature);
		report = curvature_pipeline(io::read_polar_dataset(a.data / "train"), io::read_polar_dataset(a.data / "test"),
		                            c, seed);
	} else if (a.experiment == "convexity") {
		require_generator(a.data / "regular", "convexity-regular");
		require_generator(a.data / "random", "convexity-random");
		ConvexityConfig c;
		c.jobs = g.jobs;
		if (g.grid_side) c.grid_side = *g.grid_side;
		report = convexity_experiment(io::read_cloud_dataset(a.data / "regular"),
		                              io::read_cloud_dataset(a.data / "random"), c, seed);
	} else if (a.experiment == "convexity-measure") {
		require_generator(a.data, "masks");
		ConvexityRegressionConfig c;
		c.jobs = g.jobs;
		if (g.grid_side) c.grid_side = *g.grid_side;
		report = convexity_regression(io::read_mask_dataset(a.data), c, seed);
	} else {
		throw std::invalid_argument("unknown experiment " + a.experiment);
	}
	report.config["cli"] = cli_echo(g, seed);
	report.config["cli"]["experiment"] = a.experiment;
	report.config["cli"]["data"] = a.data.generic_string();
	for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
	io::write_text(a.output, io::to_json(report).dump(2) + "\n");
	print_summary(g, report);
	std::cerr << "report written to " << a.output.string() << " (" << std::fixed << std::setprecision(1)
	          << report.wall_seconds << " s)\n";
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Topological data analysis experiments: corpora, persistence diagrams, learning pipelines"};
	app.require_subcommand(1);
	app.fallthrough();
	Global g;

	app.add_option("--seed", g.seed, "Master seed (falls back to TDA_LAB_SEED, then 0)");
	app.add_option("--jobs", g.jobs, "Worker threads for per-item work")->check(CLI::PositiveNumber);
	app.add_option("--grid-side", g.grid_side, "Raster side for masks (convexity 20, convexity-measure 30)")
	    ->check(CLI::PositiveNumber);
	app.add_option("--subsample", g.subsample, "Farthest-point subsample size")->check(CLI::Range(2, 1 << 20));
	app.add_option("--signature", g.signature, "Diagram features")
	    ->check(CLI::IsMember({"lifespans", "pi", "pl", "auto"}));
	app.add_flag("--paper-scale", g.paper_scale, "Use the full-size corpora");
	app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

	GenerateArgs gen;
	auto* generate = app.add_subcommand("generate", "Write a dataset directory (manifest.json + item files)");
	generate->add_option("dataset", gen.kind, "holes | curvature | convexity | masks")
	    ->required()
	    ->check(CLI::IsMember({"holes", "curvature", "convexity", "masks"}));
	generate->add_option("-o,--out", gen.out, "Output directory")->required();
	generate->add_option("--clouds-per-shape", gen.clouds_per_shape, "Clouds per shape (per kappa for curvature)");
	generate->add_option("--points", gen.points, "Points per cloud");
	generate->add_option("--test-clouds", gen.test_clouds, "Curvature test clouds");
	generate->add_option("--per-label", gen.per_label, "Random convexity polygons per label");
	generate->add_option("--count", gen.count, "Number of masks");
	generate->add_option("--kind", gen.convexity_kind, "Convexity corpus: regular | random | both")
	    ->check(CLI::IsMember({"regular", "random", "both"}));

	PhArgs ph;
	auto* ph_cmd = app.add_subcommand("ph", "Persistence diagram of a cloud CSV or a mask (PBM or 0/1 CSV)");
	ph_cmd->add_option("input", ph.input, "Input file")->required()->check(CLI::ExistingFile);
	ph_cmd->add_option("-o,--output", ph.output, "Diagram file, '-' for stdout")->required();
	ph_cmd->add_option("--svg", ph.svg, "Also write a birth/death scatter");
	ph_cmd->add_option("--dump-complex", ph.complex_dump, "Write the filtered complex as CSV");
	ph_cmd->add_option("--filtration", ph.filtration, "rips | weighted | tubular | height | abs-height")
	    ->check(CLI::IsMember({"rips", "weighted", "tubular", "height", "abs-height"}));
	ph_cmd->add_option("--line", ph.line, "Tubular line from the occupied box")
	    ->check(CLI::IsMember({"bottom", "center-h", "top", "left", "center-v", "right", "diagonal", "antidiagonal",
	                           "diagonal-45"}));
	ph_cmd->add_option("--direction", ph.direction, "Height direction x y")->expected(2);
	ph_cmd->add_option("--max-dim", ph.max_dim, "Largest homology degree")->check(CLI::Range(0, 2));
	ph_cmd->add_option("--dtm-mass", ph.dtm_mass, "DTM mass for weighted Rips")->check(CLI::Range(0.0, 1.0));
	ph_cmd->add_option("--r-max", ph.r_max, "Truncate the Rips filtration");
	ph_cmd->add_flag("--force", ph.force, "Allow triangles on large clouds");

	RunArgs run;
	auto* run_cmd = app.add_subcommand("run", "Run an experiment on a generated dataset and write a report");
	run_cmd->add_option("experiment", run.experiment, "holes | curvature | convexity | convexity-measure")
	    ->required()
	    ->check(CLI::IsMember({"holes", "curvature", "convexity", "convexity-measure"}));
	run_cmd->add_option("-d,--data", run.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
	run_cmd->add_option("-o,--output", run.output, "Report JSON path");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e);
	}

	try {
		if (*generate)
			cmd_generate(g, gen);
		else if (*ph_cmd)
			cmd_ph(g, ph);
		else if (*run_cmd)
			cmd_run(g, run);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
