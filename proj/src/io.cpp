#include "tdalab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace tdalab::io {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line) {}

std::string format_double(double v) {
	if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
	if (std::isnan(v)) return "nan";
	char buf[64];
	auto r = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, r.ptr);
}

double parse_double(const std::string& text, const std::string& source, std::size_t line) {
	std::string t = text;
	t.erase(0, t.find_first_not_of(" \t\r"));
	t.erase(t.find_last_not_of(" \t\r") + 1);
	if (t == "inf" || t == "+inf" || t == "Inf" || t == "infinity") return std::numeric_limits<double>::infinity();
	if (t == "-inf" || t == "-Inf" || t == "-infinity") return -std::numeric_limits<double>::infinity();
	double v = 0.0;
	const char* first = t.data();
	if (!t.empty() && t[0] == '+') ++first;
	auto r = std::from_chars(first, t.data() + t.size(), v);
	if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
		throw ParseError(source, line, "not a number: '" + text + "'");
	return v;
}

std::string read_text(const fs::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw std::runtime_error("cannot open " + path.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
	if (path.has_parent_path()) fs::create_directories(path.parent_path());
	if (fs::exists(path) && !fs::is_regular_file(path)) {
		// Devices and pipes cannot be replaced by rename.
		std::ofstream out(path, std::ios::binary);
		if (!(out << text)) throw std::runtime_error("write failed for " + path.string());
		return;
	}
	const fs::path tmp = path.string() + ".tmp";
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out) throw std::runtime_error("cannot write " + path.string());
		out << text;
		if (!out) throw std::runtime_error("write failed for " + path.string());
	}
	fs::rename(tmp, path);
}

namespace {

std::ifstream open_in(const fs::path& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open " + path.string());
	return in;
}

std::vector<std::string> split_csv(const std::string& line) {
	std::vector<std::string> out;
	std::string cur;
	for (char ch : line) {
		if (ch == ',') {
			out.push_back(cur);
			cur.clear();
		} else if (ch != '\r') {
			cur.push_back(ch);
		}
	}
	out.push_back(cur);
	return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

} // namespace

// ---------------------------------------------------------------------------

PointCloud parse_cloud_csv(std::istream& in, const std::string& source) {
	std::vector<double> coords;
	std::size_t dim = 0, lineno = 0;
	std::string line;
	while (std::getline(in, line)) {
		++lineno;
		if (blank(line)) continue;
		const auto fields = split_csv(line);
		if (fields.size() != 2 && fields.size() != 3)
			throw ParseError(source, lineno, "expected 2 or 3 coordinates, got " + std::to_string(fields.size()));
		if (dim == 0) dim = fields.size();
		if (fields.size() != dim) throw ParseError(source, lineno, "inconsistent point dimension");
		for (const auto& f : fields) {
			const double v = parse_double(f, source, lineno);
			if (!std::isfinite(v)) throw ParseError(source, lineno, "non-finite coordinate");
			coords.push_back(v);
		}
	}
	if (dim == 0) throw ParseError(source, 0, "no points");
	return PointCloud(dim, std::move(coords));
}

PointCloud read_cloud_csv(const fs::path& path) {
	auto in = open_in(path);
	return parse_cloud_csv(in, path.string());
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
	for (std::size_t i = 0; i < cloud.size(); ++i) {
		for (std::size_t a = 0; a < cloud.dim(); ++a) out << (a ? "," : "") << format_double(cloud.coord(i, a));
		out << '\n';
	}
}

void write_cloud_csv(const fs::path& path, const PointCloud& cloud) {
	std::ostringstream ss;
	write_cloud_csv(ss, cloud);
	write_text(path, ss.str());
}

PolarCloud read_polar_csv(const fs::path& path, double curvature) {
	auto in = open_in(path);
	std::vector<PolarPoint> pts;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (blank(line)) continue;
		const auto f = split_csv(line);
		if (f.size() != 2) throw ParseError(path.string(), lineno, "expected rho,phi");
		pts.push_back({parse_double(f[0], path.string(), lineno), parse_double(f[1], path.string(), lineno)});
	}
	try {
		return PolarCloud(std::move(pts), curvature);
	} catch (const std::invalid_argument& e) {
		throw ParseError(path.string(), 0, e.what());
	}
}

void write_polar_csv(const fs::path& path, const PolarCloud& cloud) {
	std::ostringstream ss;
	for (const auto& p : cloud.coords()) ss << format_double(p.rho) << ',' << format_double(p.phi) << '\n';
	write_text(path, ss.str());
}

// ---------------------------------------------------------------------------

namespace {

// Rows are given top to bottom; the mask is padded to a centered square.
BinaryMask mask_from_rows(const std::vector<std::vector<std::uint8_t>>& rows, std::size_t width, Point2 origin,
                          double cell_width) {
	const std::size_t height = rows.size();
	const std::size_t side = std::max(width, height);
	const std::size_t ox = (side - width) / 2, oy = (side - height) / 2;
	std::vector<std::uint8_t> cells(side * side, 0);
	for (std::size_t r = 0; r < height; ++r)
		for (std::size_t c = 0; c < width; ++c) {
			const std::size_t iy = side - 1 - (oy + r);
			cells[iy * side + ox + c] = rows[r][c];
		}
	return BinaryMask(side, std::move(cells), origin, cell_width);
}

} // namespace

BinaryMask parse_pbm(std::istream& in, const std::string& source) {
	std::size_t lineno = 0;
	std::string line;
	std::vector<std::size_t> header;
	std::vector<std::uint8_t> bits;
	std::vector<std::size_t> bit_lines;
	bool magic = false;
	Point2 origin{0.0, 0.0};
	double cell_width = 1.0;
	while (std::getline(in, line)) {
		++lineno;
		const auto hash = line.find('#');
		if (hash != std::string::npos) {
			std::istringstream meta(line.substr(hash + 1));
			std::string key;
			double x, y, h;
			if (meta >> key && key == "origin" && meta >> x >> y >> key >> h && key == "cell_width") {
				origin = {x, y};
				cell_width = h;
			}
			line.erase(hash);
		}
		std::istringstream ss(line);
		std::string tok;
		while (ss >> tok) {
			if (!magic) {
				if (tok != "P1") throw ParseError(source, lineno, "expected plain PBM magic 'P1'");
				magic = true;
			} else if (header.size() < 2) {
				std::size_t v = 0;
				auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
				if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || v == 0)
					throw ParseError(source, lineno, "bad dimension '" + tok + "'");
				header.push_back(v);
			} else {
				for (char ch : tok) {
					if (ch != '0' && ch != '1') throw ParseError(source, lineno, "bad pixel '" + std::string(1, ch) + "'");
					bits.push_back(ch == '1');
					bit_lines.push_back(lineno);
				}
			}
		}
	}
	if (!magic) throw ParseError(source, 0, "empty file");
	if (header.size() < 2) throw ParseError(source, lineno, "missing width/height");
	const std::size_t w = header[0], h = header[1];
	if (bits.size() != w * h)
		throw ParseError(source, bits.size() > w * h ? bit_lines[w * h] : lineno,
		                 "expected " + std::to_string(w * h) + " pixels, got " + std::to_string(bits.size()));
	std::vector<std::vector<std::uint8_t>> rows(h, std::vector<std::uint8_t>(w));
	for (std::size_t r = 0; r < h; ++r)
		for (std::size_t c = 0; c < w; ++c) rows[r][c] = bits[r * w + c];
	return mask_from_rows(rows, w, origin, cell_width);
}

BinaryMask parse_grid_csv(std::istream& in, const std::string& source) {
	std::vector<std::vector<std::uint8_t>> rows;
	std::size_t width = 0, lineno = 0;
	std::string line;
	while (std::getline(in, line)) {
		++lineno;
		if (blank(line)) continue;
		const auto f = split_csv(line);
		if (width == 0) width = f.size();
		if (f.size() != width) throw ParseError(source, lineno, "ragged row");
		std::vector<std::uint8_t> row;
		for (auto s : f) {
			s.erase(0, s.find_first_not_of(" \t"));
			s.erase(s.find_last_not_of(" \t") + 1);
			if (s != "0" && s != "1") throw ParseError(source, lineno, "cells must be 0 or 1, got '" + s + "'");
			row.push_back(s == "1");
		}
		rows.push_back(std::move(row));
	}
	if (rows.empty()) throw ParseError(source, 0, "empty grid");
	return mask_from_rows(rows, width, {0.0, 0.0}, 1.0);
}

BinaryMask read_mask(const fs::path& path) {
	auto in = open_in(path);
	const auto ext = path.extension().string();
	if (ext == ".pbm") return parse_pbm(in, path.string());
	if (ext == ".csv") return parse_grid_csv(in, path.string());
	throw std::runtime_error("unknown mask format: " + path.string());
}

void write_pbm(std::ostream& out, const BinaryMask& mask) {
	const std::size_t c = mask.side();
	out << "P1\n# origin " << format_double(mask.origin().x) << ' ' << format_double(mask.origin().y)
	    << " cell_width " << format_double(mask.cell_width()) << '\n'
	    << c << ' ' << c << '\n';
	for (std::size_t r = 0; r < c; ++r) {
		const std::size_t iy = c - 1 - r;
		for (std::size_t ix = 0; ix < c; ++ix) {
			if (ix && ix % 70 == 0) out << '\n';
			out << (mask.occupied(ix, iy) ? '1' : '0');
		}
		out << '\n';
	}
}

void write_pbm(const fs::path& path, const BinaryMask& mask) {
	std::ostringstream ss;
	write_pbm(ss, mask);
	write_text(path, ss.str());
}

void write_grid_csv(const fs::path& path, const BinaryMask& mask) {
	std::ostringstream ss;
	const std::size_t c = mask.side();
	for (std::size_t r = 0; r < c; ++r) {
		for (std::size_t ix = 0; ix < c; ++ix) ss << (ix ? "," : "") << (mask.occupied(ix, c - 1 - r) ? '1' : '0');
		ss << '\n';
	}
	write_text(path, ss.str());
}

// ---------------------------------------------------------------------------

PersistenceDiagram parse_diagram_csv(std::istream& in, const std::string& source) {
	std::vector<Interval> out;
	std::size_t lineno = 0;
	std::string line;
	while (std::getline(in, line)) {
		++lineno;
		if (blank(line)) continue;
		if (lineno == 1 && line.rfind("dim", 0) == 0) continue;
		const auto f = split_csv(line);
		if (f.size() != 3) throw ParseError(source, lineno, "expected dim,birth,death");
		const double d = parse_double(f[0], source, lineno);
		if (d < 0 || d != std::floor(d) || d > 16) throw ParseError(source, lineno, "bad dimension");
		Interval iv{static_cast<int>(d), parse_double(f[1], source, lineno), parse_double(f[2], source, lineno)};
		if (!std::isfinite(iv.birth) || std::isnan(iv.death) || iv.death < iv.birth)
			throw ParseError(source, lineno, "invalid interval");
		out.push_back(iv);
	}
	try {
		return PersistenceDiagram(std::move(out));
	} catch (const std::invalid_argument& e) {
		throw ParseError(source, 0, e.what());
	}
}

PersistenceDiagram read_diagram_csv(const fs::path& path) {
	auto in = open_in(path);
	return parse_diagram_csv(in, path.string());
}

void write_diagram_csv(std::ostream& out, const PersistenceDiagram& pd) {
	out << "dim,birth,death\n";
	for (const auto& iv : pd.intervals())
		out << iv.dim << ',' << format_double(iv.birth) << ',' << format_double(iv.death) << '\n';
}

void write_diagram_csv(const fs::path& path, const PersistenceDiagram& pd) {
	std::ostringstream ss;
	write_diagram_csv(ss, pd);
	write_text(path, ss.str());
}

std::string diagram_svg(const PersistenceDiagram& pd) {
	double lo = 0.0, hi = 0.0;
	bool any = false, has_inf = false;
	for (const auto& iv : pd.intervals()) {
		lo = any ? std::min(lo, iv.birth) : iv.birth;
		hi = std::max(any ? hi : iv.birth, iv.finite() ? iv.death : iv.birth);
		has_inf |= !iv.finite();
		any = true;
	}
	if (!(hi > lo)) hi = lo + 1.0;
	const double size = 400.0, pad = 40.0;
	const double top = hi + (has_inf ? 0.1 * (hi - lo) : 0.0);
	auto sx = [&](double v) { return pad + (v - lo) / (top - lo) * size; };
	auto sy = [&](double v) { return pad + size - (v - lo) / (top - lo) * size; };
	const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
	std::ostringstream s;
	s << std::setprecision(6);
	s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\"" << size + 2 * pad
	  << "\">\n";
	s << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << size << "\" height=\"" << size
	  << "\" fill=\"none\" stroke=\"#888\"/>\n";
	s << "<line x1=\"" << sx(lo) << "\" y1=\"" << sy(lo) << "\" x2=\"" << sx(top) << "\" y2=\"" << sy(top)
	  << "\" stroke=\"#444\" stroke-dasharray=\"4 3\"/>\n";
	if (has_inf)
		s << "<line x1=\"" << pad << "\" y1=\"" << sy(top) << "\" x2=\"" << pad + size << "\" y2=\"" << sy(top)
		  << "\" stroke=\"#bbb\"/><text x=\"" << pad + 4 << "\" y=\"" << sy(top) - 4
		  << "\" font-size=\"11\">inf</text>\n";
	for (const auto& iv : pd.intervals()) {
		const double d = iv.finite() ? iv.death : top;
		s << "<circle cx=\"" << sx(iv.birth) << "\" cy=\"" << sy(d) << "\" r=\"3\" fill=\"" << colors[iv.dim % 3]
		  << "\"><title>H" << iv.dim << " (" << format_double(iv.birth) << ", " << format_double(iv.death)
		  << ")</title></circle>\n";
	}
	s << "<text x=\"" << pad + size / 2 << "\" y=\"" << size + 2 * pad - 8 << "\" font-size=\"12\">birth</text>\n";
	s << "<text x=\"8\" y=\"" << pad + size / 2 << "\" font-size=\"12\">death</text>\n";
	s << "</svg>\n";
	return s.str();
}

void write_complex_csv(std::ostream& out, const FilteredComplex& complex) {
	out << "dim,value,v0,v1,v2\n";
	for (const auto& s : complex.simplices()) {
		out << static_cast<int>(s.dim) << ',' << format_double(s.value);
		for (int i = 0; i <= s.dim; ++i) out << ',' << s.vertices[i];
		out << '\n';
	}
}

// ---------------------------------------------------------------------------

namespace {

std::string item_name(std::size_t i, const char* ext) {
	std::ostringstream s;
	s << std::setw(6) << std::setfill('0') << i << ext;
	return s.str();
}

template <class Item>
nlohmann::json base_manifest(const LabeledDataset<Item>& ds, const char* type, const nlohmann::json& config) {
	nlohmann::json m;
	m["format"] = "tdalab-dataset";
	m["version"] = 1;
	m["generator"] = ds.meta.generator;
	m["seed"] = ds.meta.master_seed;
	m["item_type"] = type;
	m["config"] = config.is_null() ? nlohmann::json::object() : config;
	m["labels"] = ds.labels;
	m["item_seeds"] = ds.meta.item_seeds;
	m["shape_ids"] = ds.meta.shape_ids;
	return m;
}

void finish(const fs::path& dir, const nlohmann::json& manifest) {
	write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

template <class Item>
void fill_meta(LabeledDataset<Item>& ds, const nlohmann::json& m) {
	ds.meta.generator = m.at("generator").get<std::string>();
	ds.meta.master_seed = m.at("seed").get<std::uint64_t>();
	ds.labels = m.at("labels").get<std::vector<double>>();
	if (m.contains("item_seeds")) ds.meta.item_seeds = m["item_seeds"].get<std::vector<std::uint64_t>>();
	if (m.contains("shape_ids")) ds.meta.shape_ids = m["shape_ids"].get<std::vector<std::string>>();
}

std::vector<std::string> files_of(const nlohmann::json& m, const char* type, const fs::path& dir) {
	if (m.value("format", "") != "tdalab-dataset") throw std::runtime_error(dir.string() + ": not a dataset manifest");
	if (m.value("item_type", "") != type)
		throw std::runtime_error(dir.string() + ": dataset holds " + m.value("item_type", "?") + " items, expected " +
		                         type);
	auto files = m.at("files").get<std::vector<std::string>>();
	if (files.size() != m.at("labels").size()) throw std::runtime_error(dir.string() + ": label/file count mismatch");
	return files;
}

} // namespace

nlohmann::json write_dataset(const fs::path& dir, const CloudDataset& ds, const nlohmann::json& config) {
	fs::create_directories(dir);
	auto m = base_manifest(ds, "cloud", config);
	std::vector<std::string> files;
	for (std::size_t i = 0; i < ds.size(); ++i) {
		files.push_back(item_name(i, ".csv"));
		write_cloud_csv(dir / files.back(), ds.items[i]);
	}
	m["files"] = files;
	finish(dir, m);
	return m;
}

nlohmann::json write_dataset(const fs::path& dir, const PolarDataset& ds, const nlohmann::json& config) {
	fs::create_directories(dir);
	auto m = base_manifest(ds, "polar", config);
	std::vector<std::string> files;
	std::vector<double> kappa;
	for (std::size_t i = 0; i < ds.size(); ++i) {
		files.push_back(item_name(i, ".csv"));
		write_polar_csv(dir / files.back(), ds.items[i]);
		kappa.push_back(ds.items[i].curvature());
	}
	m["files"] = files;
	m["curvatures"] = kappa;
	finish(dir, m);
	return m;
}

nlohmann::json write_dataset(const fs::path& dir, const MaskDataset& ds, const nlohmann::json& config) {
	fs::create_directories(dir);
	auto m = base_manifest(ds, "mask", config);
	std::vector<std::string> files;
	for (std::size_t i = 0; i < ds.size(); ++i) {
		files.push_back(item_name(i, ".pbm"));
		write_pbm(dir / files.back(), ds.items[i]);
	}
	m["files"] = files;
	finish(dir, m);
	return m;
}

nlohmann::json read_manifest(const fs::path& dir) {
	const auto path = dir / "manifest.json";
	try {
		return nlohmann::json::parse(read_text(path));
	} catch (const nlohmann::json::parse_error& e) {
		throw std::runtime_error(path.string() + ": " + e.what());
	}
}

CloudDataset read_cloud_dataset(const fs::path& dir) {
	const auto m = read_manifest(dir);
	CloudDataset ds;
	for (const auto& f : files_of(m, "cloud", dir)) ds.items.push_back(read_cloud_csv(dir / f));
	fill_meta(ds, m);
	return ds;
}

PolarDataset read_polar_dataset(const fs::path& dir) {
	const auto m = read_manifest(dir);
	PolarDataset ds;
	const auto files = files_of(m, "polar", dir);
	const auto kappa = m.at("curvatures").get<std::vector<double>>();
	if (kappa.size() != files.size()) throw std::runtime_error(dir.string() + ": curvature count mismatch");
	for (std::size_t i = 0; i < files.size(); ++i) ds.items.push_back(read_polar_csv(dir / files[i], kappa[i]));
	fill_meta(ds, m);
	return ds;
}

MaskDataset read_mask_dataset(const fs::path& dir) {
	const auto m = read_manifest(dir);
	MaskDataset ds;
	for (const auto& f : files_of(m, "mask", dir)) ds.items.push_back(read_mask(dir / f));
	fill_meta(ds, m);
	return ds;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const SignatureScheme& s) {
	const auto& c = s.config;
	nlohmann::json j{{"describe", c.describe()}, {"dim", c.dim}, {"length", s.length}};
	switch (c.kind) {
	case SignatureKind::lifespans: j["kind"] = "lifespans"; break;
	case SignatureKind::image:
		j["kind"] = "image";
		j["resolution"] = s.image.resolution;
		j["sigma"] = s.image.sigma;
		j["weight"] = to_string(s.image.weight);
		j["birth_range"] = {s.image.birth_min, s.image.birth_max};
		j["lifespan_max"] = s.image.lifespan_max;
		break;
	case SignatureKind::landscape:
		j["kind"] = "landscape";
		j["resolution"] = s.landscape.resolution;
		j["levels"] = s.landscape.levels;
		j["longest"] = s.landscape.longest ? nlohmann::json(*s.landscape.longest) : nlohmann::json("all");
		j["span"] = {s.landscape.t_min, s.landscape.t_max};
		break;
	}
	return j;
}

void write_signatures(const fs::path& path, const std::vector<std::string>& ids, const FeatureMatrix& values,
                      const SignatureScheme& scheme) {
	if (ids.size() != values.rows()) throw std::invalid_argument("write_signatures: id count mismatch");
	std::ostringstream ss;
	ss << "id";
	for (std::size_t j = 0; j < values.cols(); ++j) ss << ",f" << j;
	ss << '\n';
	for (std::size_t i = 0; i < values.rows(); ++i) {
		ss << ids[i];
		for (std::size_t j = 0; j < values.cols(); ++j) ss << ',' << format_double(values(i, j));
		ss << '\n';
	}
	write_text(path, ss.str());
	write_text(path.string() + ".json", to_json(scheme).dump(2) + "\n");
}

FeatureMatrix read_signatures(const fs::path& path, std::vector<std::string>* ids) {
	auto in = open_in(path);
	std::string line;
	std::size_t lineno = 0, cols = 0;
	std::vector<double> data;
	std::size_t rows = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (blank(line)) continue;
		const auto f = split_csv(line);
		if (lineno == 1) {
			cols = f.size() - 1;
			continue;
		}
		if (f.size() != cols + 1) throw ParseError(path.string(), lineno, "wrong field count");
		if (ids) ids->push_back(f[0]);
		for (std::size_t j = 1; j < f.size(); ++j) data.push_back(parse_double(f[j], path.string(), lineno));
		++rows;
	}
	return FeatureMatrix(rows, cols, std::move(data));
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json standardizer_json(const Standardizer& s) { return {{"mean", s.mean}, {"scale", s.scale}}; }
Standardizer standardizer_from(const nlohmann::json& j) {
	return {j.at("mean").get<std::vector<double>>(), j.at("scale").get<std::vector<double>>()};
}

} // namespace

nlohmann::json to_json(const Model& model) {
	return std::visit(
	    [](const auto& m) -> nlohmann::json {
		    using T = std::decay_t<decltype(m)>;
		    if constexpr (std::is_same_v<T, KnnModel>) {
			    return {{"kind", "knn"},
			            {"k", m.k},
			            {"mode", to_string(m.mode)},
			            {"standardization", standardizer_json(m.standardizer)},
			            {"train", {{"rows", m.train.rows()}, {"cols", m.train.cols()}, {"data", m.train.data()}}},
			            {"labels", m.labels}};
		    } else if constexpr (std::is_same_v<T, RidgeModel>) {
			    return {{"kind", "ridge"},
			            {"lambda", m.lambda},
			            {"weights", m.fit_result.weights},
			            {"intercept", m.fit_result.intercept},
			            {"standardization", standardizer_json(m.standardizer)}};
		    } else {
			    return {{"kind", "threshold"},
			            {"threshold", m.threshold},
			            {"label_above", m.label_above},
			            {"label_below", m.label_below}};
		    }
	    },
	    model);
}

Model model_from_json(const nlohmann::json& j) {
	const auto kind = j.at("kind").get<std::string>();
	if (kind == "knn") {
		KnnModel m;
		m.k = j.at("k").get<std::size_t>();
		const auto mode = j.at("mode").get<std::string>();
		if (mode != "classify" && mode != "regress") throw std::runtime_error("model: unknown k-NN mode " + mode);
		m.mode = mode == "classify" ? TaskMode::classify : TaskMode::regress;
		m.standardizer = standardizer_from(j.at("standardization"));
		const auto& t = j.at("train");
		m.train = FeatureMatrix(t.at("rows").get<std::size_t>(), t.at("cols").get<std::size_t>(),
		                        t.at("data").get<std::vector<double>>());
		m.labels = j.at("labels").get<std::vector<double>>();
		return m;
	}
	if (kind == "ridge") {
		RidgeModel m;
		m.lambda = j.at("lambda").get<double>();
		m.fit_result.weights = j.at("weights").get<std::vector<double>>();
		m.fit_result.intercept = j.at("intercept").get<double>();
		m.standardizer = standardizer_from(j.at("standardization"));
		return m;
	}
	if (kind == "threshold")
		return ThresholdModel{j.at("threshold").get<double>(), j.at("label_above").get<double>(),
		                      j.at("label_below").get<double>()};
	throw std::runtime_error("model: unknown kind " + kind);
}

nlohmann::json to_json(const ExperimentReport& r) {
	nlohmann::json regimes = nlohmann::json::array(), items = nlohmann::json::array();
	for (const auto& g : r.regimes) regimes.push_back({{"name", g.name}, {"metric", g.metric}, {"value", g.value}});
	for (const auto& it : r.items)
		items.push_back({{"id", it.id}, {"label", it.label}, {"prediction", it.prediction}, {"regime", it.regime}});
	return {{"experiment", r.experiment}, {"config", r.config},     {"seed", r.seed},
	        {"regimes", regimes},         {"items", items},         {"warnings", r.warnings}};
}

ExperimentReport report_from_json(const nlohmann::json& j) {
	ExperimentReport r;
	r.experiment = j.at("experiment").get<std::string>();
	r.config = j.at("config");
	r.seed = j.at("seed").get<std::uint64_t>();
	for (const auto& g : j.at("regimes"))
		r.regimes.push_back({g.at("name").get<std::string>(), g.at("metric").get<std::string>(), g.at("value").get<double>()});
	for (const auto& it : j.at("items"))
		r.items.push_back({it.at("id").get<std::string>(), it.at("label").get<double>(), it.at("prediction").get<double>(),
		                   it.value("regime", std::string())});
	if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
	return r;
}

} // namespace tdalab::io
