#pragma once

#include "tdalab/complex.hpp"
#include "tdalab/datagen.hpp"
#include "tdalab/learn.hpp"
#include "tdalab/persistence.hpp"
#include "tdalab/pipelines.hpp"
#include "tdalab/signatures.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdalab::io {

namespace fs = std::filesystem;

/// Malformed input; `line` is 1-based (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
	ParseError(const std::string& source, std::size_t line, const std::string& what);
	std::size_t line() const { return line_; }

private:
	std::size_t line_;
};

/// Shortest decimal form that reads back to the same double; "inf"/"-inf" for infinities.
std::string format_double(double v);
double parse_double(const std::string& text, const std::string& source, std::size_t line);

// Point clouds: one point per row, x,y[,z], no header.
PointCloud parse_cloud_csv(std::istream& in, const std::string& source = "<stream>");
PointCloud read_cloud_csv(const fs::path& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv(const fs::path& path, const PointCloud& cloud);

// Polar clouds: rho,phi per row. Curvature is stored alongside (manifest).
PolarCloud read_polar_csv(const fs::path& path, double curvature);
void write_polar_csv(const fs::path& path, const PolarCloud& cloud);

// Masks: plain PBM (P1) or CSV grids of 0/1. Row 0 is the top row.
BinaryMask parse_pbm(std::istream& in, const std::string& source = "<stream>");
BinaryMask parse_grid_csv(std::istream& in, const std::string& source = "<stream>");
/// Dispatches on the extension: .pbm or .csv.
BinaryMask read_mask(const fs::path& path);
void write_pbm(std::ostream& out, const BinaryMask& mask);
void write_pbm(const fs::path& path, const BinaryMask& mask);
void write_grid_csv(const fs::path& path, const BinaryMask& mask);

// Diagrams: header `dim,birth,death`, rows sorted by (dim, birth, death).
PersistenceDiagram parse_diagram_csv(std::istream& in, const std::string& source = "<stream>");
PersistenceDiagram read_diagram_csv(const fs::path& path);
void write_diagram_csv(std::ostream& out, const PersistenceDiagram& pd);
void write_diagram_csv(const fs::path& path, const PersistenceDiagram& pd);

/// Scatter of (birth, death) with the diagonal; infinite deaths drawn on a top rail.
std::string diagram_svg(const PersistenceDiagram& pd);

/// Debug dump `dim,value,v0[,v1[,v2]]` in filtration order.
void write_complex_csv(std::ostream& out, const FilteredComplex& complex);

// Datasets: manifest.json + one file per item.
nlohmann::json write_dataset(const fs::path& dir, const CloudDataset& ds, const nlohmann::json& config = {});
nlohmann::json write_dataset(const fs::path& dir, const PolarDataset& ds, const nlohmann::json& config = {});
nlohmann::json write_dataset(const fs::path& dir, const MaskDataset& ds, const nlohmann::json& config = {});
nlohmann::json read_manifest(const fs::path& dir);
CloudDataset read_cloud_dataset(const fs::path& dir);
PolarDataset read_polar_dataset(const fs::path& dir);
MaskDataset read_mask_dataset(const fs::path& dir);

// Signatures: CSV (id then values) plus <path>.json describing the scheme.
nlohmann::json to_json(const SignatureScheme& scheme);
void write_signatures(const fs::path& path, const std::vector<std::string>& ids, const FeatureMatrix& values,
                      const SignatureScheme& scheme);
FeatureMatrix read_signatures(const fs::path& path, std::vector<std::string>* ids = nullptr);

// Models and reports.
nlohmann::json to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

std::string read_text(const fs::path& path);
/// Writes via a temporary file and rename; non-regular targets are written in place.
void write_text(const fs::path& path, const std::string& text);

} // namespace tdalab::io
