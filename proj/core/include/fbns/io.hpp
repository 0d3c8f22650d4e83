#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbns/fbm.hpp"
#include "fbns/field.hpp"
#include "fbns/model.hpp"

namespace fbns {

using json = nlohmann::json;

// Shortest-roundtrip decimal form of a double ("%.17g"); every CSV numeric
// cell goes through this so that re-runs are byte-comparable.
std::string format_g17(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& file, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& file);

// Field snapshot: magic "FBNS", uint32 little-endian header length, JSON
// header (backend, dimension, k_max or n_modes, nu, mode ordering note),
// then the float64 little-endian coefficient block.
void save_field(const std::filesystem::path& file, const SpectralField& u);
SpectralField load_field(const std::filesystem::path& file);

// Noise path dump: raw float64 little-endian block, row-major (mode, time),
// next to a JSON sidecar (same path + ".json") carrying grid and seed
// metadata.  The content hash of the block keys the run manifest.
void save_path(const std::filesystem::path& file, const CylindricalPath& p);
CylindricalPath load_path(const std::filesystem::path& file);
std::string path_content_hash(const CylindricalPath& p);

json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const json& value);

}  // namespace fbns
