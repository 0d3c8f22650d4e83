#include "fbns/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fbns/sha256.hpp"
#include "fbns/version.hpp"

namespace fbns {

namespace {

void fail(const std::filesystem::path& file, const std::string& what) {
  throw std::runtime_error(file.string() + ": " + what);
}

std::string read_bytes(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(file, "cannot open");
  std::ostringstream out;
  out << in.rdbuf();
  return std::move(out).str();
}

void write_bytes(const std::filesystem::path& file, std::string_view bytes) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) fail(file, "cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(file, "short write");
}

// Coefficient blocks are raw float64; this codebase targets little-endian
// hosts and the formats are specified as little-endian.
std::string doubles_to_bytes(std::span<const double> xs) {
  std::string bytes(xs.size() * sizeof(double), '\0');
  std::memcpy(bytes.data(), xs.data(), bytes.size());
  return bytes;
}

std::vector<double> bytes_to_doubles(std::string_view bytes) {
  if (bytes.size() % sizeof(double) != 0) {
    throw std::runtime_error("coefficient block is not a float64 multiple");
  }
  std::vector<double> xs(bytes.size() / sizeof(double));
  std::memcpy(xs.data(), bytes.data(), bytes.size());
  return xs;
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::filesystem::path& file, const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i > 0) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      fail(file, "row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_g17(row[i]);
    }
    out += '\n';
  }
  write_bytes(file, out);
}

CsvTable read_csv(const std::filesystem::path& file) {
  const std::string bytes = read_bytes(file);
  CsvTable table;
  std::istringstream in(bytes);
  std::string line;
  if (!std::getline(in, line)) fail(file, "empty csv");
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.header.size()) fail(file, "ragged csv row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

constexpr char kMagic[4] = {'F', 'B', 'N', 'S'};

json model_header(const StokesModel& model) {
  json h;
  h["format"] = "field-snapshot";
  h["version"] = 1;
  h["backend"] =
      model.backend() == Backend::fourier ? "fourier" : "diagonal";
  h["dimension"] = model.dimension();
  if (model.backend() == Backend::fourier) {
    h["k_max"] = model.k_max();
    h["mode_order"] =
        "reps 0<|k|_inf<=k_max, first nonzero component positive, sorted by "
        "(|k|^2, lex); per rep (cos,eps1),(sin,eps1)[,(cos,eps2),(sin,eps2)]";
  }
  h["n_modes"] = model.n_modes();
  h["nu"] = model.nu();
  return h;
}

}  // namespace

void save_field(const std::filesystem::path& file, const SpectralField& u) {
  const std::string header = model_header(*u.model()).dump();
  std::string out(kMagic, sizeof(kMagic));
  const auto len = static_cast<std::uint32_t>(header.size());
  for (int i = 0; i < 4; ++i) {
    out += static_cast<char>((len >> (8 * i)) & 0xff);
  }
  out += header;
  out += doubles_to_bytes(u.coefs());
  write_bytes(file, out);
}

SpectralField load_field(const std::filesystem::path& file) {
  const std::string bytes = read_bytes(file);
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    fail(file, "missing FBNS magic");
  }
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) {
    len |= static_cast<std::uint32_t>(
               static_cast<unsigned char>(bytes[4 + i]))
           << (8 * i);
  }
  if (bytes.size() < 8 + len) fail(file, "truncated header");
  const json h = json::parse(bytes.substr(8, len));
  const int d = h.at("dimension").get<int>();
  const double nu = h.at("nu").get<double>();
  ModelPtr model;
  if (h.at("backend").get<std::string>() == "fourier") {
    model = StokesModel::fourier(d, h.at("k_max").get<int>(), nu);
  } else {
    model = StokesModel::diagonal(d, h.at("n_modes").get<int>(), nu);
  }
  auto coefs = bytes_to_doubles(std::string_view(bytes).substr(8 + len));
  if (static_cast<int>(coefs.size()) != model->n_modes()) {
    fail(file, "coefficient count does not match header");
  }
  return SpectralField(model, std::move(coefs));
}

void save_path(const std::filesystem::path& file, const CylindricalPath& p) {
  write_bytes(file, doubles_to_bytes(p.raw()));
  json side;
  side["format"] = "noise-path";
  side["version"] = 1;
  side["seed"] = p.seed();
  side["hurst"] = p.hurst();
  side["t_final"] = p.grid().t_final;
  side["n_steps"] = p.grid().n_steps;
  side["n_modes"] = p.n_modes();
  side["generator"] = to_string(p.generator());
  side["code_version"] = kVersion;
  side["content_hash"] = path_content_hash(p);
  side["layout"] = "float64 little-endian, row-major (mode, time)";
  write_json_file(file.string() + ".json", side);
}

CylindricalPath load_path(const std::filesystem::path& file) {
  const json side = read_json_file(file.string() + ".json");
  const TimeGrid grid{side.at("t_final").get<double>(),
                      side.at("n_steps").get<int>()};
  auto data = bytes_to_doubles(read_bytes(file));
  const int n_modes = side.at("n_modes").get<int>();
  if (data.size() !=
      static_cast<std::size_t>(n_modes) *
          static_cast<std::size_t>(grid.points())) {
    fail(file, "path block size does not match sidecar");
  }
  return CylindricalPath::from_parts(
      side.at("hurst").get<double>(), grid, n_modes,
      side.at("seed").get<std::uint64_t>(),
      fbm_generator_from_string(side.at("generator").get<std::string>()),
      std::move(data));
}

std::string path_content_hash(const CylindricalPath& p) {
  return sha256_hex(p.raw().data(), p.raw().size() * sizeof(double));
}

json read_json_file(const std::filesystem::path& file) {
  return json::parse(read_bytes(file));
}

void write_json_file(const std::filesystem::path& file, const json& value) {
  write_bytes(file, value.dump(2) + "\n");
}

}  // namespace fbns
