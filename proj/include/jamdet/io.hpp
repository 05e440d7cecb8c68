#ifndef JAMDET_IO_HPP
#define JAMDET_IO_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jamdet/block.hpp"

namespace jamdet {

inline constexpr const char* kVersion = "0.1.0";

// full decimal precision so emitted tables can be compared byte-for-byte
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Provenance block embedded in every emitted table: the command, the fully
// resolved configuration it ran with, and enough context to rerun it.
struct RunManifest {
  std::string command;
  std::string version = kVersion;
  nlohmann::json config;
  int workers = 1;
  double wall_seconds = 0.0;
  std::string out_path;
};

inline nlohmann::json manifest_to_json(const RunManifest& manifest) {
  return nlohmann::json{{"command", manifest.command},
                        {"version", manifest.version},
                        {"config", manifest.config},
                        {"workers", manifest.workers},
                        {"wall_seconds", manifest.wall_seconds},
                        {"out_path", manifest.out_path}};
}

inline void write_table(std::ostream& os, const RunManifest& manifest,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  os << "# jamdet " << manifest.command << " v" << manifest.version << "\n";
  os << "# manifest " << manifest_to_json(manifest).dump() << "\n";
  for (std::size_t c = 0; c < header.size(); ++c) {
    os << header[c] << (c + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
  }
}

// Pulls the embedded manifest back out of an emitted table.
inline std::optional<nlohmann::json> read_embedded_manifest(
    const std::string& table_text) {
  std::istringstream is(table_text);
  std::string line;
  const std::string prefix = "# manifest ";
  while (std::getline(is, line)) {
    if (line.rfind(prefix, 0) == 0) {
      return nlohmann::json::parse(line.substr(prefix.size()));
    }
  }
  return std::nullopt;
}

// Data rows (everything past comments and the header line).
inline std::vector<std::string> table_data_rows(const std::string& table_text) {
  std::istringstream is(table_text);
  std::string line;
  std::vector<std::string> rows;
  bool seen_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

// Observation file schema: complex entries as [re, im] pairs, rows of each
// block listed antenna-major.
inline nlohmann::json observations_to_json(const UnusedPilotObservations& obs) {
  obs.validate();
  nlohmann::json blocks = nlohmann::json::array();
  for (const CMatrix& block : obs.blocks) {
    nlohmann::json rows = nlohmann::json::array();
    for (int m = 0; m < block.rows(); ++m) {
      nlohmann::json row = nlohmann::json::array();
      for (int i = 0; i < block.cols(); ++i) {
        row.push_back({block(m, i).real(), block(m, i).imag()});
      }
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return nlohmann::json{{"m_r", obs.m_r()},
                        {"n_unused", obs.n_unused()},
                        {"blocks", std::move(blocks)}};
}

inline UnusedPilotObservations observations_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m_r") || !j.contains("n_unused") ||
      !j.contains("blocks") || !j["blocks"].is_array() || j["blocks"].empty()) {
    throw std::invalid_argument(
        "observations: expected {m_r, n_unused, blocks[...]}");
  }
  const int m_r = j["m_r"].get<int>();
  const int n_unused = j["n_unused"].get<int>();
  UnusedPilotObservations obs;
  for (const auto& rows : j["blocks"]) {
    if (static_cast<int>(rows.size()) != m_r) {
      throw std::invalid_argument("observations: block row count != m_r");
    }
    CMatrix block(m_r, n_unused);
    for (int m = 0; m < m_r; ++m) {
      const auto& row = rows[m];
      if (static_cast<int>(row.size()) != n_unused) {
        throw std::invalid_argument(
            "observations: row length != n_unused");
      }
      for (int i = 0; i < n_unused; ++i) {
        const auto& entry = row[i];
        if (!entry.is_array() || entry.size() != 2) {
          throw std::invalid_argument(
              "observations: entries must be [re, im] pairs");
        }
        block(m, i) = {entry[0].get<double>(), entry[1].get<double>()};
      }
    }
    obs.blocks.push_back(std::move(block));
  }
  obs.validate();
  return obs;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output path: " + path);
}

}  // namespace jamdet

#endif  // JAMDET_IO_HPP
