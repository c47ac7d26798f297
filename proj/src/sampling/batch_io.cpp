#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "convexlab/sampling.hpp"

namespace convexlab::sampling {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string batch_csv(const SampleBatch& batch) {
  std::string out = "idx";
  for (Eigen::Index k = 0; k < batch.dim(); ++k) out += ",x" + std::to_string(k);
  out += "\n";
  for (Eigen::Index i = 0; i < batch.size(); ++i) {
    out += std::to_string(i);
    for (Eigen::Index k = 0; k < batch.dim(); ++k) out += "," + format_double(batch.points(k, i));
    out += "\n";
  }
  return out;
}

nlohmann::json batch_sidecar(const SampleBatch& batch) {
  const auto& c = batch.config;
  const Eigen::Index n = batch.dim();
  nlohmann::json j;
  j["body"] = batch.body_id;
  j["dim"] = n;
  j["count"] = batch.size();
  j["master_seed"] = c.master_seed;
  j["method"] = to_string(c.method);
  if (c.method == Method::kHitAndRun) {
    j["burn_in"] = c.burn_in_for(n);
    j["thinning"] = c.thinning_for(n);
    j["chain_length"] = c.chain_length;
    if (c.start_point) {
      j["start_point"] = std::vector<double>(c.start_point->data(), c.start_point->data() + n);
    } else {
      j["start_point"] = "chebyshev-center";
    }
  }
  j["substream_derivation"] = "splitmix64(master_seed, point_index, step_index, tag)";
  return j;
}

PointSet read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open points file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("points file '" + path + "' is empty");
  const bool has_idx = line.rfind("idx", 0) == 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first && has_idx) {
        first = false;
        continue;
      }
      first = false;
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("non-numeric cell '" + cell + "' in '" + path + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw ConfigError("ragged rows in '" + path + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("points file '" + path + "' has no rows");
  PointSet pts(static_cast<Eigen::Index>(rows.front().size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      pts(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[i][k];
    }
  }
  return pts;
}

}  // namespace convexlab::sampling
