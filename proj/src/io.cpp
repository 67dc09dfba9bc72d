#include "rarz/io.hpp"

#include <fstream>
#include <sstream>

namespace rarz {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

}  // namespace

void write_profile_csv(const std::filesystem::path& path, const MetaList& meta,
                       const std::vector<std::string>& columns,
                       const std::vector<Eigen::ArrayXd>& data) {
  if (columns.size() != data.size())
    throw std::invalid_argument("write_profile_csv: column/data mismatch");
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : meta) out << "# " << key << " = " << value << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  const Eigen::Index rows = data.empty() ? 0 : data.front().size();
  for (Eigen::Index r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < data.size(); ++c)
      out << format_double(data[c][r]) << (c + 1 < data.size() ? "," : "\n");
}

void write_field(const std::filesystem::path& path, const Field2D& field,
                 const Eigen::ArrayXXd& values) {
  std::ofstream out = open_out(path);
  out << values.cols() << " " << values.rows() << " " << format_double(field.x_min)
      << " " << format_double(field.x_max) << " " << format_double(field.y_min) << " "
      << format_double(field.y_max) << " " << format_double(field.time) << "\n";
  for (Eigen::Index j = 0; j < values.rows(); ++j) {
    for (Eigen::Index i = 0; i < values.cols(); ++i)
      out << format_double(values(j, i)) << (i + 1 < values.cols() ? " " : "\n");
  }
}

void write_metrics(const std::filesystem::path& path, const MetaList& entries) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
}

MetaList read_metrics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metrics file: " + path.string());
  MetaList entries;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto trim = [](std::string& s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(key);
    trim(value);
    entries.emplace_back(key, value);
  }
  return entries;
}

std::string metric_value(const MetaList& entries, const std::string& key) {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  throw std::runtime_error("metric not found: " + key);
}

}  // namespace rarz
