#pragma once

#include "rarz/config.hpp"

#include <filesystem>

// Output writers. Profiles are CSV with a '#'-prefixed metadata header
// followed by a column-name row; 2D fields are plain text with the header
// line "n_x n_y x_min x_max y_min y_max t" followed by row-major values;
// metrics are `key = value` lines.

namespace rarz {

using MetaList = std::vector<std::pair<std::string, std::string>>;

void write_profile_csv(const std::filesystem::path& path, const MetaList& meta,
                       const std::vector<std::string>& columns,
                       const std::vector<Eigen::ArrayXd>& data);

void write_field(const std::filesystem::path& path, const Field2D& field,
                 const Eigen::ArrayXXd& values);

void write_metrics(const std::filesystem::path& path, const MetaList& entries);

/// Parses a `key = value` metrics file back into a list (test harness hook).
MetaList read_metrics(const std::filesystem::path& path);

std::string metric_value(const MetaList& entries, const std::string& key);

}  // namespace rarz
