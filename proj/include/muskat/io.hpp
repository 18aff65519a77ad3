// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "muskat/certify.hpp"
#include "muskat/evolution.hpp"

namespace muskat {

constexpr int kCheckpointVersion = 1;
constexpr int kCertificateSchemaVersion = 1;
constexpr const char* kLibraryVersion = "1.0.0";

// exact text round trip of doubles
std::string hexfloat(double v);
double parse_hexfloat(const std::string& s);

// %.17g, "nan" / "inf" spelled out
std::string decimal17(double v);

extern const std::vector<std::string> kTrajectoryColumns;

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);

nlohmann::json checkpoint_json(const RunState& st, const std::string& config_hash);
RunState checkpoint_from_json(const nlohmann::json& j, const std::string& expected_hash);

nlohmann::json certificate_json(const Certificate& c);

// write via a temporary file and rename; IoError on failure
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace muskat
