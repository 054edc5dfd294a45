#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carb/config.hpp"

namespace carb {

// Snapshot CSV: header i,j,c1,c2,rho,ux,uy,p; one row per interior cell,
// row-major j then i; shortest round-trip decimals.
void write_snapshot(std::ostream& os, const FieldGrid& field, const GasModel& gas);

struct SnapshotRow {
  int i = 0, j = 0;
  double c1 = 0.0, c2 = 0.0;
  double rho = 0.0, ux = 0.0, uy = 0.0, p = 0.0;
};
std::vector<SnapshotRow> read_snapshot(std::istream& is);

void write_diagnostics(std::ostream& os, std::span<const DiagnosticsRecord> records);

// FNV-1a 64-bit, as lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

struct ManifestInfo {
  std::string version;
  double snapped_shock_x = 0.0;
  std::vector<std::pair<std::string, std::string>> checksums;  // file -> hex
  std::vector<std::string> defaulted_keys;
};
void write_manifest(std::ostream& os, const RunConfig& cfg, const ManifestInfo& info);

inline constexpr const char* kVersion = "carbsim 0.1.0";

}  // namespace carb
