#include "carb/io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace carb {

namespace {

void put(std::ostream& os, double v) { os << format_double(v); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

void write_snapshot(std::ostream& os, const FieldGrid& field, const GasModel& gas) {
  os << "i,j,c1,c2,rho,ux,uy,p\n";
  const GridGeometry& g = field.geom;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      Primitive u = cons_to_prim(field.at(i, j));
      double c1 = g.xc(i);
      double c2 = g.yc(j);
      os << i << ',' << j << ',';
      put(os, c1); os << ',';
      put(os, c2); os << ',';
      put(os, u.rho); os << ',';
      put(os, u.ux); os << ',';
      put(os, u.uy); os << ',';
      put(os, pressure(u.rho, gas));
      os << '\n';
    }
  }
}

std::vector<SnapshotRow> read_snapshot(std::istream& is) {
  std::vector<SnapshotRow> rows;
  std::string line;
  if (!std::getline(is, line)) throw StateError("snapshot: empty stream");
  if (line != "i,j,c1,c2,rho,ux,uy,p") {
    throw StateError("snapshot: unexpected header '" + line + "'");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() != 8) throw StateError("snapshot: malformed row '" + line + "'");
    SnapshotRow r;
    r.i = static_cast<int>(parse_double(f[0]));
    r.j = static_cast<int>(parse_double(f[1]));
    r.c1 = parse_double(f[2]);
    r.c2 = parse_double(f[3]);
    r.rho = parse_double(f[4]);
    r.ux = parse_double(f[5]);
    r.uy = parse_double(f[6]);
    r.p = parse_double(f[7]);
    rows.push_back(r);
  }
  return rows;
}

void write_diagnostics(std::ostream& os, std::span<const DiagnosticsRecord> records) {
  os << "time,l1_perturbation,extent_xmin,extent_xmax,extent_ymin,extent_ymax,"
        "extent_height,max_entropy_production,tip_angle_beta\n";
  for (const DiagnosticsRecord& r : records) {
    put(os, r.time); os << ',';
    put(os, r.l1_perturbation); os << ',';
    if (r.extent.empty) {
      os << ",,,,";
      put(os, 0.0); os << ',';
    } else {
      put(os, r.extent.xmin); os << ',';
      put(os, r.extent.xmax); os << ',';
      put(os, r.extent.ymin); os << ',';
      put(os, r.extent.ymax); os << ',';
      put(os, r.extent_height); os << ',';
    }
    if (!std::isnan(r.max_entropy_production)) put(os, r.max_entropy_production);
    os << ',';
    if (r.tip_angle_beta) put(os, *r.tip_angle_beta);
    os << '\n';
  }
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int k = 15; k >= 0; --k) {
    buf[k] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

void write_manifest(std::ostream& os, const RunConfig& cfg, const ManifestInfo& info) {
  os << "# " << info.version << "\n";
  os << "# effective configuration; parses back as a config file\n";
  os << "# snapped shock_x = " << format_double(info.snapped_shock_x) << "\n";
  if (!info.defaulted_keys.empty()) {
    os << "# defaulted keys:";
    for (const std::string& k : info.defaulted_keys) os << ' ' << k;
    os << "\n";
  }
  for (const auto& [file, hex] : info.checksums) {
    os << "# fnv1a64 " << hex << "  " << file << "\n";
  }
  os << config_to_text(cfg);
}

}  // namespace carb
