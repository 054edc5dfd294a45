#include "carb/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace carb {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("malformed number '" + s + "'");
  }
  return v;
}

namespace {

long parse_long(const std::string& s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("malformed integer '" + s + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* mode_name(Mode m) { return m == Mode::standard ? "standard" : "similarity"; }
const char* flux_name(FluxKind f) { return f == FluxKind::godunov ? "godunov" : "rusanov"; }
const char* wall_name(WallKind w) {
  switch (w) {
    case WallKind::wall: return "wall";
    case WallKind::symmetry: return "symmetry";
    case WallKind::wall_with_filament: return "wall_with_filament";
  }
  return "wall";
}
const char* setup_name(Setup s) {
  switch (s) {
    case Setup::plane_shock: return "plane-shock";
    case Setup::filament_standard: return "filament-standard";
    case Setup::filament_similarity: return "filament-similarity";
    case Setup::wedge_nuq: return "wedge-nuq";
  }
  return "plane-shock";
}
const char* blend_name(BlendKind b) { return b == BlendKind::none ? "none" : "band"; }
const char* branch_name(WedgeBranch b) { return b == WedgeBranch::weak ? "weak" : "strong"; }
const char* entropy_name(EntropySwitch e) {
  switch (e) {
    case EntropySwitch::automatic: return "auto";
    case EntropySwitch::on: return "on";
    case EntropySwitch::off: return "off";
  }
  return "auto";
}

using Handler = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"gas.gamma", [](RunConfig& c, const std::string& v) { c.gas.gamma = parse_double(v); }},
      {"gas.kappa", [](RunConfig& c, const std::string& v) { c.gas.kappa = parse_double(v); }},
      {"grid.nx", [](RunConfig& c, const std::string& v) { c.nx = static_cast<int>(parse_long(v)); }},
      {"grid.ny", [](RunConfig& c, const std::string& v) { c.ny = static_cast<int>(parse_long(v)); }},
      {"grid.x_min", [](RunConfig& c, const std::string& v) { c.x_min = parse_double(v); }},
      {"grid.x_max", [](RunConfig& c, const std::string& v) { c.x_max = parse_double(v); }},
      {"grid.y_min", [](RunConfig& c, const std::string& v) { c.y_min = parse_double(v); }},
      {"grid.y_max", [](RunConfig& c, const std::string& v) { c.y_max = parse_double(v); }},
      {"mode",
       [](RunConfig& c, const std::string& v) {
         if (v == "standard") c.mode = Mode::standard;
         else if (v == "similarity") c.mode = Mode::similarity;
         else throw ConfigError("mode must be standard or similarity");
       }},
      {"mode.t0", [](RunConfig& c, const std::string& v) { c.t0 = parse_double(v); }},
      {"scheme.flux",
       [](RunConfig& c, const std::string& v) {
         if (v == "godunov") c.flux = FluxKind::godunov;
         else if (v == "rusanov") c.flux = FluxKind::rusanov;
         else throw ConfigError("scheme.flux must be godunov or rusanov");
       }},
      {"scheme.cfl", [](RunConfig& c, const std::string& v) { c.cfl = parse_double(v); }},
      {"scheme.blend.kind",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") c.blend_kind = BlendKind::none;
         else if (v == "band") c.blend_kind = BlendKind::band;
         else throw ConfigError("scheme.blend.kind must be none or band");
       }},
      {"scheme.blend.y_cut",
       [](RunConfig& c, const std::string& v) { c.blend_y_cut = parse_double(v); }},
      {"scheme.blend.theta_max",
       [](RunConfig& c, const std::string& v) { c.blend_theta_max = parse_double(v); }},
      {"bc.bottom",
       [](RunConfig& c, const std::string& v) {
         if (v == "wall") c.bottom = WallKind::wall;
         else if (v == "symmetry") c.bottom = WallKind::symmetry;
         else if (v == "wall_with_filament") c.bottom = WallKind::wall_with_filament;
         else throw ConfigError("bc.bottom must be wall, symmetry or wall_with_filament");
       }},
      {"bc.top",
       [](RunConfig& c, const std::string& v) {
         if (v != "wall") throw ConfigError("bc.top must be wall");
         c.top = WallKind::wall;
       }},
      {"trigger.row",
       [](RunConfig& c, const std::string& v) {
         if (v == "none") c.trigger_row.reset();
         else c.trigger_row = static_cast<int>(parse_long(v));
       }},
      {"run.setup",
       [](RunConfig& c, const std::string& v) {
         if (v == "plane-shock") c.setup = Setup::plane_shock;
         else if (v == "filament-standard") c.setup = Setup::filament_standard;
         else if (v == "filament-similarity") c.setup = Setup::filament_similarity;
         else if (v == "wedge-nuq") c.setup = Setup::wedge_nuq;
         else throw ConfigError("unknown run.setup '" + v + "'");
       }},
      {"run.mach_in", [](RunConfig& c, const std::string& v) { c.mach_in = parse_double(v); }},
      {"run.rho_in", [](RunConfig& c, const std::string& v) { c.rho_in = parse_double(v); }},
      {"run.shock_x", [](RunConfig& c, const std::string& v) { c.shock_x = parse_double(v); }},
      {"run.t_end", [](RunConfig& c, const std::string& v) { c.t_end = parse_double(v); }},
      {"run.snapshot_every",
       [](RunConfig& c, const std::string& v) { c.snapshot_every = static_cast<int>(parse_long(v)); }},
      {"run.max_steps", [](RunConfig& c, const std::string& v) { c.max_steps = parse_long(v); }},
      {"run.entropy",
       [](RunConfig& c, const std::string& v) {
         if (v == "auto") c.entropy = EntropySwitch::automatic;
         else if (v == "on") c.entropy = EntropySwitch::on;
         else if (v == "off") c.entropy = EntropySwitch::off;
         else throw ConfigError("run.entropy must be auto, on or off");
       }},
      {"wedge.alpha_deg",
       [](RunConfig& c, const std::string& v) { c.wedge.alpha_deg = parse_double(v); }},
      {"wedge.branch",
       [](RunConfig& c, const std::string& v) {
         if (v == "weak") c.wedge.branch = WedgeBranch::weak;
         else if (v == "strong") c.wedge.branch = WedgeBranch::strong;
         else throw ConfigError("wedge.branch must be weak or strong");
       }},
      {"wedge.tip_x", [](RunConfig& c, const std::string& v) { c.wedge.tip_x = parse_double(v); }},
      {"diag.eps_c_rel", [](RunConfig& c, const std::string& v) { c.eps_c_rel = parse_double(v); }},
      {"diag.tip_k", [](RunConfig& c, const std::string& v) { c.tip_k = static_cast<int>(parse_long(v)); }},
      {"out.dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
  };
  return h;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("invariant violated for " + key + ": " + why);
  };
  if (!(c.gas.gamma > 1.0)) fail("gas.gamma", "must be > 1");
  if (!(c.gas.kappa > 0.0)) fail("gas.kappa", "must be > 0");
  if (c.nx <= 0 || c.ny <= 0) fail("grid.nx/grid.ny", "must be positive");
  if (!(c.x_max > c.x_min) || !(c.y_max > c.y_min)) fail("grid bounds", "must be increasing");
  if (!(c.cfl > 0.0) || c.cfl > 0.5) fail("scheme.cfl", "must lie in (0, 0.5]");
  if (c.blend_theta_max < 0.0 || c.blend_theta_max > 1.0) {
    fail("scheme.blend.theta_max", "must lie in [0,1]");
  }
  if (!(c.t0 > 0.0)) fail("mode.t0", "must be > 0");
  if (!(c.rho_in > 0.0)) fail("run.rho_in", "must be > 0");
  if (!(c.mach_in > 1.0)) fail("run.mach_in", "must be > 1 for shock presets");
  if (c.snapshot_every < 1) fail("run.snapshot_every", "must be >= 1");
  if (c.max_steps < 0) fail("run.max_steps", "must be >= 0");
  if (!(c.eps_c_rel > 0.0)) fail("diag.eps_c_rel", "must be > 0");
  if (c.tip_k < 2) fail("diag.tip_k", "must be >= 2");
  if (c.trigger_row && (*c.trigger_row < 0 || *c.trigger_row >= c.ny)) {
    fail("trigger.row", "outside grid");
  }
  if (c.setup == Setup::filament_similarity || c.setup == Setup::wedge_nuq) {
    if (c.mode != Mode::similarity) fail("mode", "setup requires similarity mode");
    if (c.bottom != WallKind::symmetry) fail("bc.bottom", "setup requires symmetry");
  }
  if (c.setup != Setup::wedge_nuq) {
    (void)c.snapped_shock_x();  // throws if outside the domain
  }
  if (c.mode == Mode::similarity) {
    double tend = c.t_end;
    if (!(tend >= c.t0)) fail("run.t_end", "must be >= mode.t0 in similarity mode");
  } else if (!(c.t_end >= 0.0)) {
    fail("run.t_end", "must be >= 0");
  }
}

}  // namespace

ParsedConfig parse_config_full(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    auto it = handlers().find(key);
    if (it == handlers().end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    try {
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + " (" + key + "): " + e.what());
    }
  }
  try {
    validate(cfg);
  } catch (const UsageError& e) {
    throw ConfigError(e.what());
  }
  ParsedConfig out{cfg, {}};
  for (const auto& [key, fn] : handlers()) {
    if (!seen.count(key)) out.defaulted_keys.push_back(key);
  }
  return out;
}

RunConfig parse_config(const std::string& text) { return parse_config_full(text).cfg; }

std::string config_to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "gas.gamma = " << format_double(c.gas.gamma) << "\n";
  os << "gas.kappa = " << format_double(c.gas.kappa) << "\n";
  os << "grid.nx = " << c.nx << "\n";
  os << "grid.ny = " << c.ny << "\n";
  os << "grid.x_min = " << format_double(c.x_min) << "\n";
  os << "grid.x_max = " << format_double(c.x_max) << "\n";
  os << "grid.y_min = " << format_double(c.y_min) << "\n";
  os << "grid.y_max = " << format_double(c.y_max) << "\n";
  os << "mode = " << mode_name(c.mode) << "\n";
  os << "mode.t0 = " << format_double(c.t0) << "\n";
  os << "scheme.flux = " << flux_name(c.flux) << "\n";
  os << "scheme.cfl = " << format_double(c.cfl) << "\n";
  os << "scheme.blend.kind = " << blend_name(c.blend_kind) << "\n";
  os << "scheme.blend.y_cut = " << format_double(c.blend_y_cut) << "\n";
  os << "scheme.blend.theta_max = " << format_double(c.blend_theta_max) << "\n";
  os << "bc.bottom = " << wall_name(c.bottom) << "\n";
  os << "bc.top = " << wall_name(c.top) << "\n";
  os << "trigger.row = ";
  if (c.trigger_row) os << *c.trigger_row; else os << "none";
  os << "\n";
  os << "run.setup = " << setup_name(c.setup) << "\n";
  os << "run.mach_in = " << format_double(c.mach_in) << "\n";
  os << "run.rho_in = " << format_double(c.rho_in) << "\n";
  os << "run.shock_x = " << format_double(c.shock_x) << "\n";
  os << "run.t_end = " << format_double(c.t_end) << "\n";
  os << "run.snapshot_every = " << c.snapshot_every << "\n";
  os << "run.max_steps = " << c.max_steps << "\n";
  os << "run.entropy = " << entropy_name(c.entropy) << "\n";
  os << "wedge.alpha_deg = " << format_double(c.wedge.alpha_deg) << "\n";
  os << "wedge.branch = " << branch_name(c.wedge.branch) << "\n";
  os << "wedge.tip_x = " << format_double(c.wedge.tip_x) << "\n";
  os << "diag.eps_c_rel = " << format_double(c.eps_c_rel) << "\n";
  os << "diag.tip_k = " << c.tip_k << "\n";
  os << "out.dir = " << c.out_dir << "\n";
  return os.str();
}

}  // namespace carb
