#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "carb/io.hpp"

using namespace carb;

TEST_CASE("format_double round-trips arbitrary doubles exactly") {
  std::mt19937_64 rng(123u);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  for (int k = 0; k < 1000; ++k) {
    double v = std::ldexp(mant(rng), expo(rng));
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK_THROWS_AS(parse_double("1.0x"), ConfigError);
  CHECK_THROWS_AS(parse_double(""), ConfigError);
}

TEST_CASE("snapshot round trip is bit-exact") {
  GridGeometry g = GridGeometry::make(6, 4, 0.0, 1.0, 0.0, 0.5);
  FieldGrid f = FieldGrid::make(g, Mode::standard);
  std::mt19937_64 rng(7u);
  std::uniform_real_distribution<double> dr(0.3, 4.0), dv(-2.0, 2.0);
  GasModel gas;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 6; ++i) f.at(i, j) = prim_to_cons({dr(rng), dv(rng), dv(rng)});
  }
  std::ostringstream os;
  write_snapshot(os, f, gas);
  std::istringstream is(os.str());
  std::vector<SnapshotRow> rows = read_snapshot(is);
  REQUIRE(rows.size() == 24);
  for (const SnapshotRow& r : rows) {
    Primitive u = cons_to_prim(f.at(r.i, r.j));
    REQUIRE(r.rho == u.rho);
    REQUIRE(r.ux == u.ux);
    REQUIRE(r.uy == u.uy);
    REQUIRE(r.p == pressure(u.rho, gas));
    REQUIRE(r.c1 == g.xc(r.i));
    REQUIRE(r.c2 == g.yc(r.j));
  }
  // Rows are emitted row-major j then i.
  CHECK(rows[0].i == 0);
  CHECK(rows[0].j == 0);
  CHECK(rows[1].i == 1);
  CHECK(rows[6].j == 1);
  std::istringstream broken("wrong,header\n");
  CHECK_THROWS_AS(read_snapshot(broken), StateError);
}

TEST_CASE("diagnostics file has empty fields for missing values") {
  DiagnosticsRecord a;
  a.time = 0.5;
  a.l1_perturbation = 0.25;
  a.extent = {false, 1.0, 2.0, 0.5, 1.5};
  a.extent_height = 1.0;
  a.max_entropy_production = -3.0;
  a.tip_angle_beta = 0.7;
  DiagnosticsRecord b;  // empty extent, NaN entropy, no tip angle
  b.time = 1.0;
  std::ostringstream os;
  std::vector<DiagnosticsRecord> recs{a, b};
  write_diagnostics(os, recs);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line ==
        "time,l1_perturbation,extent_xmin,extent_xmax,extent_ymin,extent_ymax,"
        "extent_height,max_entropy_production,tip_angle_beta");
  std::getline(is, line);
  CHECK(line == "0.5,0.25,1,2,0.5,1.5,1,-3,0.7");
  std::getline(is, line);
  CHECK(line == "1,0,,,,,0,,");
}

TEST_CASE("fnv1a matches published 64-bit test vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("config parser: defaults, errors, and validation messages") {
  ParsedConfig pc = parse_config_full("run.mach_in = 2.5\n");
  CHECK(pc.cfg.mach_in == 2.5);
  CHECK(pc.cfg.nx == 240);
  // Every other key is reported as defaulted.
  CHECK(std::find(pc.defaulted_keys.begin(), pc.defaulted_keys.end(),
                  "grid.nx") != pc.defaulted_keys.end());
  CHECK(std::find(pc.defaulted_keys.begin(), pc.defaulted_keys.end(),
                  "run.mach_in") == pc.defaulted_keys.end());

  CHECK_THROWS_WITH_AS(parse_config("no_such_key = 1\n"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("grid.nx = 10\ngrid.nx = 12\n"),
                       doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("gas.gamma = 0.9\n"),
                       doctest::Contains("gas.gamma"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("grid.nx = ten\n"),
                       doctest::Contains("line 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("run.shock_x = 97.0\n"), ConfigError);
  // Comments and blank lines are ignored.
  CHECK_NOTHROW(parse_config("# header\n\nrun.mach_in = 3 # inline\n"));
}

TEST_CASE("config text round trip is idempotent") {
  RunConfig c;
  c.mach_in = 2.25;
  c.trigger_row = 17;
  c.wedge.alpha_deg = 12.5;
  c.cfl = 0.3125;
  std::string text = config_to_text(c);
  RunConfig back = parse_config(text);
  CHECK(config_to_text(back) == text);
  ParsedConfig full = parse_config_full(text);
  CHECK(full.defaulted_keys.empty());
}

TEST_CASE("manifest text parses back as the effective config") {
  RunConfig c;
  c.out_dir = "somewhere";
  ManifestInfo info;
  info.version = kVersion;
  info.snapped_shock_x = c.snapped_shock_x();
  info.checksums = {{"snap_0000.csv", "0123456789abcdef"}};
  info.defaulted_keys = {"gas.gamma"};
  std::ostringstream os;
  write_manifest(os, c, info);
  std::string text = os.str();
  CHECK(text.find("carbsim") != std::string::npos);
  CHECK(text.find("0123456789abcdef") != std::string::npos);
  RunConfig back = parse_config(text);  // comments skipped, body parses
  CHECK(config_to_text(back) == config_to_text(c));
}
