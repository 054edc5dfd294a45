#include <doctest.h>

#include <cmath>

#include "carb/gas.hpp"

using namespace carb;

namespace {

const GasModel kAir{1.4, 1.0};

// Independent Rankine-Hugoniot oracle: bisection on the standing-shock jump
// condition m^2 (1/rho_L - 1/rho) = p(rho) - p(rho_L).
double shock_density_bisect(double rho_l, double un_l, const GasModel& gas) {
  double m = rho_l * un_l;
  auto g = [&](double rho) {
    return (pressure(rho, gas) - pressure(rho_l, gas)) -
           m * m * (1.0 / rho_l - 1.0 / rho);
  };
  double lo = rho_l * (1.0 + 1e-12);
  double hi = rho_l * 2.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Independent detachment oracle: dense scan of the deflection curve.
double alpha_max_scan(const Primitive& up, const GasModel& gas) {
  double mach_angle = std::asin(sound_speed(up.rho, gas) / up.ux);
  double best = 0.0;
  const int n = 200000;
  for (int k = 1; k < n; ++k) {
    double sigma = mach_angle + (1.5707963267948966 - mach_angle) * k / n;
    best = std::max(best, oblique_deflection(sigma, up, gas));
  }
  return best;
}

}  // namespace

TEST_CASE("pressure and sound speed match frozen power-law values") {
  CHECK(pressure(1.0, kAir) == 1.0);
  CHECK(pressure(2.0, kAir) == doctest::Approx(2.6390158215457885).epsilon(1e-15));
  CHECK(sound_speed(1.0, kAir) == doctest::Approx(1.1832159566199232).epsilon(1e-15));
  CHECK(sound_speed(2.0, kAir) == doctest::Approx(1.3591582229755489).epsilon(1e-15));
  GasModel soft{1.4, 0.5};
  CHECK(pressure(2.0, soft) == doctest::Approx(0.5 * 2.6390158215457885).epsilon(1e-15));
}

TEST_CASE("pressure rejects nonpositive density") {
  CHECK_THROWS_AS(pressure(-1.0, kAir), StateError);
  CHECK_THROWS_AS(sound_speed(-1.0, kAir), StateError);
}

TEST_CASE("prim/cons round trip is exact for representable states") {
  Primitive p{2.0, 0.5, -0.25};
  Conservative c = prim_to_cons(p);
  CHECK(c.rho == 2.0);
  CHECK(c.mx == 1.0);
  CHECK(c.my == -0.5);
  Primitive q = cons_to_prim(c);
  CHECK(q.rho == p.rho);
  CHECK(q.ux == p.ux);
  CHECK(q.uy == p.uy);
}

TEST_CASE("normal shock at M=3 reproduces the frozen downstream state") {
  double u_in = 3.0 * sound_speed(1.0, kAir);
  Primitive down = normal_shock_downstream({1.0, u_in, 0.0}, kAir);
  CHECK(down.rho == doctest::Approx(5.681292556612369).epsilon(1e-14));
  CHECK(down.ux == doctest::Approx(0.6247958249797203).epsilon(1e-14));
  CHECK(down.uy == 0.0);
  // Conservation across the standing shock.
  CHECK(down.rho * down.ux == doctest::Approx(3.5496478698597696).epsilon(1e-14));
  double flux_l = 1.0 * u_in * u_in + pressure(1.0, kAir);
  double flux_r = down.rho * down.ux * down.ux + pressure(down.rho, kAir);
  CHECK(flux_r == doctest::Approx(flux_l).epsilon(1e-13));
  // Compressive and subsonic downstream.
  CHECK(down.rho > 1.0);
  CHECK(down.ux < sound_speed(down.rho, kAir));
}

TEST_CASE("normal shock matches an independent bisection oracle") {
  for (double mach : {1.05, 1.5, 2.0, 3.0, 6.0, 20.0}) {
    for (double rho : {0.3, 1.0, 4.0}) {
      double un = mach * sound_speed(rho, kAir);
      Primitive down = normal_shock_downstream({rho, un, 0.0}, kAir);
      double oracle = shock_density_bisect(rho, un, kAir);
      CHECK(down.rho == doctest::Approx(oracle).epsilon(1e-12));
      CHECK(rho * un == doctest::Approx(down.rho * down.ux).epsilon(1e-13));
    }
  }
}

TEST_CASE("normal shock carries the tangential velocity through") {
  double u_in = 2.0 * sound_speed(1.0, kAir);
  Primitive down = normal_shock_downstream({1.0, u_in, 0.7}, kAir);
  CHECK(down.uy == 0.7);
}

TEST_CASE("normal shock requires supersonic normal velocity") {
  CHECK_THROWS_AS(normal_shock_downstream({1.0, 1.0, 0.0}, kAir), NoShockError);
  CHECK_THROWS_AS(
      normal_shock_downstream({1.0, sound_speed(1.0, kAir), 0.0}, kAir),
      NoShockError);
}

TEST_CASE("shock polar limits at zero deflection") {
  Primitive up{1.0, 3.0 * sound_speed(1.0, kAir), 0.0};
  ObliqueShockSolution sol = wedge_shock_angles(0.0, up, kAir);
  CHECK(sol.sigma_weak == doctest::Approx(0.33983690945412194).epsilon(1e-13));
  CHECK(sol.sigma_strong == doctest::Approx(1.5707963267948966).epsilon(1e-13));
  // Weak limit is the Mach wave (zero strength), strong limit the normal shock.
  CHECK(sol.downstream_weak.rho == doctest::Approx(1.0).epsilon(1e-12));
  Primitive normal = normal_shock_downstream(up, kAir);
  CHECK(sol.downstream_strong.rho == doctest::Approx(normal.rho).epsilon(1e-12));
  CHECK(sol.downstream_strong.ux == doctest::Approx(normal.ux).epsilon(1e-12));
}

TEST_CASE("shock polar at M=3, alpha=10 degrees matches frozen angles") {
  Primitive up{1.0, 3.0 * sound_speed(1.0, kAir), 0.0};
  double alpha = 10.0 * 3.14159265358979323846 / 180.0;
  ObliqueShockSolution sol = wedge_shock_angles(alpha, up, kAir);
  CHECK(sol.sigma_weak == doctest::Approx(0.4722667454862277).epsilon(1e-13));
  CHECK(sol.sigma_strong == doctest::Approx(1.5327888056342741).epsilon(1e-13));
  // Substituting back reproduces the deflection.
  CHECK(oblique_deflection(sol.sigma_weak, up, kAir) ==
        doctest::Approx(alpha).epsilon(1e-12));
  CHECK(oblique_deflection(sol.sigma_strong, up, kAir) ==
        doctest::Approx(alpha).epsilon(1e-12));
  // Downstream flows are turned by exactly alpha.
  CHECK(std::atan2(sol.downstream_weak.uy, sol.downstream_weak.ux) ==
        doctest::Approx(alpha).epsilon(1e-12));
  CHECK(std::atan2(sol.downstream_strong.uy, sol.downstream_strong.ux) ==
        doctest::Approx(alpha).epsilon(1e-12));
  // Weak branch stays supersonic, strong branch is subsonic.
  auto speed = [](const Primitive& u) { return std::hypot(u.ux, u.uy); };
  CHECK(speed(sol.downstream_weak) > sound_speed(sol.downstream_weak.rho, kAir));
  CHECK(speed(sol.downstream_strong) < sound_speed(sol.downstream_strong.rho, kAir));
}

TEST_CASE("detachment angle at M=3 matches frozen value and a dense scan") {
  Primitive up{1.0, 3.0 * sound_speed(1.0, kAir), 0.0};
  DetachmentPoint d = detachment_angle(up, kAir);
  CHECK(d.sigma == doctest::Approx(1.2099759445926777).epsilon(1e-6));
  CHECK(d.alpha_max == doctest::Approx(0.7335952304606292).epsilon(1e-12));
  CHECK(d.alpha_max == doctest::Approx(alpha_max_scan(up, kAir)).epsilon(1e-8));
}

TEST_CASE("deflections beyond detachment are rejected") {
  Primitive up{1.0, 3.0 * sound_speed(1.0, kAir), 0.0};
  CHECK_THROWS_AS(wedge_shock_angles(0.75, up, kAir), DetachmentError);
  CHECK_THROWS_AS(wedge_shock_angles(-0.1, up, kAir), UsageError);
}

TEST_CASE("oblique deflection vanishes at and below the Mach angle") {
  Primitive up{1.0, 3.0 * sound_speed(1.0, kAir), 0.0};
  double mach_angle = std::asin(1.0 / 3.0);
  CHECK(oblique_deflection(mach_angle, up, kAir) == 0.0);
  CHECK(oblique_deflection(0.5 * mach_angle, up, kAir) == 0.0);
}
