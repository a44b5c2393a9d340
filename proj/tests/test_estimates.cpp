#include <catch_amalgamated.hpp>

#include "kdvbbm/estimates.hpp"
#include "oracle.hpp"

using namespace kdvbbm;

TEST_CASE("alias-free products match exact convolutions", "[estimates]") {
  const Grid g = make_grid(16.0 * pi, 64);
  // Supports near the top of the band so lazy truncation would wrap.
  Field a = add(tone(g, 11, {0.5, 0.0}), tone(g, -11, {0.5, 0.0}));
  Field b = add(tone(g, 13, {0.3, 0.0}), tone(g, -13, {0.3, 0.0}));
  Field c = add(tone(g, 9, {0.7, 0.0}), tone(g, -9, {0.7, 0.0}));

  const auto ma = oracle::to_modes(g, a.spectrum);
  const auto mb = oracle::to_modes(g, b.spectrum);
  const auto mc = oracle::to_modes(g, c.spectrum);

  Field ab = dealiased_product(a, b);
  const auto ref2 = oracle::to_grid(g, oracle::convolve(ma, mb));
  for (std::size_t m = 0; m < g.N; ++m) CHECK(std::abs(ab.spectrum[m] - ref2[m]) < 1e-12);

  Field abc = dealiased_triple(a, b, c);
  const auto ref3 = oracle::to_grid(g, oracle::convolve(oracle::convolve(ma, mb), mc));
  for (std::size_t m = 0; m < g.N; ++m) CHECK(std::abs(abc.spectrum[m] - ref3[m]) < 1e-12);
}

TEST_CASE("estimate kinds know their shape and validity region", "[estimates]") {
  CHECK(estimate_arity(EstimateKind::bilinear_omega) == 2);
  CHECK(estimate_arity(EstimateKind::tau_square) == 1);
  CHECK(estimate_arity(EstimateKind::psi_cube) == 1);
  CHECK(estimate_arity(EstimateKind::psi_dx_square) == 1);
  CHECK(estimate_arity(EstimateKind::hsp_tau) == 2);
  CHECK(estimate_arity(EstimateKind::hsp_psi_dx) == 2);
  CHECK(estimate_arity(EstimateKind::hsp_psi_cube) == 3);

  // The low-regularity, p = 1 corner admits everything except the
  // derivative-pair bound, which needs s >= 1/p + 1/2 = 3/2.
  for (const auto& [s, p] : default_estimate_grid()) {
    CHECK(estimate_admissible(EstimateKind::bilinear_omega, s, p));
    CHECK(estimate_admissible(EstimateKind::tau_square, s, p));
    CHECK(estimate_admissible(EstimateKind::psi_cube, s, p));
    CHECK(estimate_admissible(EstimateKind::psi_dx_square, s, p));
    CHECK(estimate_admissible(EstimateKind::hsp_tau, s, p));
    CHECK(estimate_admissible(EstimateKind::hsp_psi_cube, s, p));
  }
  CHECK_FALSE(estimate_admissible(EstimateKind::hsp_psi_dx, 1.25, 1.0));
  CHECK(estimate_admissible(EstimateKind::hsp_psi_dx, 1.25, 2.0));
  CHECK_FALSE(estimate_admissible(EstimateKind::psi_cube, 0.9, 2.0));
  CHECK_FALSE(estimate_admissible(EstimateKind::psi_dx_square, 1.0, 2.0));

  EstimateProbeConfig cfg;
  cfg.s = 1.25;
  cfg.p = 1.0;
  try {
    probe_estimate(EstimateKind::hsp_psi_dx, cfg);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(e.field_path == "estimate.hsp_psi_dx");
    CHECK(e.hypothesis == "s >= max(1/p + 1/2, 1)");
  }
}

TEST_CASE("ratio probes stay bounded as the resolution grows", "[estimates]") {
  EstimateProbeConfig cfg;
  cfg.s = 1.5;
  cfg.p = 2.0;
  cfg.resolutions = {64, 128, 256};
  cfg.count = 15;
  cfg.ensemble.seed = 303;

  for (EstimateKind kind : {EstimateKind::tau_square, EstimateKind::bilinear_omega,
                            EstimateKind::hsp_tau}) {
    EstimateProbeResult r = probe_estimate(kind, cfg);
    REQUIRE(r.max_ratio.size() == 3);
    for (double v : r.max_ratio) {
      CHECK(v > 0.0);
      CHECK(std::isfinite(v));
    }
    CHECK(std::abs(r.slope) < 0.1);
  }
}

TEST_CASE("the campaign covers exactly the admissible cells", "[estimates]") {
  EstimateProbeConfig cfg;
  cfg.resolutions = {64, 128};
  cfg.count = 4;
  cfg.ensemble.seed = 9;
  const auto rows = run_campaign(cfg);
  // 6 kinds x 4 cells, plus hsp_psi_dx on the 3 cells with s >= 1/p + 1/2.
  CHECK(rows.size() == 27);
  for (const auto& row : rows) {
    CHECK(estimate_admissible(row.kind, row.s, row.p));
    CHECK(row.max_ratio.size() == 2);
  }
}

TEST_CASE("quotient symbols factor the model symbols through omega", "[estimates]") {
  const ModelParams p = hamiltonian_params();
  for (double xi : {0.3, 1.0, 2.5, 7.0}) {
    const double om = symbol_eval(SymbolKind::omega, xi, p);
    CHECK(quotient_eval(QuotientKind::tau_over_omega, xi, p).real() * om ==
          Catch::Approx(symbol_eval(SymbolKind::tau, xi, p)).epsilon(1e-13));
    CHECK(quotient_eval(QuotientKind::psi_bessel_over_omega, xi, p).real() * om ==
          Catch::Approx(symbol_eval(SymbolKind::psi, xi, p) * std::sqrt(1.0 + xi * xi))
              .epsilon(1e-13));
    const complex d = quotient_eval(QuotientKind::derivative_over_bessel, xi, p);
    CHECK(d.real() == 0.0);
    CHECK(d.imag() == Catch::Approx(xi / std::sqrt(1.0 + xi * xi)).epsilon(1e-13));
    // Oddness in xi.
    for (QuotientKind k : {QuotientKind::tau_over_omega, QuotientKind::psi_bessel_over_omega,
                           QuotientKind::derivative_over_bessel}) {
      CHECK(std::abs(quotient_eval(k, -xi, p) + quotient_eval(k, xi, p)) < 1e-13);
    }
  }
  CHECK(std::abs(quotient_eval(QuotientKind::tau_over_omega, 0.0, p)) == 0.0);
}

TEST_CASE("single-tone draws make the L2 multiplier ratio exact", "[estimates]") {
  MultiplierProbeConfig cfg;
  cfg.N = 128;
  cfg.exponents = {2.0};
  cfg.count = 25;
  cfg.ensemble.decay = inf;
  cfg.ensemble.band_limit = 8.0;
  cfg.ensemble.seed = 71;

  const Grid g = make_grid(cfg.L, cfg.N);
  for (QuotientKind kind : {QuotientKind::tau_over_omega, QuotientKind::derivative_over_bessel}) {
    MultiplierProbeResult r = probe_multiplier_norm(kind, cfg);
    // Recover the drawn frequencies and evaluate the symbol there directly.
    double expected = 0.0;
    for (std::size_t draw = 0; draw < cfg.count; ++draw) {
      Field f = random_field(g, cfg.ensemble, draw);
      for (std::size_t m = 0; m < g.N; ++m) {
        if (g.mode(m) > 0 && f.spectrum[m] != complex{0.0, 0.0})
          expected = std::max(expected, std::abs(quotient_eval(kind, g.freq(m), cfg.params)));
      }
    }
    REQUIRE(r.max_ratio.size() == 1);
    CHECK(r.max_ratio[0] == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("the free propagator is an exact band-norm isometry at inner r=2", "[estimates]") {
  // Phase rotation preserves each band's l^2 mass, so the invariance holds
  // for every outer exponent, not just p = 2.
  for (double p : {1.0, 2.0, 4.0}) {
    GrowthProbeConfig cfg;
    cfg.r = 2.0;
    cfg.p = p;
    cfg.N = 128;
    cfg.count = 10;
    cfg.ensemble.seed = 17;
    GrowthProbeResult r = probe_semigroup_growth(cfg);
    for (double v : r.max_ratio) CHECK(v == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(r.slope) < 1e-10);
  }
}

TEST_CASE("inner L^1 band norms of the free propagator grow at most like <t>", "[estimates]") {
  GrowthProbeConfig cfg;
  cfg.r = 1.0;
  cfg.N = 128;
  cfg.count = 10;
  cfg.ensemble.seed = 17;
  GrowthProbeResult r = probe_semigroup_growth(cfg);
  CHECK(r.slope <= 1.15);
  // Growth is genuine at r = 1: the coherent packets spread and some ratio
  // exceeds 1 by a margin, increasing with t.
  double peak = 0.0;
  for (double v : r.max_ratio) peak = std::max(peak, v);
  CHECK(peak > 1.05);
  for (std::size_t i = 1; i < r.max_ratio.size(); ++i)
    CHECK(r.max_ratio[i] >= r.max_ratio[i - 1] - 1e-12);
}

TEST_CASE("embedding and product-rule ratios sit below their ceilings", "[estimates]") {
  const Grid g = make_grid(16.0 * pi, 128);
  EnsembleSpec spec;
  spec.seed = 23;
  const double embed = probe_embedding_ratio(g, 1.0, spec, 30);
  CHECK(embed > 0.0);
  CHECK(embed < 1.0);  // frozen after first calibration
  const double leib = probe_leibniz_ratio(g, 1.5, spec, 30);
  CHECK(leib > 0.0);
  CHECK(leib < 1.0);  // frozen after first calibration
}

TEST_CASE("the slope fit is exact on affine data", "[estimates]") {
  std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> y = {1.0, 3.0, 5.0, 7.0};
  CHECK(kdvbbm::detail::fit_slope(x, y) == Catch::Approx(2.0).epsilon(1e-14));
  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(kdvbbm::detail::fit_slope(one, one), config_error);
  std::vector<double> flat = {2.0, 2.0};
  std::vector<double> yy = {0.0, 1.0};
  CHECK_THROWS_AS(kdvbbm::detail::fit_slope(flat, yy), config_error);
}
