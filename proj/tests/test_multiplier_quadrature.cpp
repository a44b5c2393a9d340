#include <catch_amalgamated.hpp>

#include "kdvbbm/multiplier.hpp"
#include "kdvbbm/params.hpp"
#include "kdvbbm/quadrature.hpp"
#include "kdvbbm/symbols.hpp"
#include "oracle.hpp"

using namespace kdvbbm;

TEST_CASE("the identity symbol is the identity", "[core]") {
  const Grid g = make_grid(2.0 * pi, 64);
  Field f = field_from_samples(g, oracle::random_real_samples(g, 3));
  const MultiplierSymbol one{"one", [](double) { return complex{1.0, 0.0}; }};
  Field out = apply_multiplier(f, one);
  ensure_samples(out);
  for (std::size_t j = 0; j < g.N; ++j) CHECK(std::abs(out.samples[j] - f.samples[j]) < 1e-13);
}

TEST_CASE("i*xi applied to cos gives -sin", "[core]") {
  const Grid g = make_grid(2.0 * pi, 128);
  Field f = sample_function(g, [](double x) { return std::cos(x); });
  const MultiplierSymbol ixi{"i*xi", [](double xi) { return complex{0.0, xi}; }};
  Field out = apply_multiplier(f, ixi);
  ensure_samples(out);
  for (std::size_t j = 0; j < g.N; ++j)
    CHECK(std::abs(out.samples[j] - complex{-std::sin(g.node(j)), 0.0}) < 1e-12);
}

TEST_CASE("the omega multiplier matches the direct-summation oracle", "[core]") {
  const Grid g = make_grid(2.0 * pi, 128);
  const auto samples = oracle::random_real_samples(g, 21);
  Field f = field_from_samples(g, samples);
  const ModelParams p = derive_params(1.0 / 12.0, 1.0);
  Field out = apply_multiplier(f, symbol_multiplier(SymbolKind::omega, p));
  ensure_samples(out);

  auto ref_spectrum = oracle::analysis(g, samples);
  for (std::size_t m = 0; m < g.N; ++m)
    ref_spectrum[m] *= symbol_eval(SymbolKind::omega, g.freq(m), p);
  const auto ref = oracle::synthesis(g, ref_spectrum);

  double scale = 0.0;
  for (const auto& s : ref) scale = std::max(scale, std::abs(s));
  for (std::size_t j = 0; j < g.N; ++j)
    CHECK(std::abs(out.samples[j] - ref[j]) <= 1e-10 * std::max(scale, 1.0));
}

TEST_CASE("non-finite symbols are rejected", "[core]") {
  const Grid g = make_grid(2.0 * pi, 16);
  Field f = zero_field(g);
  const MultiplierSymbol bad{"1/xi", [](double xi) { return complex{1.0 / xi, 0.0}; }};
  CHECK_THROWS_AS(apply_multiplier(f, bad), symbol_error);
}

TEST_CASE("apply_multiplier is linear", "[core]") {
  const Grid g = make_grid(6.0, 64);
  const ModelParams p = derive_params(1.0 / 12.0, 1.0);
  const MultiplierSymbol m = symbol_multiplier(SymbolKind::phi, p);
  Field f = field_from_samples(g, oracle::random_real_samples(g, 5));
  Field h = field_from_samples(g, oracle::random_real_samples(g, 6));
  Field lhs = apply_multiplier(lincomb({1.5, 0.0}, f, {-0.5, 0.0}, h), m);
  Field rhs = lincomb({1.5, 0.0}, apply_multiplier(f, m), {-0.5, 0.0}, apply_multiplier(h, m));
  ensure_spectrum(lhs);
  ensure_spectrum(rhs);
  for (std::size_t i = 0; i < g.N; ++i) CHECK(std::abs(lhs.spectrum[i] - rhs.spectrum[i]) < 1e-12);
}

TEST_CASE("spectral derivatives of tones are exact", "[core]") {
  const Grid g = make_grid(2.0 * pi, 128);

  SECTION("first derivative of sin is cos") {
    Field f = sample_function(g, [](double x) { return std::sin(x); });
    Field out = derivative(f, 1);
    ensure_samples(out);
    for (std::size_t j = 0; j < g.N; ++j)
      CHECK(std::abs(out.samples[j] - complex{std::cos(g.node(j)), 0.0}) < 1e-12);
  }

  SECTION("order zero is the identity") {
    Field f = field_from_samples(g, oracle::random_real_samples(g, 17));
    Field out = derivative(f, 0);
    ensure_samples(out);
    for (std::size_t j = 0; j < g.N; ++j) CHECK(out.samples[j] == f.samples[j]);
  }

  SECTION("fifth derivative of exp(2ix) multiplies by (2i)^5") {
    Field f = tone(g, 2);
    Field out = derivative(f, 5);
    ensure_spectrum(out);
    const complex want = std::pow(complex{0.0, 2.0}, 5);
    CHECK(std::abs(out.spectrum[g.slot(2)] - want) < 1e-12);
  }

  SECTION("orders above five are rejected") {
    Field f = zero_field(g);
    CHECK_THROWS_AS(derivative(f, 6), config_error);
  }
}

TEST_CASE("odd derivatives keep real fields real", "[core]") {
  const Grid g = make_grid(2.0 * pi, 64);
  // Random real data excites the Nyquist mode; zeroing it in odd orders is
  // what keeps the output real. The residue is roundoff amplified by the
  // multiplier magnitude, so compare against the output scale.
  Field f = field_from_samples(g, oracle::random_real_samples(g, 33));
  for (unsigned order : {1u, 3u, 5u}) {
    Field d = derivative(f, order);
    CHECK(max_imag(d) < 1e-12 * lp_norm(d, inf));
  }
}

TEST_CASE("periodic quadrature evaluates closed-form integrals", "[core]") {
  const Grid g = make_grid(2.0 * pi, 256);

  Field s = sample_function(g, [](double x) { return std::sin(x); });
  CHECK(std::abs(quadrature(s)) <= 1e-14);

  Field s2 = sample_function(g, [](double x) { return std::sin(x) * std::sin(x); });
  CHECK(quadrature(s2) == Catch::Approx(pi).epsilon(1e-12));

  // sech^2 tail is below 1e-12 at L = 64*pi, so the periodic sum sees the
  // full line integral 2/B.
  const double B = 1.7397;
  const Grid wide = make_grid(64.0 * pi, 2048);
  Field sech2 = sample_function(wide, [B](double x) {
    const double c = std::cosh(B * x);
    return 1.0 / (c * c);
  });
  CHECK(quadrature(sech2) == Catch::Approx(2.0 / B).epsilon(1e-8));
}

TEST_CASE("lp_norm covers the Lebesgue range", "[core]") {
  const Grid g = make_grid(2.0 * pi, 1024);

  Field one = sample_function(g, [](double) { return 1.0; });
  CHECK(lp_norm(one, 2.0) == Catch::Approx(std::sqrt(2.0 * pi)).epsilon(1e-12));

  Field s = sample_function(g, [](double x) { return std::sin(x); });
  CHECK(lp_norm(s, inf) == Catch::Approx(1.0).margin(1e-6));
  // integral of |sin| over a period is 4; the kinks sit on grid nodes, so
  // the trapezoid error is O(h^2), not spectral.
  CHECK(lp_norm(s, 1.0) == Catch::Approx(std::pow(4.0, 1.0)).margin(1e-4));

  Field f = field_from_samples(g, oracle::random_real_samples(g, 9));
  CHECK(lp_norm(f, 2.0) == Catch::Approx(spectral_l2(f)).epsilon(1e-12));

  CHECK_THROWS_AS(lp_norm(f, 0.5), config_error);
}
