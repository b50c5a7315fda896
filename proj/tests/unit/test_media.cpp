#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "ptbilayer/errors.hpp"
#include "ptbilayer/media.hpp"

using namespace ptbilayer;

namespace {

constexpr double kTrad = 1e12;

// Long-double evaluation of the Lorentz term, written out in real arithmetic.
std::complex<long double> lorentz_oracle(long double eb, long double a, long double w0, long double g, long double w) {
  const long double re = w * w - w0 * w0;
  const long double im = w * g;
  const long double mag = re * re + im * im;
  const long double k = a * w0 * g;
  return {eb - k * re / mag, k * im / mag};
}

LorentzMedium set2_loss(double alpha) { return {3.22, alpha, 1200 * kTrad, 140 * kTrad}; }
LorentzMedium set1_medium(double alpha) { return {2.0, alpha, 1000 * kTrad, 67 * kTrad}; }

}  // namespace

TEST_CASE("permittivity on resonance") {
  const cplx loss = permittivity(set1_medium(2.0), 1000 * kTrad).value;
  CHECK(loss.real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(loss.imag() == doctest::Approx(2.0).epsilon(1e-14));
  const cplx gain = permittivity(set1_medium(-2.0), 1000 * kTrad).value;
  CHECK(gain.imag() == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("permittivity against a long-double oracle") {
  const cplx e = permittivity(set2_loss(2.0), 1580 * kTrad).value;
  const auto o = lorentz_oracle(3.22L, 2.0L, 1200e12L, 140e12L, 1580e12L);
  CHECK(std::abs(e.real() - static_cast<double>(o.real())) < 1e-13);
  CHECK(std::abs(e.imag() - static_cast<double>(o.imag())) < 1e-13);
  CHECK(e.real() == doctest::Approx(2.9153).epsilon(1e-4));
  CHECK(e.imag() == doctest::Approx(0.0638).epsilon(1e-2));
}

TEST_CASE("high-frequency limit") {
  const LorentzMedium m = set2_loss(5.0);
  CHECK(std::abs(permittivity(m, 1e6 * m.omega0).value - cplx{m.eps_b}) < 1e-9);
}

TEST_CASE("Im eps carries the sign of alpha") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(-100.0, 100.0);
  std::uniform_real_distribution<double> ratio(0.01, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const LorentzMedium m = set1_medium(alpha(rng));
    const double im = permittivity(m, ratio(rng) * m.omega0).value.imag();
    CHECK((m.alpha > 0 ? im > 0 : im < 0));
  }
}

TEST_CASE("refractive index branch") {
  CHECK(refractive_index(ComplexPermittivity{4.0}).value == cplx{2.0, 0.0});
  const cplx n = refractive_index(ComplexPermittivity{cplx{2.0, 2.0}}).value;
  CHECK(n.real() == doctest::Approx(1.55377).epsilon(1e-5));
  CHECK(n.imag() == doctest::Approx(0.64359).epsilon(1e-5));
  CHECK(std::abs(n * n - cplx{2.0, 2.0}) < 1e-14);
  const cplx m = refractive_index(ComplexPermittivity{cplx{2.0, -2.0}}).value;
  CHECK(m == std::conj(n));
  CHECK_THROWS_AS(refractive_index(ComplexPermittivity{0.0}), InvalidArgument);
  const cplx neg = refractive_index(ComplexPermittivity{cplx{-4.0, -0.0}}).value;
  CHECK(neg.imag() > 0.0);
}

TEST_CASE("refractive index round trip, 1e6 samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> log_mag(-3.0, 3.0);
  std::uniform_real_distribution<double> arg(-3.14159265358979, 3.14159265358979);
  double worst = 0.0;
  bool branch_ok = true;
  for (int i = 0; i < 1000000; ++i) {
    const cplx x = std::polar(std::pow(10.0, log_mag(rng)), arg(rng));
    const cplx n = refractive_index(ComplexPermittivity{x}).value;
    worst = std::max(worst, std::abs(n * n - x) / std::abs(x));
    branch_ok = branch_ok && n.real() >= 0.0;
  }
  CHECK(worst <= 1e-12);
  CHECK(branch_ok);
}

TEST_CASE("balanced gain") {
  const LorentzMedium g = set1_medium(0.0);
  for (double w : {0.3, 1.0, 2.7}) {
    CHECK(pt_balanced_gain(set1_medium(7.5), g, w * 1000 * kTrad) == doctest::Approx(7.5).epsilon(1e-14));
  }
  CHECK(pt_balanced_gain(set2_loss(0.0), g, 1580 * kTrad) == 0.0);
  const double f1 = pt_balanced_gain(set2_loss(2.0), g, 1580 * kTrad);
  const double f3 = pt_balanced_gain(set2_loss(6.0), g, 1580 * kTrad);
  CHECK(std::abs(f3 - 3.0 * f1) <= 1e-12 * f3);
  CHECK(f1 > 20.2);
  CHECK(f1 < 20.4);
  // imaginary parts actually cancel
  LorentzMedium gain = g;
  gain.alpha = -f1;
  CHECK(std::abs(permittivity(gain, 1580 * kTrad).value.imag() + permittivity(set2_loss(2.0), 1580 * kTrad).value.imag()) <
        1e-14);
}

TEST_CASE("background offset") {
  const LorentzMedium g = set1_medium(0.0);
  CHECK(std::abs(pt_delta_epsilon(set1_medium(3.0), g, 1000 * kTrad)) < 1e-14);
  CHECK(pt_delta_epsilon(set2_loss(0.0), g, 1580 * kTrad) == 0.0);
  const double d = pt_delta_epsilon(set2_loss(2.0), g, 1580 * kTrad);
  CHECK(d > 1.20);
  CHECK(d < 1.23);
  // matches the real-part difference after balancing the imaginary parts
  LorentzMedium gain = g;
  gain.alpha = -pt_balanced_gain(set2_loss(2.0), g, 1580 * kTrad);
  LorentzMedium loss = set2_loss(2.0);
  loss.eps_b = gain.eps_b + d;
  CHECK(std::abs(permittivity(gain, 1580 * kTrad).value.real() - permittivity(loss, 1580 * kTrad).value.real()) < 1e-13);
}

TEST_CASE("balance frequency") {
  const LorentzMedium g = set1_medium(0.0);
  const auto s1 = pt_frequency(set1_medium(2.0), g, 0.0);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == doctest::Approx(1000 * kTrad).epsilon(1e-15));

  const double closed = pt_frequency_closed_form(set2_loss(2.0), g);
  CHECK(closed / kTrad == doctest::Approx(std::sqrt((1.44e6 * 67 + 1e6 * 140) / 207.0)).epsilon(1e-12));
  const auto scanned = pt_frequency(set2_loss(2.0), g, 0.0, RootSearch::kScan);
  REQUIRE(scanned.size() == 1);
  CHECK(std::abs(scanned[0] - closed) <= 1e-9 * closed);

  const auto roots = pt_frequency(set2_loss(2.0), g, 1.22);
  REQUIRE(roots.size() == 2);
  CHECK(roots.back() / (1000 * kTrad) == doctest::Approx(1.58).epsilon(0.01 / 1.58));
  CHECK(pt_frequency(set2_loss(2.0), g, 50.0).empty());
}

TEST_CASE("verify_pt") {
  for (double a : {0.1, 1.0, 10.0, 100.0, 890.0}) CHECK(verify_pt(preset(PresetId::kSet1, a), 1000 * kTrad, 1e-9));
  Bilayer b = preset(PresetId::kSet1, 50.0);
  b.gain.alpha = -49.0;
  CHECK_FALSE(verify_pt(b, 1000 * kTrad, 1e-9));
  const PtSolution pt = preset_pt_solution(PresetId::kSet2);
  CHECK(verify_pt(preset(PresetId::kSet2, 2.0), pt.omega_pt, 1e-6));
  CHECK_FALSE(verify_pt(preset(PresetId::kSet2, 10.0), pt.omega_pt, 1e-6));
}

TEST_CASE("presets") {
  const Bilayer s1 = preset(PresetId::kSet1, 2.0);
  CHECK(s1.loss.alpha == 2.0);
  CHECK(s1.gain.alpha == -2.0);
  CHECK(s1.layer_thickness == doctest::Approx(10e-9));
  CHECK(s1.interface_position(1) == -s1.layer_thickness);
  CHECK(s1.interface_position(3) == s1.layer_thickness);
  const Bilayer s2 = preset(PresetId::kSet2, 2.0);
  CHECK(s2.loss.eps_b == 3.22);
  CHECK(s2.gain.alpha == doctest::Approx(-20.35).epsilon(0.005));
  // set 2 keeps its gain when only the loss is swept
  CHECK(preset(PresetId::kSet2, 500.0).gain.alpha == s2.gain.alpha);
  const Bilayer zero = preset(PresetId::kSet1, 0.0);
  CHECK(zero.gain.alpha == 0.0);
  CHECK(zero.loss.alpha == 0.0);
  CHECK_THROWS_AS(parse_preset("set3"), InvalidArgument);
  CHECK_THROWS_AS(preset(PresetId::kSet1, -1.0), InvalidArgument);
  CHECK_THROWS_AS(s1.interface_position(4), InvalidArgument);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS((LorentzMedium{2.0, 1.0, 0.0, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((LorentzMedium{2.0, 1.0, 1.0, -1.0}.validate()), InvalidArgument);
  Bilayer b = preset(PresetId::kSet1, 2.0);
  b.gain.alpha = 1.0;
  CHECK_THROWS_AS(b.validate(), InvalidArgument);
}
