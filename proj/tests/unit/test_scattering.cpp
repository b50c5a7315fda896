#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "ptbilayer/errors.hpp"
#include "ptbilayer/scattering.hpp"

using namespace ptbilayer;

namespace {

constexpr double kW0 = 1000e12;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("matched interface is the identity") {
  const RefractiveIndex one{1.0};
  for (double z : {-1e-8, 0.0, 3e-8}) {
    CHECK(max_abs_difference(interface_matrix(one, one, kW0, z), ComplexMatrix2::identity()) < 1e-15);
  }
}

TEST_CASE("single interface 1 -> 2") {
  const ComplexMatrix2 t = interface_matrix(RefractiveIndex{1.0}, RefractiveIndex{2.0}, kW0, 0.0);
  const double a = 3.0 / (2.0 * std::sqrt(2.0));
  const double b = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(max_abs_difference(t, ComplexMatrix2{a, b, b, a}) < 1e-15);
  CHECK(std::abs(-t.m21 / t.m22 - cplx{-1.0 / 3.0}) < 1e-15);
  CHECK_THROWS_AS(interface_matrix(RefractiveIndex{cplx{0.0, 1.0}}, RefractiveIndex{1.0}, kW0, 0.0), InvalidArgument);
}

TEST_CASE("propagation matrix") {
  const double omega = constants::kSpeedOfLight;  // omega l / c = 1 with l = 1
  const ComplexMatrix2 r = propagation_matrix(RefractiveIndex{cplx{1.0, 0.1}}, omega, 1.0);
  CHECK(std::abs(r.m11 - std::exp(-0.1)) < 1e-15);
  CHECK(std::abs(r.m22 - std::exp(0.1)) < 1e-15);
  CHECK(max_abs_difference(propagation_matrix(RefractiveIndex{1.5}, omega, 1.0), ComplexMatrix2::identity()) == 0.0);
  CHECK(std::abs(propagation_matrix(RefractiveIndex{cplx{1.5, -0.2}}, omega, 1.0).m11) > 1.0);
}

TEST_CASE("vacuum bilayer") {
  Bilayer b = preset(PresetId::kSet1, 0.0);
  b.gain.eps_b = b.loss.eps_b = 1.0;
  CHECK(max_abs_difference(transfer_chain(b, kW0), ComplexMatrix2::identity()) < 1e-14);
  const EigenPair e = eigenvalues(scatter(b, kW0));
  CHECK(std::abs(e.lambda1 - 1.0) < 1e-14);
  CHECK(std::abs(e.lambda2 + 1.0) < 1e-14);
  const ConservationResiduals c = conservation_residuals(scatter(b, kW0));
  CHECK(c.generalized < 1e-14);
  CHECK_FALSE(c.phase.has_value());
}

TEST_CASE("transparent double slab conserves energy") {
  const Bilayer b = preset(PresetId::kSet1, 0.0);
  for (double ratio : {0.5, 1.0, 1.7}) {
    const ScatteringAmplitudes s = scatter(b, ratio * kW0);
    CHECK(s.transmittance() <= 1.0);
    CHECK(std::abs(s.transmittance() + s.reflectance_left() - 1.0) < 1e-10);
    CHECK(std::abs(s.reflectance_left() - s.reflectance_right()) < 1e-10);
  }
}

TEST_CASE("full-complex chain against a global-basis transfer matrix") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> alpha(0.0, 1000.0);
  std::uniform_real_distribution<double> ratio(0.2, 2.0);
  double worst = 0.0;
  double worst_det = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const PresetId id = i % 2 ? PresetId::kSet1 : PresetId::kSet2;
    const Bilayer b = preset(id, alpha(rng));
    const double omega = ratio(rng) * kW0;
    const ComplexMatrix2 a = transfer_chain(b, omega);
    const oracle::M2 o = oracle::bilayer(refractive_index(b.gain, omega).value, refractive_index(b.loss, omega).value,
                                         vacuum_wavenumber(omega), b.layer_thickness);
    const double scale = std::max({std::abs(o[0]), std::abs(o[1]), std::abs(o[2]), std::abs(o[3])});
    worst = std::max(worst, max_abs_difference(a, ComplexMatrix2{o[0], o[1], o[2], o[3]}) / scale);
    worst_det = std::max(worst_det, std::abs(a.determinant() - 1.0));
  }
  CHECK(worst < 1e-12);
  CHECK(worst_det < 1e-10);
}

TEST_CASE("scattering from transfer") {
  const ScatteringAmplitudes id = scattering_from_transfer(ComplexMatrix2::identity());
  CHECK(id.t == cplx{1.0});
  CHECK(id.r_l == cplx{0.0});
  CHECK(id.r_r == cplx{0.0});
  CHECK_THROWS_AS(scattering_from_transfer(ComplexMatrix2{1.0, 0.0, 0.0, 0.0}), SingularTransfer);
  CHECK_THROWS_AS(scattering_from_transfer(ComplexMatrix2{2.0, 0.0, 0.0, 1.0}), ConsistencyError);
}

TEST_CASE("set 1 eigenvalue phases") {
  const ScatteringAmplitudes s100 = scatter(preset(PresetId::kSet1, 100.0), kW0);
  const EigenPair e100 = eigenvalues(s100);
  CHECK(std::abs(std::abs(e100.lambda1) - 1.0) < 1e-6);
  CHECK(std::abs(std::abs(e100.lambda2) - 1.0) < 1e-6);
  CHECK(classify_phase(e100).tag == PhaseTag::kExact);
  CHECK(classify_phase(eigenvalues(scatter(preset(PresetId::kSet1, 500.0), kW0))).tag == PhaseTag::kExact);

  const EigenPair e900 = eigenvalues(scatter(preset(PresetId::kSet1, 900.0), kW0));
  CHECK(std::abs(e900.lambda1) > 1.0);
  CHECK(std::abs(std::abs(e900.lambda1) * std::abs(e900.lambda2) - 1.0) < 1e-6);
  CHECK(classify_phase(eigenvalues(scatter(preset(PresetId::kSet1, 950.0), kW0))).tag == PhaseTag::kBroken);

  CHECK(classify_phase(EigenPair{cplx{0.0, 1.0}, cplx{0.0, 1.0}}).tag == PhaseTag::kExceptional);
  CHECK(classify_phase(EigenPair{2.0, 2.0 * 1.1}).tag == PhaseTag::kUnbalanced);
  CHECK_THROWS_AS(classify_phase(EigenPair{2.0, 2.2}, 1e-4, true), ConsistencyError);
}

TEST_CASE("eigenvalues: scattering matrix against transfer-matrix roots") {
  for (double a : {1.0, 24.0, 300.0, 889.0, 950.0}) {
    const ComplexMatrix2 m = transfer_chain(preset(PresetId::kSet1, a), kW0);
    const EigenPair e = eigenvalues(scattering_from_transfer(m));
    const EigenPair f = eigenvalues_from_transfer(m);
    CHECK(std::abs(e.lambda1 - f.lambda1) < 1e-8);
    CHECK(std::abs(e.lambda2 - f.lambda2) < 1e-8);
    const ComplexMatrix2 s = scattering_from_transfer(m).matrix();
    for (cplx l : {e.lambda1, e.lambda2}) {
      CHECK(std::abs(l * l - s.trace() * l + s.determinant()) < 1e-10);
    }
  }
}

TEST_CASE("generalized conservation for set 1") {
  double worst = 0.0;
  for (double a = 1.0; a <= 800.0; a += 7.0) {
    worst = std::max(worst, conservation_residuals(scatter(preset(PresetId::kSet1, a), kW0)).generalized);
  }
  CHECK(worst <= 1e-8);
  const double w2 = preset_pt_solution(PresetId::kSet2).omega_pt;
  const ScatteringAmplitudes s2 = scatter(preset(PresetId::kSet2, 2.0), w2);
  CHECK(conservation_residuals(s2).generalized <= 1e-8);
  CHECK(s2.transmittance() < 1.0);
}

TEST_CASE("ATR brackets") {
  auto t_minus_one = [](double a) { return scatter(preset(PresetId::kSet1, a), kW0).transmittance() - 1.0; };
  CHECK(t_minus_one(20.0) * t_minus_one(30.0) < 0.0);
  CHECK(t_minus_one(105.0) * t_minus_one(125.0) < 0.0);
}

TEST_CASE("phase relations away from crossings") {
  for (double a : {5.0, 60.0, 300.0}) {
    const auto c = conservation_residuals(scatter(preset(PresetId::kSet1, a), kW0));
    REQUIRE(c.phase.has_value());
    CHECK(*c.phase < 1e-6);
  }
}

TEST_CASE("paper mode") {
  // real indices: both modes coincide
  const Bilayer b = preset(PresetId::kSet1, 0.0);
  const ComplexMatrix2 full = transfer_chain(b, kW0);
  const ComplexMatrix2 paper = transfer_chain(b, kW0, TransferMode::kPaperRealPart);
  CHECK(max_abs_difference(full, paper) < 1e-15);
  // printed interface entries
  const RefractiveIndex n1{cplx{1.5, 0.3}};
  const RefractiveIndex n2{cplx{1.2, -0.4}};
  const double z = 7e-9;
  const double kz = vacuum_wavenumber(kW0) * z;
  const ComplexMatrix2 t = interface_matrix(n1, n2, kW0, z, TransferMode::kPaperRealPart);
  const double a = 1.5, c = 1.2;
  const cplx i{0.0, 1.0};
  const cplx t11 = std::sqrt(a / c) * (c + a) / (2 * a) * std::exp(i * (a - c) * kz);
  const cplx t12 = std::sqrt(a / c) * (c - a) / (2 * a) * std::exp(-i * (a + c) * kz);
  CHECK(std::abs(t.m11 - t11) < 1e-15);
  CHECK(std::abs(t.m12 - t12) < 1e-15);
  CHECK(std::abs(t.m21 - t12 * std::exp(2.0 * i * (a + c) * kz)) < 1e-15);
  CHECK(std::abs(t.m22 - t11 * std::exp(-2.0 * i * (a - c) * kz)) < 1e-15);
  CHECK(std::abs(transfer_chain(preset(PresetId::kSet1, 50.0), kW0, TransferMode::kPaperRealPart).determinant() - 1.0) <
        1e-12);
  CHECK(parse_transfer_mode("paper") == TransferMode::kPaperRealPart);
  CHECK(to_string(TransferMode::kFullComplex) == "full-complex");
}

TEST_CASE("wrap_phase") {
  CHECK(wrap_phase(constants::kPi) == doctest::Approx(constants::kPi));
  CHECK(wrap_phase(-constants::kPi) == doctest::Approx(constants::kPi));
  CHECK(wrap_phase(3 * constants::kPi / 2) == doctest::Approx(-constants::kPi / 2));
  CHECK(wrap_phase(0.25) == 0.25);
  CHECK(std::abs(wrap_phase(20.0) - (20.0 - 6 * constants::kPi)) < 1e-12);
}

TEST_CASE("reciprocal single-t reading") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha(0.0, 1000.0);
  for (int i = 0; i < 500; ++i) {
    const ComplexMatrix2 m = transfer_chain(preset(PresetId::kSet1, alpha(rng)), kW0);
    CHECK(rel(m.determinant() / m.m22, 1.0 / m.m22) < 1e-8);
  }
}
