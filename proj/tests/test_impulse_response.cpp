#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shaping/impulse_response.hpp"
#include "shaping/presets.hpp"
#include "shaping/random.hpp"

using namespace shaping;

namespace {

ModalImpulseResponse kernel_of(const RationalTransferFunction& tf) {
  return impulse_from_fractions(partial_fractions(tf));
}

}  // namespace

TEST_CASE("closed forms of the preset kernels") {
  const auto k1 = kernel_of(dryden1(1.0, 3.0));
  const auto k3 = kernel_of(dryden3(1.0, 2.0, 3.0, 4.0));
  const auto k4 = kernel_of(oscillatory_block(2.0, 0.5));
  for (double eta : {0.01, 0.5, 1.0, 2.7, 5.0}) {
    CHECK(k1(eta) == doctest::Approx(std::exp(-eta / 3.0) / 3.0).epsilon(1e-13));
    const double k3_ref = -std::exp(-eta / 3.0) / 3.0 + 1.5 * std::exp(-eta / 4.0) / 4.0 -
                          0.5 * eta * std::exp(-eta / 4.0) / 16.0;
    CHECK(k3(eta) == doctest::Approx(k3_ref).epsilon(1e-12));
    const double k4_ref = std::exp(-eta / 4.0) * std::sin(std::sqrt(3.0) * eta / 4.0) / std::sqrt(3.0);
    CHECK(k4(eta) == doctest::Approx(k4_ref).epsilon(1e-12));
  }
  CHECK(k1(0.0) == 0.0);
  CHECK(k1(-1.0) == 0.0);
}

TEST_CASE("Laplace transform of k recovers H") {
  for (const auto& preset : presets()) {
    const auto k = kernel_of(preset.tf);
    for (double s : {0.5, 1.0, 2.0}) {
      const double lap = oracle::laplace([&](double eta) { return k(eta); }, s);
      CHECK(lap == doctest::Approx(preset.tf.evaluate(s).real()).epsilon(1e-9));
    }
  }
}

TEST_CASE("exponential moments") {
  for (int p : {0, 1, 2, 3}) {
    for (std::complex<double> sigma : {std::complex<double>(-0.5, 0.0), std::complex<double>(-0.25, 0.4),
                                       std::complex<double>(1e-9, 0.0), std::complex<double>(0.0, 0.0)}) {
      for (double t : {0.1, 1.0, 5.0}) {
        const auto got = exponential_moment(p, sigma, t);
        const double re = oracle::integrate(
            [&](double x) { return (std::pow(x, p) * std::exp(sigma * x)).real(); }, 0.0, t);
        const double im = oracle::integrate(
            [&](double x) { return (std::pow(x, p) * std::exp(sigma * x)).imag(); }, 0.0, t);
        CHECK(std::abs(got - std::complex<double>(re, im)) <= 1e-12 * std::max(1.0, std::abs(got)));
      }
    }
  }
}

TEST_CASE("variance") {
  const auto k1 = kernel_of(dryden1(1.0, 3.0));
  CHECK(variance_at(k1, 1e6) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(variance_at(k1, 0.0) == 0.0);
  const auto k4 = kernel_of(oscillatory_block(2.0, 0.5));
  const double ref = oracle::integrate([&](double e) { return k4(e) * k4(e); }, 0.0, 5.0);
  CHECK(std::abs(variance_at(k4, 5.0) - ref) <= 1e-9);

  for (const auto& preset : presets()) {
    const auto k = kernel_of(preset.tf);
    double prev = 0.0;
    for (double t = 0.25; t <= 5.0; t += 0.25) {
      const double v = variance_at(k, t);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("kernel norms") {
  const double expected[] = {0.592251832, 0.166129081, 0.008291980, 0.541178917};
  int i = 0;
  for (const auto& preset : presets()) {
    const auto k = kernel_of(preset.tf);
    const double norm = kernel_norm_squared(k, 5.0);
    CHECK(std::abs(norm - expected[i]) <= 1e-6);
    const double quad = oracle::integrate([&](double e) { return (5.0 - e) * k(e) * k(e); }, 0.0, 5.0);
    CHECK(std::abs(norm - quad) <= 1e-10);
    ++i;
  }
  SUBCASE("symbolic forms") {
    const double k1 = 2.5 - 0.75 * (1.0 - std::exp(-10.0 / 3.0));
    CHECK(kernel_norm_squared(kernel_of(dryden1(1.0, 3.0)), 5.0) == doctest::Approx(k1 / 3.0).epsilon(1e-12));
    const double a = 5.0 * std::sqrt(3.0) / 2.0;
    const double k4 = (2.0 / 3.0 + std::cos(a) / 12.0 + std::sqrt(3.0) * std::sin(a) / 12.0) * std::exp(-2.5) + 0.5;
    CHECK(kernel_norm_squared(kernel_of(oscillatory_block(2.0, 0.5)), 5.0) == doctest::Approx(k4).epsilon(1e-12));
  }
  CHECK(kernel_norm_squared(ModalImpulseResponse::unit_step(), 5.0) == doctest::Approx(12.5));
}

TEST_CASE("Ito sum") {
  const auto k3 = kernel_of(dryden3(1.0, 2.0, 3.0, 4.0));
  SUBCASE("single step") {
    GaussianSource src(1);
    const auto tr = ito_sum_simulate(k3, 5.0, 1, src);
    REQUIRE(tr.values.size() == 2);
    CHECK(tr.values[0] == 0.0);
    CHECK(tr.values[1] == doctest::Approx(std::sqrt(5.0) * k3(5.0) * GaussianSource(1).at(0)));
    CHECK(src.position() == 1);
  }
  SUBCASE("recursion equals the direct double sum") {
    for (const auto& preset : presets()) {
      const auto k = kernel_of(preset.tf);
      GaussianSource src(77, 3);
      const auto fast = ito_sum_simulate(k, 5.0, 400, src);
      const auto direct = oracle::ito_sum_direct(k, 5.0, 400, GaussianSource(77, 3));
      REQUIRE(direct.size() == fast.values.size());
      for (std::size_t j = 0; j < direct.size(); ++j) CHECK(std::abs(fast.values[j] - direct[j]) <= 1e-12);
    }
  }
}
