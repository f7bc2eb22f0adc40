#include "cornerlab/fourier.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cornerlab;

namespace {

ComplexField field(int arity, std::int64_t n, std::vector<std::complex<double>> v) {
  return ComplexField(arity, n, std::move(v));
}

}  // namespace

TEST_CASE("transform of simple 1-D fields") {
  auto delta = ComplexField::indicator(LineSet(8, {0}));
  auto d = dft(delta);
  for (std::size_t r = 0; r < 8; ++r) CHECK(std::abs(d[r] - 1.0) < 1e-12);

  auto ones = dft(ComplexField::constant(1, 8, 1.0));
  CHECK(std::abs(ones[0] - 8.0) < 1e-12);
  for (std::size_t r = 1; r < 8; ++r) CHECK(std::abs(ones[r]) < 1e-12);

  auto two = dft(field(1, 2, {1.0, -1.0}));
  CHECK(std::abs(two[0]) < 1e-12);
  CHECK(std::abs(two[1] - 2.0) < 1e-12);
}

TEST_CASE("transform of simple 2-D fields") {
  auto delta = dft(ComplexField::indicator(make_grid_set(5, {{0, 0}})));
  for (auto z : delta.values()) CHECK(std::abs(z - 1.0) < 1e-12);
  auto ones = dft(ComplexField::constant(2, 4, 1.0));
  CHECK(std::abs(ones[0] - 16.0) < 1e-12);
  for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(ones[i]) < 1e-12);
}

TEST_CASE("sign convention matches the naive sum") {
  // f = indicator of {1} in Z_4: F(r) = exp(-2 pi i r / 4)
  auto f = dft(ComplexField::indicator(LineSet(4, {1})));
  CHECK(std::abs(f[1] - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(f[3] - std::complex<double>(0, 1)) < 1e-12);
}

TEST_CASE("fast transforms match the naive oracle") {
  oracle::Lcg g(21);
  for (std::int64_t n : {1, 2, 3, 5, 7, 8, 12, 16, 31, 64, 97, 100}) {
    auto v = oracle::random_field(g, static_cast<std::size_t>(n));
    CHECK(oracle::rel(dft(field(1, n, v)).values(), oracle::dft(v, n, 1)) < 1e-9);
  }
  for (std::int64_t n : {2, 6, 8, 9}) {
    auto v = oracle::random_field(g, static_cast<std::size_t>(n * n));
    CHECK(oracle::rel(dft(field(2, n, v)).values(), oracle::dft(v, n, 2)) < 1e-9);
    CHECK(oracle::rel(dft_direct(field(2, n, v)).values(), oracle::dft(v, n, 2)) < 1e-9);
  }
}

TEST_CASE("single coefficient matches the full transform") {
  oracle::Lcg g(4);
  auto f = field(2, 7, oracle::random_field(g, 49));
  auto s = dft(f);
  for (std::int64_t r1 = 0; r1 < 7; ++r1)
    for (std::int64_t r2 = 0; r2 < 7; ++r2) CHECK(std::abs(dft_coefficient(f, r1, r2) - s.at(r1, r2)) < 1e-9);
}

TEST_CASE("inverse round trip and energy identity") {
  oracle::Lcg g(9);
  for (std::int64_t n : {8, 12, 16, 64}) {
    for (int arity : {1, 2}) {
      if (arity == 2 && n == 64) continue;
      const auto size = static_cast<std::size_t>(arity == 1 ? n : n * n);
      auto f = field(arity, n, oracle::random_field(g, size));
      auto s = dft(f);
      CHECK(relative_l2_distance(inverse_dft(s), f) < 1e-9);
      const double lhs = s.l2_norm() * s.l2_norm();
      const double rhs = std::pow(static_cast<double>(n), arity) * f.l2_norm() * f.l2_norm();
      CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
    }
  }
}

TEST_CASE("correlation of simple fields") {
  auto d = ComplexField::indicator(LineSet(4, {0}));
  auto c = cross_correlation(d, d);
  CHECK(std::abs(c[0] - 1.0) < 1e-12);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(c[k]) < 1e-12);
  auto ones = ComplexField::constant(1, 4, 1.0);
  auto flat = cross_correlation(ones, ones);
  for (auto z : flat.values()) CHECK(std::abs(z - 4.0) < 1e-12);
}

TEST_CASE("correlation routes agree with a naive loop") {
  oracle::Lcg g(13);
  const std::int64_t n = 8;
  for (int trial = 0; trial < 10; ++trial) {
    auto fv = oracle::random_field(g, n), gv = oracle::random_field(g, n);
    std::vector<std::complex<double>> naive(n);
    for (std::int64_t k = 0; k < n; ++k)
      for (std::int64_t s = 0; s < n; ++s) naive[k] += fv[s] * std::conj(gv[oracle::mod(s - k, n)]);
    auto f = field(1, n, fv), h = field(1, n, gv);
    CHECK(oracle::rel(cross_correlation(f, h, CorrelationMethod::direct).values(), naive) < 1e-12);
    CHECK(oracle::rel(cross_correlation(f, h, CorrelationMethod::spectral).values(), naive) < 1e-9);
  }
  auto f2 = field(2, 6, oracle::random_field(g, 36)), g2 = field(2, 6, oracle::random_field(g, 36));
  CHECK(relative_l2_distance(cross_correlation(f2, g2, CorrelationMethod::direct),
                             cross_correlation(f2, g2, CorrelationMethod::spectral)) < 1e-9);
}

TEST_CASE("mismatched shapes are rejected") {
  auto a = ComplexField::constant(1, 4, 1.0), b = ComplexField::constant(1, 5, 1.0);
  CHECK_THROWS_AS(cross_correlation(a, b), InputError);
}
