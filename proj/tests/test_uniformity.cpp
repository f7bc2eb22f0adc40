#include "cornerlab/uniformity.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cornerlab;

namespace {

using cx = std::complex<double>;

// Direct cube sum over Z_N^2 with e1 = (1, 0), e2 = (0, -1).
cx naive_cube_sum(const ComplexField& f) {
  const auto n = f.modulus();
  cx acc = 0;
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t r = 0; r < n; ++r) {
          const auto yu = oracle::mod(y - u, n), xr = oracle::mod(x + r, n);
          acc += f.at(x, y) * std::conj(f.at(x, yu)) * std::conj(f.at(xr, y)) * f.at(xr, yu);
        }
  return acc;
}

// sum_k |sum_s f(s) conj f(s - k)|^2 in one dimension.
double naive_autocorrelation_energy(const std::vector<cx>& f) {
  const auto n = static_cast<std::int64_t>(f.size());
  double total = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    cx c = 0;
    for (std::int64_t s = 0; s < n; ++s) c += f[s] * std::conj(f[oracle::mod(s - k, n)]);
    total += std::norm(c);
  }
  return total;
}

Box random_subbox(oracle::Lcg& g, std::int64_t n, std::int64_t w) {
  std::vector<std::int64_t> xs, ys;
  while (static_cast<std::int64_t>(xs.size()) < w) {
    auto v = g.below(n);
    if (std::find(xs.begin(), xs.end(), v) == xs.end()) xs.push_back(v);
  }
  while (static_cast<std::int64_t>(ys.size()) < w) {
    auto v = g.below(n);
    if (std::find(ys.begin(), ys.end(), v) == ys.end()) ys.push_back(v);
  }
  return {LineSet(n, xs), LineSet(n, ys)};
}

}  // namespace

TEST_CASE("one-dimensional functional on constant fields") {
  auto zero = alpha_uniformity_1d(ComplexField::constant(1, 9, 0.0));
  CHECK(zero.minimalAlpha == 0);
  for (std::int64_t n : {3, 8, 13}) {
    auto one = alpha_uniformity_1d(ComplexField::constant(1, n, 1.0));
    const double n3 = std::pow(static_cast<double>(n), 3);
    CHECK(one.functionalValue == doctest::Approx(n3));
    CHECK(one.minimalAlpha == doctest::Approx(1.0));
    CHECK(one.denominator == doctest::Approx(n3));
  }
}

TEST_CASE("one-dimensional functional routes agree with the naive energy") {
  oracle::Lcg g(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cx> v(16);
    for (auto& z : v) z = g.unit() < 0.5 ? 1.0 : -1.0;
    auto r = alpha_uniformity_1d(ComplexField(1, 16, v));
    const double naive = naive_autocorrelation_energy(v);
    CHECK(std::abs(r.directValue - naive) <= 1e-9 * naive);
    CHECK(std::abs(r.spectralValue - naive) <= 1e-9 * naive);
    CHECK(r.methodAgreement < 1e-9);
  }
}

TEST_CASE("two-dimensional functional") {
  CHECK(alpha_uniformity_2d(balanced_function(GridSet::full(6))).minimalAlpha == doctest::Approx(0));
  CHECK(alpha_uniformity_2d(ComplexField::constant(2, 5, 1.0)).minimalAlpha == doctest::Approx(1.0));
  oracle::Lcg g(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = balanced_function(oracle::random_set(g, 8, 0.5));
    auto r = alpha_uniformity_2d(f);
    CHECK(std::abs(r.directValue - r.spectralValue) <= 1e-9 * std::max(1.0, r.directValue));
    // spectral form via the naive transform
    auto s = oracle::dft(f.values(), 8, 2);
    double fourth = 0;
    for (auto z : s) fourth += std::norm(z) * std::norm(z);
    CHECK(std::abs(fourth / 64 - r.directValue) <= 1e-9 * std::max(1.0, r.directValue));
  }
}

TEST_CASE("box norm trivial values") {
  for (std::int64_t n : {2, 5}) {
    auto one = box_norm(ComplexField::constant(2, n, 1.0), Box::full(n));
    CHECK(one.fourthPower == doctest::Approx(std::pow(n, 4)));
    CHECK(one.value == doctest::Approx(static_cast<double>(n)));
  }
  CHECK(box_norm(ComplexField::constant(2, 4, 0.0), Box::full(4)).fourthPower == 0);
}

TEST_CASE("box norm primal and dual forms match the naive cube sum") {
  oracle::Lcg g(29);
  for (int trial = 0; trial < 10; ++trial) {
    const std::int64_t n = 8;
    auto box = random_subbox(g, n, 5);
    ComplexField f(2, n);
    for (auto x : box.xs.members())
      for (auto y : box.ys.members()) f.at(x, y) = std::polar(g.unit(), 6.283185307179586 * g.unit());
    auto v = box_norm(f, box);
    const cx naive = naive_cube_sum(f);
    CHECK(std::abs(naive.imag()) < 1e-9 * std::max(1.0, std::abs(naive)));
    CHECK(std::abs(v.fourthPower - naive.real()) <= 1e-9 * std::max(1.0, naive.real()));
    CHECK(std::abs(v.dualFormulaFourthPower - v.fourthPower) <= 1e-8 * std::max(1.0, v.fourthPower));
    CHECK(std::abs(box_norm_primal(f) - box_norm_dual(f)) <= 1e-8 * std::max(1.0, box_norm_dual(f)));
  }
}

TEST_CASE("box norm triangle inequality") {
  oracle::Lcg g(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = ComplexField(2, 6, oracle::random_field(g, 36));
    auto h = ComplexField(2, 6, oracle::random_field(g, 36));
    ComplexField sum(2, 6);
    for (std::size_t i = 0; i < 36; ++i) sum[i] = f[i] + h[i];
    auto norm = [](const ComplexField& x) { return std::pow(box_norm_dual(x), 0.25); };
    CHECK(norm(sum) <= norm(f) + norm(h) + 1e-9);
  }
}

TEST_CASE("exact box fourth power matches the floating cube sum") {
  oracle::Lcg g(37);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = oracle::random_set(g, 6, 0.5);
    auto box = Box::full(6);
    const double exact = to_double(box_fourth_power_exact(a, box));
    const double naive = naive_cube_sum(balanced_box_function(a, box)).real();
    CHECK(std::abs(exact - naive) <= 1e-9 * std::max(1.0, naive));
    const double global = to_double(box_fourth_power_exact(a, box, Centering::global));
    const double viaDelta = to_double(box_fourth_power_exact(a, box, a.density()));
    CHECK(global == doctest::Approx(viaDelta));
  }
}

TEST_CASE("cube counts") {
  for (std::int64_t n : {3, 4}) {
    auto full = GridSet::full(n);
    CHECK(count_cubes(full, CubeMethod::brute).count == n * n * n * n);
    CHECK(count_cubes(full, CubeMethod::spectral).count == n * n * n * n);
  }
  auto one = make_grid_set(5, {{2, 3}});
  CHECK(count_cubes(one, CubeMethod::brute).count == 1);
  CHECK(count_cubes(one, CubeMethod::spectral).count == 1);
  CHECK(count_cubes(one, CubeMethod::brute, true).count == 0);

  oracle::Lcg g(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = oracle::random_set(g, 6, g.unit());
    const auto expect = oracle::cubes(a);
    CHECK(count_cubes(a, CubeMethod::brute).count == expect);
    CHECK(count_cubes(a, CubeMethod::spectral).count == expect);
    // degenerate quadruples: u = 0 or r = 0, counted by inclusion-exclusion
    std::int64_t rowPairs = 0, colPairs = 0;
    for (std::int64_t y = 0; y < 6; ++y) {
      std::int64_t c = 0;
      for (std::int64_t x = 0; x < 6; ++x) c += a.contains(x, y);
      rowPairs += c * c;
    }
    for (std::int64_t x = 0; x < 6; ++x) {
      std::int64_t c = 0;
      for (std::int64_t y = 0; y < 6; ++y) c += a.contains(x, y);
      colPairs += c * c;
    }
    const auto degenerate = rowPairs + colPairs - static_cast<std::int64_t>(a.size());
    CHECK(count_cubes(a, CubeMethod::spectral, true).count == expect - degenerate);
  }
}

TEST_CASE("progression discrepancy") {
  Box p{LineSet::interval(12, 2, 5), LineSet::interval(12, 9, 4)};
  auto full = progression_discrepancy(GridSet::full(12), p);
  CHECK(full.discrepancy == doctest::Approx(0));
  CHECK(full.holds);
  auto none = progression_discrepancy(make_grid_set(12, {}), p);
  CHECK(none.discrepancy == 0);
  CHECK(none.holds);

  CHECK(is_cyclic_interval(LineSet(8, {6, 7, 0, 1})));
  CHECK_FALSE(is_cyclic_interval(LineSet(8, {0, 2})));

  oracle::Lcg g(43);
  for (int set = 0; set < 5; ++set) {
    auto a = oracle::random_set(g, 16, g.unit());
    const double alpha = alpha_uniformity_2d(balanced_function(a)).minimalAlpha;
    for (int k = 0; k < 20; ++k) {
      Box q{LineSet::interval(16, g.below(16), 1 + g.below(16)), LineSet::interval(16, g.below(16), 1 + g.below(16))};
      auto r = progression_discrepancy(a, q, alpha);
      const double expect = std::abs(static_cast<double>(a.count_in(q)) - to_double(a.density()) *
                                                                              static_cast<double>(q.area()));
      CHECK(r.discrepancy == doctest::Approx(expect));
      // bound 16 alpha^(1/4) N^2
      CHECK(r.bound == doctest::Approx(16 * std::pow(alpha, 0.25) * 256));
      CHECK(r.holds);
    }
  }
}

TEST_CASE("cube bounds report") {
  auto full = cube_bounds_report(GridSet::full(5), Box::full(5));
  CHECK(full.cubes == 625);
  CHECK(full.lower == doctest::Approx(625));
  CHECK(full.lowerHolds);
  CHECK(full.upperApplicable);
  CHECK(full.upper == doctest::Approx(625));
  CHECK(full.upperHolds);
  auto none = cube_bounds_report(make_grid_set(5, {}), Box::full(5));
  CHECK(none.cubes == 0);
  CHECK(none.lowerHolds);

  // every row carries the same number of points, so row deviation is zero
  oracle::Lcg g(47);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> pts;
    for (std::int64_t y = 0; y < 8; ++y) {
      const auto off = g.below(8);
      for (std::int64_t k = 0; k < 3; ++k) pts.push_back({(off + k * (1 + g.below(2))) % 8, y});
    }
    auto a = make_grid_set(8, pts);
    auto r = cube_bounds_report(a, Box::full(8));
    CHECK(r.lowerHolds);
    CHECK(r.cubes == oracle::cubes(a));
    if (r.upperApplicable) CHECK(r.upperHolds);
  }
}
