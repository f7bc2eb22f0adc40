#include "cornerlab/graphview.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cornerlab;

TEST_CASE("gram spectrum trivial cases") {
  for (std::int64_t n : {1, 4, 9}) {
    auto s = gram_spectrum(GridSet::full(n), Box::full(n));
    CHECK(s.mu[0] == doctest::Approx(static_cast<double>(n * n)));
    for (std::size_t i = 1; i < s.mu.size(); ++i) CHECK(std::abs(s.mu[i]) < 1e-8);
    CHECK(s.deviation < 1e-9);
    CHECK(s.perronAligned);
    for (double u : s.vectors[0]) CHECK(u == doctest::Approx(1.0));
  }
  auto empty = gram_spectrum(make_grid_set(6, {}), Box::full(6));
  for (double m : empty.mu) CHECK(std::abs(m) < 1e-12);
}

TEST_CASE("gram spectrum matches a Jacobi eigensolver and the trace identities") {
  oracle::Lcg g(61);
  for (std::int64_t n : {5, 8, 12}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto a = oracle::random_set(g, n, g.unit());
      auto s = gram_spectrum(a, Box::full(n));
      auto t = oracle::column_pair_matrix(a);
      auto ev = oracle::jacobi_eigenvalues(t);
      for (std::int64_t i = 0; i < n; ++i) CHECK(std::abs(s.mu[i] - std::max(ev[i], 0.0)) < 1e-6 * (1 + n * n));
      double pair = 0;
      for (auto& row : t)
        for (double v : row) pair += v * v;
      CHECK(s.pairSquares == BigInt(static_cast<long long>(pair)));
      CHECK(s.traceSum == doctest::Approx(static_cast<double>(a.size())));
      CHECK(s.traceSquares == doctest::Approx(pair));
      CHECK(s.count == static_cast<std::int64_t>(a.size()));
      // eigenvectors scaled to |u|^2 = n and mutually orthogonal
      for (std::size_t i = 0; i < s.vectors.size(); ++i)
        for (std::size_t j = i; j < s.vectors.size(); ++j) {
          double dot = 0;
          for (std::int64_t k = 0; k < n; ++k) dot += s.vectors[i][k] * s.vectors[j][k];
          CHECK(std::abs(dot - (i == j ? static_cast<double>(n) : 0.0)) < 1e-6 * n);
        }
    }
  }
}

TEST_CASE("top eigenvalue dominates the Rayleigh quotient of the all-ones vector") {
  oracle::Lcg g(67);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = oracle::random_set(g, 16, g.unit());
    auto s = gram_spectrum(a, Box::full(16));
    const double delta = static_cast<double>(a.size()) / 256;
    CHECK(s.mu[0] >= delta * delta * 256 - 1e-6 * 256);
  }
}

TEST_CASE("spectral uniformity implications") {
  auto full = spectral_uniformity_check(GridSet::full(6), Box::full(6), 0, 0, 0.0);
  CHECK(full.mu1 == doctest::Approx(36));
  CHECK(full.mu1Lower.conclusion);
  CHECK(full.mu1Upper.hypothesis);
  CHECK(full.mu1Upper.conclusion);
  CHECK(full.forward.hypothesis);
  CHECK(full.forward.conclusion);
  CHECK(full.converse.conclusion);

  // half the rows fully occupied: marginals fail, so no implication applies
  auto half = GridSet::product(LineSet::full(8), LineSet::interval(8, 0, 4));
  auto r = spectral_uniformity_check(half, Box::full(8), 0.5, 0.5, 0.01);
  CHECK(r.alpha1Measured == doctest::Approx(0.5));
  CHECK_FALSE(r.marginalsHold);
  CHECK_FALSE(r.mu1Upper.hypothesis);
  CHECK_FALSE(r.forward.hypothesis);
  CHECK_FALSE(r.converse.hypothesis);
  CHECK(r.mu1Lower.conclusion);
}

TEST_CASE("level-set partition") {
  const std::size_t n = 8;
  std::vector<std::complex<double>> ones(n, 1.0);
  auto p = level_set_partition(ones, 0.5, 0.25, 1, static_cast<double>(n));
  CHECK(p.classes.size() == 1);
  CHECK(std::abs(p.centers[0] - 1.0) <= 0.25);
  CHECK(p.verified);

  std::vector<std::complex<double>> twoValued(n, 0.0);
  for (std::size_t i = 0; i < n; i += 2) twoValued[i] = std::sqrt(2.0);
  auto q = level_set_partition(twoValued, 0.5, 0.25, 1, static_cast<double>(n));
  CHECK(q.classes.size() == 2);
  CHECK(q.verified);

  oracle::Lcg g(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 10 + static_cast<std::size_t>(g.below(40));
    std::vector<std::complex<double>> v(m);
    double norm2 = 0;
    for (auto& z : v) {
      z = {g.unit() - 0.5, g.unit() - 0.5};
      norm2 += std::norm(z);
    }
    for (auto& z : v) z *= std::sqrt(static_cast<double>(m) / norm2);
    bool inside = true;
    for (auto z : v) inside = inside && std::abs(z) <= 4;
    if (!inside) continue;
    auto r = level_set_partition(v, 0.25, 0.125, 1, static_cast<double>(m));
    CHECK(r.countBound == doctest::Approx(4096));
    CHECK(r.classes.size() <= 1024);
    CHECK(r.verified);
    std::vector<int> seen(m, 0);
    for (std::size_t k = 0; k < r.classes.size(); ++k)
      for (auto i : r.classes[k]) {
        ++seen[i];
        CHECK(std::abs(v[i] - r.centers[k]) <= 0.125);
        for (auto j : r.classes[k]) CHECK(std::abs(v[i] - v[j]) <= 0.125 + 1e-12);
      }
    for (int s : seen) CHECK(s == 1);
  }

  CHECK_THROWS_AS(level_set_partition(ones, 0.5, 0.25, 1, 1.0), InputError);
  CHECK_THROWS_AS(level_set_partition(ones, 1.5, 0.25, 1, 8.0), InputError);
}

TEST_CASE("density split") {
  // four 2x2 cells each holding two points
  std::vector<std::int64_t> counts{2, 2, 2, 2}, sizes{4, 4, 4, 4};
  auto eq = density_split(counts, sizes, Rational(1, 10));
  CHECK(eq.bad.empty());
  CHECK(eq.goodCount == eq.rhs);
  CHECK(eq.inequalityHolds);

  auto none = density_split(std::vector<std::int64_t>{0, 0}, std::vector<std::int64_t>{3, 5}, Rational(1, 4));
  CHECK(none.bad.empty());
  CHECK(none.inequalityHolds);

  oracle::Lcg g(73);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = oracle::random_set(g, 8, 0.5);
    std::vector<GridSet> cells;
    for (std::int64_t qx = 0; qx < 2; ++qx)
      for (std::int64_t qy = 0; qy < 2; ++qy)
        cells.push_back(GridSet::product(LineSet::interval(8, 4 * qx, 4), LineSet::interval(8, 4 * qy, 4)));
    std::vector<Point> kept;
    for (auto p : a.points())
      if (!(p.x < 4 && p.y < 4)) kept.push_back(p);
    auto emptied = make_grid_set(8, kept);
    if (emptied.empty()) continue;
    auto s = density_split(emptied, cells, emptied.density() / 2);
    CHECK(std::find(s.bad.begin(), s.bad.end(), 0) != s.bad.end());
    CHECK(s.inequalityHolds);
    CHECK(s.goodCount >= s.rhs);
  }
  CHECK_THROWS_AS(density_split(counts, sizes, Rational(0)), InputError);
}

TEST_CASE("increment floors") {
  Box square = Box::full(64);
  IncrementConfig paper{ProfileName::paper};
  auto p = increment_floors(paper, 0.5, square);
  CHECK(p.alpha1 == doctest::Approx(std::pow(2.0, -56) * std::pow(0.5, 20)));
  CHECK(p.gainFloor == doctest::Approx(std::pow(2.0, -200) * std::pow(0.5, 60)));
  Box rect{LineSet::full(64), LineSet::interval(64, 0, 32)};
  CHECK(increment_floors(paper, 0.5, rect).alpha1 == doctest::Approx(0.05));
  IncrementConfig toy;
  toy.alpha1 = 0.3;
  CHECK(increment_floors(toy, 0.5, square).alpha1 == 0.3);
}

TEST_CASE("density increment search") {
  auto full = find_density_increment(GridSet::full(16), Box::full(16), 0.01);
  CHECK(full.kind == IncrementKind::uniform);

  const std::int64_t n = 16;
  auto top = GridSet::product(LineSet::full(n), LineSet::interval(n, 0, n / 2));
  auto r = find_density_increment(top, Box::full(n), 0.01);
  REQUIRE(r.kind == IncrementKind::increment);
  CHECK(r.delta == Rational(1, 2));
  CHECK(r.newDensity == 1);
  CHECK(r.g.ys == LineSet::interval(n, 0, n / 2));
  CHECK(top.count_in(r.g) == r.count);

  oracle::Lcg g(79);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Point> pts;
    const auto ox = g.below(24), oy = g.below(24);
    for (std::int64_t x = 0; x < 32; ++x)
      for (std::int64_t y = 0; y < 32; ++y) {
        const bool inside = x >= ox && x < ox + 8 && y >= oy && y < oy + 8;
        if (g.unit() < (inside ? 0.95 : 0.25)) pts.push_back({x, y});
      }
    auto a = make_grid_set(32, pts);
    auto res = find_density_increment(a, Box::full(32), 0.001);
    REQUIRE(res.kind == IncrementKind::increment);
    const Rational exact(a.count_in(res.g), res.g.area());
    CHECK(exact == res.newDensity);
    CHECK(res.newDensity > a.density());
    CHECK(res.densityGain == res.newDensity - res.delta);
  }
}

TEST_CASE("marginal increment box") {
  const std::int64_t n = 12;
  auto top = GridSet::product(LineSet::full(n), LineSet::interval(n, 0, 4));
  auto box = marginal_increment_box(top, Box::full(n), 0.01);
  REQUIRE(box);
  CHECK(Rational(top.count_in(*box), box->area()) > top.density());
  CHECK_FALSE(marginal_increment_box(GridSet::full(n), Box::full(n), 0.01));
}
