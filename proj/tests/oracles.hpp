// Independent reference implementations and generators for the tests.
// Nothing here calls into the library's algorithms; only its data types.
#pragma once

#include "cornerlab/zn_core.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using cornerlab::GridSet;
using cornerlab::LineSet;
using cornerlab::Point;
using cx = std::complex<double>;

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// Naive DFT: F(r) = sum_k f(k) e(-k r / N), one or two axes.
inline std::vector<cx> dft(const std::vector<cx>& f, std::int64_t n, int arity) {
  const double w = -2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<cx> out(f.size());
  if (arity == 1) {
    for (std::int64_t r = 0; r < n; ++r)
      for (std::int64_t k = 0; k < n; ++k) out[r] += f[k] * std::polar(1.0, w * static_cast<double>(mod(k * r, n)));
    return out;
  }
  for (std::int64_t r1 = 0; r1 < n; ++r1)
    for (std::int64_t r2 = 0; r2 < n; ++r2) {
      cx acc = 0;
      for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
          acc += f[x * n + y] * std::polar(1.0, w * static_cast<double>(mod(x * r1 + y * r2, n)));
      out[r1 * n + r2] = acc;
    }
  return out;
}

inline std::int64_t corners_grid(const GridSet& a) {
  const auto n = a.modulus();
  std::int64_t c = 0;
  for (auto p : a.points())
    for (std::int64_t d = 1; p.x + d < n && p.y + d < n; ++d)
      if (a.contains(p.x + d, p.y) && a.contains(p.x, p.y + d)) ++c;
  return c;
}

inline std::int64_t corners_cyclic(const GridSet& a) {
  const auto n = a.modulus();
  std::int64_t c = 0;
  for (auto p : a.points())
    for (std::int64_t d = 1; d < n; ++d)
      if (a.contains(mod(p.x + d, n), p.y) && a.contains(p.x, mod(p.y + d, n))) ++c;
  return c;
}

// Quadruples s, s + u e2, s + r e1, s + u e2 + r e1 with e2 = (0, -1).
inline std::int64_t cubes(const GridSet& a) {
  const auto n = a.modulus();
  std::int64_t c = 0;
  for (auto s : a.points())
    for (std::int64_t u = 0; u < n; ++u)
      for (std::int64_t r = 0; r < n; ++r)
        if (a.contains(s.x, mod(s.y - u, n)) && a.contains(mod(s.x + r, n), s.y) &&
            a.contains(mod(s.x + r, n), mod(s.y - u, n)))
          ++c;
  return c;
}

// Exhaustive 3-term progression test over the integers (no wraparound).
inline bool progression_free(const std::vector<std::int64_t>& v) {
  const std::set<std::int64_t> s(v.begin(), v.end());
  for (auto a : s)
    for (auto b : s)
      if (a < b && s.count(2 * b - a)) return false;
  return true;
}

// Greedy 3-AP-free subset of [0, k).
inline std::vector<std::int64_t> greedy_progression_free(std::int64_t k) {
  std::vector<std::int64_t> out;
  std::set<std::int64_t> s;
  for (std::int64_t v = 0; v < k; ++v) {
    bool ok = true;
    for (auto a : s)
      if ((a + v) % 2 == 0 && s.count((a + v) / 2)) ok = false;
    if (ok) {
      out.push_back(v);
      s.insert(v);
    }
  }
  return out;
}

// Cyclic Jacobi rotations on a dense symmetric matrix; eigenvalues descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-300) continue;
        const double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double a = m[k][p], b = m[k][q];
          m[k][p] = c * a - s * b;
          m[k][q] = s * a + c * b;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double a = m[p][k], b = m[q][k];
          m[p][k] = c * a - s * b;
          m[q][k] = s * a + c * b;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = m[i][i];
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// T(x, x') = |column x n column x'| over the full grid.
inline std::vector<std::vector<double>> column_pair_matrix(const GridSet& a) {
  const auto n = a.modulus();
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0));
  for (std::int64_t p = 0; p < n; ++p)
    for (std::int64_t q = 0; q < n; ++q)
      for (std::int64_t y = 0; y < n; ++y)
        if (a.contains(p, y) && a.contains(q, y)) t[p][q] += 1;
  return t;
}

// Simple LCG so generators do not share state with the library's Rng.
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed * 2862933555777941757ULL + 3037000493ULL) {}
  std::uint64_t next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 17;
  }
  double unit() { return static_cast<double>(next() % (1ULL << 40)) / static_cast<double>(1ULL << 40); }
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n)); }
};

inline GridSet random_set(Lcg& g, std::int64_t n, double p) {
  std::vector<Point> pts;
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (g.unit() < p) pts.push_back({x, y});
  return GridSet(n, pts);
}

inline std::vector<cx> random_field(Lcg& g, std::size_t size) {
  std::vector<cx> v(size);
  for (auto& z : v) z = std::polar(g.unit(), 2 * std::numbers::pi * g.unit());
  return v;
}

inline double rel(const std::vector<cx>& a, const std::vector<cx>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num) / std::max(1e-300, std::sqrt(den));
}

}  // namespace oracle
