#include "cornerlab/corners.hpp"

#include <cmath>
#include <map>

namespace cornerlab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// Dense membership table indexed x*N + y.
std::vector<char> membership(const GridSet& a) {
  const std::int64_t n = a.modulus();
  std::vector<char> t(static_cast<std::size_t>(n * n), 0);
  for (auto p : a.points()) t[static_cast<std::size_t>(p.x * n + p.y)] = 1;
  return t;
}

void require_same_modulus(const ComplexField& a, const ComplexField& b) {
  if (a.arity() != 2 || b.arity() != 2) throw InputError("trilinear sum needs arity-2 fields");
  if (a.modulus() != b.modulus()) throw InputError("fields have different modulus");
}

}  // namespace

CornerCount count_corners(const GridSet& a, CornerMode mode, CornerEnumeration enumeration) {
  const std::int64_t n = a.modulus();
  CornerCount out;
  if (a.empty() || n < 2) return out;
  const auto t = membership(a);
  auto in = [&](std::int64_t x, std::int64_t y) { return t[static_cast<std::size_t>(x * n + y)] != 0; };
  const bool grid = mode == CornerMode::grid;

  if (enumeration == CornerEnumeration::by_difference) {
    out.count = parallel_sum(1, n, [&](std::int64_t d) {
      std::int64_t c = 0;
      const std::int64_t lim = grid ? n - d : n;
      for (std::int64_t x = 0; x < lim; ++x) {
        const std::int64_t xd = grid ? x + d : mod(x + d, n);
        for (std::int64_t y = 0; y < lim; ++y) {
          if (!in(x, y)) continue;
          const std::int64_t yd = grid ? y + d : mod(y + d, n);
          if (in(xd, y) && in(x, yd)) ++c;
        }
      }
      return c;
    });
  } else {
    const auto pts = a.points();
    out.count = parallel_sum(0, static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
      const auto p = pts[static_cast<std::size_t>(i)];
      std::int64_t c = 0;
      const std::int64_t lim = grid ? n - std::max(p.x, p.y) : n;
      for (std::int64_t d = 1; d < lim; ++d)
        if (in(grid ? p.x + d : mod(p.x + d, n), p.y) && in(p.x, grid ? p.y + d : mod(p.y + d, n))) ++c;
      return c;
    });
  }
  if (out.count > 0) out.witness = find_corner(a, mode);
  return out;
}

std::optional<CornerWitness> find_corner(const GridSet& a, CornerMode mode) {
  const std::int64_t n = a.modulus();
  if (a.empty() || n < 2) return std::nullopt;
  const auto t = membership(a);
  auto in = [&](std::int64_t x, std::int64_t y) { return t[static_cast<std::size_t>(x * n + y)] != 0; };
  const bool grid = mode == CornerMode::grid;
  for (auto p : a.points()) {
    const std::int64_t lim = grid ? n - std::max(p.x, p.y) : n;
    for (std::int64_t d = 1; d < lim; ++d)
      if (in(grid ? p.x + d : mod(p.x + d, n), p.y) && in(p.x, grid ? p.y + d : mod(p.y + d, n)))
        return CornerWitness{p.x, p.y, d};
  }
  return std::nullopt;
}

bool verify_corner(const GridSet& a, const CornerWitness& w, CornerMode mode) {
  const std::int64_t n = a.modulus();
  if (w.d <= 0 || w.x < 0 || w.y < 0 || w.x >= n || w.y >= n) return false;
  if (mode == CornerMode::grid) {
    if (w.x + w.d >= n || w.y + w.d >= n) return false;
    return a.contains(w.x, w.y) && a.contains(w.x + w.d, w.y) && a.contains(w.x, w.y + w.d);
  }
  if (w.d >= n) return false;
  return a.contains(w.x, w.y) && a.contains(mod(w.x + w.d, n), w.y) && a.contains(w.x, mod(w.y + w.d, n));
}

std::complex<double> trilinear_corner_sum(const ComplexField& h, const ComplexField& g, const ComplexField& f) {
  require_same_modulus(h, g);
  require_same_modulus(h, f);
  const std::int64_t n = h.modulus();
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y) {
      const auto hv = h.at(x, y);
      if (hv == 0.0) continue;
      for (std::int64_t r = 0; r < n; ++r) {
        const std::int64_t yr = mod(y - r, n);
        acc += hv * g.at(mod(x + r, n), yr) * f.at(x, yr);
      }
    }
  return acc;
}

double TrilinearReport::residual() const { return total - (term1 + term2 + term3); }

TrilinearReport decompose_trilinear(const GridSet& q1, const GridSet& q2, const GridSet& a, const Box& box) {
  const std::int64_t n = a.modulus();
  if (q1.modulus() != n || q2.modulus() != n || box.modulus() != n) throw InputError("modulus mismatch");
  require_inside(a, box);
  for (const GridSet* q : {&q1, &q2})
    for (auto p : q->points())
      if (!a.contains(p))
        throw InputError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") of Q is not in A");

  const auto profile = marginal_profile(a, box);
  const double delta = to_double(profile.density);
  // Row density, 0 off the box rows so that the split is exact everywhere.
  std::vector<double> rowDensity(static_cast<std::size_t>(n), 0.0);
  for (std::size_t j = 0; j < box.ys.size(); ++j)
    rowDensity[static_cast<std::size_t>(box.ys[j])] = to_double(profile.rowDensity[j]);
  const ComplexField fa = balanced_box_function(a, box);
  const auto t2 = membership(q2);

  TrilinearReport rep;
  for (auto s : q1.points())
    for (std::int64_t r = 0; r < n; ++r) {
      const std::int64_t yr = mod(s.y - r, n);
      if (!t2[static_cast<std::size_t>(mod(s.x + r, n) * n + yr)]) continue;
      const double dm = box.ys.contains(yr) ? rowDensity[static_cast<std::size_t>(yr)] : 0.0;
      rep.term1 += delta;
      rep.term2 += dm - delta;
      rep.term3 += fa.at(s.x, yr).real();
      if (a.contains(s.x, yr)) rep.total += 1;
    }
  return rep;
}

bool is_progression_free(const LineSet& a) {
  const auto& m = a.members();
  std::vector<char> in(static_cast<std::size_t>(a.modulus()), 0);
  for (auto v : m) in[static_cast<std::size_t>(v)] = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const std::int64_t c = 2 * m[j] - m[i];
      if (c < a.modulus() && in[static_cast<std::size_t>(c)]) return false;
    }
  return true;
}

BehrendResult behrend_construct(std::int64_t k, const BehrendConfig& config) {
  if (k < 1) throw InputError("K must be positive");
  BehrendResult best;
  best.k = k;
  std::vector<std::int64_t> bestMembers;

  for (int d : config.digitBounds) {
    if (d < 2) continue;
    const std::int64_t base = 2 * d - 1;
    for (int dim : config.dimensions) {
      if (dim < 1) continue;
      // Top digit would be forced to 0: same sets as dimension - 1.
      std::int64_t top = 1;
      bool tooWide = false;
      for (int i = 0; i + 1 < dim; ++i) {
        top *= base;
        if (top > k - 1) {
          tooWide = true;
          break;
        }
      }
      if (tooWide) continue;
      double total = std::pow(static_cast<double>(d), dim);
      if (total > static_cast<double>(config.enumerationCap)) continue;

      std::map<std::int64_t, std::vector<std::int64_t>> spheres;
      std::vector<int> digits(static_cast<std::size_t>(dim), 0);
      while (true) {
        std::int64_t v = 0, r2 = 0, p = 1;
        for (int i = 0; i < dim; ++i) {
          v += digits[static_cast<std::size_t>(i)] * p;
          r2 += static_cast<std::int64_t>(digits[static_cast<std::size_t>(i)]) * digits[static_cast<std::size_t>(i)];
          p *= base;
        }
        if (v <= k - 1) spheres[r2].push_back(v);
        int i = 0;
        while (i < dim && ++digits[static_cast<std::size_t>(i)] == d) digits[static_cast<std::size_t>(i++)] = 0;
        if (i == dim) break;
      }
      for (auto& [r2, members] : spheres)
        if (members.size() > bestMembers.size()) {
          bestMembers = members;
          best.digitBound = d;
          best.dimension = dim;
          best.radiusSquared = r2;
        }
    }
  }

  // Numbers with base-3 digits in {0, 1}.
  std::vector<std::int64_t> cube;
  for (std::int64_t bits = 0;; ++bits) {
    std::int64_t v = 0, p = 1;
    for (std::int64_t b = bits; b; b >>= 1, p *= 3)
      if (b & 1) v += p;
    if (v > k - 1) break;  // increasing in bits
    cube.push_back(v);
  }
  if (cube.size() > bestMembers.size()) {
    bestMembers = cube;
    best.digitBound = 2;
    int dim = 0;
    for (std::int64_t p = 1; p <= k - 1; p *= 3) ++dim;
    best.dimension = std::max(dim, 1);
    best.radiusSquared = -1;
  }

  best.set = LineSet(k, bestMembers);
  const double logK = std::log(static_cast<double>(k));
  best.exponent = (k > 1 && !best.set.empty()) ? std::log(static_cast<double>(best.set.size())) / logK : 0;
  best.referenceExponent = logK > 1 ? 1 - std::log(2.0) / std::log(logK) : 0;
  return best;
}

GridSet embed_corner_free(const LineSet& a, std::int64_t n, EmbeddingRule rule) {
  if (n <= 0 || n % 3 != 0) throw InputError("N must be a positive multiple of 3");
  const std::int64_t k = n / 3;
  for (auto v : a.members())
    if (v >= k) throw InputError("member " + std::to_string(v) + " exceeds N/3");
  std::vector<Point> pts;
  for (auto v : a.members()) {
    if (rule == EmbeddingRule::translation) {
      for (std::int64_t i = 0; i < k; ++i) pts.push_back({v + k + i, i});
    } else {
      for (std::int64_t i = 0; v + k + i < n; ++i) pts.push_back({v + k + i, i});
    }
  }
  return GridSet(n, std::move(pts));
}

}  // namespace cornerlab
