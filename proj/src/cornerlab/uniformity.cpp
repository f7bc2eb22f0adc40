#include "cornerlab/uniformity.hpp"

#include <bit>
#include <cmath>

namespace cornerlab {

namespace {

using i128 = __int128;

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

double relative_gap(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

double sum_fourth_powers(const Spectrum& s) {
  double acc = 0;
  for (auto v : s.values()) {
    const double m = std::norm(v);
    acc += m * m;
  }
  return acc;
}

double sum_squares(const ComplexField& f) {
  double acc = 0;
  for (auto v : f.values()) acc += std::norm(v);
  return acc;
}

UniformityReport uniformity_report(const ComplexField& f, UniformityMethod method, Normalization norm) {
  f.require_disc_valued("uniformity");
  const double n = static_cast<double>(f.modulus());
  UniformityReport r;
  r.normalization = norm;
  r.denominator = norm == Normalization::line ? n * n * n : std::pow(n, 6);
  if (method != UniformityMethod::spectral)
    r.directValue = sum_squares(cross_correlation(f, f, CorrelationMethod::direct));
  if (method != UniformityMethod::direct) {
    const double scale = norm == Normalization::line ? n : n * n;
    r.spectralValue = sum_fourth_powers(dft(f)) / scale;
  }
  r.functionalValue = r.directValue >= 0 ? r.directValue : r.spectralValue;
  if (r.directValue >= 0 && r.spectralValue >= 0) r.methodAgreement = relative_gap(r.directValue, r.spectralValue);
  r.minimalAlpha = r.functionalValue / r.denominator;
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

void require_support(const ComplexField& f, const Box& box) {
  if (f.arity() != 2) throw InputError("box norm needs an arity-2 field");
  if (box.modulus() != f.modulus()) throw InputError("box modulus differs from field modulus");
  const std::int64_t n = f.modulus();
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (std::abs(f.at(x, y)) > Tolerances::disc && !box.contains({x, y}))
        throw InputError("field is nonzero at (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") outside the box");
}

// Row indicator bitsets over the positions of box.xs.
std::vector<std::vector<std::uint64_t>> row_bits(const GridSet& a, const Box& box) {
  const std::size_t words = (box.xs.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(box.ys.size(), std::vector<std::uint64_t>(words, 0));
  for (auto p : a.points()) {
    const auto i = box.xs.index_of(p.x);
    const auto j = box.ys.index_of(p.y);
    if (i < 0 || j < 0) continue;
    rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  }
  return rows;
}

std::int64_t common(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::int64_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

}  // namespace

UniformityReport alpha_uniformity_1d(const ComplexField& f, UniformityMethod method) {
  if (f.arity() != 1) throw InputError("alpha_uniformity_1d needs an arity-1 field");
  return uniformity_report(f, method, Normalization::line);
}

UniformityReport alpha_uniformity_2d(const ComplexField& f, UniformityMethod method) {
  if (f.arity() != 2) throw InputError("alpha_uniformity_2d needs an arity-2 field");
  return uniformity_report(f, method, Normalization::grid);
}

double box_norm_primal(const ComplexField& f, double* imaginary) {
  const std::int64_t n = f.modulus();
  std::complex<double> acc{0.0, 0.0};
  // s + u e2 = (x, y - u), s + r e1 = (x + r, y).
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y) {
      const auto fs = f.at(x, y);
      if (fs == 0.0) continue;
      for (std::int64_t u = 0; u < n; ++u) {
        const std::int64_t yu = mod(y - u, n);
        const auto a = fs * std::conj(f.at(x, yu));
        if (a == 0.0) continue;
        for (std::int64_t r = 0; r < n; ++r) {
          const std::int64_t xr = mod(x + r, n);
          acc += a * std::conj(f.at(xr, y)) * f.at(xr, yu);
        }
      }
    }
  if (imaginary) *imaginary = acc.imag();
  return acc.real();
}

double box_norm_dual(const ComplexField& f) {
  const std::int64_t n = f.modulus();
  double acc = 0;
  for (std::int64_t m = 0; m < n; ++m)
    for (std::int64_t p = 0; p < n; ++p) {
      std::complex<double> inner{0.0, 0.0};
      for (std::int64_t k = 0; k < n; ++k) inner += f.at(k, m) * std::conj(f.at(k, p));
      acc += std::norm(inner);
    }
  return acc;
}

BoxNormValue box_norm(const ComplexField& f, const Box& box) {
  require_support(f, box);
  BoxNormValue v;
  v.fourthPower = box_norm_primal(f, &v.imaginaryPart);
  if (std::abs(v.imaginaryPart) > Tolerances::imaginary * (1.0 + std::abs(v.fourthPower)))
    throw std::logic_error("box norm cube sum has a non-negligible imaginary part");
  v.dualFormulaFourthPower = box_norm_dual(f);
  if (v.fourthPower < -Tolerances::nonnegative || v.dualFormulaFourthPower < -Tolerances::nonnegative)
    throw std::logic_error("box norm fourth power is negative");
  v.value = std::pow(std::max(0.0, v.fourthPower), 0.25);
  const double area = static_cast<double>(box.area());
  v.minimalAlpha = area > 0 ? v.fourthPower / (area * area) : 0.0;
  return v;
}

std::complex<double> box_inner_product(const ComplexField& f00, const ComplexField& f10,
                                       const ComplexField& f01, const ComplexField& f11) {
  const std::int64_t n = f00.modulus();
  for (const auto* g : {&f10, &f01, &f11})
    if (g->modulus() != n || g->arity() != 2 || f00.arity() != 2)
      throw InputError("box_inner_product needs four arity-2 fields on one modulus");
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y) {
      const auto a = f00.at(x, y);
      if (a == 0.0) continue;
      for (std::int64_t p = 0; p < n; ++p) {
        const std::int64_t xp = mod(x + p, n);
        const auto b = a * std::conj(f10.at(xp, y));
        for (std::int64_t q = 0; q < n; ++q) {
          const std::int64_t yq = mod(y - q, n);
          acc += b * std::conj(f01.at(x, yq)) * f11.at(xp, yq);
        }
      }
    }
  return acc;
}

Rational box_fourth_power_exact(const GridSet& a, const Box& box, Centering centering) {
  require_inside(a, box);
  const auto rows = row_bits(a, box);
  const auto w = static_cast<std::int64_t>(box.xs.size());
  const auto h = static_cast<std::int64_t>(box.ys.size());
  if (w == 0 || h == 0) return 0;
  std::vector<std::int64_t> c(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) c[j] = common(rows[j], rows[j]);
  i128 total = 0;
  if (centering == Centering::rows) {
    // sum_k (1_A - d_m)(1_A - d_p) over the row = I - c_m c_p / w.
    for (std::size_t m = 0; m < rows.size(); ++m)
      for (std::size_t p = 0; p < rows.size(); ++p) {
        const i128 t = static_cast<i128>(w) * common(rows[m], rows[p]) - static_cast<i128>(c[m]) * c[p];
        total += t * t;
      }
    return Rational(to_big(total), BigInt(w) * w);
  }
  return box_fourth_power_exact(a, box, Rational(static_cast<std::int64_t>(a.size()), w * h));
}

Rational box_fourth_power_exact(const GridSet& a, const Box& box, const Rational& delta) {
  require_inside(a, box);
  const auto rows = row_bits(a, box);
  const auto w = static_cast<std::int64_t>(box.xs.size());
  if (w == 0 || box.ys.empty()) return 0;
  std::vector<std::int64_t> c(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) c[j] = common(rows[j], rows[j]);
  // delta = p/q: scaled by q^2 the row inner product is q^2 I - p q (c_m + c_p) + p^2 w.
  const BigInt p = boost::multiprecision::numerator(delta);
  const BigInt q = boost::multiprecision::denominator(delta);
  const BigInt qq = q * q, pq = p * q, ppw = p * p * w;
  BigInt big = 0;
  for (std::size_t m = 0; m < rows.size(); ++m)
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const BigInt t = qq * common(rows[m], rows[r]) - pq * (c[m] + c[r]) + ppw;
      big += t * t;
    }
  return Rational(big, qq * qq);
}

CubeCount count_cubes(const GridSet& a, CubeMethod method, bool nondegenerate) {
  const std::int64_t n = a.modulus();
  CubeCount out;
  out.method = method;
  out.nondegenerate = nondegenerate;
  if (method == CubeMethod::brute) {
    const auto pts = a.points();
    out.count = parallel_sum(0, static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
      const auto s = pts[static_cast<std::size_t>(i)];
      std::int64_t c = 0;
      for (std::int64_t u = 0; u < n; ++u) {
        if (nondegenerate && u == 0) continue;
        const std::int64_t yu = mod(s.y - u, n);
        if (!a.contains(s.x, yu)) continue;
        for (std::int64_t r = 0; r < n; ++r) {
          if (nondegenerate && r == 0) continue;
          const std::int64_t xr = mod(s.x + r, n);
          c += a.contains(xr, s.y) && a.contains(xr, yu);
        }
      }
      return c;
    });
    return out;
  }
  const Box full = Box::full(n);
  const auto rows = row_bits(a, full);
  std::int64_t total = 0;
  for (std::size_t m = 0; m < rows.size(); ++m)
    for (std::size_t p = 0; p < rows.size(); ++p) {
      const std::int64_t c = common(rows[m], rows[p]);
      total += c * c;
    }
  if (nondegenerate) {
    // Remove u = 0 (same row pairs) and r = 0 (same column pairs), add back u = r = 0.
    std::vector<std::int64_t> col(static_cast<std::size_t>(n), 0), row(static_cast<std::size_t>(n), 0);
    for (auto p : a.points()) {
      ++col[static_cast<std::size_t>(p.x)];
      ++row[static_cast<std::size_t>(p.y)];
    }
    for (auto c : row) total -= c * c;
    for (auto c : col) total -= c * c;
    total += static_cast<std::int64_t>(a.size());
  }
  out.count = total;
  return out;
}

bool is_cyclic_interval(const LineSet& s) {
  const std::int64_t n = s.modulus();
  const auto size = static_cast<std::int64_t>(s.size());
  if (size == 0 || size == n) return true;
  std::int64_t ends = 0;
  for (auto v : s.members())
    if (!s.contains((v + 1) % n)) ++ends;
  return ends == 1;
}

DiscrepancyReport progression_discrepancy(const GridSet& a, const Box& p) {
  if (!is_cyclic_interval(p.xs) || !is_cyclic_interval(p.ys))
    throw InputError("progression box sides must be step-1 cyclic intervals");
  const double alpha = alpha_uniformity_2d(balanced_function(a)).minimalAlpha;
  return progression_discrepancy(a, p, alpha);
}

DiscrepancyReport progression_discrepancy(const GridSet& a, const Box& p, double alpha) {
  if (!is_cyclic_interval(p.xs) || !is_cyclic_interval(p.ys))
    throw InputError("progression box sides must be step-1 cyclic intervals");
  if (p.modulus() != a.modulus()) throw InputError("box modulus differs from set modulus");
  const std::int64_t n = a.modulus();
  const Rational gap = Rational(a.count_in(p)) - a.density() * p.area();
  DiscrepancyReport r;
  r.alpha = alpha;
  r.discrepancy = std::abs(to_double(gap));
  r.bound = 16.0 * std::pow(std::max(0.0, alpha), 0.25) * static_cast<double>(n) * static_cast<double>(n);
  r.holds = r.discrepancy <= r.bound + Tolerances::discrepancy;
  return r;
}

CubeBoundsReport cube_bounds_report(const GridSet& a, const Box& box) {
  require_inside(a, box);
  const std::int64_t n = a.modulus();
  CubeBoundsReport r;
  r.cubes = count_cubes(a).count;
  const BigInt size = static_cast<std::int64_t>(a.size());
  const BigInt n4 = BigInt(n) * n * n * n;
  const double delta = to_double(a.density());
  r.lower = std::pow(delta, 4) * std::pow(static_cast<double>(n), 4);
  r.lowerHolds = BigInt(r.cubes) * n4 >= size * size * size * size;
  const bool full = static_cast<std::int64_t>(box.xs.size()) == n && static_cast<std::int64_t>(box.ys.size()) == n;
  if (!full) return r;
  const Rational fourth = box_fourth_power_exact(a, box);
  const Rational alpha = fourth / Rational(n4);
  r.alpha = to_double(alpha);
  const auto profile = marginal_profile(a, box);
  r.upperApplicable = profile.rowDeviation <= alpha * n;
  if (r.upperApplicable) {
    const double side = delta + 2.0 * std::pow(r.alpha, 0.25);
    r.upper = std::pow(side, 4) * std::pow(static_cast<double>(n), 4);
    r.upperHolds = static_cast<double>(r.cubes) <= r.upper * (1.0 + 1e-12) + 1e-9;
  }
  return r;
}

}  // namespace cornerlab
