#include "cornerlab/verify.hpp"

#include "cornerlab/corners.hpp"
#include "cornerlab/driver.hpp"
#include "cornerlab/fourier.hpp"
#include "cornerlab/graphview.hpp"
#include "cornerlab/partition.hpp"
#include "cornerlab/uniformity.hpp"
#include "cornerlab/zn_core.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace cornerlab {

namespace {

using Field = ComplexField;
using cd = std::complex<double>;

// ---- tallies ----

struct Tally {
  CheckResult* r = nullptr;
  void add(bool hypothesis, bool conclusion, double margin) {
    ++r->trials;
    if (!hypothesis) return;
    ++r->hypothesisSatisfied;
    if (conclusion) ++r->conclusionHeld;
    if (!r->worstMargin || margin < *r->worstMargin) r->worstMargin = margin;
  }
  void add(bool conclusion) { add(true, conclusion, conclusion ? 0.0 : -1.0); }
  // lhs <= rhs with the given relative slack.
  void leq(double lhs, double rhs, double rel, bool hypothesis = true) {
    const double scale = std::max(1.0, std::abs(rhs));
    add(hypothesis, lhs <= rhs + rel * scale, (rhs + rel * scale - lhs) / scale);
  }
  // |a - b| <= tol * scale.
  void close(double a, double b, double tol, double scale) {
    const double gap = std::abs(a - b) / std::max(scale, 1e-300);
    add(true, gap <= tol, tol - gap);
  }
};

struct Ctx {
  Rng rng;
  bool quick = false;
  std::map<std::string, CheckResult>* results = nullptr;
  Tally tally(const std::string& name) { return Tally{&results->at(name)}; }
  int trials(int full, int fast) const { return quick ? fast : full; }
};

// ---- generators ----

cd disc_value(Rng& rng) {
  const double r = std::sqrt(rng.uniform01());
  const double t = rng.uniform(0, 2 * std::numbers::pi);
  return std::polar(r, t);
}

Field random_field(Rng& rng, int arity, std::int64_t n, double scale = 1.0) {
  Field f(arity, n);
  for (auto& v : f.values()) v = scale * disc_value(rng);
  return f;
}

GridSet random_set(Rng& rng, std::int64_t n, double p) {
  std::vector<Point> pts;
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (rng.bernoulli(p)) pts.push_back({x, y});
  return GridSet(n, std::move(pts));
}

GridSet random_set_in(Rng& rng, const Box& box, double p) {
  std::vector<Point> pts;
  for (auto x : box.xs.members())
    for (auto y : box.ys.members())
      if (rng.bernoulli(p)) pts.push_back({x, y});
  return GridSet(box.modulus(), std::move(pts));
}

// Random set with a planted dense block, so that uniformity fails.
GridSet planted_set(Rng& rng, const Box& box, double low, double high) {
  const auto w = static_cast<std::int64_t>(box.xs.size()), h = static_cast<std::int64_t>(box.ys.size());
  const auto bw = rng.uniform_int(1, std::max<std::int64_t>(1, w / 2));
  const auto bh = rng.uniform_int(1, std::max<std::int64_t>(1, h / 2));
  const auto x0 = rng.uniform_int(0, w - bw), y0 = rng.uniform_int(0, h - bh);
  std::vector<Point> pts;
  for (std::int64_t i = 0; i < w; ++i)
    for (std::int64_t j = 0; j < h; ++j) {
      const bool in = i >= x0 && i < x0 + bw && j >= y0 && j < y0 + bh;
      if (rng.bernoulli(in ? high : low)) pts.push_back({box.xs[i], box.ys[j]});
    }
  return GridSet(box.modulus(), std::move(pts));
}

LineSet random_subset(Rng& rng, std::int64_t n, double p) {
  std::vector<std::int64_t> m;
  for (std::int64_t v = 0; v < n; ++v)
    if (rng.bernoulli(p)) m.push_back(v);
  if (m.empty()) m.push_back(rng.uniform_int(0, n - 1));
  return LineSet(n, std::move(m));
}

LineSet random_subset_of_size(Rng& rng, std::int64_t n, std::int64_t k) {
  std::vector<std::int64_t> all(n);
  for (std::int64_t v = 0; v < n; ++v) all[v] = v;
  for (std::int64_t i = 0; i < k; ++i) std::swap(all[i], all[rng.uniform_int(i, n - 1)]);
  all.resize(k);
  return LineSet(n, std::move(all));
}

Box random_box(Rng& rng, std::int64_t n) {
  return Box{random_subset(rng, n, rng.uniform(0.3, 1.0)), random_subset(rng, n, rng.uniform(0.3, 1.0))};
}

Field restrict_to(Field f, const Box& box) {
  const std::int64_t n = f.modulus();
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (!box.contains({x, y})) f.at(x, y) = 0;
  return f;
}

LineSet random_progression_free(Rng& rng, std::int64_t k) {
  std::vector<std::int64_t> order(k);
  for (std::int64_t v = 0; v < k; ++v) order[v] = v;
  for (std::int64_t i = k - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
  std::vector<std::int64_t> chosen;
  for (auto v : order) {
    bool ok = true;
    for (std::size_t i = 0; i < chosen.size() && ok; ++i)
      for (std::size_t j = 0; j < chosen.size() && ok; ++j) {
        if (i == j) continue;
        const auto a = chosen[i], b = chosen[j];
        // v would be an end, the middle, or the other end of a 3-AP with a < b
        if (a < b && (2 * b - a == v || a + b == 2 * v || 2 * a - b == v)) ok = false;
      }
    if (ok) chosen.push_back(v);
  }
  std::sort(chosen.begin(), chosen.end());
  return LineSet(k, std::move(chosen));
}

double sum_norm(const Field& f) {
  double s = 0;
  for (auto v : f.values()) s += std::norm(v);
  return s;
}

cd sum_values(const Field& f) {
  cd s{0, 0};
  for (auto v : f.values()) s += v;
  return s;
}

double max_abs_nonzero_index(const Spectrum& s) {
  double m = 0;
  for (auto v : s.values()) m = std::max(m, std::abs(v));
  return m;
}

double npow(std::int64_t n, int arity) { return std::pow(static_cast<double>(n), arity); }

std::vector<std::int64_t> fourier_sizes(bool quick) {
  if (quick) return {8, 12, 16};
  return {8, 12, 16, 64};
}

// ---- zn_core ----

void zn_core_checks(Ctx& c) {
  auto sums = c.tally("marginal-sums-match-count");
  auto rows = c.tally("balanced-rows-sum-to-zero");
  auto mono = c.tally("marginal-check-monotone");
  const int trials = c.trials(200, 40);
  for (int t = 0; t < trials; ++t) {
    const auto n = c.rng.uniform_int(2, 14);
    const Box box = random_box(c.rng, n);
    const GridSet a = random_set_in(c.rng, box, c.rng.uniform01());
    const auto p = marginal_profile(a, box);
    Rational byRows = 0, byCols = 0;
    for (const auto& d : p.rowDensity) byRows += d;
    for (const auto& d : p.columnDensity) byCols += d;
    const auto w = static_cast<std::int64_t>(box.xs.size()), h = static_cast<std::int64_t>(box.ys.size());
    sums.add(byRows * w == p.count && byCols * h == p.count && p.count == static_cast<std::int64_t>(a.size()));

    bool exact = true;
    for (std::size_t j = 0; j < box.ys.size(); ++j)
      exact = exact && Rational(p.rowCounts[j]) - p.rowDensity[j] * w == 0;
    const Field f = balanced_box_function(a, box);
    double worst = 0;
    for (auto y : box.ys.members()) {
      cd s{0, 0};
      for (auto x : box.xs.members()) s += f.at(x, y);
      worst = std::max(worst, std::abs(s));
    }
    rows.add(true, exact && worst <= 1e-9, 1e-9 - worst);

    const double a1 = c.rng.uniform(0.0, 1.0), a2 = a1 * c.rng.uniform(1.0, 3.0);
    for (auto scale : {DeviationScale::squared, DeviationScale::linear}) {
      const auto lo = marginal_uniformity_check(p, Rational(a1), scale);
      const auto hi = marginal_uniformity_check(p, Rational(a2), scale);
      mono.add(lo.rowsHold, hi.rowsHold, hi.rowsHold ? 0.0 : -1.0);
      mono.add(lo.columnsHold, hi.columnsHold, hi.columnsHold ? 0.0 : -1.0);
    }
  }
}

// ---- fourier ----

void fourier_checks(Ctx& c) {
  auto energy = c.tally("energy-identity");
  auto inner = c.tally("inner-product-identity");
  auto corr = c.tally("correlation-identity");
  auto round = c.tally("inverse-round-trip");
  auto direct = c.tally("fast-transform-matches-direct");
  const auto sizes = fourier_sizes(c.quick);
  const int trials = c.trials(200, 24);
  for (int arity : {1, 2}) {
    for (int t = 0; t < trials; ++t) {
      const auto n = sizes[static_cast<std::size_t>(t) % sizes.size()];
      const Field f = random_field(c.rng, arity, n), g = random_field(c.rng, arity, n);
      const Spectrum fh = dft(f), gh = dft(g);
      const double scale = npow(n, arity);

      energy.close(sum_norm(fh), scale * sum_norm(f), 1e-6, scale * sum_norm(f));

      cd lhs{0, 0}, rhs{0, 0};
      for (std::size_t i = 0; i < fh.size(); ++i) lhs += fh[i] * std::conj(gh[i]);
      for (std::size_t i = 0; i < f.size(); ++i) rhs += f[i] * std::conj(g[i]);
      rhs *= scale;
      const double cs = scale * std::sqrt(sum_norm(f) * sum_norm(g));
      const double gap = std::abs(lhs - rhs) / cs;
      inner.add(true, gap <= 1e-6, 1e-6 - gap);

      const bool directOk = arity == 1 || n <= 16 || t % 8 == 0;
      if (directOk) {
        const Field fg = cross_correlation(f, g, CorrelationMethod::direct);
        double spec = 0;
        for (std::size_t i = 0; i < fh.size(); ++i) spec += std::norm(fh[i]) * std::norm(gh[i]);
        corr.close(scale * sum_norm(fg), spec, 1e-6, spec);
      }

      const double rt = relative_l2_distance(inverse_dft(fh), f);
      round.add(true, rt <= 1e-9, 1e-9 - rt);
    }
    for (int t = 0; t < trials / 4; ++t) {
      const std::vector<std::int64_t> odd = arity == 1 ? std::vector<std::int64_t>{5, 7, 12, 15, 16, 31}
                                                       : std::vector<std::int64_t>{5, 6, 7, 8, 12};
      const auto n = odd[static_cast<std::size_t>(t) % odd.size()];
      const Field f = random_field(c.rng, arity, n);
      const double gap = relative_l2_distance(dft(f), dft_direct(f));
      direct.add(true, gap <= 1e-9, 1e-9 - gap);
    }
  }
}

// ---- uniformity ----

Field random_uniformity_input(Rng& rng, int arity, std::int64_t n, int t) {
  if (t % 2 == 0) return random_field(rng, arity, n);
  if (arity == 1) return balanced_function(random_subset(rng, n, rng.uniform(0.1, 0.9)));
  return balanced_function(random_set(rng, n, rng.uniform(0.1, 0.9)));
}

void uniformity_lemma_checks(Ctx& c) {
  auto fourth = c.tally("fourth-moment-bound");
  auto maxc = c.tally("max-coefficient-bound");
  auto conv = c.tally("coefficient-converse");
  auto dev = c.tally("correlation-deviation-bound");
  const int trials = c.trials(200, 30);
  for (int arity : {1, 2}) {
    const std::vector<std::int64_t> sizes = arity == 1 ? std::vector<std::int64_t>{8, 12, 16, 31}
                                                       : std::vector<std::int64_t>{4, 6, 8};
    for (int t = 0; t < trials; ++t) {
      const auto n = sizes[static_cast<std::size_t>(t) % sizes.size()];
      const Field f = random_uniformity_input(c.rng, arity, n, t);
      const auto rep = arity == 1 ? alpha_uniformity_1d(f) : alpha_uniformity_2d(f);
      const double alpha = rep.minimalAlpha;
      const Spectrum fh = dft(f);
      double s4 = 0;
      for (auto v : fh.values()) s4 += std::norm(v) * std::norm(v);
      const double nd = npow(n, arity);
      // sum |f^|^4 <= alpha N^(4 arity), with both routes agreeing
      const double bound4 = alpha * nd * nd * nd * nd;
      const double scale4 = std::max(1.0, bound4);
      fourth.add(true, rep.methodAgreement <= 1e-6 && s4 <= bound4 + 1e-6 * scale4, (bound4 + 1e-6 * scale4 - s4) / scale4);

      const double m = max_abs_nonzero_index(fh);
      maxc.leq(m, std::pow(alpha, 0.25) * nd, 1e-6);

      const double a = m / nd;
      conv.leq(alpha, a * a, 1e-6);

      const Field g = random_field(c.rng, arity, n);
      const Field fg = cross_correlation(f, g, CorrelationMethod::direct);
      const double lhs = std::abs(sum_norm(fg) - std::norm(sum_values(f)) * std::norm(sum_values(g)) / nd);
      const double rhs = std::sqrt(alpha) * nd * nd * sum_norm(g);
      dev.leq(lhs, rhs, 1e-9);
    }
  }
}

void box_norm_checks(Ctx& c) {
  auto cs = c.tally("cube-cauchy-schwarz");
  auto tri = c.tally("box-norm-triangle");
  auto dual = c.tally("box-norm-duality");
  const std::int64_t csN = c.quick ? 6 : 8;
  for (int t = 0; t < c.trials(200, 20); ++t) {
    std::array<Field, 4> fs;
    const Box box = t % 2 ? random_box(c.rng, csN) : Box::full(csN);
    for (auto& f : fs) f = restrict_to(random_field(c.rng, 2, csN), box);
    const double lhs = std::abs(box_inner_product(fs[0], fs[1], fs[2], fs[3]));
    double rhs = 1;
    for (const auto& f : fs) rhs *= std::pow(std::max(0.0, box_norm_primal(f)), 0.25);
    cs.leq(lhs, rhs, 1e-9);
  }
  for (int t = 0; t < c.trials(500, 40); ++t) {
    const auto n = c.rng.uniform_int(3, c.quick ? 7 : 10);
    const Box box = random_box(c.rng, n);
    const Field f = restrict_to(random_field(c.rng, 2, n, 0.5), box);
    const Field g = restrict_to(random_field(c.rng, 2, n, 0.5), box);
    Field h = f;
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += g[i];
    const double lhs = box_norm(h, box).value;
    const double rhs = box_norm(f, box).value + box_norm(g, box).value;
    tri.add(true, lhs <= rhs + 1e-9, rhs - lhs);
  }
  for (int t = 0; t < c.trials(200, 30); ++t) {
    const auto n = c.rng.uniform_int(2, c.quick ? 10 : 16);
    const Box box = random_box(c.rng, n);
    const Field f = t % 2 ? restrict_to(random_field(c.rng, 2, n), box)
                          : balanced_box_function(random_set_in(c.rng, box, c.rng.uniform01()), box);
    const auto v = box_norm(f, box);
    dual.close(v.fourthPower, v.dualFormulaFourthPower, 1e-8, std::max(1.0, v.fourthPower));
  }
}

GridSet row_balanced_set(Rng& rng, std::int64_t n) {
  const auto k = rng.uniform_int(0, n);
  std::vector<Point> pts;
  for (std::int64_t y = 0; y < n; ++y) {
    const auto xs = random_subset_of_size(rng, n, k);
    for (auto x : xs.members()) pts.push_back({x, y});
  }
  return GridSet(n, std::move(pts));
}

void cube_checks(Ctx& c) {
  auto lower = c.tally("cube-count-lower-bound");
  auto agree = c.tally("cube-count-methods-agree");
  auto upper = c.tally("cube-count-upper-bound");
  const std::vector<std::int64_t> sizes{6, 8, 12};
  for (int t = 0; t < c.trials(500, 40); ++t) {
    const auto n = sizes[static_cast<std::size_t>(t) % sizes.size()];
    const GridSet a = t % 3 == 2 ? row_balanced_set(c.rng, n) : random_set(c.rng, n, c.rng.uniform01());
    const auto spectral = count_cubes(a, CubeMethod::spectral);
    const BigInt size = static_cast<std::int64_t>(a.size());
    const BigInt n4 = BigInt(n) * n * n * n;
    const bool holds = BigInt(spectral.count) * n4 >= size * size * size * size;
    const double lb = std::pow(static_cast<double>(a.size()), 4) / std::pow(static_cast<double>(n), 4);
    lower.add(true, holds, (static_cast<double>(spectral.count) - lb) / std::max(1.0, lb));
    if (n <= 8 || t % 4 == 0) agree.add(count_cubes(a, CubeMethod::brute).count == spectral.count);
    const auto rep = cube_bounds_report(a, Box::full(n));
    upper.add(rep.upperApplicable, rep.upperHolds, (rep.upper - static_cast<double>(rep.cubes)) / std::max(1.0, rep.upper));
  }
}

void row_deviation_identity(Ctx& c) {
  auto id = c.tally("row-deviation-box-identity");
  for (int t = 0; t < c.trials(100, 15); ++t) {
    const auto n = c.rng.uniform_int(2, c.quick ? 6 : 8);
    const Box box = random_box(c.rng, n);
    const GridSet a = random_set_in(c.rng, box, c.rng.uniform01());
    const auto p = marginal_profile(a, box);
    std::vector<Rational> g(static_cast<std::size_t>(n * n), Rational(0));
    for (std::size_t j = 0; j < box.ys.size(); ++j)
      for (auto x : box.xs.members()) g[static_cast<std::size_t>(x * n + box.ys[j])] = p.rowDensity[j] - p.density;
    auto at = [&](std::int64_t x, std::int64_t y) -> const Rational& {
      return g[static_cast<std::size_t>(((x % n + n) % n) * n + ((y % n + n) % n))];
    };
    Rational cube = 0;
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y) {
        if (at(x, y) == 0) continue;
        for (std::int64_t u = 0; u < n; ++u)
          for (std::int64_t r = 0; r < n; ++r) cube += at(x, y) * at(x, y - u) * at(x + r, y) * at(x + r, y - u);
      }
    const auto w = static_cast<std::int64_t>(box.xs.size());
    const Rational expected = Rational(w * w) * p.rowDeviation * p.rowDeviation;
    id.add(cube == expected);
  }
}

void discrepancy_checks(Ctx& c) {
  auto disc = c.tally("progression-discrepancy-bound");
  const std::int64_t n = c.quick ? 8 : 16;
  for (int s = 0; s < c.trials(50, 6); ++s) {
    const GridSet a = s % 2 ? random_set(c.rng, n, c.rng.uniform01()) : planted_set(c.rng, Box::full(n), 0.2, 0.9);
    const double alpha = alpha_uniformity_2d(balanced_function(a)).minimalAlpha;
    for (int b = 0; b < c.trials(100, 20); ++b) {
      const Box p{LineSet::interval(n, c.rng.uniform_int(0, n - 1), c.rng.uniform_int(1, n)),
                  LineSet::interval(n, c.rng.uniform_int(0, n - 1), c.rng.uniform_int(1, n))};
      const auto r = progression_discrepancy(a, p, alpha);
      disc.add(true, r.holds, (r.bound - r.discrepancy) / static_cast<double>(n * n));
    }
  }
}

// ---- corners ----

void corner_checks(Ctx& c) {
  auto agree = c.tally("corner-enumerations-agree");
  auto orient = c.tally("trilinear-orientation");
  auto decomp = c.tally("trilinear-decomposition-exact");
  auto chain = c.tally("corner-count-chain");
  for (int t = 0; t < c.trials(200, 30); ++t) {
    const auto n = c.rng.uniform_int(2, 18);
    const GridSet a = random_set(c.rng, n, c.rng.uniform(0.0, 0.5));
    bool ok = true;
    for (auto mode : {CornerMode::grid, CornerMode::cyclic}) {
      const auto d = count_corners(a, mode, CornerEnumeration::by_difference);
      const auto p = count_corners(a, mode, CornerEnumeration::by_point);
      const auto w = find_corner(a, mode);
      ok = ok && d.count == p.count && d.witness == p.witness && w == d.witness;
      if (w) ok = ok && verify_corner(a, *w, mode);
    }
    agree.add(ok);

    const Field chi = Field::indicator(a);
    const double s = trilinear_corner_sum(chi, chi, chi).real();
    const double expected = static_cast<double>(a.size() + count_corners(a, CornerMode::cyclic).count);
    orient.close(s, expected, 1e-9, std::max(1.0, expected));

    // final counting chain: nondegenerate triples force a corner
    const double degenerate = static_cast<double>(a.size());
    const bool hyp = s > degenerate + 0.5;
    const auto w = find_corner(a, CornerMode::cyclic);
    chain.add(hyp, w && verify_corner(a, *w, CornerMode::cyclic), w ? 0.0 : -1.0);
  }
  for (int t = 0; t < c.trials(100, 20); ++t) {
    const auto n = c.rng.uniform_int(2, 12);
    const Box box = random_box(c.rng, n);
    const GridSet a = random_set_in(c.rng, box, c.rng.uniform01());
    std::vector<Point> p1, p2;
    for (auto q : a.points()) {
      if (c.rng.bernoulli(0.6)) p1.push_back(q);
      if (c.rng.bernoulli(0.6)) p2.push_back(q);
    }
    const auto rep = decompose_trilinear(GridSet(n, p1), GridSet(n, p2), a, box);
    decomp.close(rep.residual(), 0.0, 1e-8, std::max(1.0, std::abs(rep.total)));
  }
}

void embedding_checks(Ctx& c) {
  auto emb = c.tally("embedding-corner-free");
  auto beh = c.tally("progression-free-construction");
  for (int t = 0; t < c.trials(100, 20); ++t) {
    const auto k = c.rng.uniform_int(2, 60);
    const LineSet a = random_progression_free(c.rng, k);
    const bool hyp = is_progression_free(a);
    for (auto rule : {EmbeddingRule::translation, EmbeddingRule::diagonal}) {
      const GridSet e = embed_corner_free(a, 3 * k, rule);
      const auto cnt = count_corners(e, CornerMode::grid, CornerEnumeration::by_point).count;
      emb.add(hyp, cnt == 0, -static_cast<double>(cnt));
    }
  }
  for (int t = 0; t < c.trials(40, 10); ++t) {
    const auto k = c.rng.uniform_int(3, 400);
    const auto b = behrend_construct(k);
    beh.add(is_progression_free(b.set) && b.set.modulus() == k && !b.set.empty());
  }
}

void trilinear_bound_checks(Ctx& c) {
  auto bound = c.tally("trilinear-uniform-bound");
  for (int t = 0; t < c.trials(60, 12); ++t) {
    const auto n = c.rng.uniform_int(3, c.quick ? 7 : 9);
    const Box box = t % 3 == 0 ? random_box(c.rng, n) : Box::full(n);
    const GridSet a = random_set_in(c.rng, box, c.rng.uniform(0.1, 0.9));
    const Field f = balanced_box_function(a, box);
    const double alpha = box_norm(f, box).minimalAlpha;
    const double b1 = static_cast<double>(box.xs.size()) / static_cast<double>(n);
    const double b2 = static_cast<double>(box.ys.size()) / static_cast<double>(n);
    const double alpha0 = std::pow(2.0, -12) * alpha * alpha * alpha * std::pow(b1, 24) * std::pow(b2, 24);
    const double u1 = alpha_uniformity_1d(balanced_function(box.xs)).minimalAlpha;
    const double u2 = alpha_uniformity_1d(balanced_function(box.ys)).minimalAlpha;
    const bool hyp = u1 <= alpha0 && u2 <= alpha0;
    const GridSet q1 = random_set_in(c.rng, box, c.rng.uniform01());
    const GridSet q2 = random_set_in(c.rng, box, c.rng.uniform01());
    const double lhs = std::abs(trilinear_corner_sum(Field::indicator(q1), Field::indicator(q2), f));
    const double nn = static_cast<double>(n);
    const double rhs = 2 * std::pow(alpha, 0.25) * b1 * b1 * b2 * b2 * nn * nn * nn;
    bound.leq(lhs, rhs, 1e-9, hyp);
  }
}

// ---- graphview ----

void quadratic_form_checks(Ctx& c) {
  auto q = c.tally("quadratic-form-bound");
  for (int t = 0; t < c.trials(200, 40); ++t) {
    const auto n = c.rng.uniform_int(1, 16);
    std::vector<double> m(static_cast<std::size_t>(n * n)), a(static_cast<std::size_t>(n));
    double frob = 0, an = 0;
    for (auto& v : m) v = c.rng.uniform(-1, 1), frob += v * v;
    for (auto& v : a) v = c.rng.uniform(-1, 1), an += v * v;
    double lhs = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::int64_t j = 0; j < n; ++j) s += m[static_cast<std::size_t>(i * n + j)] * a[static_cast<std::size_t>(j)];
      lhs += s * s;
    }
    q.leq(lhs, an * frob, 1e-12);
  }
}

Box random_square_box(Rng& rng, std::int64_t side) {
  const auto n = rng.uniform_int(side, 2 * side);
  return Box{random_subset_of_size(rng, n, side), random_subset_of_size(rng, n, side)};
}

void spectral_checks(Ctx& c) {
  auto trace = c.tally("spectral-trace");
  auto squares = c.tally("spectral-trace-squares");
  auto lower = c.tally("top-eigenvalue-lower-bound");
  auto ortho = c.tally("eigenvectors-orthogonal");
  auto upper = c.tally("top-eigenvalue-upper-bound");
  auto fwd = c.tally("quasirandom-forward");
  auto conv = c.tally("quasirandom-converse");
  const std::vector<std::int64_t> sides = c.quick ? std::vector<std::int64_t>{8, 16} : std::vector<std::int64_t>{8, 16, 32};
  for (int t = 0; t < c.trials(200, 24); ++t) {
    const auto side = sides[static_cast<std::size_t>(t) % sides.size()];
    const Box box = random_square_box(c.rng, side);
    const GridSet a = t % 2 ? random_set_in(c.rng, box, c.rng.uniform01()) : planted_set(c.rng, box, 0.3, 0.9);
    const auto s = gram_spectrum(a, box);
    const double n = static_cast<double>(s.n), n2 = n * n;
    const double count = static_cast<double>(a.size());
    trace.close(s.traceSum, count, 1e-6, std::max(1.0, count));
    const double ps = to_double(Rational(s.pairSquares));
    squares.close(s.traceSquares, ps, 1e-6, std::max(1.0, ps));
    const double delta = count / n2;
    lower.add(true, s.mu[0] >= delta * delta * n2 - 1e-6 * n2, (s.mu[0] - delta * delta * n2) / n2);
    double worst = 0;
    for (std::size_t i = 0; i < s.vectors.size(); ++i)
      for (std::size_t j = i; j < s.vectors.size(); ++j) {
        double dot = 0;
        for (std::size_t k = 0; k < s.vectors[i].size(); ++k) dot += s.vectors[i][k] * s.vectors[j][k];
        worst = std::max(worst, std::abs(dot - (i == j ? n : 0.0)));
      }
    ortho.add(true, worst <= Tolerances::orthogonality * n, Tolerances::orthogonality * n - worst);

    const double boxAlpha = to_double(box_fourth_power_exact(a, box, Centering::rows)) / (n2 * n2);
    const double alpha = std::min(0.999, boxAlpha * c.rng.uniform(0.5, 2.0) + 1e-12);
    const double eps = c.rng.uniform(0.001, 0.5);
    const auto r = spectral_uniformity_check(a, box, alpha, eps);
    upper.add(r.mu1Upper.hypothesis, r.mu1Upper.conclusion, r.mu1Upper.margin / n2);
    fwd.add(r.forward.hypothesis, r.forward.conclusion, r.forward.margin / n2);
    conv.add(r.converse.hypothesis, r.converse.conclusion, r.converse.margin);
  }
}

void level_set_checks(Ctx& c) {
  auto ls = c.tally("level-set-partition-conditions");
  for (int t = 0; t < c.trials(200, 30); ++t) {
    const auto n = c.rng.uniform_int(2, 64);
    std::vector<cd> v(static_cast<std::size_t>(n));
    double norm2 = 0;
    for (auto& e : v) e = t % 2 ? disc_value(c.rng) : cd(c.rng.uniform(-1, 1), 0), norm2 += std::norm(e);
    if (norm2 == 0) v[0] = 1, norm2 = 1;
    const double k = std::sqrt(static_cast<double>(n) / norm2);
    double mx = 0;
    for (auto& e : v) e *= k, mx = std::max(mx, std::abs(e));
    const double alpha = std::min(0.99, 1 / (mx * c.rng.uniform(1.0, 2.0)));
    const double xi = c.rng.uniform(0.01, 0.49);
    const double lambda = alpha * static_cast<double>(n) * c.rng.uniform(1.0, 3.0);
    const auto p = level_set_partition(v, alpha, xi, 1.0, lambda);
    ls.add(p.verified);
  }
}

void density_split_checks(Ctx& c) {
  auto ds = c.tally("density-split-inequality");
  for (int t = 0; t < c.trials(200, 30); ++t) {
    const auto n = c.rng.uniform_int(2, 16);
    const GridSet a = t % 2 ? random_set(c.rng, n, c.rng.uniform01()) : planted_set(c.rng, Box::full(n), 0.1, 0.9);
    std::vector<std::int64_t> cutsX{0}, cutsY{0};
    for (std::int64_t v = 1; v < n; ++v) {
      if (c.rng.bernoulli(0.3)) cutsX.push_back(v);
      if (c.rng.bernoulli(0.3)) cutsY.push_back(v);
    }
    cutsX.push_back(n), cutsY.push_back(n);
    std::vector<GridSet> cells;
    for (std::size_t i = 0; i + 1 < cutsX.size(); ++i)
      for (std::size_t j = 0; j + 1 < cutsY.size(); ++j)
        cells.push_back(GridSet::product(LineSet::interval(n, cutsX[i], cutsX[i + 1] - cutsX[i]),
                                         LineSet::interval(n, cutsY[j], cutsY[j + 1] - cutsY[j])));
    const Rational eta(c.rng.uniform_int(1, 100), 100);
    const auto r = density_split(a, cells, eta);
    const double margin = to_double(r.goodCount - r.rhs) / static_cast<double>(n * n);
    ds.add(true, r.inequalityHolds, margin);
  }
}

void increment_checks(Ctx& c) {
  auto inc = c.tally("increment-soundness");
  for (int t = 0; t < c.trials(100, 16); ++t) {
    const auto side = c.rng.uniform_int(4, c.quick ? 10 : 16);
    Box box = random_square_box(c.rng, side);
    if (t % 3 == 2) box.ys = random_subset_of_size(c.rng, box.modulus(), c.rng.uniform_int(2, box.modulus()));
    const GridSet a = t % 2 ? random_set_in(c.rng, box, c.rng.uniform(0.2, 0.8)) : planted_set(c.rng, box, 0.2, 0.95);
    const double alpha = c.rng.uniform(0.001, 0.2);
    IncrementConfig cfg;
    const auto r = find_density_increment(a, box, alpha, cfg);
    bool sound = true;
    double margin = 0;
    if (r.kind == IncrementKind::increment) {
      const auto count = a.count_in(r.g);
      bool inside = true;
      for (auto x : r.g.xs.members()) inside = inside && box.xs.contains(x);
      for (auto y : r.g.ys.members()) inside = inside && box.ys.contains(y);
      sound = inside && r.g.area() > 0 && r.newDensity * r.g.area() == count && count == r.count &&
              r.newDensity > r.delta;
      margin = to_double(r.newDensity - r.delta);
    }
    inc.add(r.kind == IncrementKind::increment, sound, sound ? margin : -1.0);
  }
}

// ---- partition ----

void ap_partition_checks(Ctx& c) {
  auto ap = c.tally("progression-partition");
  for (int t = 0; t < c.trials(50, 12); ++t) {
    const auto n = c.rng.uniform_int(2, c.quick ? 2000 : 10000);
    std::int64_t r1 = c.rng.uniform_int(0, n - 1), r2 = c.rng.uniform_int(0, n - 1);
    if (r1 == 0 && r2 == 0) r1 = 1;
    const auto s = c.rng.uniform_int(1, n);
    const auto p = ap_partition(n, r1, r2, s);
    ap.add(check_ap_partition(p, 256, c.rng.next()).all());
  }
}

std::int64_t count_in_square(const GridSet& w, const RightSquare& s) {
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < s.t; ++i)
    for (std::int64_t j = 0; j < s.t; ++j) k += w.contains(s.at(i, j)) ? 1 : 0;
  return k;
}

void right_square_checks(Ctx& c) {
  auto rs = c.tally("right-square-partition");
  for (int t = 0; t < c.trials(40, 10); ++t) {
    const auto n = c.rng.uniform_int(4, c.quick ? 16 : 32);
    const GridSet a = planted_set(c.rng, Box::full(n), 0.2, 0.9);
    const auto r1 = c.rng.uniform_int(0, n - 1), r2 = c.rng.uniform_int(0, n - 1);
    const double coeff = std::abs(dft_coefficient(balanced_function(a), r1, r2));
    const bool hyp = (r1 != 0 || r2 != 0) && coeff > Tolerances::zeroCoefficient * static_cast<double>(n * n);
    if (!hyp) {
      rs.add(false, false, 0);
      continue;
    }
    RefineOptions opt;
    opt.maxCells = 256;
    const auto p = right_square_partition(a, r1, r2, 0, opt);
    bool ok = p.verified && family_partitions(p.family, RightSquare{0, 0, 1, n}) &&
              static_cast<std::int64_t>(p.family.omega.size()) <= p.omegaBound;
    for (const auto& s : p.family.squares) ok = ok && s.d >= 1 && s.t >= 1;
    rs.add(ok);
  }
}

// Block densities on a coarse grid, so refinement has something to find.
GridSet structured_w(Rng& rng, std::int64_t n) {
  const auto blocks = rng.uniform_int(2, 4);
  std::vector<double> dens(static_cast<std::size_t>(blocks * blocks));
  for (auto& d : dens) d = rng.bernoulli(0.5) ? rng.uniform(0.0, 0.2) : rng.uniform(0.8, 1.0);
  std::vector<Point> pts;
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y) {
      const auto bx = x * blocks / n, by = y * blocks / n;
      if (rng.bernoulli(dens[static_cast<std::size_t>(bx * blocks + by)])) pts.push_back({x, y});
    }
  if (pts.empty()) pts.push_back({0, 0});
  return GridSet(n, std::move(pts));
}

void energy_checks(Ctx& c) {
  auto dec = c.tally("energy-decomposition-identity");
  auto bounded = c.tally("energy-bounded");
  auto inc = c.tally("energy-increases-on-refinement");
  auto acc = c.tally("energy-accounting");
  auto holder = c.tally("holder-step");
  const std::int64_t n = c.quick ? 16 : 32;
  for (int t = 0; t < c.trials(20, 4); ++t) {
    const GridSet w = structured_w(c.rng, n);
    const double delta = to_double(w.density());
    const double eps = delta * c.rng.uniform(0.05, 0.5);
    EnergyRunConfig cfg;
    cfg.maxIters = 5;
    const PowerLaw law{std::pow(10.0, c.rng.uniform(-4, -2)), 4};
    const auto run = energy_increment_run(w, eps, law, cfg);
    const double n2 = static_cast<double>(n * n);
    for (const auto& it : run.trace) {
      dec.add(it.decompositionHolds);
      bounded.leq(it.energy, n2, 1e-12);
      holder.add(true, it.holderHolds, (it.holderLhs - it.holderRhs) / std::max(1.0, it.holderRhs));
    }
    bool refined = false;
    for (const auto& it : run.trace) refined = refined || it.refinedCells > 0;
    inc.add(refined, run.energyIncreasing, run.energyIncreasing ? 0.0 : -1.0);
    std::int64_t mass = 0;
    for (const auto& s : run.squares) mass += count_in_square(w, s);
    for (auto p : run.bad) mass += w.contains(p) ? 1 : 0;
    acc.add(run.accountingExact && run.disjoint && mass == static_cast<std::int64_t>(w.size()));
  }
}

void saturation_checks(Ctx& c) {
  auto sat = c.tally("saturation-bound");
  for (int t = 0; t < c.trials(500, 40); ++t) {
    const std::int64_t side = t % 2 ? 12 : 8;
    const Box box = random_square_box(c.rng, side);
    const GridSet a = t % 3 ? random_set_in(c.rng, box, c.rng.uniform01()) : planted_set(c.rng, box, 0.1, 0.9);
    const auto r = saturation_bound_check(a, box);
    const double rhs = to_double(r.rhs);
    sat.add(true, r.holds, (rhs - to_double(r.lhs)) / std::max(1.0, rhs));
  }
}

// ---- driver ----

void hunt_checks(Ctx& c) {
  auto witness = c.tally("hunt-witness-verified");
  auto mono = c.tally("hunt-density-monotone");
  auto replay = c.tally("hunt-trace-replay");
  auto free = c.tally("hunt-no-corner-in-corner-free-set");
  const auto profile = ConstantsProfile::toy();
  for (int t = 0; t < c.trials(30, 6); ++t) {
    GridSet a;
    bool cornerFree = false;
    if (t % 3 == 2) {
      const auto k = c.rng.uniform_int(4, c.quick ? 10 : 20);
      a = embed_corner_free(behrend_construct(k).set, 3 * k);
      cornerFree = true;
    } else {
      const auto n = c.rng.uniform_int(8, c.quick ? 16 : 32);
      a = t % 2 ? random_set(c.rng, n, c.rng.uniform(0.2, 0.7)) : planted_set(c.rng, Box::full(n), 0.05, 0.8);
      if (a.empty()) a = GridSet(n, {{0, 0}});
    }
    const auto h = corner_hunt(a, profile);
    witness.add(h.outcome == HuntOutcome::corner, h.witness && h.witness->d > 0 && verify_corner(a, *h.witness),
                h.witness ? 0.0 : -1.0);
    mono.add(trace_monotone(h));
    replay.add(replay_trace(a, h));
    free.add(cornerFree, h.outcome != HuntOutcome::corner, h.outcome != HuntOutcome::corner ? 0.0 : -1.0);
  }
}

void constants_checks(Ctx& c) {
  auto k = c.tally("constants-in-unit-interval");
  for (const auto& p : {ConstantsProfile::toy(), ConstantsProfile::paper()}) {
    for (int i = 1; i < 100; ++i) {
      const double d = i / 100.0;
      bool ok = true;
      double worst = 0;
      for (const auto* r : {&p.alpha1, &p.alpha, &p.zeta, &p.gainFloor, &p.sizeFloor, &p.nThreshold}) {
        const double l = r->log10_value(d);
        ok = ok && std::isfinite(l) && l < 0;
        worst = std::min(worst, -l);
      }
      k.add(true, ok, ok ? worst : -1.0);
    }
  }
}

struct Group {
  std::vector<CheckInfo> checks;
  std::function<void(Ctx&)> run;
};

const std::vector<Group>& groups() {
  static const std::vector<Group> g = {
      {{{"marginal-sums-match-count", "zn_core", "|E1| sum_m delta_m = |A| = |E2| sum_k gamma_k exactly"},
        {"balanced-rows-sum-to-zero", "zn_core", "row sums of the row-balanced box function vanish"},
        {"marginal-check-monotone", "zn_core", "the marginal check passing at alpha1 passes at any larger alpha1"}},
       zn_core_checks},
      {{{"energy-identity", "fourier", "N^d sum |f|^2 = sum |f^|^2"},
        {"inner-product-identity", "fourier", "N^d sum f conj g = sum f^ conj g^"},
        {"correlation-identity", "fourier", "N^d sum_k |(f * g)(k)|^2 = sum |f^|^2 |g^|^2"},
        {"inverse-round-trip", "fourier", "inverse(dft(f)) = f"},
        {"fast-transform-matches-direct", "fourier", "FFT equals the direct sum, including Bluestein lengths"}},
       fourier_checks},
      {{{"fourth-moment-bound", "uniformity", "sum |f^|^4 <= alpha N^4, both routes agreeing"},
        {"max-coefficient-bound", "uniformity", "max |f^| <= alpha^(1/4) N"},
        {"coefficient-converse", "uniformity", "max |f^| <= a N implies alpha <= a^2"},
        {"correlation-deviation-bound", "uniformity",
         "|sum |f * g|^2 - |sum f|^2 |sum g|^2 / N| <= alpha^(1/2) N^2 |g|^2"}},
       uniformity_lemma_checks},
      {{{"cube-cauchy-schwarz", "uniformity", "|cube inner product| <= product of the four box norms"},
        {"box-norm-triangle", "uniformity", "||f + g|| <= ||f|| + ||g||"},
        {"box-norm-duality", "uniformity", "cube sum equals the row-pair formula"}},
       box_norm_checks},
      {{{"cube-count-lower-bound", "uniformity", "cubes(A) >= delta^4 N^4"},
        {"cube-count-methods-agree", "uniformity", "brute and row-pair cube counts agree"},
        {"cube-count-upper-bound", "uniformity",
         "row deviation <= alpha N implies cubes(A) <= (delta + 2 alpha^(1/4))^4 N^4"}},
       cube_checks},
      {{{"row-deviation-box-identity", "uniformity",
         "||(delta_m - delta) 1_box||^4 = |E1|^2 (sum_p (delta_p - delta)^2)^2"}},
       row_deviation_identity},
      {{{"progression-discrepancy-bound", "uniformity", "||A n P| - delta |P|| <= 16 alpha^(1/4) N^2"}},
       discrepancy_checks},
      {{{"corner-enumerations-agree", "corners", "counting by difference equals counting by point"},
        {"trilinear-orientation", "corners", "trilinear sum of 1_A equals |A| plus the cyclic corner count"},
        {"trilinear-decomposition-exact", "corners", "the three-term split of the corner sum is exact"},
        {"corner-count-chain", "corners", "a corner sum above the degenerate count yields a verified corner"}},
       corner_checks},
      {{{"embedding-corner-free", "corners", "embedded 3-AP-free sets contain no corner"},
        {"progression-free-construction", "corners", "the sphere construction is 3-AP-free"}},
       embedding_checks},
      {{{"trilinear-uniform-bound", "corners",
         "box-uniform f and uniform E1, E2 give |corner sum| <= 2 alpha^(1/4) beta1^2 beta2^2 N^3"}},
       trilinear_bound_checks},
      {{{"quadratic-form-bound", "graphview", "(Ca, Ca) <= |a|^2 sum c_ij^2"}}, quadratic_form_checks},
      {{{"spectral-trace", "graphview", "sum mu_i = delta n^2"},
        {"spectral-trace-squares", "graphview", "sum mu_i^2 = sum |A_p n A_q|^2"},
        {"top-eigenvalue-lower-bound", "graphview", "mu_1 >= delta^2 n^2"},
        {"eigenvectors-orthogonal", "graphview", "(u_i, u_j) = n [i = j]"},
        {"top-eigenvalue-upper-bound", "graphview", "close marginals give mu_1 <= (delta^2 + 2 eps + alpha1^2) n^2"},
        {"quasirandom-forward", "graphview", "box-uniform A has a small second eigenvalue"},
        {"quasirandom-converse", "graphview", "a small second eigenvalue makes A box-uniform"}},
       spectral_checks},
      {{{"level-set-partition-conditions", "graphview", "level-set classes cover, are small and centred in the disk"}},
       level_set_checks},
      {{{"density-split-inequality", "graphview", "sum over good cells <= delta |good| + eta |bad|"}},
       density_split_checks},
      {{{"increment-soundness", "graphview", "every increment has an exactly verified larger density"}},
       increment_checks},
      {{{"progression-partition", "partition",
         "exact partition, common difference, length spread <= 1, count bound, diameter <= s"}},
       ap_partition_checks},
      {{{"right-square-partition", "partition", "right squares partition the grid with omega within its bound"}},
       right_square_checks},
      {{{"energy-decomposition-identity", "partition", "|E2|^2 = |E1|^2 + |E2 - E1|^2 + 2 (E1, E2 - E1) exactly"},
        {"energy-bounded", "partition", "energy <= N^2"},
        {"energy-increases-on-refinement", "partition", "energy strictly increases whenever a cell is refined"},
        {"energy-accounting", "partition", "|W| = sum |W n cell| + |W n B|, all disjoint"},
        {"holder-step", "partition",
         "sum |C| alpha(delta_C) >= K (sum delta_C |C|)^rho / (sum |C|)^(rho - 1)"}},
       energy_checks},
      {{{"saturation-bound", "partition", "||f_A||^4 <= 4 |E1|^2 |E2|^2 delta^2 (1 - delta)"}}, saturation_checks},
      {{{"hunt-witness-verified", "driver", "returned corners lie in A with d > 0"},
        {"hunt-density-monotone", "driver", "increment steps raise the density and boxes never grow"},
        {"hunt-trace-replay", "driver", "replaying the recorded boxes reproduces the densities"},
        {"hunt-no-corner-in-corner-free-set", "driver", "hunts on embedded progression-free sets never report a corner"}},
       hunt_checks},
      {{{"constants-in-unit-interval", "driver", "every profile constant lies in (0, 1) for delta in (0, 1)"}},
       constants_checks},
  };
  return g;
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

}  // namespace

const std::vector<CheckInfo>& verify_manifest() {
  static const std::vector<CheckInfo> m = [] {
    std::vector<CheckInfo> out;
    for (const auto& g : groups())
      for (const auto& c : g.checks) out.push_back(c);
    return out;
  }();
  return m;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  if (options.only) {
    bool known = false;
    for (const auto& c : verify_manifest()) known = known || c.name == *options.only;
    if (!known) throw InputError("unknown check '" + *options.only + "'");
  }
  std::vector<CheckResult> out;
  for (const auto& g : groups()) {
    bool wanted = !options.only;
    for (const auto& c : g.checks) wanted = wanted || c.name == *options.only;
    if (!wanted) continue;
    std::map<std::string, CheckResult> results;
    for (const auto& c : g.checks) { CheckResult r; r.lemma = c.name; r.module = c.module; results[c.name] = r; }
    Ctx ctx{Rng(options.seed ^ name_hash(g.checks.front().name)), options.quick, &results};
    g.run(ctx);
    for (const auto& c : g.checks)
      if (!options.only || c.name == *options.only) out.push_back(results.at(c.name));
  }
  return out;
}

}  // namespace cornerlab
