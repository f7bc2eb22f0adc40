#include "cornerlab/graphview.hpp"

#include "cornerlab/uniformity.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace cornerlab {

namespace {

using Bits = std::vector<std::uint64_t>;

std::int64_t common(const Bits& a, const Bits& b) {
  std::int64_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

// Column indicator bitsets over the positions of box.ys.
std::vector<Bits> column_bits(const GridSet& a, const Box& box) {
  const std::size_t words = (box.ys.size() + 63) / 64;
  std::vector<Bits> cols(box.xs.size(), Bits(words, 0));
  for (auto p : a.points()) {
    const auto i = box.xs.index_of(p.x);
    const auto j = box.ys.index_of(p.y);
    if (i < 0 || j < 0) continue;
    cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) / 64] |= std::uint64_t{1} << (j % 64);
  }
  return cols;
}

void fix_sign(std::vector<double>& v) {
  double sum = 0;
  for (double x : v) sum += x;
  const double scale = static_cast<double>(v.size());
  bool flip = sum < 0;
  if (std::abs(sum) <= 1e-9 * scale) {
    flip = false;
    for (double x : v)
      if (std::abs(x) > 1e-12) {
        flip = x < 0;
        break;
      }
  }
  if (flip)
    for (double& x : v) x = -x;
}

std::int64_t isqrt_floor(double v) { return static_cast<std::int64_t>(std::floor(v)); }

}  // namespace

SpectralReport gram_spectrum(const GridSet& a, const Box& box) {
  if (!box.is_square()) throw InputError("spectrum needs a square box");
  if (box.xs.empty()) throw InputError("spectrum needs a nonempty box");
  require_inside(a, box);
  const auto n = static_cast<std::int64_t>(box.xs.size());
  const auto cols = column_bits(a, box);

  Eigen::MatrixXd t(n, n);
  SpectralReport rep;
  rep.box = box;
  rep.n = n;
  rep.count = static_cast<std::int64_t>(a.size());
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i; j < n; ++j) {
      const auto c = common(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      t(i, j) = t(j, i) = static_cast<double>(c);
      const BigInt sq = BigInt(c) * c;
      rep.pairSquares += i == j ? sq : BigInt(2 * sq);
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return values(l) > values(r); });

  const double scale = std::sqrt(static_cast<double>(n));
  for (auto idx : order) {
    rep.mu.push_back(std::max(values(idx), Tolerances::eigenClamp));
    std::vector<double> u(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = vecs(i, idx) * scale;
    fix_sign(u);
    rep.vectors.push_back(std::move(u));
  }
  double sum1 = 0;
  for (double x : rep.vectors[0]) {
    sum1 += x;
    rep.deviation += (x - 1) * (x - 1);
  }
  rep.perronAligned = sum1 >= -1e-9 * static_cast<double>(n);
  for (double m : rep.mu) {
    rep.traceSum += m;
    rep.traceSquares += m * m;
  }
  return rep;
}

SpectralUniformityReport spectral_uniformity_check(const GridSet& a, const Box& box, double alpha, double epsilon,
                                                   std::optional<double> alpha1) {
  const auto spec = gram_spectrum(a, box);
  const auto profile = marginal_profile(a, box);
  const double n = static_cast<double>(spec.n);
  const double n2 = n * n;

  SpectralUniformityReport r;
  r.delta = to_double(profile.density);
  r.alpha = alpha;
  r.epsilon = epsilon;
  const double rowLevel = to_double(profile.rowDeviation) / static_cast<double>(box.ys.size());
  const double colLevel = to_double(profile.columnDeviation) / static_cast<double>(box.xs.size());
  r.alpha1Measured = std::sqrt(std::max(rowLevel, colLevel));
  r.alpha1Supplied = alpha1;
  r.marginalsHold = !alpha1 || r.alpha1Measured <= *alpha1;
  r.boxAlpha = to_double(box_fourth_power_exact(a, box, Centering::rows)) / (n2 * n2);
  r.deviation = spec.deviation;
  r.mu1 = spec.mu[0];
  r.mu2 = spec.n >= 2 ? spec.mu[1] : 0.0;
  r.eta = r.mu2 / n2;

  const double tol = Tolerances::spectral * n2;
  const double a1 = r.alpha1Measured;
  const bool close = r.marginalsHold && spec.deviation <= epsilon * epsilon * n + Tolerances::spectral;

  auto set = [](ImplicationCheck& c, bool hyp, double lhs, double rhs, double slack) {
    c.hypothesis = hyp;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.conclusion = lhs <= rhs + slack;
  };
  set(r.mu1Lower, true, r.delta * r.delta * n2, r.mu1, tol);
  set(r.mu1Upper, close, r.mu1, (r.delta * r.delta + 2 * epsilon + a1 * a1) * n2, tol);
  set(r.forward, close && r.boxAlpha <= alpha, r.mu2,
      (std::sqrt(alpha) + 4 * std::sqrt(epsilon) + 4 * std::sqrt(a1)) * n2, tol);
  set(r.converse, close, r.boxAlpha, r.eta + 16 * epsilon + 16 * a1, Tolerances::spectral);
  return r;
}

LevelSetPartition level_set_partition(const std::vector<std::complex<double>>& v, double alpha, double xi, double d,
                                      double lambda) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
  if (!(xi > 0 && xi < 0.5)) throw InputError("xi must lie in (0, 1/2)");
  if (v.empty()) throw InputError("empty vector");
  const double n = static_cast<double>(v.size());
  double norm2 = 0;
  for (auto c : v) norm2 += std::norm(c);
  if (std::abs(norm2 - n) > Tolerances::spectral * n) throw InputError("vector must satisfy |v|^2 = n");
  if (std::abs(lambda) < alpha * n * d * (1 - 1e-9)) throw InputError("|lambda| < alpha n D");
  const double radius = 1 / alpha;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > radius + Tolerances::levelSetRadius)
      throw InputError("entry " + std::to_string(i) + " lies outside the disk of radius 1/alpha");

  LevelSetPartition out;
  out.alpha = alpha;
  out.xi = xi;
  out.countBound = 4 / (alpha * xi * alpha * xi);
  const double side = xi / std::sqrt(2.0);
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> cellOf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::pair<std::int64_t, std::int64_t> cell{isqrt_floor(v[i].real() / side),
                                                     isqrt_floor(v[i].imag() / side)};
    auto it = cellOf.find(cell);
    if (it == cellOf.end()) {
      it = cellOf.emplace(cell, out.classes.size()).first;
      out.classes.emplace_back();
      std::complex<double> c{(static_cast<double>(cell.first) + 0.5) * side,
                             (static_cast<double>(cell.second) + 0.5) * side};
      if (std::abs(c) > radius) c *= radius / std::abs(c);
      out.centers.push_back(c);
    }
    out.classes[it->second].push_back(i);
  }
  out.withinCountBound = static_cast<double>(out.classes.size()) <= out.countBound;

  bool ok = true;
  std::size_t covered = 0;
  for (std::size_t k = 0; k < out.classes.size(); ++k) {
    covered += out.classes[k].size();
    if (std::abs(out.centers[k]) > radius + Tolerances::levelSetRadius) ok = false;
    for (auto j : out.classes[k])
      if (std::abs(v[j] - out.centers[k]) > xi + Tolerances::levelSetRadius) ok = false;
  }
  out.verified = ok && covered == v.size();
  return out;
}

DensitySplit density_split(const std::vector<std::int64_t>& counts, const std::vector<std::int64_t>& sizes,
                           const Rational& eta) {
  if (counts.size() != sizes.size()) throw InputError("counts and sizes differ in length");
  if (eta <= 0) throw InputError("eta must be positive");
  std::int64_t total = 0, area = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (sizes[i] < 0 || counts[i] < 0 || counts[i] > sizes[i]) throw InputError("invalid cell count");
    total += counts[i];
    area += sizes[i];
  }
  if (area == 0) throw InputError("empty partition");
  DensitySplit s;
  s.delta = Rational(total, area);
  Rational badArea = 0, goodArea = 0;
  s.goodCount = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (Rational(counts[i]) < (s.delta - eta) * sizes[i]) {
      s.bad.push_back(i);
      badArea += sizes[i];
    } else {
      s.goodCount += counts[i];
      goodArea += sizes[i];
    }
  }
  s.rhs = s.delta * goodArea + eta * badArea;
  s.inequalityHolds = s.goodCount >= s.rhs;
  return s;
}

DensitySplit density_split(const GridSet& a, const std::vector<GridSet>& cells, const Rational& eta) {
  std::set<Point> seen;
  std::vector<std::int64_t> counts, sizes;
  for (const auto& c : cells) {
    if (c.modulus() != a.modulus()) throw InputError("cell modulus differs from the set modulus");
    for (auto p : c.points())
      if (!seen.insert(p).second)
        throw InputError("cells overlap at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    counts.push_back(static_cast<std::int64_t>(a.intersect(c).size()));
    sizes.push_back(static_cast<std::int64_t>(c.size()));
  }
  for (auto p : a.points())
    if (!seen.count(p))
      throw InputError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is outside every cell");
  return density_split(counts, sizes, eta);
}

std::string to_string(ProfileName p) { return p == ProfileName::toy ? "toy" : "paper"; }

std::string to_string(IncrementKind k) {
  switch (k) {
    case IncrementKind::uniform:
      return "uniform";
    case IncrementKind::increment:
      return "increment";
    default:
      return "none";
  }
}

IncrementFloors increment_floors(const IncrementConfig& config, double alpha, const Box& box) {
  const double n = static_cast<double>(std::min(box.xs.size(), box.ys.size()));
  IncrementFloors f;
  f.xi = alpha / 16;
  f.carveSteps = std::max(1, static_cast<int>(std::ceil(2 * std::log2(1 / alpha))));
  if (config.profile == ProfileName::toy) {
    f.alpha1 = alpha / 10;
    f.gainFloor = alpha * alpha * alpha / 64;
    f.sizeFloor = alpha * n / 16;
    f.classFloor = alpha * n / 16;
    f.carveFloor = alpha * alpha * alpha / 64;
  } else if (box.is_square()) {
    f.alpha1 = std::ldexp(std::pow(alpha, 20), -56);
    f.gainFloor = std::ldexp(std::pow(alpha, 60), -200);
    f.sizeFloor = f.gainFloor * n;
    f.classFloor = std::ldexp(std::pow(alpha, 8), -16) * n;
    f.carveFloor = std::ldexp(std::pow(alpha, 64), -450);
  } else {
    f.alpha1 = alpha / 10;
    f.gainFloor = std::ldexp(std::pow(alpha, 70), -500);
    f.sizeFloor = f.gainFloor * n;
    f.classFloor = std::ldexp(std::pow(alpha, 8), -16) * n;
    f.carveFloor = std::ldexp(std::pow(alpha, 64), -450);
  }
  if (config.alpha1) f.alpha1 = *config.alpha1;
  return f;
}

namespace {

Box make_box(std::int64_t n, std::vector<std::int64_t> xs, std::vector<std::int64_t> ys) {
  return Box{LineSet(n, std::move(xs)), LineSet(n, std::move(ys))};
}

std::vector<std::int64_t> slice(const LineSet& s, std::size_t from, std::size_t len) {
  return {s.members().begin() + static_cast<std::ptrdiff_t>(from),
          s.members().begin() + static_cast<std::ptrdiff_t>(from + len)};
}

struct Candidate {
  Box g;
  std::string branch;
};

// Exact evaluation of candidate boxes against the density of A on the parent box.
class Judge {
 public:
  Judge(const GridSet& a, const Box& box, const IncrementFloors& floors)
      : a_(a), count_(static_cast<std::int64_t>(a.size())), area_(box.area()), floors_(floors) {}

  struct Scored {
    Candidate c;
    std::int64_t count = 0;
    bool meetsSize = false;
    Rational excess;  // count - delta * area
  };

  std::optional<Scored> score(const Candidate& c) const {
    const std::int64_t area = c.g.area();
    if (area == 0) return std::nullopt;
    const std::int64_t k = a_.count_in(c.g);
    if (static_cast<__int128>(k) * area_ <= static_cast<__int128>(count_) * area) return std::nullopt;
    Scored s{c, k, false, Rational(k) - Rational(count_, area_) * area};
    s.meetsSize = static_cast<double>(std::min(c.g.xs.size(), c.g.ys.size())) >= floors_.sizeFloor;
    return s;
  }

  std::optional<Scored> best(const std::vector<Candidate>& pool) const {
    std::optional<Scored> top;
    for (const auto& c : pool) {
      auto s = score(c);
      if (!s) continue;
      if (!top || better(*s, *top)) top = std::move(s);
    }
    return top;
  }

 private:
  static bool better(const Scored& l, const Scored& r) {
    if (l.meetsSize != r.meetsSize) return l.meetsSize;
    if (l.excess != r.excess) return l.excess > r.excess;
    if (l.c.g.xs.members() != r.c.g.xs.members()) return l.c.g.xs.members() < r.c.g.xs.members();
    return l.c.g.ys.members() < r.c.g.ys.members();
  }

  const GridSet& a_;
  std::int64_t count_;
  std::int64_t area_;
  IncrementFloors floors_;
};

// Level-set search on one eigenvector: each class F of columns paired with
// the rows where A n (F x {y}) exceeds delta |F|.
std::vector<Candidate> level_set_candidates(const GridSet& a, const Box& box, const SpectralReport& spec,
                                            std::size_t idx, const IncrementFloors& floors,
                                            const std::string& branch, std::vector<std::string>& notes) {
  std::vector<Candidate> out;
  const std::int64_t n = spec.n;
  const double lambda = spec.mu[idx];
  double alphaL = std::abs(lambda) / static_cast<double>(n * n);
  if (alphaL < 1e-12) {
    notes.push_back(branch + ": eigenvalue is zero, no level sets");
    return out;
  }
  alphaL = std::min(alphaL, 1 - 1e-12);
  std::vector<std::complex<double>> v(spec.vectors[idx].begin(), spec.vectors[idx].end());
  LevelSetPartition part;
  try {
    part = level_set_partition(v, alphaL, floors.xi, static_cast<double>(n), lambda);
  } catch (const InputError& e) {
    notes.push_back(branch + ": level sets rejected: " + e.what());
    return out;
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < part.classes.size(); ++k)
    if (static_cast<double>(part.classes[k].size()) >= floors.classFloor) keep.push_back(k);
  if (keep.empty()) {
    notes.push_back(branch + ": every class is below the class floor, using all classes");
    for (std::size_t k = 0; k < part.classes.size(); ++k) keep.push_back(k);
  }
  const std::int64_t total = static_cast<std::int64_t>(a.size());
  const std::int64_t area = box.area();
  for (auto k : keep) {
    std::vector<std::int64_t> fx;
    for (auto j : part.classes[k]) fx.push_back(box.xs[j]);
    const auto f = static_cast<std::int64_t>(fx.size());
    std::vector<std::int64_t> rows;
    for (auto y : box.ys.members()) {
      std::int64_t c = 0;
      for (auto x : fx) c += a.contains(x, y) ? 1 : 0;
      if (c * area > total * f) rows.push_back(y);
    }
    if (!rows.empty()) out.push_back({make_box(box.modulus(), fx, rows), branch});
  }
  return out;
}

IncrementResult finalize(const Judge::Scored& s, IncrementResult r) {
  r.kind = IncrementKind::increment;
  r.branch = s.c.branch;
  r.g = s.c.g;
  r.count = s.count;
  r.newDensity = Rational(s.count, s.c.g.area());
  r.densityGain = r.newDensity - r.delta;
  r.meetsGainFloor = to_double(r.densityGain) >= r.floors.gainFloor;
  r.meetsSizeFloor = s.meetsSize;
  return r;
}

std::vector<Candidate> line_candidates(const GridSet& a, const Box& box) {
  const auto p = marginal_profile(a, box);
  std::vector<std::int64_t> rows, cols;
  for (std::size_t j = 0; j < box.ys.size(); ++j)
    if (p.rowDensity[j] > p.density) rows.push_back(box.ys[j]);
  for (std::size_t i = 0; i < box.xs.size(); ++i)
    if (p.columnDensity[i] > p.density) cols.push_back(box.xs[i]);
  std::vector<Candidate> out;
  if (!rows.empty()) out.push_back({make_box(box.modulus(), box.xs.members(), rows), "line-fallback"});
  if (!cols.empty()) out.push_back({make_box(box.modulus(), cols, box.ys.members()), "line-fallback"});
  return out;
}

// Splits a rectangle once: a square of the short side when the long side is
// at least 1.5 times the short side, else two squares (or a square and a
// near-square) and a rectangle.
void split_rectangle(const Box& r, std::vector<Box>& squares, std::vector<Box>& rects) {
  const std::int64_t n = r.modulus();
  const bool xLong = r.xs.size() >= r.ys.size();
  const LineSet& lng = xLong ? r.xs : r.ys;
  const LineSet& shrt = xLong ? r.ys : r.xs;
  const std::size_t a = lng.size(), b = shrt.size();
  auto mk = [&](std::vector<std::int64_t> l, std::vector<std::int64_t> s) {
    return xLong ? make_box(n, std::move(l), std::move(s)) : make_box(n, std::move(s), std::move(l));
  };
  auto push = [&](Box box) {
    if (box.area() == 0) return;
    (box.is_square() ? squares : rects).push_back(std::move(box));
  };
  if (a == b) {
    push(r);
    return;
  }
  if (2 * a >= 3 * b) {
    push(mk(slice(lng, 0, b), shrt.members()));
    push(mk(slice(lng, b, a - b), shrt.members()));
    return;
  }
  const std::size_t h = b / 2;
  push(mk(slice(lng, 0, h), slice(shrt, 0, h)));
  push(mk(slice(lng, 0, h), slice(shrt, h, b - h)));
  push(mk(slice(lng, h, a - h), shrt.members()));
}

struct CarveOutcome {
  std::vector<std::vector<Candidate>> pools;
};

CarveOutcome carve_candidates(const GridSet& a, const Box& box, double alpha, const IncrementFloors& floors,
                              const IncrementConfig& config, std::vector<std::string>& notes) {
  CarveOutcome out;
  const std::int64_t n = box.modulus();
  const bool xLong = box.xs.size() >= box.ys.size();
  const LineSet& lng = xLong ? box.xs : box.ys;
  const LineSet& shrt = xLong ? box.ys : box.xs;
  const std::size_t L = lng.size(), s = shrt.size();
  auto mk = [&](std::vector<std::int64_t> l) {
    return xLong ? make_box(n, std::move(l), shrt.members()) : make_box(n, shrt.members(), std::move(l));
  };

  std::vector<std::size_t> sizes;
  if (L <= 2 * s) {
    sizes.push_back(L);
  } else {
    sizes.assign(L / s, s);
    const std::size_t rem = L % s;
    if (rem > 0) {
      if (2 * rem >= s) {
        sizes.push_back(rem);
      } else {
        const std::size_t merged = s + rem;
        sizes.back() = merged / 2;
        sizes.push_back(merged - merged / 2);
      }
    }
  }
  std::vector<Box> chunks;
  for (std::size_t from = 0; auto len : sizes) {
    chunks.push_back(mk(slice(lng, from, len)));
    from += len;
  }

  const Rational delta(static_cast<std::int64_t>(a.size()), box.area());
  const double d = to_double(delta);
  std::vector<double> norm(chunks.size()), dens(chunks.size());
  std::vector<bool> inB(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const auto sub = a.intersect(chunks[i]);
    const double area = static_cast<double>(chunks[i].area());
    norm[i] = to_double(box_fourth_power_exact(sub, chunks[i], delta));
    dens[i] = static_cast<double>(sub.size()) / area;
    inB[i] = norm[i] >= alpha * area * area / 16;
  }
  std::optional<std::size_t> i0;
  double bestRatio = -1;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (!inB[i] || dens[i] < d - floors.carveFloor) continue;
    const double area = static_cast<double>(chunks[i].area());
    const double ratio = norm[i] / (area * area);
    if (ratio > bestRatio) {
      bestRatio = ratio;
      i0 = i;
    }
  }
  if (!i0) {
    std::vector<std::int64_t> rest;
    for (std::size_t i = 0; i < chunks.size(); ++i)
      if (!inB[i]) {
        const auto& m = (xLong ? chunks[i].xs : chunks[i].ys).members();
        rest.insert(rest.end(), m.begin(), m.end());
      }
    notes.push_back("carve: every large-norm strip is sparse, using the union of the other strips");
    if (!rest.empty()) out.pools.push_back({{mk(rest), "carve-complement"}});
    return out;
  }

  const Box w = chunks[*i0];
  std::vector<Box> squares, rects{w};
  for (int step = 0; step < floors.carveSteps && !rects.empty(); ++step) {
    std::vector<Box> next;
    for (const auto& r : rects) split_rectangle(r, squares, next);
    rects = std::move(next);
  }
  if (squares.empty()) {
    notes.push_back("carve: no squares produced");
    return out;
  }
  std::size_t i1 = 0;
  double bestNorm = -1;
  for (std::size_t i = 0; i < squares.size(); ++i) {
    const double v = to_double(box_fourth_power_exact(a.intersect(squares[i]), squares[i], delta));
    if (v > bestNorm) {
      bestNorm = v;
      i1 = i;
    }
  }
  const Box& f = squares[i1];
  const std::int64_t wCount = a.count_in(w), fCount = a.count_in(f);
  const std::int64_t restArea = w.area() - f.area();
  std::vector<Candidate> pieces;
  for (std::size_t i = 0; i < squares.size(); ++i)
    if (i != i1) pieces.push_back({squares[i], "carve-piece"});
  for (const auto& r : rects) pieces.push_back({r, "carve-piece"});

  std::vector<Candidate> inner;
  IncrementConfig innerConfig = config;
  innerConfig.lineFallback = false;
  const auto sub = find_density_increment(a.intersect(f), f, alpha, innerConfig);
  if (sub.kind == IncrementKind::increment) inner.push_back({sub.g, "carve-square/" + sub.branch});
  else notes.push_back("carve: square search returned " + to_string(sub.kind));

  const bool restDense =
      restArea > 0 && Rational(wCount - fCount, restArea) > delta + Rational(floors.carveFloor);
  if (restDense) {
    out.pools.push_back(std::move(pieces));
    out.pools.push_back(std::move(inner));
  } else {
    out.pools.push_back(std::move(inner));
    out.pools.push_back(std::move(pieces));
  }
  return out;
}

}  // namespace

std::optional<Box> marginal_increment_box(const GridSet& a, const Box& box, double zeta,
                                          std::vector<std::string>* notes) {
  const auto p = marginal_profile(a, box);
  const Rational z(zeta);
  const auto verdict = marginal_uniformity_check(p, z, DeviationScale::squared);
  if (verdict.both()) return std::nullopt;
  const bool rows = !verdict.rowsHold;
  const auto& dens = rows ? p.rowDensity : p.columnDensity;
  const LineSet& axis = rows ? box.ys : box.xs;
  const Rational half = z / 2;
  std::vector<std::int64_t> plus, keep, above;
  std::size_t minus = 0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (dens[i] > p.density + half) plus.push_back(axis[i]);
    if (dens[i] < p.density - half) ++minus;
    else keep.push_back(axis[i]);
    if (dens[i] > p.density) above.push_back(axis[i]);
  }
  const Rational threshold = z * z * static_cast<std::int64_t>(axis.size()) / 4;
  std::vector<std::int64_t> pick;
  std::string how;
  if (!plus.empty() && Rational(static_cast<std::int64_t>(plus.size())) >= threshold) {
    pick = plus, how = "dense lines";
  } else if (minus > 0 && !keep.empty() && Rational(static_cast<std::int64_t>(minus)) >= threshold) {
    pick = keep, how = "complement of sparse lines";
  } else if (!plus.empty()) {
    pick = plus, how = "dense lines below the count threshold";
  } else if (minus > 0 && !keep.empty()) {
    pick = keep, how = "complement of sparse lines below the count threshold";
  } else {
    pick = above, how = "lines above the mean";
  }
  if (notes) notes->push_back(std::string(rows ? "rows" : "columns") + ": " + how);
  if (pick.empty()) return std::nullopt;
  const std::int64_t n = box.modulus();
  return rows ? make_box(n, box.xs.members(), pick) : make_box(n, pick, box.ys.members());
}

IncrementResult find_density_increment(const GridSet& a, const Box& box, double alpha,
                                       const IncrementConfig& config) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
  if (box.area() == 0) throw InputError("empty box");
  require_inside(a, box);
  IncrementResult r;
  r.profile = config.profile;
  r.floors = increment_floors(config, alpha, box);
  const auto total = static_cast<std::int64_t>(a.size());
  r.delta = Rational(total, box.area());
  if (total == 0 || total == box.area()) {
    r.kind = IncrementKind::uniform;
    r.branch = "degenerate-density";
    return r;
  }
  const Judge judge(a, box, r.floors);
  const double w = static_cast<double>(box.xs.size()), h = static_cast<double>(box.ys.size());
  r.boxAlpha = to_double(box_fourth_power_exact(a, box, Centering::rows)) / (w * w * h * h);

  if (auto g = marginal_increment_box(a, box, r.floors.alpha1, &r.notes)) {
    const bool rows = g->xs.size() == box.xs.size() && g->ys.size() != box.ys.size();
    if (auto s = judge.score({*g, rows ? "marginal-rows" : "marginal-columns"})) return finalize(*s, r);
    r.notes.push_back("marginal candidate failed exact verification");
  }
  if (r.boxAlpha <= alpha) {
    r.kind = IncrementKind::uniform;
    r.branch = "uniform";
    return r;
  }

  std::vector<std::vector<Candidate>> pools;
  if (box.is_square() && box.xs.size() >= 2) {
    const auto spec = gram_spectrum(a, box);
    const auto n = static_cast<double>(spec.n);
    const bool case1 = spec.deviation <= alpha * alpha * n / 36;
    if (!case1) r.notes.push_back("case 2: level sets of u1 searched in place of u2");
    const std::size_t first = case1 ? 1 : 0, second = case1 ? 0 : 1;
    const std::string label = case1 ? "spectral-case1" : "spectral-case2";
    pools.push_back(level_set_candidates(a, box, spec, first, r.floors, label, r.notes));
    pools.push_back(level_set_candidates(a, box, spec, second, r.floors, label + "-other-vector", r.notes));
  } else if (!box.is_square()) {
    auto carve = carve_candidates(a, box, alpha, r.floors, config, r.notes);
    for (auto& p : carve.pools) pools.push_back(std::move(p));
  }
  if (config.lineFallback) pools.push_back(line_candidates(a, box));

  for (const auto& pool : pools)
    if (auto s = judge.best(pool)) return finalize(*s, r);
  r.kind = IncrementKind::none;
  r.branch = "none";
  r.notes.push_back("no candidate passed exact verification");
  return r;
}

}  // namespace cornerlab
