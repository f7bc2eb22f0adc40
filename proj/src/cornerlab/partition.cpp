#include "cornerlab/partition.hpp"

#include "cornerlab/fourier.hpp"
#include "cornerlab/uniformity.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace cornerlab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(((static_cast<__int128>(a) * b) % n + n) % n);
}

std::int64_t minimal_lift(std::int64_t v, std::int64_t n) { return 2 * v > n ? v - n : v; }

// Residues r1 x + r2 y over P x Q.
std::vector<std::int64_t> image(const Progression& p, const Progression& q, std::int64_t r1, std::int64_t r2,
                                std::int64_t n) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(p.length * q.length));
  for (std::int64_t i = 0; i < p.length; ++i) {
    const std::int64_t px = mulmod(p.at(i), r1, n);
    for (std::int64_t j = 0; j < q.length; ++j) out.push_back((px + mulmod(q.at(j), r2, n)) % n);
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> Progression::members() const {
  std::vector<std::int64_t> m;
  m.reserve(static_cast<std::size_t>(length));
  for (std::int64_t k = 0; k < length; ++k) m.push_back(at(k));
  return m;
}

APPartition ap_partition(std::int64_t n, std::int64_t r1, std::int64_t r2, std::int64_t s) {
  if (n < 1) throw InputError("N must be positive");
  if (r1 == 0 && r2 == 0) throw InputError("frequency (r1, r2) must be nonzero");
  if (s < 1 || s > n) throw InputError("s must lie in [1, N]");
  APPartition p;
  p.n = n;
  p.r1 = mod(r1, n);
  p.r2 = mod(r2, n);
  p.s = s;
  const double nd = static_cast<double>(n);
  p.t = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::cbrt(nd * nd / static_cast<double>(s)) / 2)));
  p.countBound = 8 * std::pow(nd, 4.0 / 3.0) / std::pow(static_cast<double>(s), 2.0 / 3.0);

  // t^2 + 1 multiples j (r1, r2) in t^2 grid cells of side N / t.
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> seen;
  const std::int64_t total = p.t * p.t;
  for (std::int64_t j = 0; j <= total; ++j) {
    const std::int64_t v1 = mulmod(j, p.r1, n), v2 = mulmod(j, p.r2, n);
    const std::pair<std::int64_t, std::int64_t> cell{static_cast<std::int64_t>(static_cast<__int128>(v1) * p.t / n),
                                                     static_cast<std::int64_t>(static_cast<__int128>(v2) * p.t / n)};
    auto [it, fresh] = seen.emplace(cell, j);
    if (!fresh) {
      p.u = j - it->second;
      break;
    }
  }
  p.w1 = minimal_lift(mulmod(p.u, p.r1, n), n);
  p.w2 = minimal_lift(mulmod(p.u, p.r2, n), n);
  const std::int64_t spread = std::abs(p.w1) + std::abs(p.w2);
  p.maxLength = spread == 0 ? n : std::max<std::int64_t>(1, s / spread + 1);

  const std::int64_t classes = std::min(p.u, n);
  const std::int64_t shortest = (n - 1 - (classes - 1)) / p.u + 1;
  const std::int64_t pieces = (shortest + 1 + p.maxLength - 1) / p.maxLength;
  for (std::int64_t c = 0; c < classes; ++c) {
    const std::int64_t len = (n - 1 - c) / p.u + 1;
    const std::int64_t k = std::min(pieces, len);
    const std::int64_t q = len / k, rem = len % k;
    std::int64_t pos = 0;
    for (std::int64_t i = 0; i < k; ++i) {
      const std::int64_t l = q + (i < rem ? 1 : 0);
      p.pieces.push_back({c + pos * p.u, p.u, l});
      pos += l;
    }
  }
  return p;
}

std::int64_t circular_diameter(std::vector<std::int64_t> residues, std::int64_t n) {
  for (auto& r : residues) r = mod(r, n);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  if (residues.size() <= 1) return 0;
  std::int64_t gap = residues.front() + n - residues.back();
  for (std::size_t i = 1; i < residues.size(); ++i) gap = std::max(gap, residues[i] - residues[i - 1]);
  return n - gap;
}

APPartitionCheck check_ap_partition(const APPartition& p, std::size_t samplePairs, std::uint64_t seed) {
  APPartitionCheck c;
  std::vector<int> hits(static_cast<std::size_t>(p.n), 0);
  bool inRange = true;
  std::int64_t lo = p.n, hi = 0;
  c.commonDifference = true;
  for (const auto& q : p.pieces) {
    if (q.difference != p.u) c.commonDifference = false;
    lo = std::min(lo, q.length);
    hi = std::max(hi, q.length);
    for (std::int64_t k = 0; k < q.length; ++k) {
      const std::int64_t v = q.at(k);
      if (v < 0 || v >= p.n) inRange = false;
      else ++hits[static_cast<std::size_t>(v)];
    }
  }
  c.partitions = inRange && std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  c.lengthSpread = p.pieces.empty() || hi - lo <= 1;
  c.countWithinBound = static_cast<double>(p.pieces.size()) <= p.countBound * (1 + 1e-12);

  // The image shape depends only on the two lengths, so one exact check per
  // length pair covers every pair; sampled pairs recheck it directly.
  std::map<std::int64_t, std::size_t> byLength;
  for (std::size_t i = 0; i < p.pieces.size(); ++i) byLength.emplace(p.pieces[i].length, i);
  bool ok = true;
  for (auto [li, i] : byLength)
    for (auto [lj, j] : byLength) {
      const auto d = circular_diameter(image(p.pieces[i], p.pieces[j], p.r1, p.r2, p.n), p.n);
      c.maxDiameter = std::max(c.maxDiameter, d);
      if (d > p.s) ok = false;
    }
  if (!p.pieces.empty()) {
    Rng rng(seed);
    const auto last = static_cast<std::int64_t>(p.pieces.size()) - 1;
    for (std::size_t k = 0; k < samplePairs; ++k) {
      const auto& a = p.pieces[static_cast<std::size_t>(rng.uniform_int(0, last))];
      const auto& b = p.pieces[static_cast<std::size_t>(rng.uniform_int(0, last))];
      const auto d = circular_diameter(image(a, b, p.r1, p.r2, p.n), p.n);
      c.maxDiameter = std::max(c.maxDiameter, d);
      if (d > p.s) ok = false;
      ++c.sampledPairs;
    }
  }
  c.diameters = ok;
  return c;
}

bool RightSquare::contains(Point p) const {
  const std::int64_t dx = p.x - a, dy = p.y - b;
  if (dx < 0 || dy < 0 || dx % d != 0 || dy % d != 0) return false;
  return dx / d < t && dy / d < t;
}

bool family_partitions(const SquareFamily& f, const RightSquare& ambient) {
  const std::int64_t n = f.modulus;
  std::vector<int> hits(static_cast<std::size_t>(n * n), 0);
  auto mark = [&](Point p) {
    if (p.x < 0 || p.y < 0 || p.x >= n || p.y >= n || !ambient.contains(p)) return false;
    ++hits[static_cast<std::size_t>(p.x * n + p.y)];
    return true;
  };
  for (const auto& s : f.squares)
    for (std::int64_t k = 0; k < s.t; ++k)
      for (std::int64_t l = 0; l < s.t; ++l)
        if (!mark(s.at(k, l))) return false;
  for (auto p : f.omega)
    if (!mark(p)) return false;
  for (std::int64_t k = 0; k < ambient.t; ++k)
    for (std::int64_t l = 0; l < ambient.t; ++l) {
      const auto p = ambient.at(k, l);
      if (hits[static_cast<std::size_t>(p.x * n + p.y)] != 1) return false;
    }
  return true;
}

RightSquarePartition right_square_partition(const GridSet& a, std::int64_t r1, std::int64_t r2,
                                            double alphaThreshold, const RefineOptions& options) {
  const std::int64_t n = a.modulus();
  if (n < 1) throw InputError("empty grid");
  if (mod(r1, n) == 0 && mod(r2, n) == 0) throw InputError("frequency must be nonzero");
  RightSquarePartition out;
  out.r1 = mod(r1, n);
  out.r2 = mod(r2, n);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  out.coefficient = std::abs(dft_coefficient(ComplexField::indicator(a), out.r1, out.r2));
  if (out.coefficient <= Tolerances::zeroCoefficient * n2)
    throw InputError("Fourier coefficient vanishes at (" + std::to_string(out.r1) + ", " + std::to_string(out.r2) + ")");
  out.alpha = out.coefficient / n2;
  out.thresholdHolds = out.coefficient >= alphaThreshold * n2;

  std::int64_t s = options.s ? *options.s
                             : static_cast<std::int64_t>(std::ceil(out.alpha * static_cast<double>(n) /
                                                                   (4 * std::numbers::pi)));
  s = std::clamp<std::int64_t>(s, 1, n);
  out.ap = ap_partition(n, out.r1, out.r2, s);
  while (options.maxCells > 0 && s < n) {
    const auto m = static_cast<std::int64_t>(out.ap.pieces.size());
    if (m * m <= options.maxCells) break;
    s = std::min(n, 2 * s);
    out.ap = ap_partition(n, out.r1, out.r2, s);
  }

  const auto& pieces = out.ap.pieces;
  std::int64_t side = n;
  for (const auto& q : pieces) side = std::min(side, q.length);
  out.side = side;
  out.family.modulus = n;
  for (const auto& pi : pieces)
    for (const auto& pj : pieces) {
      out.family.squares.push_back({pi.start, pj.start, out.ap.u, side});
      for (std::int64_t k = 0; k < pi.length; ++k)
        for (std::int64_t l = 0; l < pj.length; ++l)
          if (k >= side || l >= side) out.family.omega.push_back({pi.at(k), pj.at(l)});
    }
  std::sort(out.family.squares.begin(), out.family.squares.end());
  std::sort(out.family.omega.begin(), out.family.omega.end());

  const Rational delta(static_cast<std::int64_t>(a.size()), n * n);
  Rational sum = 0;
  for (const auto& sq : out.family.squares) {
    std::int64_t c = 0;
    for (std::int64_t k = 0; k < sq.t; ++k)
      for (std::int64_t l = 0; l < sq.t; ++l) c += a.contains(sq.at(k, l)) ? 1 : 0;
    const Rational dev = Rational(c, sq.area()) - delta;
    sum += dev * dev;
  }
  out.meanSquareDeviation = sum / static_cast<std::int64_t>(out.family.squares.size());
  out.lowerBound = out.alpha * out.alpha / 16;
  out.preconditionHolds = std::log2(static_cast<double>(n)) >= 100 - 10 * std::log2(out.alpha);
  out.boundHolds = to_double(out.meanSquareDeviation) >= out.lowerBound;
  const auto m = static_cast<std::int64_t>(pieces.size());
  out.omegaBound = 2 * m * m * ((n + m - 1) / m);
  out.paperOmegaBound = std::pow(static_cast<double>(n), 11.0 / 6.0);
  out.verified = family_partitions(out.family, RightSquare{0, 0, 1, n}) &&
                 static_cast<std::int64_t>(out.family.omega.size()) <= out.omegaBound;
  return out;
}

namespace {

std::int64_t count_in(const GridSet& w, const RightSquare& s) {
  std::int64_t c = 0;
  for (std::int64_t k = 0; k < s.t; ++k)
    for (std::int64_t l = 0; l < s.t; ++l) c += w.contains(s.at(k, l)) ? 1 : 0;
  return c;
}

// Pointwise values of E(family) on the ambient grid.
std::vector<Rational> energy_field(const SquareFamily& f, const GridSet& w) {
  const std::int64_t n = f.modulus;
  std::vector<Rational> e(static_cast<std::size_t>(n * n), Rational(0));
  for (const auto& s : f.squares) {
    const Rational d(count_in(w, s), s.area());
    for (std::int64_t k = 0; k < s.t; ++k)
      for (std::int64_t l = 0; l < s.t; ++l) {
        const auto p = s.at(k, l);
        e[static_cast<std::size_t>(p.x * n + p.y)] = d;
      }
  }
  return e;
}

// phi(W n C) inside Z_t^2.
GridSet local_set(const GridSet& w, const RightSquare& s) {
  std::vector<Point> pts;
  for (std::int64_t k = 0; k < s.t; ++k)
    for (std::int64_t l = 0; l < s.t; ++l)
      if (w.contains(s.at(k, l))) pts.push_back({k, l});
  return GridSet(s.t, std::move(pts));
}

}  // namespace

EnergyState energy_of_family(const SquareFamily& f, const GridSet& w) {
  EnergyState st;
  st.energy = 0;
  for (const auto& s : f.squares) {
    const std::int64_t c = count_in(w, s);
    st.perCellDensity.emplace_back(c, s.area());
    st.energy += Rational(c * c, s.area());
  }
  return st;
}

EnergyDecomposition energy_decomposition(const SquareFamily& coarse, const SquareFamily& refined, const GridSet& w) {
  if (coarse.modulus != refined.modulus || coarse.modulus != w.modulus()) throw InputError("modulus mismatch");
  const auto e1 = energy_field(coarse, w);
  const auto e2 = energy_field(refined, w);
  EnergyDecomposition d;
  d.refined = energy_of_family(refined, w).energy;
  d.coarse = d.difference = d.cross = 0;
  for (std::size_t i = 0; i < e1.size(); ++i) {
    const Rational diff = e2[i] - e1[i];
    d.coarse += e1[i] * e1[i];
    d.difference += diff * diff;
    d.cross += e1[i] * diff;
  }
  return d;
}

double PowerLaw::operator()(double s) const { return k * std::pow(s, rho); }

void PowerLaw::validate() const {
  if (!(k > 0 && k <= 1)) throw InputError("K must lie in (0, 1]");
  if (!(rho >= 4)) throw InputError("rho must be at least 4");
}

EnergyRun energy_increment_run(const GridSet& w, double eps, const PowerLaw& law, const EnergyRunConfig& config) {
  law.validate();
  const std::int64_t n = w.modulus();
  if (n < 1) throw InputError("empty grid");
  if (config.maxIters < 1) throw InputError("maxIters must be at least 1");
  const double delta = static_cast<double>(w.size()) / (static_cast<double>(n) * static_cast<double>(n));
  if (!(eps > 0) || eps > delta + 1e-12) throw InputError("eps must lie in (0, density of W]");

  enum class State { active, uniform, setAside };
  struct Cell {
    RightSquare sq;
    State state = State::active;
    std::int64_t count = 0;
  };
  std::vector<Cell> cells{{RightSquare{0, 0, 1, n}, State::active, static_cast<std::int64_t>(w.size())}};
  std::vector<Point> omega;
  EnergyRun run;
  const double total = static_cast<double>(n) * static_cast<double>(n);

  auto family_of = [&] {
    SquareFamily f;
    f.modulus = n;
    for (const auto& c : cells) f.squares.push_back(c.sq);
    f.omega = omega;
    return f;
  };

  for (int iter = 1;; ++iter) {
    EnergyIteration rec;
    rec.iteration = iter;
    std::vector<std::size_t> nonUniform;
    double sumMass = 0, sumArea = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto& c = cells[i];
      if (c.state != State::active) continue;
      const std::int64_t area = c.sq.area();
      if (c.sq.t < config.minSide) {
        c.state = State::setAside;
        continue;
      }
      if (c.count == 0 || c.count == area) {
        c.state = State::uniform;
        continue;
      }
      const double dc = static_cast<double>(c.count) / static_cast<double>(area);
      const auto local = local_set(w, c.sq);
      const double level = alpha_uniformity_2d(balanced_function(local), UniformityMethod::spectral).minimalAlpha;
      if (level <= law(dc)) {
        c.state = State::uniform;
        continue;
      }
      nonUniform.push_back(i);
      rec.nonUniformMass += c.count;
      rec.holderLhs += static_cast<double>(area) * law(dc);
      sumMass += static_cast<double>(c.count);
      sumArea += static_cast<double>(area);
    }
    if (sumArea > 0) rec.holderRhs = law.k * std::pow(sumMass, law.rho) / std::pow(sumArea, law.rho - 1);
    rec.holderHolds = rec.holderLhs >= rec.holderRhs * (1 - 1e-9);
    rec.cells = cells.size();
    const auto before = family_of();
    const Rational energyBefore = energy_of_family(before, w).energy;
    rec.energy = to_double(energyBefore);
    for (auto p : omega) rec.badMass += w.contains(p) ? 1 : 0;
    for (const auto& c : cells)
      if (c.state == State::setAside) rec.badMass += c.count;

    if (static_cast<double>(rec.nonUniformMass) < eps * total) {
      run.outcome = "converged";
      run.trace.push_back(rec);
      break;
    }
    if (iter >= config.maxIters) {
      run.outcome = "max-iters";
      run.trace.push_back(rec);
      break;
    }

    std::vector<Cell> next;
    std::vector<bool> replaced(cells.size(), false);
    std::vector<std::vector<Cell>> children(cells.size());
    for (auto i : nonUniform) {
      auto& c = cells[i];
      const auto local = local_set(w, c.sq);
      const auto spec = dft_2d(ComplexField::indicator(local));
      const std::int64_t t = c.sq.t;
      std::vector<std::tuple<double, std::int64_t, std::int64_t>> freqs;
      for (std::int64_t f1 = 0; f1 < t; ++f1)
        for (std::int64_t f2 = 0; f2 < t; ++f2) {
          if (f1 == 0 && f2 == 0) continue;
          const double mag = std::abs(spec.at(f1, f2));
          if (mag > Tolerances::zeroCoefficient * static_cast<double>(t * t)) freqs.emplace_back(mag, f1, f2);
        }
      std::stable_sort(freqs.begin(), freqs.end(), [](const auto& l, const auto& r) {
        if (std::get<0>(l) != std::get<0>(r)) return std::get<0>(l) > std::get<0>(r);
        return std::make_pair(std::get<1>(l), std::get<2>(l)) < std::make_pair(std::get<1>(r), std::get<2>(r));
      });
      const Rational parent(c.count * c.count, c.sq.area());
      bool accepted = false;
      for (std::size_t k = 0; k < freqs.size() && k < config.frequencyTries && !accepted; ++k) {
        RightSquarePartition part;
        try {
          part = right_square_partition(local, std::get<1>(freqs[k]), std::get<2>(freqs[k]), 0,
                                        RefineOptions{std::nullopt, config.maxCells});
        } catch (const InputError&) {
          continue;
        }
        std::vector<Cell> kids;
        Rational energy = 0;
        for (const auto& s : part.family.squares) {
          const RightSquare g{c.sq.a + s.a * c.sq.d, c.sq.b + s.b * c.sq.d, s.d * c.sq.d, s.t};
          const std::int64_t cnt = count_in(w, g);
          energy += Rational(cnt * cnt, g.area());
          kids.push_back({g, State::active, cnt});
        }
        if (energy <= parent) continue;
        accepted = true;
        children[i] = std::move(kids);
        replaced[i] = true;
        for (auto p : part.family.omega) omega.push_back(c.sq.at(p.x, p.y));
      }
      if (!accepted) c.state = State::setAside;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!replaced[i]) {
        next.push_back(cells[i]);
        continue;
      }
      ++rec.refinedCells;
      for (auto& k : children[i]) next.push_back(k);
    }
    cells = std::move(next);
    std::sort(cells.begin(), cells.end(), [](const Cell& l, const Cell& r) { return l.sq < r.sq; });
    std::sort(omega.begin(), omega.end());
    if (rec.refinedCells > 0) {
      const auto after = family_of();
      const auto dec = energy_decomposition(before, after, w);
      rec.decompositionHolds = dec.holds();
      if (!(dec.refined > energyBefore)) run.energyIncreasing = false;
    }
    run.trace.push_back(rec);
  }

  // Final cells: uniform with density >= eps. Everything else of W goes to B.
  std::vector<char> inP(static_cast<std::size_t>(n * n), 0);
  std::int64_t covered = 0;
  for (const auto& c : cells) {
    if (c.state == State::uniform && static_cast<double>(c.count) >= eps * static_cast<double>(c.sq.area())) {
      run.squares.push_back(c.sq);
      covered += c.count;
      for (std::int64_t k = 0; k < c.sq.t; ++k)
        for (std::int64_t l = 0; l < c.sq.t; ++l) {
          const auto p = c.sq.at(k, l);
          inP[static_cast<std::size_t>(p.x * n + p.y)] = 1;
        }
    }
  }
  for (auto p : w.points())
    if (!inP[static_cast<std::size_t>(p.x * n + p.y)]) run.bad.push_back(p);
  const auto fam = family_of();
  run.disjoint = family_partitions(fam, RightSquare{0, 0, 1, n});
  run.accountingExact = run.disjoint && covered + static_cast<std::int64_t>(run.bad.size()) ==
                                            static_cast<std::int64_t>(w.size());
  run.finalEnergy = to_double(energy_of_family(fam, w).energy);
  return run;
}

std::string energy_trace_csv(const EnergyRun& run) {
  std::ostringstream out;
  out.precision(12);
  out << "iteration,cells,energy,badMass,refinedCells\n";
  for (const auto& r : run.trace)
    out << r.iteration << ',' << r.cells << ',' << r.energy << ',' << r.badMass << ',' << r.refinedCells << '\n';
  return out.str();
}

namespace {

LineSet restrict_to(const LineSet& w, std::int64_t a, std::int64_t d, std::int64_t t, std::vector<std::int64_t>& local) {
  std::vector<std::int64_t> global;
  for (std::int64_t k = 0; k < t; ++k)
    if (w.contains(a + k * d)) {
      global.push_back(a + k * d);
      local.push_back(k);
    }
  return LineSet(w.modulus(), std::move(global));
}

}  // namespace

LocatedRectangle uniform_rectangle_locate(const LineSet& w1, const LineSet& w2, const GridSet& a, double zeta,
                                          const PowerLaw& law, const EnergyRunConfig& config) {
  if (!(zeta > 0 && zeta < 1)) throw InputError("zeta must lie in (0, 1)");
  const std::int64_t n = a.modulus();
  if (w1.modulus() != n || w2.modulus() != n) throw InputError("modulus mismatch");
  if (w1.empty() || w2.empty()) throw InputError("W1 and W2 must be nonempty");
  const Box box{w1, w2};
  require_inside(a, box);
  const GridSet w = GridSet::product(w1, w2);
  const double beta1 = static_cast<double>(w1.size()) / static_cast<double>(n);
  const double beta2 = static_cast<double>(w2.size()) / static_cast<double>(n);

  LocatedRectangle out;
  out.epsilon = zeta * beta1 * beta2;
  out.delta = Rational(static_cast<std::int64_t>(a.size()), box.area());
  out.run = energy_increment_run(w, out.epsilon, law, config);

  std::optional<std::size_t> best;
  Rational bestDensity = -1;
  std::int64_t bestMass = -1;
  for (std::size_t i = 0; i < out.run.squares.size(); ++i) {
    const auto& s = out.run.squares[i];
    const std::int64_t wc = count_in(w, s);
    if (wc == 0) continue;
    const Rational d(count_in(a, s), wc);
    if (d > bestDensity || (d == bestDensity && wc > bestMass)) {
      best = i;
      bestDensity = d;
      bestMass = wc;
    }
  }
  if (!best) return out;
  out.found = true;
  out.square = out.run.squares[*best];
  out.cellDensity = bestDensity;
  out.floorMet = bestDensity >= out.delta - Rational(4 * zeta);
  const auto& s = out.square;
  std::vector<std::int64_t> l1, l2;
  out.r1 = restrict_to(w1, s.a, s.d, s.t, l1);
  out.r2 = restrict_to(w2, s.b, s.d, s.t, l2);
  const double t = static_cast<double>(s.t);
  out.uniformity1 = alpha_uniformity_1d(balanced_function(LineSet(s.t, l1)), UniformityMethod::spectral).minimalAlpha;
  out.uniformity2 = alpha_uniformity_1d(balanced_function(LineSet(s.t, l2)), UniformityMethod::spectral).minimalAlpha;
  out.target1 = std::sqrt(law(static_cast<double>(l1.size()) / t));
  out.target2 = std::sqrt(law(static_cast<double>(l2.size()) / t));
  out.sizeMet = static_cast<double>(l1.size() * l2.size()) >= out.epsilon * t * t;
  return out;
}

SaturationReport saturation_bound_check(const GridSet& a, const Box& box) {
  SaturationReport r;
  r.lhs = box_fourth_power_exact(a, box, Centering::rows);
  const std::int64_t area = box.area();
  if (area == 0) {
    r.rhs = 0;
    r.holds = r.lhs == 0;
    return r;
  }
  const Rational delta(static_cast<std::int64_t>(a.size()), area);
  r.rhs = 4 * Rational(area) * area * delta * delta * (1 - delta);
  r.holds = r.lhs <= r.rhs;
  return r;
}

}  // namespace cornerlab
