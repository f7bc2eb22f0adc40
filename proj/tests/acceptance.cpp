// Acceptance run: one PASS/FAIL line per criterion. The first argument is
// the path of the command-line binary, used by the determinism criterion.
#include "cornerlab/corners.hpp"
#include "cornerlab/driver.hpp"
#include "cornerlab/fourier.hpp"
#include "cornerlab/graphview.hpp"
#include "cornerlab/partition.hpp"
#include "cornerlab/uniformity.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace cornerlab;
using oracle::Lcg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

ComplexField random_field(Lcg& g, int arity, std::int64_t n) {
  const auto size = static_cast<std::size_t>(arity == 1 ? n : n * n);
  return ComplexField(arity, n, oracle::random_field(g, size));
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }

// 1: energy, inner product and correlation identities.
Outcome fourier_identities() {
  Lcg g(1);
  double worst = 0;
  int fields = 0;
  for (std::int64_t n : {8, 12, 16, 64})
    for (int arity : {1, 2}) {
      const double scale = std::pow(static_cast<double>(n), arity);
      for (int t = 0; t < 200; ++t) {
        auto f = random_field(g, arity, n), h = random_field(g, arity, n);
        auto fs = dft(f), hs = dft(h);
        double lhs = 0, rhs = 0;
        std::complex<double> ip = 0, ips = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
          lhs += std::norm(f[i]);
          rhs += std::norm(fs[i]);
          ip += f[i] * std::conj(h[i]);
          ips += fs[i] * std::conj(hs[i]);
        }
        worst = std::max(worst, rel_gap(scale * lhs, rhs));
        worst = std::max(worst, std::abs(scale * ip - ips) / std::max(std::abs(ips), std::sqrt(scale * lhs * rhs)));
        // direct correlation where it is affordable, otherwise the spectral route checked against it at a sample
        const bool direct = arity == 1 || n <= 16;
        auto c = cross_correlation(f, h, direct ? CorrelationMethod::direct : CorrelationMethod::spectral);
        double cl = 0, cr = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
          cl += std::norm(c[i]);
          cr += std::norm(fs[i]) * std::norm(hs[i]);
        }
        worst = std::max(worst, rel_gap(scale * cl, cr));
        if (!direct && t < 2) {
          auto d = cross_correlation(f, h, CorrelationMethod::direct);
          worst = std::max(worst, relative_l2_distance(c, d));
        }
        ++fields;
      }
    }
  std::ostringstream os;
  os << fields << " field pairs, worst relative gap " << worst;
  return {worst <= 1e-6, os.str()};
}

// 2: primal and dual box norms, triangle inequality.
Outcome box_norm_checks() {
  Lcg g(2);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = 4 + g.below(13);
    auto f = random_field(g, 2, n);
    const double p = box_norm_primal(f), d = box_norm_dual(f);
    worst = std::max(worst, rel_gap(p, d));
  }
  int violations = 0;
  double slack = 1e300;
  for (int t = 0; t < 500; ++t) {
    const auto n = 4 + g.below(9);
    auto f = random_field(g, 2, n), h = random_field(g, 2, n);
    ComplexField s(2, n);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f[i] + h[i];
    auto norm = [](const ComplexField& x) { return std::pow(std::max(0.0, box_norm_dual(x)), 0.25); };
    const double margin = norm(f) + norm(h) - norm(s);
    slack = std::min(slack, margin);
    if (margin < -1e-9) ++violations;
  }
  std::ostringstream os;
  os << "duality worst relative gap " << worst << ", triangle violations " << violations << " (min slack " << slack
     << ")";
  return {worst <= 1e-8 && violations == 0, os.str()};
}

// 3: cube count lower bound, method agreement, upper bound when applicable.
Outcome cube_checks() {
  Lcg g(3);
  int lowerFail = 0, disagree = 0, upperFail = 0, upperApplied = 0;
  for (std::int64_t n : {6, 8, 12})
    for (int t = 0; t < 500; ++t) {
      auto a = oracle::random_set(g, n, g.unit());
      const auto brute = count_cubes(a, CubeMethod::brute).count;
      const auto spectral = count_cubes(a, CubeMethod::spectral).count;
      if (brute != spectral) ++disagree;
      const BigInt size = a.size(), nn = n;
      if (BigInt(brute) * nn * nn * nn * nn < size * size * size * size) ++lowerFail;
      auto r = cube_bounds_report(a, Box::full(n));
      if (r.upperApplicable) {
        ++upperApplied;
        if (!r.upperHolds) ++upperFail;
      }
    }
  std::ostringstream os;
  os << "1500 sets: lower-bound failures " << lowerFail << ", brute/spectral disagreements " << disagree
     << ", upper bound applicable " << upperApplied << " with " << upperFail << " failures";
  return {lowerFail == 0 && disagree == 0 && upperFail == 0, os.str()};
}

// 4: discrepancy over step-one boxes.
Outcome discrepancy_checks() {
  Lcg g(4);
  int fails = 0;
  double worst = 1e300;
  for (int set = 0; set < 50; ++set) {
    auto a = oracle::random_set(g, 16, g.unit());
    const double alpha = alpha_uniformity_2d(balanced_function(a)).minimalAlpha;
    for (int t = 0; t < 100; ++t) {
      Box p{LineSet::interval(16, g.below(16), 1 + g.below(16)), LineSet::interval(16, g.below(16), 1 + g.below(16))};
      auto r = progression_discrepancy(a, p, alpha);
      worst = std::min(worst, r.bound - r.discrepancy);
      if (!r.holds) ++fails;
    }
  }
  std::ostringstream os;
  os << "5000 boxes, failures " << fails << ", smallest bound - discrepancy " << worst;
  return {fails == 0, os.str()};
}

// 5: trace identities and the top eigenvalue lower bound.
Outcome spectral_checks() {
  Lcg g(5);
  double worstTrace = 0, worstSquares = 0, worstMu = 1e300;
  for (std::int64_t n : {8, 16, 32})
    for (int t = 0; t < 200; ++t) {
      auto a = oracle::random_set(g, n, g.unit());
      auto s = gram_spectrum(a, Box::full(n));
      const double n2 = static_cast<double>(n * n), delta = static_cast<double>(a.size()) / n2;
      worstTrace = std::max(worstTrace, a.empty() ? std::abs(s.traceSum) : rel_gap(s.traceSum, delta * n2));
      const double pairs = to_double(Rational(s.pairSquares));
      worstSquares = std::max(worstSquares, a.empty() ? std::abs(s.traceSquares) : rel_gap(s.traceSquares, pairs));
      worstMu = std::min(worstMu, (s.mu[0] - delta * delta * n2 + 1e-6 * n2) / n2);
    }
  std::ostringstream os;
  os << "600 sets: trace gap " << worstTrace << ", squares gap " << worstSquares << ", min (mu1 - d^2n^2)/n^2 + 1e-6 "
     << worstMu;
  return {worstTrace <= 1e-6 && worstSquares <= 1e-6 && worstMu >= 0, os.str()};
}

// 6: increments are exactly verified.
Outcome increment_checks() {
  Lcg g(6);
  int unsound = 0, increments = 0, uniform = 0, none = 0, skipped = 0;
  for (int t = 0; t < 100;) {
    const std::int64_t n = 24;
    const auto w = 4 + g.below(12), ox = g.below(n - w), oy = g.below(n - w);
    const double base = 0.2 + 0.4 * g.unit(), inside = std::min(1.0, base + 0.2 + 0.4 * g.unit());
    std::vector<Point> pts;
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y) {
        const bool in = x >= ox && x < ox + w && y >= oy && y < oy + w;
        if (g.unit() < (in ? inside : base)) pts.push_back({x, y});
      }
    auto a = make_grid_set(n, pts);
    const double alpha = 0.002;
    const double boxAlpha = to_double(box_fourth_power_exact(a, Box::full(n))) / std::pow(static_cast<double>(n), 4);
    const bool marginalsFail = marginal_increment_box(a, Box::full(n), alpha / 10).has_value();
    if (boxAlpha <= alpha && !marginalsFail) {
      ++skipped;  // uniform sets are outside the criterion
      continue;
    }
    ++t;
    auto r = find_density_increment(a, Box::full(n), alpha);
    if (r.kind == IncrementKind::uniform) {
      ++uniform;
    } else if (r.kind == IncrementKind::increment) {
      ++increments;
      const Rational exact(a.count_in(r.g), r.g.area());
      if (r.g.area() == 0 || exact != r.newDensity || !(exact > a.density())) ++unsound;
    } else {
      ++none;
    }
  }
  std::ostringstream os;
  os << "100 non-uniform sets: increments " << increments << ", uniform " << uniform << ", none " << none
     << ", unsound " << unsound << " (uniform draws skipped " << skipped << ")";
  return {unsound == 0, os.str()};
}

// 7: progression partitions.
Outcome ap_checks() {
  Lcg g(7);
  int fails = 0;
  std::int64_t largest = 0;
  for (int t = 0; t < 50; ++t) {
    const auto n = t < 5 ? 10000 - g.below(10) : 2 + g.below(10000);
    std::int64_t r1 = g.below(n), r2 = g.below(n);
    if (r1 == 0 && r2 == 0) r1 = 1;
    const auto s = 1 + g.below(n);
    auto p = ap_partition(n, r1, r2, s);
    if (!check_ap_partition(p, 512, static_cast<std::uint64_t>(t) + 1).all()) ++fails;
    largest = std::max(largest, n);
  }
  std::ostringstream os;
  os << "50 configurations up to N = " << largest << ", failures " << fails;
  return {fails == 0, os.str()};
}

// 8: energy machinery on block-structured sets.
Outcome energy_checks() {
  Lcg g(8);
  int decompFail = 0, increaseFail = 0, accountFail = 0, refiningSteps = 0;
  for (int t = 0; t < 20; ++t) {
    const std::int64_t n = 32, b = 4 + 4 * g.below(2);
    std::vector<double> dens((n / b) * (n / b));
    for (auto& d : dens) d = g.unit() < 0.5 ? 0.2 * g.unit() : 0.8 + 0.2 * g.unit();
    std::vector<Point> pts;
    for (std::int64_t x = 0; x < n; ++x)
      for (std::int64_t y = 0; y < n; ++y)
        if (g.unit() < dens[(x / b) * (n / b) + y / b]) pts.push_back({x, y});
    auto w = make_grid_set(n, pts);
    EnergyRunConfig cfg;
    cfg.maxIters = 5;
    const double k = std::pow(10.0, -4 + 2 * g.unit());
    auto run = energy_increment_run(w, std::min(0.05, to_double(w.density())), PowerLaw{k, 4}, cfg);
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
      const auto& it = run.trace[i];
      if (!it.decompositionHolds) ++decompFail;
      if (it.refinedCells > 0) {
        ++refiningSteps;
        if (i + 1 < run.trace.size() && !(run.trace[i + 1].energy > it.energy)) ++increaseFail;
      }
    }
    if (!run.energyIncreasing) ++increaseFail;
    if (!run.accountingExact || !run.disjoint) ++accountFail;
  }
  std::ostringstream os;
  os << "20 runs, refining steps " << refiningSteps << ": decomposition failures " << decompFail
     << ", non-increasing steps " << increaseFail << ", accounting failures " << accountFail;
  return {decompFail == 0 && increaseFail == 0 && accountFail == 0 && refiningSteps > 0, os.str()};
}

// 9: Behrend set embedded at N = 300.
Outcome behrend_check() {
  auto b = behrend_construct(100);
  auto e = embed_corner_free(b.set, 300);
  const auto count = count_corners(e, CornerMode::grid, CornerEnumeration::by_difference).count;
  const auto oracleCount = oracle::corners_grid(e);
  const double n = 300, density = static_cast<double>(e.size()) / (n * n);
  const double target = std::pow(n, 2 - std::log(2.0) / std::log(std::log(n))) / 9 / (n * n);
  std::ostringstream os;
  os << "|A1| = " << b.set.size() << ", |A~| = " << e.size() << ", corners " << count << " (oracle " << oracleCount << "), density " << density
     << " (reference " << target << ", information only)";
  return {count == 0 && oracleCount == 0 && e.size() == b.set.size() * 100 && oracle::progression_free(b.set.members()), os.str()};
}

// 10: saturation bound.
Outcome saturation_checks() {
  Lcg g(10);
  int fails = 0;
  for (std::int64_t side : {8, 12})
    for (int t = 0; t < 500; ++t) {
      const std::int64_t n = 16;
      Box box{LineSet::interval(n, g.below(n), side), LineSet::interval(n, g.below(n), side)};
      std::vector<Point> pts;
      const double p = g.unit();
      for (auto x : box.xs.members())
        for (auto y : box.ys.members())
          if (g.unit() < p) pts.push_back({x, y});
      if (!saturation_bound_check(make_grid_set(n, pts), box).holds) ++fails;
    }
  std::ostringstream os;
  os << "1000 sets, failures " << fails;
  return {fails == 0, os.str()};
}

// 11: corner hunts.
Outcome hunt_checks() {
  Lcg g(11);
  int found = 0, badWitness = 0;
  std::int64_t maxSteps = 0;
  for (int t = 0; t < 50; ++t) {
    auto a = oracle::random_set(g, 48, 0.3 + 0.5 * g.unit());
    auto r = corner_hunt(a, ConstantsProfile::toy());
    if (!r.trace.empty()) maxSteps = std::max(maxSteps, r.trace.back().step);
    if (r.outcome == HuntOutcome::corner && r.witness) {
      const auto w = *r.witness;
      if (w.d > 0 && a.contains(w.x, w.y) && a.contains(w.x + w.d, w.y) && a.contains(w.x, w.y + w.d)) ++found;
      else ++badWitness;
    }
  }
  int falseCorners = 0, behrendRuns = 0;
  for (std::int64_t k : {8, 10, 16, 20, 27}) {
    auto e = embed_corner_free(behrend_construct(k).set, 3 * k);
    auto r = corner_hunt(e, ConstantsProfile::toy());
    ++behrendRuns;
    if (r.outcome == HuntOutcome::corner || r.witness) ++falseCorners;
  }
  std::ostringstream os;
  os << "random sets with a verified corner " << found << "/50 (max steps " << maxSteps << "), bad witnesses "
     << badWitness << ", corners reported on " << behrendRuns << " embedded sets " << falseCorners;
  return {found == 50 && badWitness == 0 && falseCorners == 0 && maxSteps <= 64, os.str()};
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  status = pclose(p);
  return out;
}

// 12: determinism of the verify report.
Outcome determinism_check(const std::string& cli) {
  if (cli.empty()) return {false, "no command-line binary given"};
  int s1 = 0, s2 = 0;
  const auto a = run_capture("'" + cli + "' verify --seed 1", s1);
  const auto b = run_capture("'" + cli + "' verify --seed 1", s2);
  std::size_t lines = 0;
  for (char c : a) lines += c == '\n';
  std::ostringstream os;
  os << lines << " report lines, exit statuses " << s1 << "/" << s2 << ", identical " << (a == b ? "yes" : "no");
  return {s1 == 0 && s2 == 0 && !a.empty() && a == b, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Fourier identities", 10, fourier_identities},
      {2, "box-norm duality and triangle inequality", 30, box_norm_checks},
      {3, "cube count bounds", 60, cube_checks},
      {4, "progression discrepancy", 60, discrepancy_checks},
      {5, "spectral identities", 60, spectral_checks},
      {6, "increment soundness", 120, increment_checks},
      {7, "progression partitions", 60, ap_checks},
      {8, "energy machinery", 120, energy_checks},
      {9, "constructive lower bound", 60, behrend_check},
      {10, "saturation bound", 30, saturation_checks},
      {11, "corner hunt", 120, hunt_checks},
      {12, "determinism", 0, [&] { return determinism_check(cli); }},
  };
  int failed = 0;
  for (auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool inTime = c.limit <= 0 || secs < c.limit;
    const bool pass = o.pass && inTime;
    failed += !pass;
    std::printf("%s criterion %d: %s [%.2f s%s] %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                inTime ? "" : ", over the time limit", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
