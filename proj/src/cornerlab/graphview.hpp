#pragma once

#include "cornerlab/zn_core.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace cornerlab {

// Spectrum of T = M M' where M is the 0/1 incidence matrix between the
// columns (xs, sorted) and rows (ys, sorted) of a square box. T is indexed by
// column pairs: T(x, x') = |column x n column x'|.
struct SpectralReport {
  Box box;
  std::int64_t n = 0;
  std::int64_t count = 0;                    // |A| = tr T
  std::vector<double> mu;                    // descending, clamped at Tolerances::eigenClamp
  std::vector<std::vector<double>> vectors;  // u_i aligned with box.xs, |u_i|^2 = n
  bool perronAligned = false;                // u_1 has nonnegative entry sum
  double deviation = 0;                      // |u_1 - (1, ..., 1)|^2
  double traceSum = 0;                       // sum mu_i
  double traceSquares = 0;                   // sum mu_i^2
  BigInt pairSquares = 0;                    // sum over column pairs |A_p n A_q|^2, exact
};

SpectralReport gram_spectrum(const GridSet& a, const Box& box);

// One implication: the conclusion is only meaningful when the hypothesis holds.
struct ImplicationCheck {
  bool hypothesis = false;
  bool conclusion = false;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // rhs - lhs, positive when the conclusion holds strictly
};

struct SpectralUniformityReport {
  double delta = 0;
  double alpha = 0;
  double epsilon = 0;
  double alpha1Measured = 0;  // sqrt(max(rowDeviation / |ys|, columnDeviation / |xs|))
  std::optional<double> alpha1Supplied;
  bool marginalsHold = true;  // measured <= supplied, true when none supplied
  double boxAlpha = 0;        // exact box fourth power of the row-balanced function / n^4
  double deviation = 0;
  double mu1 = 0;
  double mu2 = 0;
  double eta = 0;             // mu_2 / n^2
  ImplicationCheck mu1Lower;  // mu_1 >= delta^2 n^2
  ImplicationCheck mu1Upper;  // deviation <= eps^2 n  =>  mu_1 <= (delta^2 + 2 eps + alpha1^2) n^2
  ImplicationCheck forward;   // box-alpha <= alpha  =>  mu_2 <= (sqrt(alpha) + 4 sqrt(eps) + 4 sqrt(alpha1)) n^2
  ImplicationCheck converse;  // box-alpha <= eta + 16 eps + 16 alpha1
};

SpectralUniformityReport spectral_uniformity_check(const GridSet& a, const Box& box, double alpha, double epsilon,
                                                   std::optional<double> alpha1 = std::nullopt);

struct LevelSetPartition {
  double alpha = 0;
  double xi = 0;
  std::vector<std::vector<std::size_t>> classes;  // ordered by smallest member
  std::vector<std::complex<double>> centers;
  double countBound = 0;         // 4 / (alpha xi)^2
  bool withinCountBound = true;  // classes.size() <= countBound
  bool verified = false;         // cover, diameter and radius conditions re-checked
};

// Groups the entries of an eigenvector v (|v|^2 = n) of a matrix with entries
// bounded by D and eigenvalue lambda, |lambda| >= alpha n D, by a square grid
// of side xi / sqrt(2) over the disk of radius 1/alpha.
LevelSetPartition level_set_partition(const std::vector<std::complex<double>>& v, double alpha, double xi, double d,
                                      double lambda);

struct DensitySplit {
  Rational delta;
  std::vector<std::size_t> bad;  // cells with |A n Q_i| < (delta - eta) |Q_i|
  Rational goodCount;            // sum over good cells of |A n Q_i|
  Rational rhs;                  // delta * good area + eta * bad area
  bool inequalityHolds = false;
};

// Cells must be disjoint and A must lie inside their union.
DensitySplit density_split(const GridSet& a, const std::vector<GridSet>& cells, const Rational& eta);
// Same from per-cell counts and sizes.
DensitySplit density_split(const std::vector<std::int64_t>& counts, const std::vector<std::int64_t>& sizes,
                           const Rational& eta);

enum class ProfileName { toy, paper };
std::string to_string(ProfileName p);

struct IncrementConfig {
  ProfileName profile = ProfileName::toy;
  std::optional<double> alpha1;  // marginal threshold override
  bool lineFallback = true;      // try denser rows or columns when the structured search finds nothing
};

// Thresholds derived from alpha and the box shape under a profile.
struct IncrementFloors {
  double alpha1 = 0;
  double gainFloor = 0;
  double sizeFloor = 0;   // absolute side length
  double classFloor = 0;  // level-set classes below this size are set aside
  double carveFloor = 0;  // density slack in the rectangle carve
  double xi = 0;
  int carveSteps = 0;
};

IncrementFloors increment_floors(const IncrementConfig& config, double alpha, const Box& box);

enum class IncrementKind { uniform, increment, none };
std::string to_string(IncrementKind k);

struct IncrementResult {
  IncrementKind kind = IncrementKind::none;
  std::string branch;
  ProfileName profile = ProfileName::toy;
  Box g;  // G1 = g.xs, G2 = g.ys
  Rational delta;
  Rational newDensity;
  Rational densityGain;
  std::int64_t count = 0;  // |A n (G1 x G2)|
  double boxAlpha = 0;
  IncrementFloors floors;
  bool meetsGainFloor = false;
  bool meetsSizeFloor = false;
  std::vector<std::string> notes;
};

IncrementResult find_density_increment(const GridSet& a, const Box& box, double alpha,
                                       const IncrementConfig& config = {});

// Rows (or columns) whose density exceeds the box density, as a box. The
// deviation sum must fail the squared-scale bound at alpha1.
std::optional<Box> marginal_increment_box(const GridSet& a, const Box& box, double zeta,
                                          std::vector<std::string>* notes = nullptr);

}  // namespace cornerlab
