#pragma once

#include "cornerlab/zn_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cornerlab {

// {start, start + difference, ..., start + (length - 1) difference} as
// integers in [0, N); no wraparound.
struct Progression {
  std::int64_t start = 0;
  std::int64_t difference = 1;
  std::int64_t length = 0;

  std::int64_t at(std::int64_t k) const { return start + k * difference; }
  std::int64_t last() const { return at(length - 1); }
  std::vector<std::int64_t> members() const;
};

struct APPartition {
  std::int64_t n = 0;
  std::int64_t r1 = 0, r2 = 0;
  std::int64_t s = 0;
  std::int64_t t = 0;               // pigeonhole grid side
  std::int64_t u = 1;               // common difference
  std::int64_t w1 = 0, w2 = 0;      // minimal lifts of u r1, u r2 mod N
  std::int64_t maxLength = 1;       // longest piece allowed by the diameter budget
  std::vector<Progression> pieces;  // ordered by class, then position
  double countBound = 0;            // 8 N^(4/3) / s^(2/3)
};

// Partition of Z_N into progressions with one common difference such that
// phi(P_i x P_j), phi(x, y) = r1 x + r2 y, has circular diameter <= s.
APPartition ap_partition(std::int64_t n, std::int64_t r1, std::int64_t r2, std::int64_t s);

// N minus the largest circular gap between the distinct residues.
std::int64_t circular_diameter(std::vector<std::int64_t> residues, std::int64_t n);

struct APPartitionCheck {
  bool partitions = false;        // every residue in exactly one piece
  bool commonDifference = false;
  bool lengthSpread = false;      // lengths differ by at most 1
  bool countWithinBound = false;  // M <= 8 N^(4/3) / s^(2/3)
  bool diameters = false;         // exact per length pair plus sampled pairs
  std::int64_t maxDiameter = 0;
  std::size_t sampledPairs = 0;
  bool all() const { return partitions && commonDifference && lengthSpread && countWithinBound && diameters; }
};

APPartitionCheck check_ap_partition(const APPartition& p, std::size_t samplePairs = 256, std::uint64_t seed = 1);

// {a, a + d, ..., a + (t-1) d} x {b, b + d, ..., b + (t-1) d}, no wraparound.
struct RightSquare {
  std::int64_t a = 0, b = 0;
  std::int64_t d = 1;
  std::int64_t t = 1;

  std::int64_t area() const { return t * t; }
  bool contains(Point p) const;
  Point at(std::int64_t k, std::int64_t l) const { return {a + k * d, b + l * d}; }
  auto operator<=>(const RightSquare&) const = default;
};

struct SquareFamily {
  std::int64_t modulus = 0;
  std::vector<RightSquare> squares;
  std::vector<Point> omega;  // exceptional points, sorted
};

// Disjointness and exact cover of the ambient square (a whole right square).
bool family_partitions(const SquareFamily& f, const RightSquare& ambient);

struct RefineOptions {
  std::optional<std::int64_t> s;  // overrides ceil(alpha N / (4 pi))
  std::int64_t maxCells = 0;      // when positive, s doubles until M^2 <= maxCells
};

struct RightSquarePartition {
  SquareFamily family;
  APPartition ap;
  std::int64_t r1 = 0, r2 = 0;
  double coefficient = 0;  // |chi_A^(r)|
  double alpha = 0;        // coefficient / N^2
  std::int64_t side = 0;
  bool thresholdHolds = true;   // coefficient >= alphaThreshold N^2
  Rational meanSquareDeviation;  // (1/r) sum (delta_S - delta)^2
  double lowerBound = 0;         // alpha^2 / 16
  bool preconditionHolds = false;  // N >= 2^100 / alpha^10
  bool boundHolds = false;         // meanSquareDeviation >= lowerBound
  std::int64_t omegaBound = 0;     // 2 M^2 ceil(N / M)
  double paperOmegaBound = 0;      // N^(11/6)
  bool verified = false;           // family partitions Z_N^2 and omega within omegaBound
};

RightSquarePartition right_square_partition(const GridSet& a, std::int64_t r1, std::int64_t r2,
                                            double alphaThreshold = 0, const RefineOptions& options = {});

struct EnergyState {
  Rational energy;  // sum_C |W n C|^2 / |C|
  std::vector<Rational> perCellDensity;
  std::int64_t iteration = 0;
};

EnergyState energy_of_family(const SquareFamily& f, const GridSet& w);

// ||E2||^2 = ||E1||^2 + ||E2 - E1||^2 + 2 (E1, E2 - E1). The first is taken
// from the per-cell formula, the rest from pointwise sums.
struct EnergyDecomposition {
  Rational refined;
  Rational coarse;
  Rational difference;
  Rational cross;
  bool holds() const { return refined == coarse + difference + 2 * cross; }
};

EnergyDecomposition energy_decomposition(const SquareFamily& coarse, const SquareFamily& refined, const GridSet& w);

// alpha(s) = K s^rho.
struct PowerLaw {
  double k = 0.25;
  double rho = 4;
  double operator()(double s) const;
  void validate() const;
};

struct EnergyRunConfig {
  std::string profile = "toy";
  int maxIters = 8;
  std::int64_t minSide = 4;        // cells with a smaller side are set aside
  std::int64_t maxCells = 64;      // per refinement
  std::size_t frequencyTries = 16;  // frequencies tried per cell before it stalls
};

struct EnergyIteration {
  std::int64_t iteration = 0;
  std::size_t cells = 0;
  double energy = 0;
  std::int64_t badMass = 0;  // |W n (omega + set-aside cells)| so far
  std::size_t refinedCells = 0;
  std::int64_t nonUniformMass = 0;
  double holderLhs = 0;  // sum |C| alpha(delta_C) over non-uniform cells
  double holderRhs = 0;  // K (sum delta_C |C|)^rho / (sum |C|)^(rho - 1)
  bool holderHolds = true;
  bool decompositionHolds = true;  // for the refinement leaving this iteration
};

struct EnergyRun {
  std::vector<RightSquare> squares;  // final uniform cells with density >= eps
  std::vector<Point> bad;            // B, sorted
  std::vector<EnergyIteration> trace;
  std::string outcome;  // converged | max-iters
  bool accountingExact = false;  // |W| = sum |W n P_i| + |B|, all disjoint
  bool energyIncreasing = true;  // strictly, at every iteration that refined
  bool disjoint = false;
  double finalEnergy = 0;
};

EnergyRun energy_increment_run(const GridSet& w, double eps, const PowerLaw& law, const EnergyRunConfig& config = {});
std::string energy_trace_csv(const EnergyRun& run);

struct LocatedRectangle {
  bool found = false;
  RightSquare square;
  LineSet r1, r2;          // W1 n P1, W2 n P2
  Rational delta;          // |A| / (|W1| |W2|)
  Rational cellDensity;    // |A n P| / |W n P|
  bool floorMet = false;   // cellDensity >= delta - 4 zeta
  double epsilon = 0;      // zeta beta1 beta2
  double uniformity1 = 0, uniformity2 = 0;  // 1-D levels of R_i inside P_i
  double target1 = 0, target2 = 0;          // alpha(density of R_i in P_i)^(1/2)
  bool sizeMet = false;    // |R1 x R2| >= zeta beta1 beta2 |P|
  EnergyRun run;
};

LocatedRectangle uniform_rectangle_locate(const LineSet& w1, const LineSet& w2, const GridSet& a, double zeta,
                                          const PowerLaw& law, const EnergyRunConfig& config = {});

struct SaturationReport {
  Rational lhs;  // box-norm fourth power of the row-balanced function
  Rational rhs;  // 4 |E1|^2 |E2|^2 delta^2 (1 - delta)
  bool holds = false;
};

SaturationReport saturation_bound_check(const GridSet& a, const Box& box);

}  // namespace cornerlab
