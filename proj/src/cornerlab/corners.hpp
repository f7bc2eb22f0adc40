#pragma once

#include "cornerlab/zn_core.hpp"

#include <complex>
#include <optional>

namespace cornerlab {

// Corner (x, y), (x + d, y), (x, y + d).
struct CornerWitness {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t d = 0;
  auto operator<=>(const CornerWitness&) const = default;
};

enum class CornerMode {
  grid,    // d > 0, all three points inside [0, N)^2, no wraparound
  cyclic,  // d in Z_N \ {0}, coordinates mod N
};

enum class CornerEnumeration {
  by_difference,  // every d, every base point of the grid
  by_point,       // every member of A, every d
};

struct CornerCount {
  std::int64_t count = 0;
  std::optional<CornerWitness> witness;  // lexicographically smallest (x, y, d)
};

CornerCount count_corners(const GridSet& a, CornerMode mode = CornerMode::grid,
                          CornerEnumeration enumeration = CornerEnumeration::by_difference);
std::optional<CornerWitness> find_corner(const GridSet& a, CornerMode mode = CornerMode::grid);
bool verify_corner(const GridSet& a, const CornerWitness& w, CornerMode mode = CornerMode::grid);

// sum_{s, r} h(s) g(s + r(e1 + e2)) f(s + r e2) with e1 = (1, 0), e2 = (0, -1).
std::complex<double> trilinear_corner_sum(const ComplexField& h, const ComplexField& g, const ComplexField& f);

struct TrilinearReport {
  double total = 0;
  double term1 = 0;  // density times the pair count
  double term2 = 0;  // row-density deviations
  double term3 = 0;  // row-balanced function of A
  double residual() const;
};

// Splits sum 1_Q1(s) 1_Q2(s + r(e1 + e2)) 1_A(s + r e2) using
// 1_A = rowDensity + (1_A - rowDensity) on the box. Requires Q1, Q2 inside A.
TrilinearReport decompose_trilinear(const GridSet& q1, const GridSet& q2, const GridSet& a, const Box& box);

// 3-AP-free sets. Members are 0-based: residue v stands for the integer v + 1.
bool is_progression_free(const LineSet& a);

struct BehrendConfig {
  std::vector<int> digitBounds{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::vector<int> dimensions{2, 3, 4, 5, 6, 7, 8};
  std::int64_t enumerationCap = std::int64_t{1} << 22;  // skip (d, n) with d^n above this
};

struct BehrendResult {
  LineSet set;  // modulus K
  std::int64_t k = 0;
  int digitBound = 0;  // d; digits < d written in base 2d - 1
  int dimension = 0;   // n
  std::int64_t radiusSquared = -1;  // -1 for the sphere-free d = 2 cube
  double exponent = 0;              // log |A| / log K
  double referenceExponent = 0;     // 1 - log 2 / log log K, 0 when undefined
};

BehrendResult behrend_construct(std::int64_t k, const BehrendConfig& config = {});

enum class EmbeddingRule {
  translation,  // (a + K + i, i) for a in A, 0 <= i < K
  diagonal,     // every grid point (a + K + i, i) with 0 <= i and a + K + i < N
};

// Corner-free subset of [0, N)^2 built from a 3-AP-free A over [0, N/3).
GridSet embed_corner_free(const LineSet& a, std::int64_t n, EmbeddingRule rule = EmbeddingRule::translation);

}  // namespace cornerlab
