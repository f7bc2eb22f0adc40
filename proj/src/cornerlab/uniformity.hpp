#pragma once

#include "cornerlab/fourier.hpp"
#include "cornerlab/zn_core.hpp"

#include <complex>
#include <cstdint>

namespace cornerlab {

enum class Normalization {
  line,  // 1-D autocorrelation energy over N^3
  grid,  // 2-D autocorrelation energy over N^6
  box,   // box-norm fourth power over |xs|^2 |ys|^2
};

enum class UniformityMethod { both, direct, spectral };

struct UniformityReport {
  Normalization normalization = Normalization::line;
  double functionalValue = 0;  // direct value when computed, else spectral
  double directValue = -1;     // -1 when not computed
  double spectralValue = -1;
  double denominator = 1;
  double minimalAlpha = 0;
  double methodAgreement = 0;  // relative gap between the two routes, 0 if only one ran
};

// sum_k |sum_s f(s) conj f(s-k)|^2, and its spectral form sum_r |f^(r)|^4 / N.
UniformityReport alpha_uniformity_1d(const ComplexField& f, UniformityMethod method = UniformityMethod::both);
// Same over shifts in Z_N^2; spectral form sum |f^|^4 / N^2.
UniformityReport alpha_uniformity_2d(const ComplexField& f, UniformityMethod method = UniformityMethod::both);

struct BoxNormValue {
  double value = 0;                   // fourthPower^(1/4)
  double fourthPower = 0;             // cube sum over s, u, r
  double dualFormulaFourthPower = 0;  // sum over row pairs
  double imaginaryPart = 0;           // discarded imaginary part of the cube sum
  double minimalAlpha = 0;            // fourthPower / (|xs|^2 |ys|^2)
};

// Cube sum of f over the basis e1 = (1, 0), e2 = (0, -1):
//   sum_{s,u,r} f(s) conj f(s + u e2) conj f(s + r e1) f(s + u e2 + r e1).
// f must vanish outside the box.
BoxNormValue box_norm(const ComplexField& f, const Box& box);
// Fourth powers: the cube sum, and the sum over row pairs of |sum_k f(k, m) conj f(k, p)|^2.
double box_norm_primal(const ComplexField& f, double* imaginary = nullptr);
double box_norm_dual(const ComplexField& f);

// sum_{s,p,q} f00(s) conj f10(s + p e1) conj f01(s + q e2) f11(s + p e1 + q e2).
std::complex<double> box_inner_product(const ComplexField& f00, const ComplexField& f10,
                                       const ComplexField& f01, const ComplexField& f11);

enum class Centering {
  rows,    // 1_A - rowDensity(y) on the box
  global,  // 1_A - |A|/|box| on the box
};

// Exact box-norm fourth power of the balanced function of A on the box.
Rational box_fourth_power_exact(const GridSet& a, const Box& box, Centering centering = Centering::rows);
// Same with 1_A - delta on the box for a given density delta.
Rational box_fourth_power_exact(const GridSet& a, const Box& box, const Rational& delta);

enum class CubeMethod { brute, spectral };

struct CubeCount {
  std::int64_t count = 0;
  CubeMethod method = CubeMethod::spectral;
  bool nondegenerate = false;
};

// Quadruples s, s + u e2, s + r e1, s + u e2 + r e1 inside A. Degenerate
// quadruples (u = 0 or r = 0) are included unless nondegenerate is set.
CubeCount count_cubes(const GridSet& a, CubeMethod method = CubeMethod::spectral, bool nondegenerate = false);

struct DiscrepancyReport {
  double discrepancy = 0;  // ||A n P| - delta |P||
  double bound = 0;        // 16 alpha^(1/4) N^2
  double alpha = 0;
  bool holds = false;
};

bool is_cyclic_interval(const LineSet& s);
DiscrepancyReport progression_discrepancy(const GridSet& a, const Box& p);
// Reuses a measured 2-D uniformity level of 1_A - delta.
DiscrepancyReport progression_discrepancy(const GridSet& a, const Box& p, double alpha);

struct CubeBoundsReport {
  std::int64_t cubes = 0;
  double lower = 0;  // delta^4 N^4
  bool lowerHolds = false;
  bool upperApplicable = false;  // full-grid box and row deviation <= alpha N
  double alpha = 0;              // box uniformity of the row-balanced function
  double upper = 0;              // (delta + 2 alpha^(1/4))^4 N^4
  bool upperHolds = true;        // vacuous when not applicable
};

CubeBoundsReport cube_bounds_report(const GridSet& a, const Box& box);

}  // namespace cornerlab
