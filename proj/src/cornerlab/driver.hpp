#pragma once

#include "cornerlab/corners.hpp"
#include "cornerlab/graphview.hpp"
#include "cornerlab/partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cornerlab {

// c * delta^e with c = 10^log10Coefficient.
struct PowerRule {
  double log10Coefficient = 0;
  double exponent = 1;

  double log10_value(double delta) const;
  // Underflows to 0 for the paper's constants; use log10_value there.
  double value(double delta) const;
};

struct ConstantsProfile {
  ProfileName name = ProfileName::toy;
  PowerRule alpha1;      // marginal threshold
  PowerRule alpha;       // box uniformity threshold
  PowerRule zeta;        // regularization slack
  PowerRule gainFloor;   // absolute density gain per increment
  PowerRule sizeFloor;   // relative side shrink per increment
  PowerRule nThreshold;  // N >= 1 / (rule * beta1 * beta2)
  std::int64_t minSide = 4;
  PowerLaw law;          // uniformity law used by the regularization step
  bool regularize = true;

  static ConstantsProfile toy();
  static ConstantsProfile paper();
  static ConstantsProfile by_name(const std::string& name);
  bool runnable() const { return name == ProfileName::toy; }
};

enum class HuntOutcome { corner, increment_exhausted, max_steps };
std::string to_string(HuntOutcome o);

struct IterationRecord {
  std::int64_t step = 0;
  std::string branch;  // marginal-increment | uniform-corner-found | uniform-no-corner | spectral-increment | regularize | exhausted
  Box box;             // state after the step, global coordinates
  std::int64_t side1 = 0, side2 = 0;
  std::int64_t pSide = 0;  // side of the ambient square
  double gamma1 = 0, gamma2 = 0;  // side_i / pSide
  double beta1 = 0, beta2 = 0;    // side_i / N
  Rational density;               // |A n box| / |box|
  std::int64_t count = 0;
  ProfileName profile = ProfileName::toy;
  bool gainFloorMet = false;  // increments only
  bool sizeFloorMet = false;
  bool nThresholdMet = false;
  std::vector<std::string> notes;
};

struct HuntConfig {
  int maxSteps = 64;
};

struct HuntResult {
  HuntOutcome outcome = HuntOutcome::increment_exhausted;
  std::optional<CornerWitness> witness;
  std::vector<IterationRecord> trace;
  Rational initialDensity;
  std::string profile;
};

HuntResult corner_hunt(const GridSet& a, const ConstantsProfile& profile, const HuntConfig& config = {});

std::string hunt_trace_csv(const HuntResult& r);

// Recomputes every recorded density from the stored boxes.
bool replay_trace(const GridSet& a, const HuntResult& r);

// Increment records never lower the density and boxes never grow.
bool trace_monotone(const HuntResult& r);

bool is_increment_branch(const std::string& branch);

}  // namespace cornerlab
