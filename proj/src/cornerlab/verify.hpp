#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cornerlab {

struct VerifyOptions {
  std::uint64_t seed = 1;
  bool quick = false;
  std::optional<std::string> only;  // run a single named check
};

struct CheckResult {
  std::string lemma;   // descriptive check name
  std::string module;
  std::int64_t trials = 0;
  std::int64_t hypothesisSatisfied = 0;
  std::int64_t conclusionHeld = 0;  // among trials whose hypothesis held
  std::optional<double> worstMargin;  // smallest rhs - lhs seen under the hypothesis
  bool failed() const { return conclusionHeld < hypothesisSatisfied; }
};

struct CheckInfo {
  std::string name;
  std::string module;
  std::string statement;
};

const std::vector<CheckInfo>& verify_manifest();

std::vector<CheckResult> run_verify(const VerifyOptions& options = {});

}  // namespace cornerlab
