#include "cornerlab/common.hpp"
#include "cornerlab/verify.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace cornerlab;

namespace {

// Every listed invariant, keyed by module, with the check that covers it.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>> kInvariants = {
    {"zn_core",
     {{"marginal sums equal |A| on both axes", "marginal-sums-match-count"},
      {"balanced box function has zero row sums", "balanced-rows-sum-to-zero"},
      {"marginal check is monotone in alpha1", "marginal-check-monotone"}}},
    {"fourier",
     {{"Parseval energy identity", "energy-identity"},
      {"inner product identity", "inner-product-identity"},
      {"correlation energy identity", "correlation-identity"},
      {"inverse round trip", "inverse-round-trip"}}},
    {"uniformity",
     {{"fourth moment of coefficients bounded by alpha N^4", "fourth-moment-bound"},
      {"largest coefficient bounded by alpha^(1/4) N", "max-coefficient-bound"},
      {"small coefficients imply uniformity", "coefficient-converse"},
      {"correlation deviation bound", "correlation-deviation-bound"},
      {"Cauchy-Schwarz for the box inner product", "cube-cauchy-schwarz"},
      {"box norm triangle inequality", "box-norm-triangle"},
      {"cube count lower bound", "cube-count-lower-bound"},
      {"box norm of the row deviation", "row-deviation-box-identity"}}},
    {"corners",
     {{"two corner enumerations agree", "corner-enumerations-agree"},
      {"embedding is corner-free", "embedding-corner-free"},
      {"trilinear sum bound under uniformity", "trilinear-uniform-bound"},
      {"large trilinear sum forces a corner", "corner-count-chain"}}},
    {"graphview",
     {{"quadratic form bound", "quadratic-form-bound"},
      {"trace equals |A|", "spectral-trace"},
      {"trace of the square", "spectral-trace-squares"},
      {"top eigenvalue lower bound", "top-eigenvalue-lower-bound"},
      {"increment soundness", "increment-soundness"},
      {"level-set partition conclusions", "level-set-partition-conditions"}}},
    {"partition",
     {{"progression partition conclusions", "progression-partition"},
      {"right-square partition validity", "right-square-partition"},
      {"energy decomposition identity", "energy-decomposition-identity"},
      {"energy bounded by N^2", "energy-bounded"},
      {"Holder step", "holder-step"},
      {"saturation bound", "saturation-bound"}}},
    {"driver",
     {{"witness verified", "hunt-witness-verified"},
      {"density monotone on increments", "hunt-density-monotone"},
      {"trace replay", "hunt-trace-replay"}}},
};

}  // namespace

TEST_CASE("every listed invariant has a check in the manifest") {
  std::map<std::string, std::string> moduleOf;
  for (auto& c : verify_manifest()) moduleOf[c.name] = c.module;
  for (auto& [module, items] : kInvariants)
    for (auto& [what, check] : items) {
      INFO(module << ": " << what);
      REQUIRE(moduleOf.count(check) == 1);
      CHECK(moduleOf[check] == module);
    }
}

TEST_CASE("manifest names are unique and described") {
  std::set<std::string> names;
  for (auto& c : verify_manifest()) {
    CHECK(names.insert(c.name).second);
    CHECK_FALSE(c.statement.empty());
    CHECK_FALSE(c.module.empty());
  }
  CHECK(names.size() == verify_manifest().size());
}

TEST_CASE("quick suite passes and every check sees its hypothesis") {
  auto results = run_verify({1, true, std::nullopt});
  REQUIRE(results.size() == verify_manifest().size());
  for (auto& r : results) {
    INFO(r.lemma);
    CHECK_FALSE(r.failed());
    CHECK(r.trials > 0);
    CHECK(r.hypothesisSatisfied > 0);
    CHECK(r.hypothesisSatisfied <= r.trials);
    if (r.worstMargin) CHECK(*r.worstMargin >= 0);
  }
}

TEST_CASE("seed determines the results") {
  auto a = run_verify({7, true, std::string("box-norm-triangle")});
  auto b = run_verify({7, true, std::string("box-norm-triangle")});
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].lemma == "box-norm-triangle");
  CHECK(a[0].hypothesisSatisfied == b[0].hypothesisSatisfied);
  CHECK(a[0].worstMargin == b[0].worstMargin);
  auto c = run_verify({8, true, std::string("box-norm-triangle")});
  CHECK(c[0].worstMargin != a[0].worstMargin);
}

TEST_CASE("a single check runs the same trials as in the full suite") {
  auto all = run_verify({3, true, std::nullopt});
  for (const char* name : {"cube-count-lower-bound", "hunt-trace-replay"}) {
    auto one = run_verify({3, true, std::string(name)});
    REQUIRE(one.size() == 1);
    for (auto& r : all)
      if (r.lemma == name) {
        CHECK(r.trials == one[0].trials);
        CHECK(r.worstMargin == one[0].worstMargin);
      }
  }
}

TEST_CASE("unknown check name is an input error") {
  CHECK_THROWS_AS(run_verify({1, true, std::string("no-such-check")}), InputError);
}
