#include "cornerlab/cornerlab.h"

#include "cornerlab/corners.hpp"
#include "cornerlab/driver.hpp"
#include "cornerlab/fourier.hpp"
#include "cornerlab/graphview.hpp"
#include "cornerlab/partition.hpp"
#include "cornerlab/uniformity.hpp"
#include "cornerlab/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

struct cl_gridset {
  cornerlab::GridSet set;
};

struct cl_lineset {
  cornerlab::LineSet set;
};

namespace {

using json = nlohmann::ordered_json;
using namespace cornerlab;

constexpr int kSchemaVersion = 1;

thread_local std::string lastError;
thread_local long long lastLine = 0;

cl_status fail(cl_status s, const std::string& what, long long line = 0) {
  lastError = what;
  lastLine = line;
  return s;
}

template <class F>
cl_status guard(F&& body) {
  lastError.clear();
  lastLine = 0;
  try {
    return body();
  } catch (const ParseError& e) {
    return fail(CL_PARSE_ERROR, e.what(), static_cast<long long>(e.line()));
  } catch (const InputError& e) {
    return fail(CL_INPUT_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CL_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(CL_INTERNAL_ERROR, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw InputError(std::string(what) + " must not be null");
}

json rational(const Rational& r) { return json{{"exact", to_string(r)}, {"value", to_double(r)}}; }

json witness_json(const std::optional<CornerWitness>& w) {
  if (!w) return nullptr;
  return json{{"x", w->x}, {"y", w->y}, {"d", w->d}};
}

json box_json(const Box& b) {
  return json{{"xs", b.xs.members()}, {"ys", b.ys.members()}};
}

json start(const char* kind) { return json{{"schema_version", kSchemaVersion}, {"report", kind}}; }

ProfileName profile_of(const char* name) {
  const std::string p = name ? name : "toy";
  if (p == "toy") return ProfileName::toy;
  if (p == "paper") return ProfileName::paper;
  throw InputError("unknown profile '" + p + "' (expected toy or paper)");
}

json uniformity_json(const UniformityReport& r) {
  json j = start("uniformity");
  j["functional"] = r.functionalValue;
  j["alpha"] = r.minimalAlpha;
  j["denominator"] = r.denominator;
  j["method_agreement"] = r.methodAgreement;
  j["direct"] = r.directValue;
  j["spectral"] = r.spectralValue;
  return j;
}

json floors_json(const IncrementFloors& f) {
  return json{{"alpha1", f.alpha1},     {"gainFloor", f.gainFloor},   {"sizeFloor", f.sizeFloor},
              {"classFloor", f.classFloor}, {"carveFloor", f.carveFloor}, {"xi", f.xi},
              {"carveSteps", f.carveSteps}};
}

json check_json(const CheckResult& r) {
  json j;
  j["lemma"] = r.lemma;
  j["module"] = r.module;
  j["trials"] = r.trials;
  j["hypothesisSatisfied"] = r.hypothesisSatisfied;
  j["conclusionHeld"] = r.conclusionHeld;
  if (r.worstMargin) {
    // fixed precision keeps the report stable against last-bit noise
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(6);
    os << *r.worstMargin;
    j["worstMargin"] = std::stod(os.str());
  } else {
    j["worstMargin"] = nullptr;
  }
  j["passed"] = !r.failed();
  return j;
}

}  // namespace

extern "C" {

const char* cl_version(void) { return "0.1.0"; }
const char* cl_last_error(void) { return lastError.c_str(); }
long long cl_last_error_line(void) { return lastLine; }
void cl_string_free(char* s) { std::free(s); }
void cl_set_thread_cap(int threads) { set_thread_cap(threads); }

cl_status cl_gridset_create(long long n, const long long* xy, size_t count, cl_gridset** out) {
  return guard([&] {
    need(out, "out");
    if (count > 0) need(xy, "xy");
    std::vector<Point> pts(count);
    for (size_t i = 0; i < count; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new cl_gridset{make_grid_set(n, pts)};
    return CL_OK;
  });
}

cl_status cl_gridset_load(const char* path, cl_gridset** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new cl_gridset{load_grid_set(path)};
    return CL_OK;
  });
}

cl_status cl_gridset_save(const cl_gridset* a, const char* path) {
  return guard([&] {
    need(a, "set");
    need(path, "path");
    std::ofstream f(path);
    if (!f) throw InputError(std::string("cannot write ") + path);
    write_grid_set(f, a->set);
    return CL_OK;
  });
}

cl_status cl_gridset_info(const cl_gridset* a, long long* modulus, size_t* size) {
  return guard([&] {
    need(a, "set");
    if (modulus) *modulus = a->set.modulus();
    if (size) *size = a->set.size();
    return CL_OK;
  });
}

cl_status cl_gridset_points(const cl_gridset* a, long long* xy, size_t capacity) {
  return guard([&] {
    need(a, "set");
    const auto pts = a->set.points();
    const size_t k = std::min(capacity, pts.size());
    if (k > 0) need(xy, "xy");
    for (size_t i = 0; i < k; ++i) xy[2 * i] = pts[i].x, xy[2 * i + 1] = pts[i].y;
    return CL_OK;
  });
}

void cl_gridset_free(cl_gridset* a) { delete a; }

cl_status cl_lineset_create(long long n, const long long* members, size_t count, cl_lineset** out) {
  return guard([&] {
    need(out, "out");
    if (count > 0) need(members, "members");
    *out = new cl_lineset{LineSet(n, std::vector<std::int64_t>(members, members + count))};
    return CL_OK;
  });
}

cl_status cl_lineset_load(const char* path, cl_lineset** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new cl_lineset{load_line_set(path)};
    return CL_OK;
  });
}

cl_status cl_lineset_save(const cl_lineset* a, const char* path) {
  return guard([&] {
    need(a, "set");
    need(path, "path");
    std::ofstream f(path);
    if (!f) throw InputError(std::string("cannot write ") + path);
    write_line_set(f, a->set);
    return CL_OK;
  });
}

cl_status cl_lineset_info(const cl_lineset* a, long long* modulus, size_t* size) {
  return guard([&] {
    need(a, "set");
    if (modulus) *modulus = a->set.modulus();
    if (size) *size = a->set.size();
    return CL_OK;
  });
}

cl_status cl_lineset_members(const cl_lineset* a, long long* members, size_t capacity) {
  return guard([&] {
    need(a, "set");
    const auto& m = a->set.members();
    const size_t k = std::min(capacity, m.size());
    if (k > 0) need(members, "members");
    for (size_t i = 0; i < k; ++i) members[i] = m[i];
    return CL_OK;
  });
}

void cl_lineset_free(cl_lineset* a) { delete a; }

cl_status cl_count_corners(const cl_gridset* a, int cyclic, long long* count, long long witness[3], int* has_witness) {
  return guard([&] {
    need(a, "set");
    const auto c = count_corners(a->set, cyclic ? CornerMode::cyclic : CornerMode::grid);
    if (count) *count = c.count;
    if (has_witness) *has_witness = c.witness ? 1 : 0;
    if (witness && c.witness) witness[0] = c.witness->x, witness[1] = c.witness->y, witness[2] = c.witness->d;
    return CL_OK;
  });
}

cl_status cl_behrend(long long k, cl_lineset** out, char** report_json) {
  return guard([&] {
    const auto b = behrend_construct(k);
    if (report_json) {
      json j = start("behrend");
      j["k"] = b.k;
      j["size"] = b.set.size();
      j["density"] = rational(b.set.density());
      j["digitBound"] = b.digitBound;
      j["dimension"] = b.dimension;
      if (b.radiusSquared >= 0) j["radiusSquared"] = b.radiusSquared;
      else j["radiusSquared"] = nullptr;
      j["exponent"] = b.exponent;
      j["referenceExponent"] = b.referenceExponent;
      j["progressionFree"] = is_progression_free(b.set);
      *report_json = dup(j.dump());
    }
    if (out) *out = new cl_lineset{b.set};
    return CL_OK;
  });
}

cl_status cl_embed(const cl_lineset* a, long long n, int rule, cl_gridset** out) {
  return guard([&] {
    need(a, "set");
    need(out, "out");
    if (rule != 0 && rule != 1) throw InputError("rule must be 0 (translation) or 1 (diagonal)");
    *out = new cl_gridset{
        embed_corner_free(a->set, n, rule == 0 ? EmbeddingRule::translation : EmbeddingRule::diagonal)};
    return CL_OK;
  });
}

cl_status cl_uniformity_grid_json(const cl_gridset* a, char** json_out) {
  return guard([&] {
    need(a, "set");
    need(json_out, "json");
    auto j = uniformity_json(alpha_uniformity_2d(balanced_function(a->set)));
    j["dimension"] = 2;
    *json_out = dup(j.dump());
    return CL_OK;
  });
}

cl_status cl_uniformity_line_json(const cl_lineset* a, char** json_out) {
  return guard([&] {
    need(a, "set");
    need(json_out, "json");
    auto j = uniformity_json(alpha_uniformity_1d(balanced_function(a->set)));
    j["dimension"] = 1;
    *json_out = dup(j.dump());
    return CL_OK;
  });
}

cl_status cl_balanced_spectrum_csv(const cl_gridset* a, char** csv) {
  return guard([&] {
    need(a, "set");
    need(csv, "csv");
    const auto s = dft_2d(balanced_function(a->set));
    const std::int64_t n = s.modulus();
    std::ostringstream os;
    os.precision(12);
    os << "r1,r2,re,im\n";
    for (std::int64_t r1 = 0; r1 < n; ++r1)
      for (std::int64_t r2 = 0; r2 < n; ++r2) {
        const auto v = s.at(r1, r2);
        os << r1 << ',' << r2 << ',' << v.real() << ',' << v.imag() << '\n';
      }
    *csv = dup(os.str());
    return CL_OK;
  });
}

cl_status cl_spectrum_json(const cl_gridset* a, char** json_out) {
  return guard([&] {
    need(a, "set");
    need(json_out, "json");
    const auto s = gram_spectrum(a->set, Box::full(a->set.modulus()));
    json j = start("spectrum");
    j["n"] = s.n;
    j["count"] = s.count;
    j["mu"] = s.mu;
    j["deviation"] = s.deviation;
    j["perronAligned"] = s.perronAligned;
    j["traces"] = json{{"sum", s.traceSum},
                       {"squares", s.traceSquares},
                       {"pairSquares", s.pairSquares.str()}};
    *json_out = dup(j.dump());
    return CL_OK;
  });
}

cl_status cl_increment_json(const cl_gridset* a, double alpha, const char* profile, double alpha1, char** json_out) {
  return guard([&] {
    need(a, "set");
    need(json_out, "json");
    IncrementConfig cfg;
    cfg.profile = profile_of(profile);
    if (alpha1 > 0) cfg.alpha1 = alpha1;
    const auto r = find_density_increment(a->set, Box::full(a->set.modulus()), alpha, cfg);
    json j = start("increment");
    j["kind"] = to_string(r.kind);
    j["branch"] = r.branch;
    j["profile"] = to_string(r.profile);
    j["delta"] = rational(r.delta);
    if (r.kind == IncrementKind::increment) {
      j["g"] = box_json(r.g);
      j["newDensity"] = rational(r.newDensity);
      j["densityGain"] = rational(r.densityGain);
      j["count"] = r.count;
      j["meetsGainFloor"] = r.meetsGainFloor;
      j["meetsSizeFloor"] = r.meetsSizeFloor;
    }
    j["boxAlpha"] = r.boxAlpha;
    j["floors"] = floors_json(r.floors);
    j["notes"] = r.notes;
    *json_out = dup(j.dump());
    return CL_OK;
  });
}

cl_status cl_partition_ap_json(long long n, long long r1, long long r2, long long s, char** json_out) {
  return guard([&] {
    need(json_out, "json");
    const auto p = ap_partition(n, r1, r2, s);
    const auto c = check_ap_partition(p);
    json j = start("partition-ap");
    j["N"] = p.n;
    j["r1"] = p.r1;
    j["r2"] = p.r2;
    j["s"] = p.s;
    j["t"] = p.t;
    j["difference"] = p.u;
    j["maxLength"] = p.maxLength;
    j["pieces"] = p.pieces.size();
    j["countBound"] = p.countBound;
    json pieces = json::array();
    for (const auto& q : p.pieces) pieces.push_back(json{{"start", q.start}, {"difference", q.difference}, {"length", q.length}});
    j["progressions"] = pieces;
    j["checks"] = json{{"partitions", c.partitions},       {"commonDifference", c.commonDifference},
                       {"lengthSpread", c.lengthSpread},   {"countWithinBound", c.countWithinBound},
                       {"diameters", c.diameters},         {"maxDiameter", c.maxDiameter}};
    j["verified"] = c.all();
    *json_out = dup(j.dump());
    return c.all() ? CL_OK : fail(CL_CHECK_FAILED, "progression partition failed its checks");
  });
}

cl_status cl_partition_refine_json(const cl_gridset* a, long long r1, long long r2, long long s, long long max_cells,
                                   char** json_out) {
  return guard([&] {
    need(a, "set");
    need(json_out, "json");
    RefineOptions opt;
    if (s > 0) opt.s = s;
    if (max_cells > 0) opt.maxCells = max_cells;
    const auto p = right_square_partition(a->set, r1, r2, 0, opt);
    json j = start("partition-refine");
    j["r1"] = p.r1;
    j["r2"] = p.r2;
    j["coefficient"] = p.coefficient;
    j["alpha"] = p.alpha;
    j["squares"] = p.family.squares.size();
    j["side"] = p.side;
    j["omega"] = p.family.omega.size();
    j["omegaBound"] = p.omegaBound;
    j["paperOmegaBound"] = p.paperOmegaBound;
    j["meanSquareDeviation"] = rational(p.meanSquareDeviation);
    j["lowerBound"] = p.lowerBound;
    j["preconditionHolds"] = p.preconditionHolds;
    j["boundHolds"] = p.boundHolds;
    j["verified"] = p.verified;
    *json_out = dup(j.dump());
    return p.verified ? CL_OK : fail(CL_CHECK_FAILED, "right-square partition failed verification");
  });
}

cl_status cl_energy_run_json(const cl_gridset* w, double eps, double k, double rho, const char* profile,
                             int max_iters, char** json_out, char** trace_csv) {
  return guard([&] {
    need(w, "set");
    need(json_out, "json");
    if (profile_of(profile) != ProfileName::toy)
      throw InputError("the paper profile is documentation only; energy runs require the toy profile");
    EnergyRunConfig cfg;
    cfg.maxIters = max_iters;
    const auto r = energy_increment_run(w->set, eps, PowerLaw{k, rho}, cfg);
    json j = start("energy-run");
    j["outcome"] = r.outcome;
    j["iterations"] = r.trace.size();
    j["uniformDenseSquares"] = r.squares.size();
    j["bad"] = r.bad.size();
    j["finalEnergy"] = r.finalEnergy;
    j["accountingExact"] = r.accountingExact;
    j["energyIncreasing"] = r.energyIncreasing;
    j["disjoint"] = r.disjoint;
    bool decomposition = true, holder = true;
    for (const auto& it : r.trace) decomposition = decomposition && it.decompositionHolds, holder = holder && it.holderHolds;
    j["decompositionHolds"] = decomposition;
    j["holderHolds"] = holder;
    *json_out = dup(j.dump());
    if (trace_csv) *trace_csv = dup(energy_trace_csv(r));
    const bool ok = r.accountingExact && r.energyIncreasing && decomposition;
    return ok ? CL_OK : fail(CL_CHECK_FAILED, "energy run failed an accounting or energy check");
  });
}

cl_status cl_hunt_json(const cl_gridset* a, const char* profile, int max_steps, char** json_out, char** trace_csv) {
  return guard([&] {
    need(a, "set");
    need(json_out, "json");
    const auto p = ConstantsProfile::by_name(profile ? profile : "toy");
    HuntConfig cfg;
    cfg.maxSteps = max_steps;
    const auto r = corner_hunt(a->set, p, cfg);
    json j = start("hunt");
    j["outcome"] = to_string(r.outcome);
    j["witness"] = witness_json(r.witness);
    j["witnessVerified"] = r.witness ? verify_corner(a->set, *r.witness) : false;
    j["profile"] = r.profile;
    j["initialDensity"] = rational(r.initialDensity);
    j["steps"] = r.trace.size();
    json steps = json::array();
    for (const auto& t : r.trace) {
      steps.push_back(json{{"step", t.step},
                           {"branch", t.branch},
                           {"side1", t.side1},
                           {"side2", t.side2},
                           {"pSide", t.pSide},
                           {"density", to_string(t.density)},
                           {"count", t.count},
                           {"gainFloorMet", t.gainFloorMet},
                           {"sizeFloorMet", t.sizeFloorMet},
                           {"nThresholdMet", t.nThresholdMet},
                           {"notes", t.notes}});
    }
    j["trace"] = steps;
    j["monotone"] = trace_monotone(r);
    j["replayed"] = replay_trace(a->set, r);
    *json_out = dup(j.dump());
    if (trace_csv) *trace_csv = dup(hunt_trace_csv(r));
    return CL_OK;
  });
}

cl_status cl_verify_jsonl(unsigned long long seed, int quick, const char* only, char** jsonl) {
  return guard([&] {
    need(jsonl, "jsonl");
    VerifyOptions o;
    o.seed = seed;
    o.quick = quick != 0;
    if (only) o.only = std::string(only);
    const auto results = run_verify(o);
    std::string out;
    bool failed = false;
    for (const auto& r : results) {
      json j = check_json(r);
      out += j.dump() + "\n";
      failed = failed || r.failed();
    }
    *jsonl = dup(out);
    return failed ? fail(CL_CHECK_FAILED, "a verified conclusion failed") : CL_OK;
  });
}

cl_status cl_verify_manifest(char** names) {
  return guard([&] {
    need(names, "names");
    std::string out;
    for (const auto& c : verify_manifest()) out += c.name + "\n";
    *names = dup(out);
    return CL_OK;
  });
}

}  // extern "C"
