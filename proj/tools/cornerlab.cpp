// Command-line front end over the C interface.
#include "cornerlab/cornerlab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2 };

struct Strings {
  char* s = nullptr;
  ~Strings() { cl_string_free(s); }
};

struct Grid {
  cl_gridset* p = nullptr;
  ~Grid() { cl_gridset_free(p); }
};

struct Line {
  cl_lineset* p = nullptr;
  ~Line() { cl_lineset_free(p); }
};

int report(cl_status s) {
  if (s == CL_OK) return kOk;
  std::cerr << "error: " << cl_last_error() << "\n";
  if (s == CL_CHECK_FAILED) return kCheckFailed;
  if (s == CL_INTERNAL_ERROR) return kCheckFailed;
  return kInputError;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return true;
}

// Prints json, writes the trace when asked; check failures still print.
int emit(cl_status s, const Strings& json, const Strings* csv = nullptr, const std::string& tracePath = "") {
  if (json.s) std::cout << json.s << (json.s[0] && json.s[std::char_traits<char>::length(json.s) - 1] == '\n' ? "" : "\n");
  if (csv && csv->s && !tracePath.empty() && !write_file(tracePath, csv->s)) return kInputError;
  return report(s);
}

int load(const std::string& path, Grid& g) { return report(cl_gridset_load(path.c_str(), &g.p)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cornerlab: corner-free sets, uniformity and density increments on Z_N x Z_N"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cl_version()));

  // corners
  auto* corners = app.add_subcommand("corners", "corner counting and corner-free constructions");
  corners->require_subcommand(1);
  std::string cornersIn, mode = "grid", cornersOut, rule = "translation";
  long long behrendK = 0, nGrid = 0, embedN = 0;
  auto* count = corners->add_subcommand("count", "count corners of a set");
  count->add_option("--in", cornersIn, "set file")->required();
  count->add_option("--mode", mode, "grid or cyclic")->check(CLI::IsMember({"grid", "cyclic"}));
  auto* behrend = corners->add_subcommand("behrend", "3-AP-free set over [0, K)");
  behrend->add_option("--k", behrendK, "K")->required();
  behrend->add_option("--n-grid", nGrid, "embed into [0, N)^2 with N = 3K and count corners");
  behrend->add_option("--out", cornersOut, "write the set (embedded when --n-grid is given)");
  auto* embed = corners->add_subcommand("embed", "corner-free grid set from a 3-AP-free line set");
  embed->add_option("--in", cornersIn, "line set file over [0, N/3)")->required();
  embed->add_option("--N", embedN, "grid side, a multiple of 3")->required();
  embed->add_option("--rule", rule, "translation or diagonal")->check(CLI::IsMember({"translation", "diagonal"}));
  embed->add_option("--out", cornersOut, "write the embedded set");

  // uniformity
  auto* uniformity = app.add_subcommand("uniformity", "uniformity functional of the balanced function");
  std::string uniIn, dftOut;
  bool lineInput = false;
  uniformity->add_option("--in", uniIn, "set file")->required();
  uniformity->add_flag("--line", lineInput, "input is a subset of Z_N");
  uniformity->add_option("--dft", dftOut, "write the transform of the balanced function as CSV");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the column-pair intersection matrix");
  std::string specIn, specBox = "full";
  spectrum->add_option("--in", specIn, "set file")->required();
  spectrum->add_option("--box", specBox, "box (full)")->check(CLI::IsMember({"full"}));

  // increment
  auto* increment = app.add_subcommand("increment", "search for a density increment");
  std::string incIn, incProfile = "toy";
  double incAlpha = 0, incAlpha1 = 0;
  increment->add_option("--in", incIn, "set file")->required();
  increment->add_option("--alpha", incAlpha, "uniformity threshold in (0, 1)")->required();
  increment->add_option("--profile", incProfile, "toy or paper")->check(CLI::IsMember({"toy", "paper"}));
  increment->add_option("--alpha1", incAlpha1, "marginal threshold override");

  // partition
  auto* partition = app.add_subcommand("partition", "progression and right-square partitions");
  partition->require_subcommand(1);
  long long apN = 0, apR1 = 0, apR2 = 0, apS = 0;
  auto* ap = partition->add_subcommand("ap", "partition Z_N into progressions of small phi-diameter");
  ap->add_option("--N", apN, "modulus")->required();
  ap->add_option("--r1", apR1, "first frequency")->required();
  ap->add_option("--r2", apR2, "second frequency")->required();
  ap->add_option("--s", apS, "diameter budget")->required();
  std::string refIn, freq;
  long long refS = 0, refCells = 0;
  auto* refine = partition->add_subcommand("refine", "right-square partition along a frequency");
  refine->add_option("--in", refIn, "set file")->required();
  refine->add_option("--freq", freq, "r1,r2")->required();
  refine->add_option("--s", refS, "override the diameter budget");
  refine->add_option("--max-cells", refCells, "cap on the number of squares");
  std::string erIn, erProfile = "toy", erTrace;
  double erEps = 0, erK = 0.25, erRho = 4;
  int erIters = 8;
  auto* energy = partition->add_subcommand("energy-run", "energy increment loop");
  energy->add_option("--in", erIn, "set file W")->required();
  energy->add_option("--eps", erEps, "stopping mass fraction")->required();
  energy->add_option("--K", erK, "power law coefficient");
  energy->add_option("--rho", erRho, "power law exponent");
  energy->add_option("--profile", erProfile, "toy")->check(CLI::IsMember({"toy", "paper"}));
  energy->add_option("--max-iters", erIters, "iteration cap");
  energy->add_option("--trace", erTrace, "write the iteration trace as CSV");

  // hunt
  auto* hunt = app.add_subcommand("hunt", "density-increment corner hunt");
  std::string huntIn, huntProfile = "toy", huntTrace;
  int maxSteps = 64;
  hunt->add_option("--in", huntIn, "set file")->required();
  hunt->add_option("--profile", huntProfile, "toy")->check(CLI::IsMember({"toy", "paper"}));
  hunt->add_option("--max-steps", maxSteps, "step cap");
  hunt->add_option("--trace", huntTrace, "write the step trace as CSV");

  // verify
  auto* verify = app.add_subcommand("verify", "randomized inequality and identity suite");
  unsigned long long seed = 1;
  bool quick = false, list = false;
  std::string only;
  verify->add_option("--seed", seed, "64-bit seed");
  verify->add_flag("--quick", quick, "fewer trials");
  verify->add_option("--only", only, "run one named check");
  verify->add_flag("--list", list, "print the check names");

  std::cout << std::setprecision(17);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* where = &app;
    for (auto* sub : app.get_subcommands())
      where = sub->get_subcommands().empty() ? sub : sub->get_subcommands().front();
    std::cerr << where->help();
    return kInputError;
  }

  if (*count) {
    Grid g;
    if (int rc = load(cornersIn, g)) return rc;
    long long c = 0, w[3] = {0, 0, 0};
    int has = 0;
    if (int rc = report(cl_count_corners(g.p, mode == "cyclic", &c, w, &has))) return rc;
    std::cout << "{\"schema_version\":1,\"report\":\"corners-count\",\"mode\":\"" << mode << "\",\"count\":" << c
              << ",\"witness\":";
    if (has) std::cout << "{\"x\":" << w[0] << ",\"y\":" << w[1] << ",\"d\":" << w[2] << "}";
    else std::cout << "null";
    std::cout << "}\n";
    return kOk;
  }
  if (*behrend) {
    Line a;
    Strings js;
    if (int rc = report(cl_behrend(behrendK, &a.p, &js.s))) return rc;
    if (nGrid == 0) {
      std::cout << js.s << "\n";
      if (!cornersOut.empty()) return report(cl_lineset_save(a.p, cornersOut.c_str()));
      return kOk;
    }
    Grid e;
    if (int rc = report(cl_embed(a.p, nGrid, 0, &e.p))) return rc;
    long long modulus = 0, c = 0, w[3];
    size_t size = 0;
    int has = 0;
    cl_gridset_info(e.p, &modulus, &size);
    if (int rc = report(cl_count_corners(e.p, 0, &c, w, &has))) return rc;
    std::string line = js.s;
    line.pop_back();
    std::cout << line << ",\"embedded\":{\"N\":" << modulus << ",\"size\":" << size
              << ",\"density\":" << static_cast<double>(size) / static_cast<double>(modulus * modulus)
              << ",\"count\":" << c << "}}\n";
    if (!cornersOut.empty()) return report(cl_gridset_save(e.p, cornersOut.c_str()));
    return c == 0 ? kOk : kCheckFailed;
  }
  if (*embed) {
    Line a;
    if (int rc = report(cl_lineset_load(cornersIn.c_str(), &a.p))) return rc;
    Grid e;
    if (int rc = report(cl_embed(a.p, embedN, rule == "diagonal" ? 1 : 0, &e.p))) return rc;
    long long modulus = 0, c = 0, w[3];
    size_t size = 0;
    int has = 0;
    cl_gridset_info(e.p, &modulus, &size);
    if (int rc = report(cl_count_corners(e.p, 0, &c, w, &has))) return rc;
    std::cout << "{\"schema_version\":1,\"report\":\"corners-embed\",\"rule\":\"" << rule << "\",\"N\":" << modulus
              << ",\"size\":" << size
              << ",\"density\":" << static_cast<double>(size) / static_cast<double>(modulus * modulus)
              << ",\"count\":" << c << "}\n";
    if (!cornersOut.empty()) return report(cl_gridset_save(e.p, cornersOut.c_str()));
    return c == 0 ? kOk : kCheckFailed;
  }
  if (*uniformity) {
    Strings js;
    if (lineInput) {
      Line a;
      if (int rc = report(cl_lineset_load(uniIn.c_str(), &a.p))) return rc;
      return emit(cl_uniformity_line_json(a.p, &js.s), js);
    }
    Grid g;
    if (int rc = load(uniIn, g)) return rc;
    if (int rc = emit(cl_uniformity_grid_json(g.p, &js.s), js)) return rc;
    if (!dftOut.empty()) {
      Strings csv;
      if (int rc = report(cl_balanced_spectrum_csv(g.p, &csv.s))) return rc;
      if (!write_file(dftOut, csv.s)) return kInputError;
    }
    return kOk;
  }
  if (*spectrum) {
    Grid g;
    if (int rc = load(specIn, g)) return rc;
    Strings js;
    return emit(cl_spectrum_json(g.p, &js.s), js);
  }
  if (*increment) {
    Grid g;
    if (int rc = load(incIn, g)) return rc;
    Strings js;
    return emit(cl_increment_json(g.p, incAlpha, incProfile.c_str(), incAlpha1, &js.s), js);
  }
  if (*ap) {
    Strings js;
    return emit(cl_partition_ap_json(apN, apR1, apR2, apS, &js.s), js);
  }
  if (*refine) {
    const auto comma = freq.find(',');
    long long r1 = 0, r2 = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("comma");
      std::size_t u1 = 0, u2 = 0;
      r1 = std::stoll(freq.substr(0, comma), &u1);
      r2 = std::stoll(freq.substr(comma + 1), &u2);
      if (u1 != comma || u2 != freq.size() - comma - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      std::cerr << "error: --freq expects r1,r2\n\n" << refine->help();
      return kInputError;
    }
    Grid g;
    if (int rc = load(refIn, g)) return rc;
    Strings js;
    return emit(cl_partition_refine_json(g.p, r1, r2, refS, refCells, &js.s), js);
  }
  if (*energy) {
    Grid g;
    if (int rc = load(erIn, g)) return rc;
    Strings js, csv;
    return emit(cl_energy_run_json(g.p, erEps, erK, erRho, erProfile.c_str(), erIters, &js.s, &csv.s), js, &csv,
                erTrace);
  }
  if (*hunt) {
    Grid g;
    if (int rc = load(huntIn, g)) return rc;
    Strings js, csv;
    return emit(cl_hunt_json(g.p, huntProfile.c_str(), maxSteps, &js.s, &csv.s), js, &csv, huntTrace);
  }
  if (*verify) {
    Strings out;
    if (list) {
      if (int rc = report(cl_verify_manifest(&out.s))) return rc;
      std::cout << out.s;
      return kOk;
    }
    const cl_status s = cl_verify_jsonl(seed, quick ? 1 : 0, only.empty() ? nullptr : only.c_str(), &out.s);
    if (out.s) std::cout << out.s;
    return report(s);
  }
  return kInputError;
}
