#include "cornerlab/driver.hpp"

#include "cornerlab/uniformity.hpp"

#include <cmath>
#include <sstream>

namespace cornerlab {

double PowerRule::log10_value(double delta) const {
  return log10Coefficient + exponent * std::log10(delta);
}

double PowerRule::value(double delta) const { return std::pow(10.0, log10_value(delta)); }

ConstantsProfile ConstantsProfile::toy() {
  ConstantsProfile p;
  p.name = ProfileName::toy;
  p.alpha1 = {std::log10(0.5), 1};
  p.alpha = {std::log10(0.25), 2};
  p.zeta = {-std::log10(64.0), 1};
  p.gainFloor = {-std::log10(64.0), 3};
  p.sizeFloor = {-std::log10(16.0), 1};
  p.nThreshold = {-std::log10(16.0), 1};
  p.minSide = 4;
  p.law = PowerLaw{0.25, 4};
  p.regularize = true;
  return p;
}

ConstantsProfile ConstantsProfile::paper() {
  ConstantsProfile p;
  p.name = ProfileName::paper;
  p.alpha1 = {-108, 44};
  p.alpha = {-108, 44};
  p.zeta = {-10000, 3500};
  p.gainFloor = {-10000, 3500};
  p.sizeFloor = {-10000, 3500};
  p.nThreshold = {-10, 4};
  p.minSide = 4;
  p.law = PowerLaw{0.25, 48};
  p.regularize = true;
  return p;
}

ConstantsProfile ConstantsProfile::by_name(const std::string& name) {
  if (name == "toy") return toy();
  if (name == "paper") return paper();
  throw InputError("unknown profile '" + name + "' (expected toy or paper)");
}

std::string to_string(HuntOutcome o) {
  switch (o) {
    case HuntOutcome::corner: return "corner";
    case HuntOutcome::increment_exhausted: return "increment-exhausted";
    case HuntOutcome::max_steps: return "max-steps";
  }
  return "?";
}

bool is_increment_branch(const std::string& branch) {
  return branch == "marginal-increment" || branch == "spectral-increment";
}

namespace {

struct HuntState {
  Box box;
  std::int64_t pSide = 0;
  Rational density;
  std::int64_t count = 0;
};

std::int64_t min_side(const Box& b) { return static_cast<std::int64_t>(std::min(b.xs.size(), b.ys.size())); }

class Recorder {
 public:
  Recorder(const GridSet& a, const ConstantsProfile& p, double delta0, HuntResult& out)
      : a_(a), p_(p), delta0_(delta0), out_(out) {}

  // Records pushed until the next call share this step number.
  void begin_step(std::int64_t step) { step_ = step; }

  void push(const std::string& branch, const HuntState& before, const HuntState& after,
            std::vector<std::string> notes = {}) {
    IterationRecord r;
    r.step = step_;
    r.branch = branch;
    r.box = after.box;
    r.side1 = static_cast<std::int64_t>(after.box.xs.size());
    r.side2 = static_cast<std::int64_t>(after.box.ys.size());
    r.pSide = after.pSide;
    const double n = static_cast<double>(a_.modulus());
    const double ps = static_cast<double>(after.pSide);
    r.gamma1 = static_cast<double>(r.side1) / ps;
    r.gamma2 = static_cast<double>(r.side2) / ps;
    r.beta1 = static_cast<double>(r.side1) / n;
    r.beta2 = static_cast<double>(r.side2) / n;
    r.density = after.density;
    r.count = after.count;
    r.profile = p_.name;
    if (is_increment_branch(branch)) {
      r.gainFloorMet = to_double(after.density - before.density) >= p_.gainFloor.value(delta0_);
      r.sizeFloorMet = static_cast<double>(min_side(after.box)) >=
                       p_.sizeFloor.value(delta0_) * static_cast<double>(min_side(before.box));
    }
    r.nThresholdMet = n * p_.nThreshold.value(delta0_) * r.beta1 * r.beta2 >= 1;
    r.notes = std::move(notes);
    out_.trace.push_back(std::move(r));
  }

 private:
  std::int64_t step_ = 1;
  const GridSet& a_;
  const ConstantsProfile& p_;
  double delta0_;
  HuntResult& out_;
};

HuntState make_state(const GridSet& a, Box box, std::int64_t pSide) {
  HuntState s;
  s.count = a.count_in(box);
  s.density = box.area() == 0 ? Rational(0) : Rational(s.count, box.area());
  s.box = std::move(box);
  s.pSide = pSide;
  return s;
}

}  // namespace

HuntResult corner_hunt(const GridSet& a, const ConstantsProfile& profile, const HuntConfig& config) {
  if (!profile.runnable()) throw InputError("the paper profile is documentation only; hunt requires the toy profile");
  if (a.empty()) throw InputError("A must be nonempty");
  if (config.maxSteps < 1) throw InputError("maxSteps must be positive");
  const std::int64_t n = a.modulus();

  HuntResult out;
  out.profile = to_string(profile.name);
  out.initialDensity = a.density();
  const double delta0 = to_double(out.initialDensity);
  const double alpha = std::min(profile.alpha.value(delta0), 0.999);
  const double alpha1 = profile.alpha1.value(delta0);
  const double zeta = std::min(profile.zeta.value(delta0), 0.999);
  Recorder rec(a, profile, delta0, out);

  HuntState state = make_state(a, Box::full(n), n);
  IncrementConfig inc;
  inc.profile = ProfileName::toy;
  inc.alpha1 = alpha1;

  for (int step = 0; step < config.maxSteps; ++step) {
    rec.begin_step(step + 1);
    const GridSet ai = a.intersect(state.box);
    if (min_side(state.box) < profile.minSide || ai.empty()) {
      rec.push("exhausted", state, state, {ai.empty() ? "no points left in the box" : "box side below the floor"});
      out.outcome = HuntOutcome::increment_exhausted;
      return out;
    }

    std::optional<Box> next;
    std::string branch;
    std::vector<std::string> notes;
    if (auto g = marginal_increment_box(ai, state.box, alpha1, &notes)) {
      if (g->area() > 0 && Rational(ai.count_in(*g), g->area()) > state.density) {
        next = std::move(g);
        branch = "marginal-increment";
      } else {
        notes.push_back("marginal candidate did not raise the density");
      }
    }
    if (!next) {
      const double w = static_cast<double>(state.box.xs.size()), h = static_cast<double>(state.box.ys.size());
      const double boxAlpha = to_double(box_fourth_power_exact(ai, state.box, Centering::rows)) / (w * w * h * h);
      if (boxAlpha <= alpha) {
        if (auto c = find_corner(ai, CornerMode::grid)) {
          out.witness = c;
          out.outcome = HuntOutcome::corner;
          rec.push("uniform-corner-found", state, state, std::move(notes));
          return out;
        }
        notes.push_back("uniform box without a corner");
        rec.push("uniform-no-corner", state, state, std::move(notes));
        out.outcome = HuntOutcome::increment_exhausted;
        return out;
      }
      const auto r = find_density_increment(ai, state.box, alpha, inc);
      for (const auto& s : r.notes) notes.push_back(s);
      if (r.kind != IncrementKind::increment) {
        notes.push_back("density increment search returned " + to_string(r.kind));
        rec.push("exhausted", state, state, std::move(notes));
        out.outcome = HuntOutcome::increment_exhausted;
        return out;
      }
      notes.push_back("increment branch " + r.branch);
      next = r.g;
      branch = "spectral-increment";
    }

    HuntState after = make_state(a, *next, state.pSide);
    rec.push(branch, state, after, std::move(notes));
    state = std::move(after);

    if (!profile.regularize || min_side(state.box) < profile.minSide) continue;
    const GridSet an = a.intersect(state.box);
    EnergyRunConfig ec;
    ec.minSide = profile.minSide;
    const auto loc = uniform_rectangle_locate(state.box.xs, state.box.ys, an, zeta, profile.law, ec);
    if (!loc.found || !loc.floorMet || loc.r1.empty() || loc.r2.empty()) continue;
    Box r{loc.r1, loc.r2};
    if (min_side(r) < profile.minSide || r.area() == state.box.area()) continue;
    HuntState reg = make_state(a, std::move(r), loc.square.t);
    if (reg.count == 0) continue;
    rec.push("regularize", state, reg,
             {"cell density " + to_string(loc.cellDensity) + ", floor " + (loc.floorMet ? "met" : "missed")});
    state = std::move(reg);
  }
  out.outcome = HuntOutcome::max_steps;
  return out;
}

std::string hunt_trace_csv(const HuntResult& r) {
  std::ostringstream os;
  os.precision(10);
  os << "step,branch,side1,side2,pSide,gamma1,gamma2,beta1,beta2,density,count\n";
  for (const auto& t : r.trace) {
    os << t.step << ',' << t.branch << ',' << t.side1 << ',' << t.side2 << ',' << t.pSide << ',' << t.gamma1 << ','
       << t.gamma2 << ',' << t.beta1 << ',' << t.beta2 << ',' << to_string(t.density) << ',' << t.count << '\n';
  }
  return os.str();
}

bool replay_trace(const GridSet& a, const HuntResult& r) {
  for (const auto& t : r.trace) {
    const auto s = make_state(a, t.box, t.pSide);
    if (s.count != t.count || s.density != t.density) return false;
  }
  return true;
}

bool trace_monotone(const HuntResult& r) {
  Rational prev = r.initialDensity;
  std::int64_t s1 = -1, s2 = -1;
  for (const auto& t : r.trace) {
    if (is_increment_branch(t.branch) && !(t.density > prev)) return false;
    if (s1 >= 0 && (t.side1 > s1 || t.side2 > s2)) return false;
    prev = t.density;
    s1 = t.side1, s2 = t.side2;
  }
  return true;
}

}  // namespace cornerlab
