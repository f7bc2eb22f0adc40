#include "cornerlab/zn_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cornerlab {

namespace {

std::string point_text(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

void require_modulus(std::int64_t n) {
  if (n < 1) throw InputError("modulus must be positive, got " + std::to_string(n));
  if (n > (std::int64_t{1} << 20)) throw InputError("modulus too large: " + std::to_string(n));
}

}  // namespace

// ---------------------------------------------------------------- LineSet

LineSet::LineSet(std::int64_t modulus, std::vector<std::int64_t> members)
    : n_(modulus), members_(std::move(members)) {
  require_modulus(n_);
  for (auto v : members_)
    if (v < 0 || v >= n_)
      throw InputError("residue " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

LineSet LineSet::full(std::int64_t modulus) {
  std::vector<std::int64_t> all(static_cast<std::size_t>(modulus));
  for (std::int64_t i = 0; i < modulus; ++i) all[i] = i;
  return LineSet(modulus, std::move(all));
}

LineSet LineSet::interval(std::int64_t modulus, std::int64_t start, std::int64_t length) {
  require_modulus(modulus);
  if (length < 0 || length > modulus)
    throw InputError("interval length " + std::to_string(length) + " outside [0, N]");
  std::vector<std::int64_t> v;
  v.reserve(static_cast<std::size_t>(length));
  const std::int64_t s = ((start % modulus) + modulus) % modulus;
  for (std::int64_t i = 0; i < length; ++i) v.push_back((s + i) % modulus);
  return LineSet(modulus, std::move(v));
}

bool LineSet::contains(std::int64_t v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::int64_t LineSet::index_of(std::int64_t v) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) return -1;
  return it - members_.begin();
}

Rational LineSet::density() const { return Rational(static_cast<std::int64_t>(size()), n_); }

Box Box::full(std::int64_t modulus) { return Box{LineSet::full(modulus), LineSet::full(modulus)}; }

// ---------------------------------------------------------------- GridSet

GridSet::GridSet(std::int64_t modulus, std::vector<Point> points) : n_(modulus) {
  require_modulus(n_);
  for (auto p : points)
    if (p.x < 0 || p.x >= n_ || p.y < 0 || p.y >= n_)
      throw InputError("point " + point_text(p) + " outside [0, " + std::to_string(n_) + ")^2");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  build(std::move(points));
}

void GridSet::build(std::vector<Point> sorted_unique) {
  count_ = sorted_unique.size();
  const std::int64_t cells = n_ * n_;
  dense_ = static_cast<std::int64_t>(count_) * 64 > cells;
  if (dense_) {
    bits_.assign(static_cast<std::size_t>((cells + 63) / 64), 0);
    for (auto p : sorted_unique) {
      const std::int64_t i = p.x * n_ + p.y;
      bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
  } else {
    sparse_ = std::move(sorted_unique);
  }
}

GridSet GridSet::full(std::int64_t modulus) { return product(LineSet::full(modulus), LineSet::full(modulus)); }

GridSet GridSet::product(const LineSet& xs, const LineSet& ys) {
  if (xs.modulus() != ys.modulus()) throw InputError("box sides have different moduli");
  std::vector<Point> pts;
  pts.reserve(xs.size() * ys.size());
  for (auto x : xs.members())
    for (auto y : ys.members()) pts.push_back({x, y});
  GridSet g;
  g.n_ = xs.modulus();
  g.build(std::move(pts));
  return g;
}

Rational GridSet::density() const {
  return Rational(static_cast<std::int64_t>(count_), n_ * n_);
}

bool GridSet::contains(std::int64_t x, std::int64_t y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_) return false;
  if (dense_) {
    const std::int64_t i = x * n_ + y;
    return (bits_[i >> 6] >> (i & 63)) & 1U;
  }
  return std::binary_search(sparse_.begin(), sparse_.end(), Point{x, y});
}

std::vector<Point> GridSet::points() const {
  if (!dense_) return sparse_;
  std::vector<Point> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      const int b = __builtin_ctzll(word);
      const std::int64_t i = static_cast<std::int64_t>(w) * 64 + b;
      out.push_back({i / n_, i % n_});
      word &= word - 1;
    }
  }
  return out;
}

GridSet GridSet::intersect(const Box& box) const {
  std::vector<Point> pts;
  for (auto p : points())
    if (box.contains(p)) pts.push_back(p);
  GridSet g;
  g.n_ = n_;
  g.build(std::move(pts));
  return g;
}

GridSet GridSet::intersect(const GridSet& other) const {
  std::vector<Point> pts;
  for (auto p : points())
    if (other.contains(p)) pts.push_back(p);
  GridSet g;
  g.n_ = n_;
  g.build(std::move(pts));
  return g;
}

std::int64_t GridSet::count_in(const Box& box) const {
  std::int64_t c = 0;
  if (static_cast<std::int64_t>(count_) > box.area()) {
    for (auto x : box.xs.members())
      for (auto y : box.ys.members()) c += contains(x, y);
  } else {
    for (auto p : points()) c += box.contains(p);
  }
  return c;
}

bool GridSet::subset_of(const Box& box) const {
  for (auto p : points())
    if (!box.contains(p)) return false;
  return true;
}

bool GridSet::operator==(const GridSet& o) const {
  return n_ == o.n_ && count_ == o.count_ && points() == o.points();
}

GridSet make_grid_set(std::int64_t modulus, const std::vector<Point>& points) {
  return GridSet(modulus, points);
}

// ---------------------------------------------------------------- ComplexField

ComplexField::ComplexField(int arity, std::int64_t modulus) : arity_(arity), n_(modulus) {
  if (arity != 1 && arity != 2) throw InputError("arity must be 1 or 2");
  require_modulus(modulus);
  values_.assign(static_cast<std::size_t>(arity == 1 ? modulus : modulus * modulus), {0.0, 0.0});
}

ComplexField::ComplexField(int arity, std::int64_t modulus, std::vector<value_type> values)
    : ComplexField(arity, modulus) {
  if (values.size() != values_.size())
    throw InputError("field has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(values_.size()));
  values_ = std::move(values);
}

ComplexField ComplexField::indicator(const LineSet& a) {
  ComplexField f(1, a.modulus());
  for (auto v : a.members()) f.values_[static_cast<std::size_t>(v)] = 1.0;
  return f;
}

ComplexField ComplexField::indicator(const GridSet& a) {
  ComplexField f(2, a.modulus());
  for (auto p : a.points()) f.at(p.x, p.y) = 1.0;
  return f;
}

ComplexField ComplexField::constant(int arity, std::int64_t modulus, value_type c) {
  ComplexField f(arity, modulus);
  std::fill(f.values_.begin(), f.values_.end(), c);
  return f;
}

double ComplexField::l2_norm() const {
  double s = 0;
  for (auto v : values_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexField::max_abs() const {
  double m = 0;
  for (auto v : values_) m = std::max(m, std::abs(v));
  return m;
}

void ComplexField::require_disc_valued(const char* what) const {
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (std::abs(values_[i]) > 1.0 + Tolerances::disc)
      throw InputError(std::string(what) + ": |f| exceeds 1 at index " + std::to_string(i));
}

// ---------------------------------------------------------------- marginals

void require_inside(const GridSet& a, const Box& box) {
  if (box.xs.modulus() != a.modulus() || box.ys.modulus() != a.modulus())
    throw InputError("box modulus differs from set modulus");
  for (auto p : a.points())
    if (!box.contains(p)) throw InputError("point " + point_text(p) + " lies outside the box");
}

Rational MarginalProfile::row_density_of(std::int64_t y) const {
  const auto i = box.ys.index_of(y);
  if (i < 0) throw InputError("row " + std::to_string(y) + " is not in the box");
  return rowDensity[static_cast<std::size_t>(i)];
}

Rational MarginalProfile::column_density_of(std::int64_t x) const {
  const auto i = box.xs.index_of(x);
  if (i < 0) throw InputError("column " + std::to_string(x) + " is not in the box");
  return columnDensity[static_cast<std::size_t>(i)];
}

MarginalProfile marginal_profile(const GridSet& a, const Box& box) {
  require_inside(a, box);
  if (box.xs.empty() || box.ys.empty()) throw InputError("box has an empty side");
  MarginalProfile p;
  p.box = box;
  p.count = static_cast<std::int64_t>(a.size());
  const auto w = static_cast<std::int64_t>(box.xs.size());
  const auto h = static_cast<std::int64_t>(box.ys.size());
  p.density = Rational(p.count, w * h);
  p.rowCounts.assign(static_cast<std::size_t>(h), 0);
  p.columnCounts.assign(static_cast<std::size_t>(w), 0);
  for (auto pt : a.points()) {
    ++p.columnCounts[static_cast<std::size_t>(box.xs.index_of(pt.x))];
    ++p.rowCounts[static_cast<std::size_t>(box.ys.index_of(pt.y))];
  }
  p.rowDeviation = 0;
  p.columnDeviation = 0;
  for (auto c : p.rowCounts) {
    Rational d(c, w);
    p.rowDensity.push_back(d);
    p.rowDeviation += (d - p.density) * (d - p.density);
  }
  for (auto c : p.columnCounts) {
    Rational d(c, h);
    p.columnDensity.push_back(d);
    p.columnDeviation += (d - p.density) * (d - p.density);
  }
  return p;
}

ComplexField balanced_box_function(const GridSet& a, const Box& box) {
  const auto profile = marginal_profile(a, box);
  ComplexField f(2, a.modulus());
  for (std::size_t j = 0; j < box.ys.size(); ++j) {
    const double d = to_double(profile.rowDensity[j]);
    const auto y = box.ys[j];
    for (auto x : box.xs.members()) f.at(x, y) = (a.contains(x, y) ? 1.0 : 0.0) - d;
  }
  return f;
}

ComplexField balanced_function(const GridSet& a) {
  const double d = to_double(a.density());
  ComplexField f = ComplexField::constant(2, a.modulus(), -d);
  for (auto p : a.points()) f.at(p.x, p.y) = 1.0 - d;
  return f;
}

ComplexField balanced_function(const LineSet& a) {
  const double d = to_double(a.density());
  ComplexField f = ComplexField::constant(1, a.modulus(), -d);
  for (auto v : a.members()) f[static_cast<std::size_t>(v)] = 1.0 - d;
  return f;
}

MarginalVerdict marginal_uniformity_check(const MarginalProfile& profile, const Rational& alpha1,
                                          DeviationScale scale) {
  const Rational factor = scale == DeviationScale::squared ? alpha1 * alpha1 : alpha1;
  const auto w = static_cast<std::int64_t>(profile.box.xs.size());
  const auto h = static_cast<std::int64_t>(profile.box.ys.size());
  MarginalVerdict v;
  v.rowsHold = profile.rowDeviation <= factor * h;
  v.columnsHold = profile.columnDeviation <= factor * w;
  return v;
}

// ---------------------------------------------------------------- set files

namespace {

struct SetFile {
  std::int64_t modulus = 0;
  std::vector<std::pair<std::vector<std::int64_t>, std::size_t>> rows;  // values, line number
};

SetFile parse_set_file(std::istream& in) {
  SetFile f;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (!have_header) {
      std::int64_t n = 0;
      std::string extra;
      if (first != "N" || !(ss >> n) || (ss >> extra)) throw ParseError("expected header 'N <modulus>'", lineno);
      if (n < 1) throw ParseError("modulus must be positive", lineno);
      f.modulus = n;
      have_header = true;
      continue;
    }
    std::vector<std::int64_t> vals;
    std::istringstream all(line);
    std::string tok;
    while (all >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("not an integer: '" + tok + "'", lineno);
      }
      if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'", lineno);
      if (v < 0 || v >= f.modulus)
        throw ParseError("value " + tok + " outside [0, " + std::to_string(f.modulus) + ")", lineno);
      vals.push_back(v);
    }
    f.rows.emplace_back(std::move(vals), lineno);
  }
  if (!have_header) throw ParseError("missing header 'N <modulus>'", lineno == 0 ? 1 : lineno);
  return f;
}

}  // namespace

GridSet read_grid_set(std::istream& in) {
  auto f = parse_set_file(in);
  std::vector<Point> pts;
  for (auto& [vals, line] : f.rows) {
    if (vals.size() != 2) throw ParseError("expected two coordinates 'x y'", line);
    pts.push_back({vals[0], vals[1]});
  }
  return GridSet(f.modulus, std::move(pts));
}

LineSet read_line_set(std::istream& in) {
  auto f = parse_set_file(in);
  std::vector<std::int64_t> vals;
  for (auto& [row, line] : f.rows) {
    if (row.size() != 1) throw ParseError("expected one residue per line", line);
    vals.push_back(row[0]);
  }
  return LineSet(f.modulus, std::move(vals));
}

GridSet load_grid_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_grid_set(in);
}

LineSet load_line_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_line_set(in);
}

void write_grid_set(std::ostream& out, const GridSet& a) {
  out << "N " << a.modulus() << '\n';
  for (auto p : a.points()) out << p.x << ' ' << p.y << '\n';
}

void write_line_set(std::ostream& out, const LineSet& a) {
  out << "N " << a.modulus() << '\n';
  for (auto v : a.members()) out << v << '\n';
}

}  // namespace cornerlab
