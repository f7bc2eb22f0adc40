#pragma once

#include "cornerlab/common.hpp"

#include <compare>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cornerlab {

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const Point&) const = default;
};

// Subset of Z_N, members sorted ascending.
class LineSet {
 public:
  LineSet() = default;
  LineSet(std::int64_t modulus, std::vector<std::int64_t> members);

  static LineSet full(std::int64_t modulus);
  // {start, start+1, ..., start+length-1} mod N.
  static LineSet interval(std::int64_t modulus, std::int64_t start, std::int64_t length);

  std::int64_t modulus() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::int64_t v) const;
  const std::vector<std::int64_t>& members() const { return members_; }
  std::int64_t operator[](std::size_t i) const { return members_[i]; }
  Rational density() const;
  // Position of v in the sorted member list, or -1.
  std::int64_t index_of(std::int64_t v) const;

  bool operator==(const LineSet& o) const { return n_ == o.n_ && members_ == o.members_; }

 private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> members_;
};

// Product box of column values xs and row values ys. A point (x, y) has
// column x and row y.
struct Box {
  LineSet xs;
  LineSet ys;

  static Box full(std::int64_t modulus);
  std::int64_t modulus() const { return xs.modulus(); }
  std::int64_t area() const {
    return static_cast<std::int64_t>(xs.size()) * static_cast<std::int64_t>(ys.size());
  }
  bool contains(Point p) const { return xs.contains(p.x) && ys.contains(p.y); }
  bool is_square() const { return xs.size() == ys.size(); }
};

// Subset of Z_N x Z_N. Stored as a bit matrix when |A| > N^2/64, otherwise as
// a sorted point list.
class GridSet {
 public:
  GridSet() = default;
  GridSet(std::int64_t modulus, std::vector<Point> points);

  static GridSet full(std::int64_t modulus);
  static GridSet product(const LineSet& xs, const LineSet& ys);
  static GridSet product(const Box& box) { return product(box.xs, box.ys); }

  std::int64_t modulus() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  Rational density() const;
  bool dense() const { return dense_; }

  bool contains(std::int64_t x, std::int64_t y) const;
  bool contains(Point p) const { return contains(p.x, p.y); }
  // Members in lexicographic (x, y) order.
  std::vector<Point> points() const;

  GridSet intersect(const Box& box) const;
  GridSet intersect(const GridSet& other) const;
  std::int64_t count_in(const Box& box) const;
  bool subset_of(const Box& box) const;

  bool operator==(const GridSet& o) const;

 private:
  void build(std::vector<Point> sorted_unique);

  std::int64_t n_ = 0;
  std::size_t count_ = 0;
  bool dense_ = false;
  std::vector<Point> sparse_;
  std::vector<std::uint64_t> bits_;
};

// Complex function on Z_N (arity 1) or Z_N^2 (arity 2). Two-dimensional
// values are stored row-major by x: index x*N + y.
class ComplexField {
 public:
  using value_type = std::complex<double>;

  ComplexField() = default;
  ComplexField(int arity, std::int64_t modulus);
  ComplexField(int arity, std::int64_t modulus, std::vector<value_type> values);

  static ComplexField indicator(const LineSet& a);
  static ComplexField indicator(const GridSet& a);
  static ComplexField constant(int arity, std::int64_t modulus, value_type c);

  int arity() const { return arity_; }
  std::int64_t modulus() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<value_type>& values() const { return values_; }
  std::vector<value_type>& values() { return values_; }

  value_type operator[](std::size_t i) const { return values_[i]; }
  value_type& operator[](std::size_t i) { return values_[i]; }
  value_type at(std::int64_t x) const { return values_[static_cast<std::size_t>(x)]; }
  value_type at(std::int64_t x, std::int64_t y) const {
    return values_[static_cast<std::size_t>(x * n_ + y)];
  }
  value_type& at(std::int64_t x, std::int64_t y) {
    return values_[static_cast<std::size_t>(x * n_ + y)];
  }

  double l2_norm() const;
  double max_abs() const;
  // Throws InputError when some |value| exceeds 1 + Tolerances::disc.
  void require_disc_valued(const char* what) const;

 private:
  int arity_ = 1;
  std::int64_t n_ = 0;
  std::vector<value_type> values_;
};

struct MarginalProfile {
  Box box;
  std::int64_t count = 0;                  // |A|
  Rational density;                        // |A| / (|xs| |ys|)
  std::vector<std::int64_t> rowCounts;     // |{x in xs : (x, y) in A}|, aligned with box.ys
  std::vector<std::int64_t> columnCounts;  // |{y in ys : (x, y) in A}|, aligned with box.xs
  std::vector<Rational> rowDensity;        // rowCounts / |xs|
  std::vector<Rational> columnDensity;     // columnCounts / |ys|
  Rational rowDeviation;                   // sum over rows of (rowDensity - density)^2
  Rational columnDeviation;                // sum over columns of (columnDensity - density)^2

  Rational row_density_of(std::int64_t y) const;
  Rational column_density_of(std::int64_t x) const;
};

enum class DeviationScale {
  squared,  // sum <= alpha1^2 * count
  linear,   // sum <= alpha1 * count
};

struct MarginalVerdict {
  bool rowsHold = false;
  bool columnsHold = false;
  bool both() const { return rowsHold && columnsHold; }
};

GridSet make_grid_set(std::int64_t modulus, const std::vector<Point>& points);

// Throws InputError naming a violating point when A is not inside the box.
void require_inside(const GridSet& a, const Box& box);

MarginalProfile marginal_profile(const GridSet& a, const Box& box);

// f(x, y) = 1_A(x, y) - rowDensity(y) inside the box, 0 outside.
ComplexField balanced_box_function(const GridSet& a, const Box& box);

// 1_A - |A|/N^2 over the whole grid.
ComplexField balanced_function(const GridSet& a);
ComplexField balanced_function(const LineSet& a);

MarginalVerdict marginal_uniformity_check(const MarginalProfile& profile, const Rational& alpha1,
                                          DeviationScale scale = DeviationScale::squared);

// Set literal files: "N <modulus>" then "x y" (2-D) or "x" (1-D) per line.
GridSet read_grid_set(std::istream& in);
LineSet read_line_set(std::istream& in);
GridSet load_grid_set(const std::string& path);
LineSet load_line_set(const std::string& path);
void write_grid_set(std::ostream& out, const GridSet& a);
void write_line_set(std::ostream& out, const LineSet& a);

}  // namespace cornerlab
