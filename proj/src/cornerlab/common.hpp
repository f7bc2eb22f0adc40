#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cornerlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

// Thrown for violated preconditions and malformed inputs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed set files; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Numerical tolerances used across the library.
struct Tolerances {
  static constexpr double disc = 1e-12;            // |f| <= 1 + disc for D-valued fields
  static constexpr double roundTrip = 1e-9;        // inverse(dft(f)) vs f, relative l2
  static constexpr double directVsFft = 1e-9;      // FFT vs direct sum, relative
  static constexpr double parseval = 1e-6;         // energy identities, relative
  static constexpr double correlation = 1e-8;      // direct vs spectral correlation, relative l2
  static constexpr double methodAgreement = 1e-6;  // direct vs spectral uniformity functional
  static constexpr double boxDuality = 1e-8;       // primal vs dual box norm, times max(1, value)
  static constexpr double imaginary = 1e-8;        // |Im| <= imaginary * (1 + |Re|)
  static constexpr double nonnegative = 1e-9;      // slack below zero for nonnegative sums
  static constexpr double triangle = 1e-9;         // box-norm triangle inequality slack
  static constexpr double discrepancy = 1e-6;      // additive slack in the progression discrepancy bound
  static constexpr double decomposition = 1e-8;    // trilinear decomposition, relative
  static constexpr double spectral = 1e-6;         // trace identities, relative
  static constexpr double orthogonality = 1e-6;    // eigenvector inner products, times n
  static constexpr double eigenClamp = -1e-8;      // eigenvalues are clamped from below here
  static constexpr double levelSetRadius = 1e-9;   // |v_i| <= 1/alpha + levelSetRadius
  static constexpr double saturation = 1e-6;       // relative slack in the saturation bound
  static constexpr double energy = 1e-9;           // energy decomposition identity
  static constexpr double zeroCoefficient = 1e-9;  // |chi^(r)| below this times N^2 counts as zero
};

// Parallelism cap. Defaults to CORNERLAB_THREADS, else hardware concurrency.
int thread_cap();
void set_thread_cap(int threads);

// Sums body(i) for i in [begin, end) across worker threads. Integer results
// are independent of the schedule.
template <class Body>
std::int64_t parallel_sum(std::int64_t begin, std::int64_t end, Body&& body);

// splitmix64-seeded xoshiro256** with portable bounded draws, so that
// randomized suites are byte-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t s_[4];
};

template <class Body>
std::int64_t parallel_sum(std::int64_t begin, std::int64_t end, Body&& body) {
  const std::int64_t span = end - begin;
  if (span <= 0) return 0;
  const std::int64_t workers = std::min<std::int64_t>(thread_cap(), span);
  if (workers <= 1 || span < 64) {
    std::int64_t total = 0;
    for (std::int64_t i = begin; i < end; ++i) total += body(i);
    return total;
  }
  std::vector<std::int64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::int64_t sum = 0;
      for (std::int64_t i = begin + w; i < end; i += workers) sum += body(i);
      partial[w] = sum;
    });
  }
  for (auto& t : pool) t.join();
  std::int64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

}  // namespace cornerlab
