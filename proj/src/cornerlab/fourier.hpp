#pragma once

#include "cornerlab/zn_core.hpp"

#include <complex>
#include <span>
#include <vector>

namespace cornerlab {

// Coefficients share the ComplexField layout: r for arity 1, (r1, r2) -> r1*N + r2.
using Spectrum = ComplexField;

// In-place transform of length n: forward is X(r) = sum_k x(k) exp(-2 pi i k r / n).
// Radix-2 for powers of two, Bluestein's chirp-z otherwise.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  std::size_t size() const { return n_; }
  void forward(std::span<std::complex<double>> data) const;
  // Includes the 1/n factor.
  void inverse(std::span<std::complex<double>> data) const;

 private:
  void radix2(std::span<std::complex<double>> data, bool invert) const;

  std::size_t n_;
  bool pow2_;
  std::size_t m_ = 0;                           // padded length for Bluestein
  std::vector<std::complex<double>> twiddle_;   // exp(-2 pi i k / L), L = n or m
  std::vector<std::complex<double>> chirp_;     // exp(-pi i k^2 / n)
  std::vector<std::complex<double>> kernelHat_; // transformed conj chirp, length m
};

Spectrum dft_1d(const ComplexField& f);
Spectrum dft_2d(const ComplexField& f);
Spectrum dft(const ComplexField& f);
ComplexField inverse_dft(const Spectrum& s);

// Direct summations, O(N^2) in 1-D and O(N^4) in 2-D.
Spectrum dft_direct(const ComplexField& f);

// Coefficient at a single frequency by direct summation.
std::complex<double> dft_coefficient(const ComplexField& f, std::int64_t r1, std::int64_t r2 = 0);

enum class CorrelationMethod { direct, spectral };

// (f * g)(k) = sum_s f(s) conj(g(s - k)), indices mod N per axis.
ComplexField cross_correlation(const ComplexField& f, const ComplexField& g,
                               CorrelationMethod method = CorrelationMethod::spectral);

double relative_l2_distance(const ComplexField& a, const ComplexField& b);

}  // namespace cornerlab
