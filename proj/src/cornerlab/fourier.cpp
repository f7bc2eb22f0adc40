#include "cornerlab/fourier.hpp"

#include <cmath>
#include <numbers>

namespace cornerlab {

namespace {

bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

std::complex<double> unit_root(std::uint64_t k, std::uint64_t n) {
  // exp(-2 pi i k / n) with k reduced first to keep the angle small.
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void require_same_shape(const ComplexField& f, const ComplexField& g) {
  if (f.arity() != g.arity()) throw InputError("fields have different arity");
  if (f.modulus() != g.modulus()) throw InputError("fields have different modulus");
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw InputError("transform length must be positive");
  if (pow2_) {
    twiddle_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) twiddle_[k] = unit_root(k, n);
    return;
  }
  m_ = 1;
  while (m_ < 2 * n - 1) m_ <<= 1;
  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) twiddle_[k] = unit_root(k, m_);
  chirp_.resize(n);
  const std::uint64_t two_n = 2 * n;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t kk = (static_cast<std::uint64_t>(k) * k) % two_n;
    chirp_[k] = unit_root(kk, two_n);
  }
  kernelHat_.assign(m_, {0.0, 0.0});
  kernelHat_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) kernelHat_[k] = kernelHat_[m_ - k] = std::conj(chirp_[k]);
  radix2(kernelHat_, false);
}

void FftPlan::radix2(std::span<std::complex<double>> a, bool invert) const {
  const std::size_t n = a.size();
  const std::size_t full = pow2_ ? n_ : m_;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = full / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        auto w = twiddle_[j * stride];
        if (invert) w = std::conj(w);
        const auto u = a[i + j];
        const auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

void FftPlan::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw InputError("transform length mismatch");
  if (n_ == 1) return;
  if (pow2_) {
    radix2(data, false);
    return;
  }
  std::vector<std::complex<double>> buf(m_, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) buf[k] = data[k] * chirp_[k];
  radix2(buf, false);
  for (std::size_t k = 0; k < m_; ++k) buf[k] *= kernelHat_[k];
  radix2(buf, true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = buf[k] * scale * chirp_[k];
}

void FftPlan::inverse(std::span<std::complex<double>> data) const {
  for (auto& v : data) v = std::conj(v);
  forward(data);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v = std::conj(v) * scale;
}

namespace {

void transform_2d(ComplexField& f, bool invert) {
  const auto n = static_cast<std::size_t>(f.modulus());
  FftPlan plan(n);
  auto& v = f.values();
  std::vector<std::complex<double>> line(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::span<std::complex<double>> row(v.data() + x * n, n);
    invert ? plan.inverse(row) : plan.forward(row);
  }
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) line[x] = v[x * n + y];
    invert ? plan.inverse(line) : plan.forward(line);
    for (std::size_t x = 0; x < n; ++x) v[x * n + y] = line[x];
  }
}

}  // namespace

Spectrum dft_1d(const ComplexField& f) {
  if (f.arity() != 1) throw InputError("dft_1d needs an arity-1 field");
  Spectrum s = f;
  FftPlan(static_cast<std::size_t>(f.modulus())).forward(s.values());
  return s;
}

Spectrum dft_2d(const ComplexField& f) {
  if (f.arity() != 2) throw InputError("dft_2d needs an arity-2 field");
  Spectrum s = f;
  transform_2d(s, false);
  return s;
}

Spectrum dft(const ComplexField& f) { return f.arity() == 1 ? dft_1d(f) : dft_2d(f); }

ComplexField inverse_dft(const Spectrum& s) {
  ComplexField f = s;
  if (s.arity() == 1)
    FftPlan(static_cast<std::size_t>(s.modulus())).inverse(f.values());
  else
    transform_2d(f, true);
  return f;
}

std::complex<double> dft_coefficient(const ComplexField& f, std::int64_t r1, std::int64_t r2) {
  const std::int64_t n = f.modulus();
  const auto un = static_cast<std::uint64_t>(n);
  r1 = ((r1 % n) + n) % n;
  r2 = ((r2 % n) + n) % n;
  std::complex<double> acc{0.0, 0.0};
  if (f.arity() == 1) {
    for (std::int64_t k = 0; k < n; ++k)
      acc += f.at(k) * unit_root(static_cast<std::uint64_t>(k * r1 % n), un);
    return acc;
  }
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      acc += f.at(x, y) * unit_root(static_cast<std::uint64_t>((x * r1 + y * r2) % n), un);
  return acc;
}

Spectrum dft_direct(const ComplexField& f) {
  Spectrum s(f.arity(), f.modulus());
  const std::int64_t n = f.modulus();
  if (f.arity() == 1) {
    for (std::int64_t r = 0; r < n; ++r) s[static_cast<std::size_t>(r)] = dft_coefficient(f, r);
  } else {
    for (std::int64_t r1 = 0; r1 < n; ++r1)
      for (std::int64_t r2 = 0; r2 < n; ++r2) s.at(r1, r2) = dft_coefficient(f, r1, r2);
  }
  return s;
}

ComplexField cross_correlation(const ComplexField& f, const ComplexField& g, CorrelationMethod method) {
  require_same_shape(f, g);
  const std::int64_t n = f.modulus();
  ComplexField out(f.arity(), n);
  if (method == CorrelationMethod::direct) {
    if (f.arity() == 1) {
      for (std::int64_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::int64_t s = 0; s < n; ++s) acc += f.at(s) * std::conj(g.at(((s - k) % n + n) % n));
        out[static_cast<std::size_t>(k)] = acc;
      }
    } else {
      for (std::int64_t k1 = 0; k1 < n; ++k1)
        for (std::int64_t k2 = 0; k2 < n; ++k2) {
          std::complex<double> acc{0.0, 0.0};
          for (std::int64_t s1 = 0; s1 < n; ++s1) {
            const std::int64_t t1 = ((s1 - k1) % n + n) % n;
            for (std::int64_t s2 = 0; s2 < n; ++s2)
              acc += f.at(s1, s2) * std::conj(g.at(t1, ((s2 - k2) % n + n) % n));
          }
          out.at(k1, k2) = acc;
        }
    }
    return out;
  }
  // The transform of the correlation is f^(r) * conj(g^(r)).
  Spectrum fs = dft(f);
  const Spectrum gs = dft(g);
  for (std::size_t i = 0; i < fs.size(); ++i) fs[i] *= std::conj(gs[i]);
  return inverse_dft(fs);
}

double relative_l2_distance(const ComplexField& a, const ComplexField& b) {
  require_same_shape(a, b);
  double diff = 0, ref = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += std::norm(a[i] - b[i]);
    ref += std::norm(b[i]);
  }
  if (ref == 0) return std::sqrt(diff);
  return std::sqrt(diff / ref);
}

}  // namespace cornerlab
