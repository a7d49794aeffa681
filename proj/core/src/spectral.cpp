// Copyright 2026 The robcep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robcep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

#include <unsupported/Eigen/FFT>

#include "robcep/error.hpp"

namespace robcep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Median absolute value of a standard normal.
constexpr double kMadToSigma = 0.6745;

Series demeaned(std::span<const double> x) {
  const double xbar = mean(x);
  Series y(x.begin(), x.end());
  for (double& v : y) v -= xbar;
  return y;
}

void check_series(std::span<const double> x) {
  if (x.size() < 3) {
    throw DomainError("spectral estimation needs at least 3 points, got " +
                      std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("series contains a non-finite value");
  }
}

void check_taper_count(std::size_t n, int tapers) {
  if (tapers < 1 || static_cast<std::size_t>(tapers) >= n) {
    throw DomainError("taper count R=" + std::to_string(tapers) + " must satisfy 1 <= R < N=" +
                      std::to_string(n));
  }
}

double clamp_floor(double v) { return v < kSpectralFloor ? kSpectralFloor : v; }

/// |DFT(y)|^2 at m = 0..N-1.
std::vector<double> squared_dft(const Series& y) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, y);
  std::vector<double> out(y.size());
  for (std::size_t m = 0; m < y.size(); ++m) out[m] = std::norm(spec[m]);
  return out;
}

/// Half-grid periodogram (1/(2 pi N))|DFT(y)|^2 without demeaning.
std::vector<double> raw_half_periodogram(const Series& y) {
  const std::size_t n = y.size();
  const auto sq = squared_dft(y);
  const FrequencyGrid grid(n);
  std::vector<double> out(grid.size());
  const double scale = 1.0 / (kTwoPi * static_cast<double>(n));
  for (std::size_t m = 1; m <= grid.size(); ++m) out[m - 1] = scale * sq[m];
  return out;
}

/// cos/sin of 2 pi k / N for k = 0..N-1.
struct TrigTable {
  explicit TrigTable(std::size_t n) : cos(n), sin(n) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      cos[k] = std::cos(a);
      sin[k] = std::sin(a);
    }
  }
  std::vector<double> cos;
  std::vector<double> sin;
};

/// Median via selection on a scratch buffer (contents are permuted).
double select_median(std::vector<double>& buf) {
  const std::size_t mid = buf.size() / 2;
  auto mid_it = buf.begin() + static_cast<std::ptrdiff_t>(mid);
  std::nth_element(buf.begin(), mid_it, buf.end());
  const double hi = *mid_it;
  if (buf.size() % 2 == 1) return hi;
  return 0.5 * (*std::max_element(buf.begin(), mid_it) + hi);
}

/// Huber M-estimate of location with MAD scale about the median, started at
/// the median. With every weight at 1 (huge c) it returns the sample mean.
double huber_location(const Series& x, const HuberConfig& cfg) {
  std::vector<double> buf(x);
  const double med = select_median(buf);
  for (std::size_t t = 0; t < x.size(); ++t) buf[t] = std::abs(x[t] - med);
  const double scale = select_median(buf) / kMadToSigma;
  if (scale == 0.0) return med;
  const double cut = cfg.c * scale;
  double mu = med;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    double sw = 0.0;
    double swx = 0.0;
    for (double v : x) {
      const double w = cut / std::max(std::abs(v - mu), cut);
      sw += w;
      swx += w * v;
    }
    const double next = swx / sw;
    const double step = std::abs(next - mu);
    mu = next;
    if (step < cfg.tolerance * (1.0 + std::abs(mu))) return mu;
  }
  throw ConvergenceError("Huber location estimate did not converge", {mu});
}

Series robust_centered(std::span<const double> x, const HuberConfig& cfg) {
  Series y(x.begin(), x.end());
  const double mu = huber_location(y, cfg);
  for (double& v : y) v -= mu;
  return y;
}

/// Normal-equation sums of the Huber-weighted harmonic regression.
struct WeightedSums {
  double scc = 0.0;
  double sss = 0.0;
  double scs = 0.0;
  double syc = 0.0;
  double sys = 0.0;
};

// The two loops below run on two interleaved lanes (even and odd t) that
// are added at the end. The SSE2 and portable paths perform the same
// operations in the same order, so results do not depend on which is built.

/// out[t] = |y_t - bc cos_t - bs sin_t|
void abs_residuals(const double* y, const double* c, const double* s, std::size_t n, double bc,
                   double bs, double* out) {
  std::size_t t = 0;
#if defined(__SSE2__)
  const __m128d vbc = _mm_set1_pd(bc);
  const __m128d vbs = _mm_set1_pd(bs);
  const __m128d sign = _mm_set1_pd(-0.0);
  for (; t + 2 <= n; t += 2) {
    const __m128d r = _mm_sub_pd(_mm_sub_pd(_mm_loadu_pd(y + t), _mm_mul_pd(vbc, _mm_loadu_pd(c + t))),
                                 _mm_mul_pd(vbs, _mm_loadu_pd(s + t)));
    _mm_storeu_pd(out + t, _mm_andnot_pd(sign, r));
  }
#endif
  for (; t < n; ++t) out[t] = std::abs(y[t] - bc * c[t] - bs * s[t]);
}

WeightedSums weighted_sums(const double* y, const double* c, const double* s, std::size_t n,
                           double bc, double bs, double cut) {
  // Weight cut / max(|r|, cut) is exactly 1 inside the cut.
  double acc[5][2] = {};
  std::size_t t = 0;
#if defined(__SSE2__)
  const __m128d vbc = _mm_set1_pd(bc);
  const __m128d vbs = _mm_set1_pd(bs);
  const __m128d vcut = _mm_set1_pd(cut);
  const __m128d sign = _mm_set1_pd(-0.0);
  __m128d a0 = _mm_setzero_pd(), a1 = a0, a2 = a0, a3 = a0, a4 = a0;
  for (; t + 2 <= n; t += 2) {
    const __m128d vy = _mm_loadu_pd(y + t);
    const __m128d vc = _mm_loadu_pd(c + t);
    const __m128d vs = _mm_loadu_pd(s + t);
    const __m128d r = _mm_sub_pd(_mm_sub_pd(vy, _mm_mul_pd(vbc, vc)), _mm_mul_pd(vbs, vs));
    const __m128d wt = _mm_div_pd(vcut, _mm_max_pd(_mm_andnot_pd(sign, r), vcut));
    const __m128d wc = _mm_mul_pd(wt, vc);
    const __m128d ws = _mm_mul_pd(wt, vs);
    a0 = _mm_add_pd(a0, _mm_mul_pd(wc, vc));
    a1 = _mm_add_pd(a1, _mm_mul_pd(ws, vs));
    a2 = _mm_add_pd(a2, _mm_mul_pd(wc, vs));
    a3 = _mm_add_pd(a3, _mm_mul_pd(wc, vy));
    a4 = _mm_add_pd(a4, _mm_mul_pd(ws, vy));
  }
  _mm_storeu_pd(acc[0], a0);
  _mm_storeu_pd(acc[1], a1);
  _mm_storeu_pd(acc[2], a2);
  _mm_storeu_pd(acc[3], a3);
  _mm_storeu_pd(acc[4], a4);
#endif
  for (; t < n; ++t) {
    const std::size_t k = t % 2;
    const double r = y[t] - bc * c[t] - bs * s[t];
    const double wt = cut / std::max(std::abs(r), cut);
    const double wc = wt * c[t];
    const double ws = wt * s[t];
    acc[0][k] += wc * c[t];
    acc[1][k] += ws * s[t];
    acc[2][k] += wc * s[t];
    acc[3][k] += wc * y[t];
    acc[4][k] += ws * y[t];
  }
  return {acc[0][0] + acc[0][1], acc[1][0] + acc[1][1], acc[2][0] + acc[2][1],
          acc[3][0] + acc[3][1], acc[4][0] + acc[4][1]};
}

/// Buffers reused across IRLS calls. `hint` carries the first-iteration
/// residual median from one frequency to the next, where it barely moves.
struct IrlsWorkspace {
  std::vector<double> abs_resid;
  std::vector<double> band;
  double hint = 0.0;
};

/// IRLS core. cos_t/sin_t are the regressor columns for t = 1..N.
HarmonicCoefficients huber_irls(std::span<const double> y, std::span<const double> cos_t,
                                std::span<const double> sin_t, const HuberConfig& cfg,
                                IrlsWorkspace& ws) {
  const std::size_t n = y.size();
  ws.abs_resid.resize(n);
  ws.band.resize(n);
  double* abs_resid = ws.abs_resid.data();
  double* band = ws.band.data();

  double ss = 0.0;
  for (double v : y) ss += v * v;
  HarmonicCoefficients out;
  if (ss == 0.0) return out;
  const double scale_floor = 1e-12 * std::sqrt(ss / static_cast<double>(n));

  // Ordinary least squares start.
  double bc = 0.0;
  double bs = 0.0;
  {
    double scc = 0.0, sss = 0.0, scs = 0.0, syc = 0.0, sys = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double c = cos_t[t];
      const double s = sin_t[t];
      scc += c * c;
      sss += s * s;
      scs += c * s;
      syc += y[t] * c;
      sys += y[t] * s;
    }
    const double det = scc * sss - scs * scs;
    if (!(std::abs(det) > 0.0)) throw ConditioningError("singular harmonic regression design");
    bc = (sss * syc - scs * sys) / det;
    bs = (scc * sys - scs * syc) / det;
  }

  // The residual median is located by gathering the values within `width`
  // of a guess and selecting inside that band; a miss falls back to a full
  // selection. Either way the exact median is returned.
  const std::size_t k_hi = n / 2;
  const std::size_t k_lo = n % 2 == 1 ? k_hi : k_hi - 1;
  double guess = ws.hint;
  double width = 0.05 * ws.hint;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const double lo = guess - width;
    const double hi = guess + width;
    std::size_t below = 0;
    std::size_t j = 0;
    abs_residuals(y.data(), cos_t.data(), sin_t.data(), n, bc, bs, abs_resid);
    for (std::size_t t = 0; t < n; ++t) {
      const double a = abs_resid[t];
      band[j] = a;
      below += static_cast<std::size_t>(a < lo);
      j += static_cast<std::size_t>(a >= lo) & static_cast<std::size_t>(a <= hi);
    }
    double med;
    if (width > 0.0 && below <= k_lo && k_hi < below + j) {
      double* mid = band + (k_hi - below);
      std::nth_element(band, mid, band + j);
      med = k_lo == k_hi ? *mid : 0.5 * (*std::max_element(band, mid) + *mid);
    } else {
      med = select_median(ws.abs_resid);
    }
    if (it == 1) ws.hint = med;
    width = 4.0 * std::abs(med - guess) + 1e-2 * med;
    guess = med;

    const double scale = med / kMadToSigma;
    out.scale = scale;
    out.iterations = it;
    if (scale <= scale_floor) {
      // At least half the points are fitted exactly; nothing left to downweight.
      out.cosine = bc;
      out.sine = bs;
      return out;
    }
    const auto [scc, sss, scs, syc, sys] =
        weighted_sums(y.data(), cos_t.data(), sin_t.data(), n, bc, bs, cfg.c * scale);
    const double det = scc * sss - scs * scs;
    if (!(std::abs(det) > 0.0)) throw ConditioningError("singular harmonic regression design");
    const double nc = (sss * syc - scs * sys) / det;
    const double ns = (scc * sys - scs * syc) / det;
    const double step = std::max(std::abs(nc - bc), std::abs(ns - bs));
    const double size = std::max(std::abs(nc), std::abs(ns));
    bc = nc;
    bs = ns;
    if (step < cfg.tolerance * (1.0 + size)) {
      out.cosine = bc;
      out.sine = bs;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "Huber IRLS did not converge in " << cfg.max_iterations << " iterations";
  throw ConvergenceError(msg.str(), {bc, bs});
}

/// M-periodogram of y (already centered/tapered) on the half grid.
std::vector<double> raw_m_periodogram(const Series& y, const TrigTable& trig,
                                      const HuberConfig& cfg,
                                      std::vector<std::size_t>& failed) {
  const std::size_t n = y.size();
  const FrequencyGrid grid(n);
  std::vector<double> out(grid.size(), 0.0);
  std::vector<double> cos_t(n), sin_t(n);
  IrlsWorkspace ws;
  const double scale = static_cast<double>(n) / (4.0 * kTwoPi);
  for (std::size_t m = 1; m <= grid.size(); ++m) {
    std::size_t idx = 0;
    for (std::size_t t = 0; t < n; ++t) {
      idx += m;
      if (idx >= n) idx -= n;
      cos_t[t] = trig.cos[idx];
      sin_t[t] = trig.sin[idx];
    }
    try {
      const auto b = huber_irls(y, cos_t, sin_t, cfg, ws);
      out[m - 1] = scale * (b.cosine * b.cosine + b.sine * b.sine);
    } catch (const ConvergenceError&) {
      failed.push_back(m);
    }
  }
  return out;
}

[[noreturn]] void throw_failed_frequencies(const std::vector<std::size_t>& failed,
                                           const std::vector<double>& partial) {
  std::ostringstream msg;
  msg << "M-periodogram failed to converge at " << failed.size() << " grid frequencies (m =";
  for (std::size_t i = 0; i < failed.size() && i < 10; ++i) msg << ' ' << failed[i];
  if (failed.size() > 10) msg << " ...";
  msg << ")";
  throw ConvergenceError(msg.str(), partial);
}

SpectralEstimate finish(std::size_t n, std::vector<double> values, EstimatorSpec spec) {
  for (double& v : values) v = clamp_floor(v);
  return SpectralEstimate{FrequencyGrid(n), std::move(values), spec};
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::size_t n) : n_(n) {
  if (n < 3) throw DomainError("frequency grid needs N >= 3");
}

double FrequencyGrid::frequency(std::size_t m) const noexcept {
  return kTwoPi * static_cast<double>(m) / static_cast<double>(n_);
}

std::vector<double> FrequencyGrid::frequencies() const {
  std::vector<double> f(size());
  for (std::size_t m = 1; m <= size(); ++m) f[m - 1] = frequency(m);
  return f;
}

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kClassical:
      return "classical";
    case EstimatorKind::kMultitaper:
      return "multitaper";
    case EstimatorKind::kM:
      return "m";
    case EstimatorKind::kMultitaperM:
      return "multitaper-m";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(const std::string& name) {
  if (name == "classical") return EstimatorKind::kClassical;
  if (name == "multitaper") return EstimatorKind::kMultitaper;
  if (name == "m") return EstimatorKind::kM;
  if (name == "multitaper-m") return EstimatorKind::kMultitaperM;
  throw DomainError("unknown estimator '" + name +
                    "' (expected classical, multitaper, m, multitaper-m)");
}

std::string EstimatorSpec::describe() const {
  std::ostringstream s;
  s << to_string(kind);
  if (uses_tapers() && uses_huber()) {
    s << "(R=" << tapers << ",c=" << huber_c << ")";
  } else if (uses_tapers()) {
    s << "(R=" << tapers << ")";
  } else if (uses_huber()) {
    s << "(c=" << huber_c << ")";
  }
  return s.str();
}

bool EstimatorSpec::operator==(const EstimatorSpec& o) const noexcept {
  if (kind != o.kind) return false;
  if (uses_tapers() && tapers != o.tapers) return false;
  if (uses_huber() && huber_c != o.huber_c) return false;
  return true;
}

TaperBank::TaperBank(std::size_t n, int count) : n_(n), count_(count) {
  check_taper_count(n, count);
  weights_.resize(n * static_cast<std::size_t>(count));
  const double np1 = static_cast<double>(n + 1);
  const double norm = std::sqrt(2.0 / np1);
  for (int r = 1; r <= count; ++r) {
    double* h = weights_.data() + static_cast<std::size_t>(r - 1) * n;
    for (std::size_t t = 1; t <= n; ++t) {
      h[t - 1] = norm * std::sin(std::numbers::pi * static_cast<double>(t) *
                                 static_cast<double>(r) / np1);
    }
  }
}

std::span<const double> TaperBank::taper(int r) const {
  if (r < 1 || r > count_) throw DomainError("taper index out of range");
  return {weights_.data() + static_cast<std::size_t>(r - 1) * n_, n_};
}

TaperBank sine_tapers(std::size_t n, int count) { return TaperBank(n, count); }

void HuberConfig::validate() const {
  if (!(c > 0.0)) throw DomainError("Huber tuning constant c must be positive");
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
}

SpectralEstimate periodogram(std::span<const double> x) {
  check_series(x);
  return finish(x.size(), raw_half_periodogram(demeaned(x)),
                EstimatorSpec{EstimatorKind::kClassical, 1, 1.345});
}

std::vector<double> periodogram_ordinates(std::span<const double> x) {
  check_series(x);
  auto sq = squared_dft(demeaned(x));
  const double scale = 1.0 / (kTwoPi * static_cast<double>(x.size()));
  for (double& v : sq) v *= scale;
  return sq;
}

SpectralEstimate multitaper_periodogram(std::span<const double> x, int tapers) {
  check_series(x);
  const std::size_t n = x.size();
  const TaperBank bank(n, tapers);
  const Series y = demeaned(x);
  const double energy = std::sqrt(static_cast<double>(n));
  std::vector<double> acc(FrequencyGrid(n).size(), 0.0);
  Series tapered(n);
  for (int r = 1; r <= tapers; ++r) {
    const auto h = bank.taper(r);
    for (std::size_t t = 0; t < n; ++t) tapered[t] = energy * h[t] * y[t];
    const auto pr = raw_half_periodogram(tapered);
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += pr[m];
  }
  for (double& v : acc) v /= static_cast<double>(tapers);
  return finish(n, std::move(acc), EstimatorSpec{EstimatorKind::kMultitaper, tapers, 1.345});
}

double huber_psi(double u, double c) {
  if (u > c) return c;
  if (u < -c) return -c;
  return u;
}

double huber_rho(double u, double c) {
  const double a = std::abs(u);
  return a <= c ? 0.5 * u * u : c * a - 0.5 * c * c;
}

HarmonicCoefficients m_harmonic_regression(std::span<const double> x, double lambda,
                                           const HuberConfig& cfg) {
  cfg.validate();
  check_series(x);
  if (!(lambda > 0.0 && lambda < std::numbers::pi)) {
    throw DomainError("harmonic regression frequency must lie in (0, pi)");
  }
  const std::size_t n = x.size();
  std::vector<double> cos_t(n), sin_t(n);
  for (std::size_t t = 1; t <= n; ++t) {
    cos_t[t - 1] = std::cos(static_cast<double>(t) * lambda);
    sin_t[t - 1] = std::sin(static_cast<double>(t) * lambda);
  }
  IrlsWorkspace ws;
  return huber_irls(x, cos_t, sin_t, cfg, ws);
}

SpectralEstimate m_periodogram(std::span<const double> x, const HuberConfig& cfg) {
  cfg.validate();
  check_series(x);
  const std::size_t n = x.size();
  const TrigTable trig(n);
  std::vector<std::size_t> failed;
  auto values = raw_m_periodogram(robust_centered(x, cfg), trig, cfg, failed);
  if (!failed.empty()) throw_failed_frequencies(failed, values);
  return finish(n, std::move(values), EstimatorSpec{EstimatorKind::kM, 1, cfg.c});
}

SpectralEstimate multitaper_m_periodogram(std::span<const double> x, int tapers,
                                          const HuberConfig& cfg) {
  cfg.validate();
  check_series(x);
  const std::size_t n = x.size();
  const TaperBank bank(n, tapers);
  const TrigTable trig(n);
  const Series y = robust_centered(x, cfg);
  const double energy = std::sqrt(static_cast<double>(n));
  std::vector<double> acc(FrequencyGrid(n).size(), 0.0);
  std::vector<std::size_t> failed;
  Series tapered(n);
  for (int r = 1; r <= tapers; ++r) {
    const auto h = bank.taper(r);
    for (std::size_t t = 0; t < n; ++t) tapered[t] = energy * h[t] * y[t];
    const auto pr = raw_m_periodogram(tapered, trig, cfg, failed);
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += pr[m];
  }
  for (double& v : acc) v /= static_cast<double>(tapers);
  if (!failed.empty()) {
    std::sort(failed.begin(), failed.end());
    failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
    throw_failed_frequencies(failed, acc);
  }
  return finish(n, std::move(acc),
                EstimatorSpec{EstimatorKind::kMultitaperM, tapers, cfg.c});
}

SpectralEstimate estimate_spectrum(std::span<const double> x, const EstimatorSpec& spec,
                                   const HuberConfig& cfg) {
  HuberConfig hc = cfg;
  hc.c = spec.huber_c;
  switch (spec.kind) {
    case EstimatorKind::kClassical:
      return periodogram(x);
    case EstimatorKind::kMultitaper:
      return multitaper_periodogram(x, spec.tapers);
    case EstimatorKind::kM:
      return m_periodogram(x, hc);
    case EstimatorKind::kMultitaperM:
      return multitaper_m_periodogram(x, spec.tapers, hc);
  }
  throw DomainError("unknown estimator kind");
}

}  // namespace robcep
