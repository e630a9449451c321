#include "pdde/fourier.hpp"

#include <cmath>

#include "pdde/kernels.hpp"

namespace pdde {

namespace fourier_detail {

std::vector<Cplx> unit_roots(int M) {
  std::vector<Cplx> w(static_cast<std::size_t>(M));
  if (M % 2 == 0) {
    const int half = M / 2;
    for (int j = 0; j < half; ++j) w[j] = std::polar(1.0, kPeriod * j / M);
    for (int j = 0; j < half; ++j) w[j + half] = -w[j];
  } else {
    for (int j = 0; j < M; ++j) w[j] = std::polar(1.0, kPeriod * j / M);
  }
  return w;
}

}  // namespace fourier_detail

namespace {

// phase[m] = w[(step*m) mod M]; exact index arithmetic, no angle drift.
void fill_phases(std::vector<Cplx>& phase, const std::vector<Cplx>& w, long step, int M) {
  long s = step % M;
  if (s < 0) s += M;
  long idx = 0;
  for (int m = 0; m < M; ++m) {
    phase[m] = w[idx];
    idx += s;
    if (idx >= M) idx -= M;
  }
}

}  // namespace

FourierCoefficients analyze(const SampledSignal& s, long K) {
  const int M = s.count();
  if (M < 2 * K + 1)
    throw Error(Errc::WindowTooSmall,
                "need at least 2K+1 samples, got " + std::to_string(M));
  const Eigen::Index d = s.dim;
  for (const auto& v : s.values)
    if (v.size() != d) throw Error(Errc::DimensionMismatch, "ragged sample array");

  // component-major copies so each dot product is contiguous
  std::vector<Cplx> planar(static_cast<std::size_t>(d) * M);
  for (int m = 0; m < M; ++m)
    for (Eigen::Index i = 0; i < d; ++i) planar[static_cast<std::size_t>(i) * M + m] = s.values[m](i);

  const auto w = fourier_detail::unit_roots(M);
  std::vector<Cplx> phase(static_cast<std::size_t>(M));
  FourierCoefficients out(d);
  for (long k = -K; k <= K; ++k) {
    fill_phases(phase, w, -k, M);
    Vec ck(d);
    for (Eigen::Index i = 0; i < d; ++i)
      ck(i) = kernels::cdot(phase.data(), planar.data() + static_cast<std::size_t>(i) * M,
                            static_cast<std::size_t>(M)) / static_cast<double>(M);
    out.set(k, std::move(ck));
  }
  return out;
}

SampledSignal synthesize(const FourierCoefficients& c, int M) {
  if (M < 1) throw Error(Errc::WindowTooSmall, "need at least one sample point");
  const Eigen::Index d = c.dim();
  std::vector<Cplx> planar(static_cast<std::size_t>(d) * M, Cplx(0.0, 0.0));
  const auto w = fourier_detail::unit_roots(M);
  std::vector<Cplx> phase(static_cast<std::size_t>(M));
  for (const auto& [k, v] : c.entries()) {
    fill_phases(phase, w, k, M);
    for (Eigen::Index i = 0; i < d; ++i)
      kernels::caxpy(planar.data() + static_cast<std::size_t>(i) * M, v(i), phase.data(),
                     static_cast<std::size_t>(M));
  }
  SampledSignal out;
  out.dim = d;
  out.values.assign(static_cast<std::size_t>(M), Vec(d));
  for (int m = 0; m < M; ++m)
    for (Eigen::Index i = 0; i < d; ++i)
      out.values[m](i) = planar[static_cast<std::size_t>(i) * M + m];
  return out;
}

Vec dirichlet_sum(const FourierCoefficients& c, long m, double t) {
  Vec out = Vec::Zero(c.dim());
  for (const auto& [k, v] : c.entries()) {
    if (std::labs(k) > m) continue;
    out += std::polar(1.0, static_cast<double>(k) * t) * v;
  }
  return out;
}

Vec fejer_sum(const FourierCoefficients& c, long l, double t) {
  Vec out = Vec::Zero(c.dim());
  for (const auto& [k, v] : c.entries()) {
    const long a = std::labs(k);
    if (a > l) continue;
    const double wgt = 1.0 - static_cast<double>(a) / static_cast<double>(l + 1);
    out += wgt * std::polar(1.0, static_cast<double>(k) * t) * v;
  }
  return out;
}

FourierCoefficients fejer_coefficients(const FourierCoefficients& c, long l) {
  FourierCoefficients out(c.dim());
  for (const auto& [k, v] : c.entries()) {
    const long a = std::labs(k);
    if (a > l) continue;
    const double wgt = 1.0 - static_cast<double>(a) / static_cast<double>(l + 1);
    out.set(k, wgt * v);
  }
  return out;
}

std::vector<Vec> cumulative_integral(const FourierCoefficients& f, int M) {
  if (M < 1) throw Error(Errc::WindowTooSmall, "need at least one cell");
  const Eigen::Index d = f.dim();
  // 5-node Gauss-Legendre on [-1, 1]
  static const double xi[5] = {-0.90617984593866399280, -0.53846931010568309104, 0.0,
                               0.53846931010568309104, 0.90617984593866399280};
  static const double wt[5] = {0.23692688505618908751, 0.47862867049936646804,
                               0.56888888888888888889, 0.47862867049936646804,
                               0.23692688505618908751};
  const double h = kPeriod / M;

  // Node s_{j,q} = h*(j + a_q) is the uniform grid advanced by a_q*h, so each
  // offset family is one synthesize() of phase-rotated coefficients.
  std::vector<Vec> cell(static_cast<std::size_t>(M), Vec::Zero(d));
  for (int q = 0; q < 5; ++q) {
    const double aq = 0.5 * (1.0 + xi[q]);
    SampledSignal fs = synthesize(f.delayed(-aq * h), M);
    const double cw = 0.5 * h * wt[q];
    for (int j = 0; j < M; ++j) cell[j] += cw * fs.values[j];
  }
  std::vector<Vec> g(static_cast<std::size_t>(M) + 1, Vec::Zero(d));
  for (int j = 0; j < M; ++j) g[j + 1] = g[j] + cell[j];
  return g;
}

Vec fourier_coefficient(const std::vector<Vec>& g_closed, long k) {
  const int M = static_cast<int>(g_closed.size()) - 1;
  if (M < 4 || M % 4 != 0)
    throw Error(Errc::WindowTooSmall, "closed grid must have 4n cells, got " + std::to_string(M));
  const Eigen::Index d = g_closed[0].size();
  const double h = kPeriod / M;
  const auto w = fourier_detail::unit_roots(M);
  long s = (-k) % M;
  if (s < 0) s += M;

  static const double boole[5] = {7.0, 32.0, 12.0, 32.0, 7.0};
  Vec acc = Vec::Zero(d);
  long idx = 0;
  for (int j = 0; j <= M; ++j) {
    // Boole weight of node j: panel-interior pattern, doubled on shared panel ends.
    const int pos = j % 4;
    double bw = boole[pos];
    if (pos == 0 && j != 0 && j != M) bw = 14.0;
    const Cplx ph = (j == M) ? Cplx(1.0, 0.0) : w[idx];
    acc += (bw * ph) * g_closed[j];
    idx += s;
    if (idx >= M) idx -= M;
  }
  return acc * (2.0 * h / 45.0) / kPeriod;
}

double antiderivative_check(const FourierCoefficients& f, const FourierCoefficients& g_hat,
                            long k) {
  if (k == 0) throw Error(Errc::ZeroModeRequested, "identity undefined at mode 0");
  const Cplx ik_inv = Cplx(0.0, 1.0) / static_cast<double>(k);
  Vec expected = ik_inv * (f.at(0) - f.at(k));
  return (g_hat.at(k) - expected).norm();
}

}  // namespace pdde
