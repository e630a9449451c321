#include "pdde/mild.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace pdde {

Mat semigroup(const Mat& A, double t) {
  if (!std::isfinite(t)) throw Error(Errc::NonFiniteEntry, "semigroup time must be finite");
  if (A.rows() != A.cols()) throw Error(Errc::NonSquareMatrix, "generator must be square");
  Mat tA = t * A;
  return tA.exp();
}

namespace {

int round_up_multiple(int value, int m) { return ((value + m - 1) / m) * m; }

// Split flow cache over the master grid: W(q) = e^{q h A} reached as
// coarse[q / c] * fine[q % c]. Coarse powers get a periodic direct-exponential
// refresh so long products cannot drift.
struct FlowCache {
  int c = 0;
  std::vector<Mat> fine;    // W(b), b = 0..c
  std::vector<Mat> coarse;  // W(a c), a = 0..grid

  FlowCache(const Mat& A, double h, int c_, int grid) : c(c_) {
    const Eigen::Index d = A.rows();
    fine.resize(c + 1);
    fine[0] = Mat::Identity(d, d);
    if (c >= 1) fine[1] = semigroup(A, h);
    for (int b = 2; b <= c; ++b) fine[b] = fine[1] * fine[b - 1];
    coarse.resize(grid + 1);
    coarse[0] = Mat::Identity(d, d);
    for (int a = 1; a <= grid; ++a) {
      if (a % 16 == 0)
        coarse[a] = semigroup(A, static_cast<double>(a) * c * h);
      else
        coarse[a] = coarse[a - 1] * fine[c];
    }
  }
};

double prefix_simpson_weight(int q, int cells) {
  if (q == 0 || q == cells) return 1.0 / 3.0;
  return (q % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

// Closed-grid samples g_q, q = 0..N, of the delayed feedback plus forcing.
std::vector<Vec> feedback_closed(const DelaySystem& sys, const FourierCoefficients& x,
                                 const FourierCoefficients& f, int N) {
  SampledSignal fs = synthesize(f, N);
  std::vector<SampledSignal> xd;
  for (double r : sys.delays()) xd.push_back(synthesize(x.delayed(r), N));
  std::vector<Vec> g(static_cast<std::size_t>(N) + 1);
  for (int q = 0; q <= N; ++q) {
    const int m = q % N;
    Vec v = fs.values[m];
    for (const auto& s : xd) v += sys.B() * s.values[m];
    g[q] = v;
  }
  return g;
}

}  // namespace

MildCheck mild_check(const DelaySystem& sys, const PeriodicSolution& sol,
                     const FourierCoefficients& f, int grid, int panels, double tol) {
  if (sol.coeffs.dim() != sys.dim() || f.dim() != sys.dim())
    throw Error(Errc::DimensionMismatch, "solution/forcing dimension mismatch");
  if (grid < 1 || panels < 1) throw Error(Errc::WindowTooSmall, "grid and panels must be positive");

  const int N = round_up_multiple(panels, 2 * grid);
  const int c = N / grid;
  const double h = kPeriod / N;

  const std::vector<Vec> g = feedback_closed(sys, sol.coeffs, f, N);
  SampledSignal xs = synthesize(sol.coeffs, N);
  auto x_at = [&](int q) -> const Vec& { return xs.values[q % N]; };

  FlowCache W(sys.A(), h, c, grid);

  // u_q = W(b_q) g_q with b_q bridging q up to the next coarse node; then
  // W(i c - q) u_q = coarse[i - a_of[q]] ... a_of[q] counts the bridged
  // coarse steps below q.
  std::vector<Vec> u(static_cast<std::size_t>(N) + 1);
  std::vector<int> lift(static_cast<std::size_t>(N) + 1);
  for (int q = 0; q <= N; ++q) {
    const int b = (c - q % c) % c;
    u[q] = W.fine[b] * g[q];
    lift[q] = (q + b) / c;  // W(ic - q) = coarse[i - lift[q]] for i >= lift[q]
  }

  MildCheck out;
  out.phi = sol.coeffs.evaluate(0.0);

  double formula_sup = 0.0;
  Vec conv_full = Vec::Zero(sys.dim());
  for (int i = 0; i <= grid; ++i) {
    const int ci = i * c;
    Vec conv = Vec::Zero(sys.dim());
    if (ci > 0) {
      for (int q = 0; q <= ci; ++q) {
        const double w = prefix_simpson_weight(q, ci) * h;
        conv += w * (W.coarse[i - lift[q]] * u[q]);
      }
    }
    if (i == grid) conv_full = conv;
    const double res = (x_at(ci) - W.coarse[i] * out.phi - conv).norm();
    if (res > formula_sup) formula_sup = res;
    if (i == grid) out.fixed_point_residual = res;
  }
  out.formula_residual_sup = formula_sup;

  // resolution guard: same convolution over every other node
  {
    const int cells = N / 2;
    Vec conv_half = Vec::Zero(sys.dim());
    for (int j = 0; j <= cells; ++j) {
      const int q = 2 * j;
      const double w = prefix_simpson_weight(j, cells) * 2.0 * h;
      conv_half += w * (W.coarse[grid - lift[q]] * u[q]);
    }
    if ((conv_full - conv_half).norm() > 10.0 * tol)
      throw Error(Errc::QuadratureUnderresolved,
                  "convolution moved more than 10x tolerance under panel halving");
  }

  // integrated form: x(t) - x(0) = A int_0^t x + int_0^t g
  double integrated_sup = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const int ci = i * c;
    Vec J = Vec::Zero(sys.dim());
    Vec G = Vec::Zero(sys.dim());
    if (ci > 0) {
      for (int q = 0; q <= ci; ++q) {
        const double w = prefix_simpson_weight(q, ci) * h;
        J += w * x_at(q);
        G += w * g[q];
      }
    }
    const double res = (x_at(ci) - out.phi - sys.A() * J - G).norm();
    if (res > integrated_sup) integrated_sup = res;
  }
  out.integrated_residual_sup = integrated_sup;
  return out;
}

double fourier_consistency(const DelaySystem& sys, const SampledSignal& samples,
                           const FourierCoefficients& f, long K) {
  if (samples.dim != sys.dim() || f.dim() != sys.dim())
    throw Error(Errc::DimensionMismatch, "sample/forcing dimension mismatch");
  FourierCoefficients xhat = analyze(samples, K);
  double worst = 0.0;
  for (long k = -K; k <= K; ++k) {
    Mat delta = delta_matrix(sys, k);
    const double defect = (delta * xhat.at(k) - f.at(k)).norm();
    if (defect > worst) worst = defect;
  }
  return worst;
}

double nested_integral_check(const Mat& A, const std::function<Vec(double)>& g, double t,
                             int panels, double tol) {
  if (A.rows() != A.cols()) throw Error(Errc::NonSquareMatrix, "generator must be square");
  if (!(t > 0.0)) throw Error(Errc::WindowTooSmall, "horizon must be positive");

  auto defect_at = [&](int N) {
    const double h = t / N;
    const Eigen::Index d = A.rows();
    std::vector<Mat> W(static_cast<std::size_t>(N) + 1);
    W[0] = Mat::Identity(d, d);
    if (N >= 1) W[1] = semigroup(A, h);
    for (int q = 2; q <= N; ++q) {
      if (q % 64 == 0)
        W[q] = semigroup(A, q * h);
      else
        W[q] = W[1] * W[q - 1];
    }
    std::vector<Vec> gv(static_cast<std::size_t>(N) + 1);
    for (int q = 0; q <= N; ++q) gv[q] = g(q * h);

    // inner(s_i) = int_0^{s_i} T(s_i - u) g(u) du, every prefix: Simpson on
    // even prefixes, Simpson plus a 3/8 tail on odd ones.
    std::vector<Vec> inner(static_cast<std::size_t>(N) + 1, Vec::Zero(d));
    for (int i = 1; i <= N; ++i) {
      Vec acc = Vec::Zero(d);
      if (i == 1) {
        acc = 0.5 * h * (W[1] * gv[0] + gv[1]);
      } else if (i % 2 == 0) {
        for (int q = 0; q <= i; ++q)
          acc += prefix_simpson_weight(q, i) * h * (W[i - q] * gv[q]);
      } else {
        const int head = i - 3;
        if (head > 0)
          for (int q = 0; q <= head; ++q)
            acc += prefix_simpson_weight(q, head) * h * (W[i - q] * gv[q]);
        const double c38 = 3.0 * h / 8.0;
        acc += c38 * (W[3] * gv[i - 3] + 3.0 * (W[2] * gv[i - 2]) + 3.0 * (W[1] * gv[i - 1]) +
                      gv[i]);
      }
      inner[i] = acc;
    }

    Vec douter = Vec::Zero(d);
    Vec conv = Vec::Zero(d);
    Vec intg = Vec::Zero(d);
    for (int q = 0; q <= N; ++q) {
      const double w = prefix_simpson_weight(q, N) * h;
      douter += w * inner[q];
      conv += w * (W[N - q] * gv[q]);
      intg += w * gv[q];
    }
    Vec lhs = A * douter;
    Vec rhs = conv - intg;
    return std::pair<Vec, double>(lhs - rhs, (lhs - rhs).norm());
  };

  int N = round_up_multiple(std::max(panels, 8), 4);
  auto [full, res] = defect_at(N);
  auto [half, res_half] = defect_at(N / 2);
  if ((full - half).norm() > 10.0 * tol)
    throw Error(Errc::QuadratureUnderresolved,
                "identity defect moved more than 10x tolerance under panel halving");
  return res;
}

std::vector<double> fejer_fixed_point_residuals(const DelaySystem& sys,
                                                const PeriodicSolution& sol,
                                                const FourierCoefficients& f,
                                                const std::vector<long>& orders, int panels) {
  const int grid = 64;
  const int N = round_up_multiple(panels, 2 * grid);
  const int c = N / grid;
  const double h = kPeriod / N;
  FlowCache W(sys.A(), h, c, grid);

  std::vector<double> out;
  out.reserve(orders.size());
  for (long l : orders) {
    FourierCoefficients xl = fejer_coefficients(sol.coeffs, l);
    const std::vector<Vec> g = feedback_closed(sys, xl, f, N);
    Vec conv = Vec::Zero(sys.dim());
    for (int q = 0; q <= N; ++q) {
      const int b = (c - q % c) % c;
      const int a = grid - (q + b) / c;
      const double w = prefix_simpson_weight(q, N) * h;
      conv += w * (W.coarse[a] * (W.fine[b] * g[q]));
    }
    Vec phi = xl.evaluate(0.0);
    out.push_back((phi - W.coarse[grid] * phi - conv).norm());
  }
  return out;
}

}  // namespace pdde
