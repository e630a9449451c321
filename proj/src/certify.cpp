#include "pdde/certify.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pdde {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Solvable: return "SOLVABLE";
    case Verdict::Unsolvable: return "UNSOLVABLE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

long tail_mode(const DelaySystem& sys) {
  const double s = sys.norm_A() + static_cast<double>(sys.delay_count()) * sys.norm_B();
  return static_cast<long>(std::ceil(2.0 * s)) + 1;
}

SolvabilityReport scan(const DelaySystem& sys, long K) {
  if (K < 0) throw Error(Errc::WindowTooSmall, "scan window must be nonnegative");
  SolvabilityReport rep;
  rep.scan_K = K;
  rep.tail_K = tail_mode(sys);
  rep.tail_bound = 2.0;
  for (long k = -K; k <= K; ++k) {
    SymbolEntry e = assemble_delta(sys, k);
    if (!e.invertible) {
      rep.singular_modes.push_back(k);
      continue;
    }
    if (e.multiplier_norm > rep.sup_multiplier_norm) rep.sup_multiplier_norm = e.multiplier_norm;
    if (e.cond > rep.max_cond) rep.max_cond = e.cond;
  }
  if (!rep.singular_modes.empty())
    rep.verdict = Verdict::Unsolvable;
  else if (K >= rep.tail_K)
    rep.verdict = Verdict::Solvable;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

std::vector<Mat> multiplier_family(const DelaySystem& sys, long K) {
  std::vector<Mat> fam;
  for (long k = -K; k <= K; ++k) {
    SymbolEntry e = assemble_delta(sys, k);
    if (e.invertible) fam.push_back(multiplier_matrix(e));
  }
  return fam;
}

namespace {

double pth_power_norm(const Vec& v, double p) { return std::pow(v.squaredNorm(), 0.5 * p); }

// (E ||sum r_i y_i||^p / E ||sum r_i x_i||^p)^{1/p} with the expectation over
// all 2^m sign patterns taken exactly; Gray-code walk flips one term a step.
// Negative return marks a degenerate denominator.
double sign_average_ratio(const std::vector<Mat>& Ts, const std::vector<Vec>& xs, double p) {
  const std::size_t m = xs.size();
  std::vector<Vec> ys(m);
  for (std::size_t i = 0; i < m; ++i) ys[i] = Ts[i] * xs[i];
  Vec sy = ys[0], sx = xs[0];
  for (std::size_t i = 1; i < m; ++i) {
    sy += ys[i];
    sx += xs[i];
  }
  double num = pth_power_norm(sy, p);
  double den = pth_power_norm(sx, p);
  std::vector<double> sign(m, 1.0);
  const std::uint64_t patterns = std::uint64_t{1} << m;
  for (std::uint64_t g = 1; g < patterns; ++g) {
    const int b = std::countr_zero(g);
    sign[b] = -sign[b];
    sy += (2.0 * sign[b]) * ys[b];
    sx += (2.0 * sign[b]) * xs[b];
    num += pth_power_norm(sy, p);
    den += pth_power_norm(sx, p);
  }
  if (den <= 0.0) return -1.0;
  return std::pow(num / den, 1.0 / p);
}

}  // namespace

double rbound_estimate(const std::vector<Mat>& family, double p, int trials,
                       std::uint64_t seed) {
  if (family.empty()) throw Error(Errc::EmptyFamily, "no operators to test");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (trials < 0) throw std::invalid_argument("trials must be >= 0");
  const Eigen::Index d = family.front().rows();
  for (const Mat& T : family)
    if (T.rows() != d || T.cols() != d)
      throw Error(Errc::DimensionMismatch, "family members must share one square shape");

  double best = 0.0;

  // Singletons with their top right singular vectors; for p = 2 this already
  // attains the sup of the operator norms.
  for (const Mat& T : family) {
    SvdFactor f = svd_factor(T);
    Vec v = f.V.col(0);
    if (v.norm() == 0.0) continue;
    const double r = sign_average_ratio({T}, {v}, p);
    if (r > best) best = r;
  }

  constexpr std::size_t kMaxSubfamily = 10;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq sq{static_cast<unsigned>(seed & 0xffffffffu),
                     static_cast<unsigned>(seed >> 32), static_cast<unsigned>(t)};
    std::mt19937_64 rng(sq);
    std::uniform_int_distribution<std::size_t> size_dist(1, kMaxSubfamily);
    std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const std::size_t m = size_dist(rng);
    std::vector<Mat> Ts(m);
    std::vector<Vec> xs(m);
    for (std::size_t i = 0; i < m; ++i) {
      Ts[i] = family[pick(rng)];
      Vec x(d);
      for (Eigen::Index j = 0; j < d; ++j) x(j) = Cplx(gauss(rng), gauss(rng));
      xs[i] = x;
    }
    const double r = sign_average_ratio(Ts, xs, p);
    if (r > best) best = r;
  }
  return best;
}

double variation_report(const DelaySystem& sys, long K) {
  if (K < 0) throw Error(Errc::WindowTooSmall, "window must be nonnegative");
  auto checked_multiplier = [&](long k) {
    SymbolEntry e = assemble_delta(sys, k);
    return multiplier_matrix(e);  // throws SingularMode when not invertible
  };
  double sup = 0.0;
  Mat prev = checked_multiplier(-K);
  for (long k = -K; k <= K; ++k) {
    Mat next = checked_multiplier(k + 1);
    const Mat var = static_cast<double>(k) * (next - prev);
    const double nrm = svd_factor(var).sigma_max();
    if (nrm > sup) sup = nrm;
    prev = next;
  }
  return sup;
}

}  // namespace pdde
