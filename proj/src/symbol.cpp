#include "pdde/symbol.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace pdde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string mode_str(long k) { return "mode " + std::to_string(k); }

}  // namespace

SvdFactor svd_factor(const Mat& m) {
  SvdFactor f;
  if (m.rows() >= 32) {
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    f.U = svd.matrixU();
    f.V = svd.matrixV();
    f.sigma = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    f.U = svd.matrixU();
    f.V = svd.matrixV();
    f.sigma = svd.singularValues();
  }
  return f;
}

Vec SvdFactor::solve(const Vec& rhs) const {
  Vec y = U.adjoint() * rhs;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) /= sigma(i);
  return V * y;
}

Mat SvdFactor::inverse() const {
  Mat S = sigma.cwiseInverse().asDiagonal().toDenseMatrix().cast<Cplx>();
  return V * S * U.adjoint();
}

Mat delay_term(const DelaySystem& sys, long k) {
  Cplx phase_sum(0.0, 0.0);
  for (double r : sys.delays()) phase_sum += std::polar(1.0, -static_cast<double>(k) * r);
  return phase_sum * sys.B();
}

Mat delta_matrix(const DelaySystem& sys, long k) {
  const Eigen::Index d = sys.dim();
  Mat delta = Cplx(0.0, static_cast<double>(k)) * Mat::Identity(d, d);
  delta -= sys.A();
  delta -= delay_term(sys, k);
  return delta;
}

SymbolEntry assemble_delta(const DelaySystem& sys, long k) {
  SymbolEntry e;
  e.k = k;
  e.delta = delta_matrix(sys, k);
  e.factor = svd_factor(e.delta);
  const double smin = e.factor.sigma_min();
  const double smax = e.factor.sigma_max();
  const double scale = static_cast<double>(std::labs(k)) + sys.norm_A() +
                       static_cast<double>(sys.delay_count()) * sys.norm_B();
  if (smin <= kSingularFloor * scale) {
    e.cond = kInf;
    e.invertible = false;
  } else {
    e.cond = smax / smin;
    e.invertible = e.cond <= kSingularCond;
  }
  if (k == 0)
    e.multiplier_norm = 0.0;
  else
    e.multiplier_norm = e.invertible ? std::labs(k) / smin : kInf;
  return e;
}

Vec apply_inverse(const SymbolEntry& e, const Vec& rhs) {
  if (!e.invertible)
    throw ModeError(Errc::SingularMode, "symbol not invertible at " + mode_str(e.k), {e.k});
  return e.factor.solve(rhs);
}

Mat multiplier_matrix(const SymbolEntry& e) {
  if (!e.invertible)
    throw ModeError(Errc::SingularMode, "symbol not invertible at " + mode_str(e.k), {e.k});
  return Cplx(0.0, static_cast<double>(e.k)) * e.factor.inverse();
}

MultiplierPair variation_pair(const DelaySystem& sys, long k) {
  if (k == -1)
    throw Error(Errc::DegenerateMode, "factored form divides by k+1, undefined at k = -1");
  SymbolEntry ek = assemble_delta(sys, k);
  SymbolEntry ek1 = assemble_delta(sys, k + 1);
  Mat Mk = multiplier_matrix(ek);
  Mat Mk1 = multiplier_matrix(ek1);

  MultiplierPair out;
  out.k = k;
  out.direct = static_cast<double>(k) * (Mk1 - Mk);

  // C_k - C_{k+1} straight from the definitions
  const Eigen::Index d = sys.dim();
  Mat cdiff = Cplx(0.0, -1.0) * Mat::Identity(d, d);
  cdiff -= delay_term(sys, k) - delay_term(sys, k + 1);
  const double kk = static_cast<double>(k);
  out.factored = (Cplx(0.0, -kk) / (kk + 1.0)) * (Mk1 * cdiff * Mk) + (kk / (kk + 1.0)) * Mk1;
  return out;
}

}  // namespace pdde
