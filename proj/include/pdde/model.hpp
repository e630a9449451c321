#pragma once

// Problem data for x'(t) = A x(t) + sum_j B x(t - r_j) + f(t) on C^d with
// 2*pi-periodic forcing. One coefficient matrix B acts through every delay
// channel; delays are strictly positive and finite.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "pdde/errors.hpp"

namespace pdde {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPeriod = 6.283185307179586476925286766559;  // 2*pi
inline constexpr double kPi = 3.1415926535897932384626433832795;

// Condition number past this is treated as singular.
inline constexpr double kSingularCond = 1e10;

// Smallest singular value at or below this fraction of the pencil scale
// |k| + ||A|| + n ||B|| is deemed an exact zero; a phase like e^{-i k pi}
// lands within a few ulps of its limit, and the 1x1 case has no second
// singular value for the condition quotient to see.
inline constexpr double kSingularFloor = 1e-13;

// Raw numbers as read from input, before any validation.
struct RawProblem {
  Eigen::Index dim = 0;
  Mat A;
  Mat B;
  std::vector<double> delays;
};

class DelaySystem {
 public:
  // Callers wanting a full violation list go through validate_system().
  DelaySystem(Mat A, Mat B, std::vector<double> delays);

  Eigen::Index dim() const { return A_.rows(); }
  const Mat& A() const { return A_; }
  const Mat& B() const { return B_; }
  const std::vector<double>& delays() const { return delays_; }
  Eigen::Index delay_count() const { return static_cast<Eigen::Index>(delays_.size()); }

  double min_delay() const;
  double max_delay() const;

  // Operator 2-norms, computed once.
  double norm_A() const { return norm_A_; }
  double norm_B() const { return norm_B_; }

  static constexpr double period() { return kPeriod; }

 private:
  Mat A_, B_;
  std::vector<double> delays_;
  double norm_A_ = 0.0, norm_B_ = 0.0;
};

std::vector<Violation> check_system(const RawProblem& raw);
DelaySystem validate_system(const RawProblem& raw);  // throws ValidationError

// Sparse mode -> coefficient map for a trigonometric polynomial
// x(t) = sum_k c_k e^{ikt}. Absent modes are zero.
class FourierCoefficients {
 public:
  explicit FourierCoefficients(Eigen::Index dim) : dim_(dim) {}

  Eigen::Index dim() const { return dim_; }
  bool has(long k) const { return entries_.count(k) != 0; }
  std::size_t size() const { return entries_.size(); }

  void set(long k, Vec v);
  void add(long k, const Vec& v);
  Vec at(long k) const;  // zero vector when absent

  // Largest |k| carried; 0 when empty.
  long max_mode() const;

  const std::map<long, Vec>& entries() const { return entries_; }

  // Exact evaluation sum_k c_k e^{ikt}; works for any t, so delayed
  // arguments come for free.
  Vec evaluate(double t) const;

  // Coefficients of t -> x(t - r): c_k <- e^{-ikr} c_k.
  FourierCoefficients delayed(double r) const;

  // Coefficients of x': c_k <- ik c_k.
  FourierCoefficients differentiated() const;

  // Conjugate symmetry c_{-k} == conj(c_k) within tol.
  bool is_real(double tol = 1e-12) const;

  void prune(double tol = 0.0);  // drop entries with norm <= tol

  double coeff_norm_sum() const;  // sum_k ||c_k||_2

 private:
  Eigen::Index dim_;
  std::map<long, Vec> entries_;
};

}  // namespace pdde
