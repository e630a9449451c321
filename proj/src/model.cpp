#include "pdde/model.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace pdde {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SchemaError: return "SchemaError";
    case Errc::NonSquareMatrix: return "NonSquareMatrix";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonPositiveDelay: return "NonPositiveDelay";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::SingularMode: return "SingularMode";
    case Errc::DegenerateMode: return "DegenerateMode";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::ZeroModeRequested: return "ZeroModeRequested";
    case Errc::EmptyFamily: return "EmptyFamily";
    case Errc::QuadratureUnderresolved: return "QuadratureUnderresolved";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::Divergence: return "Divergence";
    case Errc::OracleNotConverged: return "OracleNotConverged";
    case Errc::TruncationTooSmall: return "TruncationTooSmall";
  }
  return "UnknownError";
}

std::string ValidationError::summarize(const std::vector<Violation>& vs) {
  std::ostringstream os;
  os << vs.size() << " violation(s)";
  for (const auto& v : vs) os << "; " << errc_name(v.code) << ": " << v.detail;
  return os.str();
}

namespace {

bool finite(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

}  // namespace

std::vector<Violation> check_system(const RawProblem& raw) {
  std::vector<Violation> out;
  auto add = [&](Errc c, const std::string& d) { out.push_back({c, d}); };

  if (raw.dim <= 0) add(Errc::DimensionMismatch, "dim must be positive");
  if (raw.A.rows() != raw.A.cols()) add(Errc::NonSquareMatrix, "A is not square");
  if (raw.B.rows() != raw.B.cols()) add(Errc::NonSquareMatrix, "B is not square");
  if (raw.A.rows() != raw.dim || raw.B.rows() != raw.dim)
    add(Errc::DimensionMismatch, "matrix size does not match dim");
  if (!finite(raw.A)) add(Errc::NonFiniteEntry, "A has a non-finite entry");
  if (!finite(raw.B)) add(Errc::NonFiniteEntry, "B has a non-finite entry");
  if (raw.delays.empty()) add(Errc::DimensionMismatch, "at least one delay required");
  for (std::size_t j = 0; j < raw.delays.size(); ++j) {
    const double r = raw.delays[j];
    if (!std::isfinite(r)) {
      add(Errc::NonFiniteEntry, "delay " + std::to_string(j) + " is not finite");
    } else if (r <= 0.0) {
      add(Errc::NonPositiveDelay, "delay " + std::to_string(j) + " must be > 0");
    }
  }
  return out;
}

DelaySystem validate_system(const RawProblem& raw) {
  auto violations = check_system(raw);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return DelaySystem(raw.A, raw.B, raw.delays);
}

DelaySystem::DelaySystem(Mat A, Mat B, std::vector<double> delays)
    : A_(std::move(A)), B_(std::move(B)), delays_(std::move(delays)) {
  RawProblem raw{A_.rows(), A_, B_, delays_};
  auto violations = check_system(raw);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  norm_A_ = op_norm(A_);
  norm_B_ = op_norm(B_);
}

double DelaySystem::min_delay() const {
  double m = delays_[0];
  for (double r : delays_)
    if (r < m) m = r;
  return m;
}

double DelaySystem::max_delay() const {
  double m = delays_[0];
  for (double r : delays_)
    if (r > m) m = r;
  return m;
}

void FourierCoefficients::set(long k, Vec v) {
  if (v.size() != dim_) throw Error(Errc::DimensionMismatch, "coefficient size mismatch");
  entries_[k] = std::move(v);
}

void FourierCoefficients::add(long k, const Vec& v) {
  if (v.size() != dim_) throw Error(Errc::DimensionMismatch, "coefficient size mismatch");
  auto it = entries_.find(k);
  if (it == entries_.end())
    entries_[k] = v;
  else
    it->second += v;
}

Vec FourierCoefficients::at(long k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) return Vec::Zero(dim_);
  return it->second;
}

long FourierCoefficients::max_mode() const {
  long m = 0;
  for (const auto& [k, v] : entries_) {
    if (v.norm() == 0.0) continue;
    const long a = std::labs(k);
    if (a > m) m = a;
  }
  return m;
}

Vec FourierCoefficients::evaluate(double t) const {
  Vec out = Vec::Zero(dim_);
  for (const auto& [k, v] : entries_)
    out += std::polar(1.0, static_cast<double>(k) * t) * v;
  return out;
}

FourierCoefficients FourierCoefficients::delayed(double r) const {
  FourierCoefficients out(dim_);
  for (const auto& [k, v] : entries_)
    out.set(k, std::polar(1.0, -static_cast<double>(k) * r) * v);
  return out;
}

FourierCoefficients FourierCoefficients::differentiated() const {
  FourierCoefficients out(dim_);
  for (const auto& [k, v] : entries_)
    out.set(k, Cplx(0.0, static_cast<double>(k)) * v);
  return out;
}

bool FourierCoefficients::is_real(double tol) const {
  for (const auto& [k, v] : entries_) {
    Vec mirror = at(-k);
    if ((v - mirror.conjugate()).norm() > tol) return false;
  }
  return true;
}

void FourierCoefficients::prune(double tol) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.norm() <= tol)
      it = entries_.erase(it);
    else
      ++it;
  }
}

double FourierCoefficients::coeff_norm_sum() const {
  double s = 0.0;
  for (const auto& [k, v] : entries_) s += v.norm();
  return s;
}

}  // namespace pdde
