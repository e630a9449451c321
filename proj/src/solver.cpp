#include "pdde/solver.hpp"

#include "pdde/fourier.hpp"
#include "pdde/kernels.hpp"

namespace pdde {

PeriodicSolution solve(const DelaySystem& sys, const FourierCoefficients& f, long K) {
  if (f.dim() != sys.dim()) throw Error(Errc::DimensionMismatch, "forcing dimension mismatch");
  const long need = f.max_mode();
  if (K < need)
    throw Error(Errc::TruncationTooSmall, "truncation " + std::to_string(K) +
                                              " below forcing bandwidth " + std::to_string(need));

  PeriodicSolution sol{FourierCoefficients(sys.dim()), FourierCoefficients(sys.dim()), K, 0.0};
  std::vector<long> obstructed;
  for (const auto& [k, fk] : f.entries()) {
    if (fk.norm() == 0.0) continue;
    SymbolEntry e = assemble_delta(sys, k);
    if (!e.invertible) {
      obstructed.push_back(k);
      continue;
    }
    sol.coeffs.set(k, e.factor.solve(fk));
  }
  if (!obstructed.empty())
    throw ModeError(Errc::SingularMode, "forcing meets singular symbol", obstructed);

  sol.deriv_coeffs = sol.coeffs.differentiated();
  const int M = static_cast<int>(4 * (2 * K + 1));
  sol.residual_sup = residual(sys, sol, f, M);
  return sol;
}

double residual(const DelaySystem& sys, const PeriodicSolution& sol,
                const FourierCoefficients& f, int M) {
  if (M < 1) throw Error(Errc::WindowTooSmall, "need at least one grid point");
  SampledSignal x = synthesize(sol.coeffs, M);
  SampledSignal xp = synthesize(sol.deriv_coeffs, M);
  SampledSignal fg = synthesize(f, M);
  std::vector<SampledSignal> xd;
  xd.reserve(sys.delays().size());
  for (double r : sys.delays()) xd.push_back(synthesize(sol.coeffs.delayed(r), M));

  std::vector<double> defect(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    Vec dm = xp.values[m] - sys.A() * x.values[m] - fg.values[m];
    for (std::size_t j = 0; j < xd.size(); ++j) dm -= sys.B() * xd[j].values[m];
    defect[m] = dm.norm();
  }
  return kernels::vmax(defect.data(), defect.size());
}

std::optional<HomogeneousMode> homogeneous_mode(const DelaySystem& sys, long k) {
  SymbolEntry e = assemble_delta(sys, k);
  if (e.invertible) return std::nullopt;
  HomogeneousMode hm;
  hm.k = k;
  hm.direction = e.factor.V.col(sys.dim() - 1);  // right singular vector of sigma_min

  PeriodicSolution probe{FourierCoefficients(sys.dim()), FourierCoefficients(sys.dim()),
                         std::labs(k), 0.0};
  probe.coeffs.set(k, hm.direction);
  probe.deriv_coeffs = probe.coeffs.differentiated();
  FourierCoefficients zero(sys.dim());
  const int M = static_cast<int>(4 * (2 * std::labs(k) + 1));
  hm.defect = residual(sys, probe, zero, M);
  return hm;
}

}  // namespace pdde
