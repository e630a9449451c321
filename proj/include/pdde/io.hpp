#pragma once

// Problem/solution document handling. Parsing is strict: unknown keys are
// rejected at every level so a typo cannot silently change a run. All
// numbers are emitted with 17 significant digits, which round-trips doubles
// exactly and keeps reports byte-stable.

#include <cstdint>
#include <optional>
#include <string>

#include "pdde/fourier.hpp"
#include "pdde/oracle.hpp"

namespace pdde {

struct OracleOptions {
  int periods = 30;
  double dt = 1e-3;
};

struct ProblemOptions {
  std::optional<long> truncation;
  double tolerance = 1e-6;
  std::uint64_t seed = 12345;
  int quad_panels = 2048;
  OracleOptions oracle;
};

struct ProblemFile {
  RawProblem raw;
  bool forcing_from_samples = false;
  FourierCoefficients forcing_modes{0};
  SampledSignal forcing_samples;
  ProblemOptions options;
};

struct SolutionDoc {
  Eigen::Index dim = 0;
  long truncation = 0;
  FourierCoefficients coeffs{0};
  double residual_sup = 0.0;
};

ProblemFile parse_problem(const std::string& text);  // throws Error(SchemaError)
ProblemFile load_problem(const std::string& path);
SolutionDoc parse_solution(const std::string& text);
SolutionDoc load_solution(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// %.17g
std::string fmt17(double v);
std::string json_escape(const std::string& s);
std::string cplx_json(Cplx z);  // {"re":...,"im":...}

// t,x1_re,x1_im,... on the uniform M-grid.
std::string solution_csv(const FourierCoefficients& coeffs, int M);

// comparison-grid nodes of the whole run, t >= 0.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace pdde
