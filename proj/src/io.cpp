#include "pdde/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pdde {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Errc::SchemaError, where + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (required.count(key) == 0 && optional.count(key) == 0)
      fail(where, "unknown key '" + key + "'");
  }
  for (const auto& key : required)
    if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

long get_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

Cplx get_pair(const json& j, const std::string& where) {
  check_keys(j, {"re", "im"}, {}, where);
  return {get_number(j.at("re"), where + ".re"), get_number(j.at("im"), where + ".im")};
}

Vec get_vector(const json& j, Eigen::Index d, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d)
    fail(where, "expected an array of " + std::to_string(d) + " {re,im} pairs");
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i)
    v(i) = get_pair(j.at(static_cast<std::size_t>(i)), where + "[" + std::to_string(i) + "]");
  return v;
}

// Row-major flat array of d*d pairs; nested d x d rows also accepted.
Mat get_matrix(const json& j, Eigen::Index d, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  Mat m(d, d);
  if (j.size() > 0 && j.at(0).is_array()) {
    if (static_cast<Eigen::Index>(j.size()) != d) fail(where, "expected " + std::to_string(d) + " rows");
    for (Eigen::Index r = 0; r < d; ++r) {
      const json& row = j.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
        fail(where, "row " + std::to_string(r) + " must hold " + std::to_string(d) + " pairs");
      for (Eigen::Index c = 0; c < d; ++c)
        m(r, c) = get_pair(row.at(static_cast<std::size_t>(c)),
                           where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
  }
  if (static_cast<Eigen::Index>(j.size()) != d * d)
    fail(where, "expected " + std::to_string(d * d) + " pairs (row-major)");
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = get_pair(j.at(static_cast<std::size_t>(r * d + c)),
                         where + "[" + std::to_string(r * d + c) + "]");
  return m;
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("document", "malformed syntax");
  return j;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json j = parse_text(text);
  check_keys(j, {"dim", "A", "B", "delays", "forcing"}, {"options"}, "problem");

  const long dim = get_integer(j.at("dim"), "dim");
  if (dim <= 0) fail("dim", "must be a positive integer");
  const Eigen::Index d = static_cast<Eigen::Index>(dim);

  ProblemFile pf;
  pf.raw.dim = d;
  pf.raw.A = get_matrix(j.at("A"), d, "A");
  pf.raw.B = get_matrix(j.at("B"), d, "B");
  const json& jd = j.at("delays");
  if (!jd.is_array()) fail("delays", "expected an array of reals");
  for (std::size_t i = 0; i < jd.size(); ++i)
    pf.raw.delays.push_back(get_number(jd.at(i), "delays[" + std::to_string(i) + "]"));

  const json& jf = j.at("forcing");
  check_keys(jf, {"type"}, {"modes", "count", "values"}, "forcing");
  const std::string type = jf.at("type").is_string() ? jf.at("type").get<std::string>() : "";
  if (type == "modes") {
    check_keys(jf, {"type", "modes"}, {}, "forcing");
    pf.forcing_modes = FourierCoefficients(d);
    const json& jm = jf.at("modes");
    if (!jm.is_array()) fail("forcing.modes", "expected an array");
    for (std::size_t i = 0; i < jm.size(); ++i) {
      const std::string where = "forcing.modes[" + std::to_string(i) + "]";
      const json& entry = jm.at(i);
      check_keys(entry, {"k", "v"}, {}, where);
      const long k = get_integer(entry.at("k"), where + ".k");
      if (pf.forcing_modes.has(k)) fail(where, "duplicate mode " + std::to_string(k));
      pf.forcing_modes.set(k, get_vector(entry.at("v"), d, where + ".v"));
    }
  } else if (type == "samples") {
    check_keys(jf, {"type", "count", "values"}, {}, "forcing");
    pf.forcing_from_samples = true;
    const long count = get_integer(jf.at("count"), "forcing.count");
    if (count < 1) fail("forcing.count", "must be >= 1");
    const json& jv = jf.at("values");
    if (!jv.is_array() || static_cast<long>(jv.size()) != count)
      fail("forcing.values", "expected exactly 'count' rows");
    pf.forcing_samples.dim = d;
    for (long i = 0; i < count; ++i)
      pf.forcing_samples.values.push_back(
          get_vector(jv.at(static_cast<std::size_t>(i)), d,
                     "forcing.values[" + std::to_string(i) + "]"));
    pf.forcing_modes = FourierCoefficients(d);
  } else {
    fail("forcing.type", "must be 'modes' or 'samples'");
  }

  if (j.contains("options")) {
    const json& jo = j.at("options");
    check_keys(jo, {}, {"truncation", "tolerance", "seed", "quad_panels", "oracle"}, "options");
    if (jo.contains("truncation")) {
      const long K = get_integer(jo.at("truncation"), "options.truncation");
      if (K < 0) fail("options.truncation", "must be >= 0");
      pf.options.truncation = K;
    }
    if (jo.contains("tolerance")) {
      const double tol = get_number(jo.at("tolerance"), "options.tolerance");
      if (!(tol > 0.0)) fail("options.tolerance", "must be > 0");
      pf.options.tolerance = tol;
    }
    if (jo.contains("seed")) {
      const long seed = get_integer(jo.at("seed"), "options.seed");
      if (seed < 0) fail("options.seed", "must be >= 0");
      pf.options.seed = static_cast<std::uint64_t>(seed);
    }
    if (jo.contains("quad_panels")) {
      const long qp = get_integer(jo.at("quad_panels"), "options.quad_panels");
      if (qp < 1) fail("options.quad_panels", "must be >= 1");
      pf.options.quad_panels = static_cast<int>(qp);
    }
    if (jo.contains("oracle")) {
      const json& jr = jo.at("oracle");
      check_keys(jr, {}, {"periods", "dt"}, "options.oracle");
      if (jr.contains("periods")) {
        const long p = get_integer(jr.at("periods"), "options.oracle.periods");
        if (p < 1) fail("options.oracle.periods", "must be >= 1");
        pf.options.oracle.periods = static_cast<int>(p);
      }
      if (jr.contains("dt")) {
        const double dt = get_number(jr.at("dt"), "options.oracle.dt");
        if (!(dt > 0.0)) fail("options.oracle.dt", "must be > 0");
        pf.options.oracle.dt = dt;
      }
    }
  }
  return pf;
}

ProblemFile load_problem(const std::string& path) { return parse_problem(read_file(path)); }

SolutionDoc parse_solution(const std::string& text) {
  json j = parse_text(text);
  check_keys(j, {"dim", "truncation", "coefficients"},
             {"command", "residual_sup", "forced", "singular_modes", "timestamp"}, "solution");
  const long dim = get_integer(j.at("dim"), "dim");
  if (dim <= 0) fail("dim", "must be a positive integer");
  SolutionDoc doc;
  doc.dim = static_cast<Eigen::Index>(dim);
  doc.truncation = get_integer(j.at("truncation"), "truncation");
  if (doc.truncation < 0) fail("truncation", "must be >= 0");
  doc.coeffs = FourierCoefficients(doc.dim);
  const json& jc = j.at("coefficients");
  if (!jc.is_array()) fail("coefficients", "expected an array");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string where = "coefficients[" + std::to_string(i) + "]";
    const json& entry = jc.at(i);
    check_keys(entry, {"k", "v"}, {}, where);
    const long k = get_integer(entry.at("k"), where + ".k");
    if (doc.coeffs.has(k)) fail(where, "duplicate mode " + std::to_string(k));
    doc.coeffs.set(k, get_vector(entry.at("v"), doc.dim, where + ".v"));
  }
  if (j.contains("residual_sup"))
    doc.residual_sup = get_number(j.at("residual_sup"), "residual_sup");
  return doc;
}

SolutionDoc load_solution(const std::string& path) { return parse_solution(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SchemaError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::SchemaError, "cannot write '" + path + "'");
  out << content;
  if (!out.good()) throw Error(Errc::SchemaError, "short write to '" + path + "'");
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string cplx_json(Cplx z) {
  return "{\"re\":" + fmt17(z.real()) + ",\"im\":" + fmt17(z.imag()) + "}";
}

std::string solution_csv(const FourierCoefficients& coeffs, int M) {
  if (M < 1) throw Error(Errc::WindowTooSmall, "need at least one sample");
  const Eigen::Index d = coeffs.dim();
  std::string out = "t";
  for (Eigen::Index i = 0; i < d; ++i) {
    out += ",x" + std::to_string(i + 1) + "_re,x" + std::to_string(i + 1) + "_im";
  }
  out += "\n";
  SampledSignal s = synthesize(coeffs, M);
  for (int m = 0; m < M; ++m) {
    out += fmt17(kPeriod * m / M);
    for (Eigen::Index i = 0; i < d; ++i) {
      out += "," + fmt17(s.values[m](i).real()) + "," + fmt17(s.values[m](i).imag());
    }
    out += "\n";
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  const Eigen::Index d = traj.history_value.size();
  std::string out = "t";
  for (Eigen::Index i = 0; i < d; ++i) {
    out += ",x" + std::to_string(i + 1) + "_re,x" + std::to_string(i + 1) + "_im";
  }
  out += "\n";
  const long stride = traj.steps_per_period / traj.compare_grid;
  const long total = static_cast<long>(traj.values.size()) - 1;
  for (long i = traj.history_len; i <= total; i += stride) {
    out += fmt17(traj.time_at(i));
    for (Eigen::Index c = 0; c < d; ++c) {
      out += "," + fmt17(traj.values[static_cast<std::size_t>(i)](c).real()) + "," +
             fmt17(traj.values[static_cast<std::size_t>(i)](c).imag());
    }
    out += "\n";
  }
  return out;
}

}  // namespace pdde
