#include "cubehc/report.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "cubehc/errors.hpp"

namespace cubehc {
namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

Json named_to_json(const NamedValues& values) {
  Json j = Json::object();
  for (const auto& [k, v] : values) j[k] = v;
  return j;
}

// JSON has no NaN/inf; emit them as strings so reports stay parseable.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    for (int s = 18; s >= 0; s -= 6) out.push_back(kAlphabet[(v >> s) & 63]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest > 0) {
    std::uint32_t v = bytes[i] << 16;
    if (rest == 2) v |= bytes[i + 1] << 8;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(rest == 2 ? kAlphabet[(v >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  if (text.size() % 4 != 0) throw InvalidInput("base64 length must be a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::array<int, 4> v{};
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=' && i + 4 == text.size() && k >= 2) {
        v[k] = 0;
        ++pad;
      } else {
        if (pad > 0) throw InvalidInput("base64 padding in the middle of a block");
        v[k] = decode_char(c);
        if (v[k] < 0) throw InvalidInput(std::string("invalid base64 character '") + c + "'");
      }
    }
    const std::uint32_t w = (v[0] << 18) | (v[1] << 12) | (v[2] << 6) | v[3];
    out.push_back(static_cast<std::uint8_t>(w >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(w >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(w));
  }
  return out;
}

std::string encode_coefficients(const CubeFunction& f) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(f.size() * 16);
  auto put = [&](double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int k = 0; k < 8; ++k) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
  };
  for (const auto& c : f.coefficients()) {
    put(c.real());
    put(c.imag());
  }
  return base64_encode(bytes);
}

CubeFunction decode_coefficients(const std::string& text) {
  const auto bytes = base64_decode(text);
  if (bytes.size() % 16 != 0) throw InvalidInput("coefficient block is not a whole number of complex doubles");
  auto get = [&](std::size_t off) {
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[off + k]) << (8 * k);
    return std::bit_cast<double>(bits);
  };
  std::vector<Complex> coeffs(bytes.size() / 16);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = {get(16 * i), get(16 * i + 8)};
  return CubeFunction::from_coefficients(std::move(coeffs));
}

Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw InvalidInput("expected a complex number 're,im', got '" + text + "'");
  char comma = 0;
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw InvalidInput("expected a complex number 're,im', got '" + text + "'");
    std::string rest;
    if (in >> rest) throw InvalidInput("trailing characters in complex number '" + text + "'");
  }
  return {re, im};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InvalidInput("expected [re, im], got " + j.dump());
}

Json report_to_json(const VerificationReport& r, bool include_timing) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["inequality"] = r.inequality;
  j["fixed"] = named_to_json(r.fixed);
  Json axes = Json::array();
  for (const auto& ax : r.grid.axes) {
    axes.push_back({{"name", ax.name}, {"min", ax.min}, {"max", ax.max}, {"count", ax.count}, {"integer", ax.integer}});
  }
  j["grid"] = {{"axes", axes}, {"refine", r.grid.refine}, {"refine_width", r.grid.refine_width}};
  j["evaluated"] = r.evaluated;
  j["worst_margin"] = number(r.worst_margin);
  j["witness"] = named_to_json(r.witness);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["expect_violation"] = r.expect_violation;
  j["as_expected"] = r.as_expected();
  j["note"] = r.note;
  if (include_timing) j["seconds"] = r.seconds;
  return j;
}

Json search_to_json(double p, double q, Complex z, const SearchConfig& cfg, const SearchResult& res) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["p"] = p;
  j["q"] = q;
  j["z"] = complex_to_json(z);
  j["n"] = cfg.n;
  j["restarts"] = cfg.restarts;
  j["steps"] = cfg.steps;
  j["seed"] = cfg.seed;
  j["best_ratio"] = number(res.best_ratio);
  j["violation"] = res.best_ratio > 1.0 + 1e-8;
  j["restart"] = res.restart;
  j["evaluations"] = res.evaluations;
  j["witness"] = {{"n", res.witness.dimension()},
                  {"encoding", "base64 little-endian float64, (re, im) per coefficient"},
                  {"coefficients", encode_coefficients(res.witness)}};
  return j;
}

MomentProblem problem_from_json(const Json& j) {
  try {
    MomentProblem prob;
    prob.p = j.at("p").get<double>();
    prob.q = j.value("q", prob.p);
    prob.d = j.at("d").get<int>();
    for (const auto& v : j.at("phi")) prob.phi.push_back(complex_from_json(v));
    prob.M = j.value("M", 0);
    prob.real_only = j.value("real_only", false);
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      prob.gap_tolerance = t.value("gap", prob.gap_tolerance);
      prob.feasibility_tolerance = t.value("feasibility", prob.feasibility_tolerance);
    }
    prob.validate();
    return prob;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed problem file: ") + e.what());
  }
}

Json problem_to_json(const MomentProblem& prob) {
  Json j;
  j["p"] = prob.p;
  j["q"] = prob.q;
  j["d"] = prob.d;
  Json phi = Json::array();
  for (const auto& v : prob.phi) phi.push_back(complex_to_json(v));
  j["phi"] = phi;
  j["M"] = prob.boundary_points();
  j["real_only"] = prob.real_only;
  j["tolerances"] = {{"gap", prob.gap_tolerance}, {"feasibility", prob.feasibility_tolerance}};
  return j;
}

Json solution_to_json(const MomentProblem& prob, const NormSandwich& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["lower"] = s.lower;
  j["upper"] = s.upper;
  j["gap"] = s.gap;
  Json atoms = Json::array();
  for (const auto& a : s.measure.atoms) atoms.push_back({a.z.real(), a.z.imag(), a.weight.real(), a.weight.imag()});
  j["atoms"] = atoms;
  Json dual = Json::array();
  for (const auto& a : s.dual.a) dual.push_back(complex_to_json(a));
  j["dual_polynomial"] = dual;
  j["moment_residual"] = s.measure.moment_residual(prob.phi);
  j["rounds"] = s.rounds;
  j["problem"] = problem_to_json(prob);
  return j;
}

AtomicMeasure measure_from_json(const Json& j) {
  AtomicMeasure m;
  try {
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 4) throw InvalidInput("atom must be [re, im, wre, wim]");
      m.atoms.push_back({{a[0].get<double>(), a[1].get<double>()}, {a[2].get<double>(), a[3].get<double>()}});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed solution file: ") + e.what());
  }
  return m;
}

}  // namespace cubehc
