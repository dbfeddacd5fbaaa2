#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cubehc/cube_function.hpp"
#include "cubehc/multiplier.hpp"
#include "cubehc/oracle.hpp"
#include "cubehc/scan.hpp"

namespace cubehc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// "%.17g"; round-trips every finite double.
std::string format_double(double v);

/// RFC 4648 base64 with padding.
std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

/// Coefficients as interleaved (re, im) little-endian IEEE doubles, base64.
std::string encode_coefficients(const CubeFunction& f);
CubeFunction decode_coefficients(const std::string& text);

/// Parses "re,im" or a bare real number.
Complex parse_complex(const std::string& text);

Json complex_to_json(Complex z);  // [re, im]
Complex complex_from_json(const Json& j);

/// Keys in order: schema, inequality, fixed, grid, evaluated, worst_margin,
/// witness, tolerance, pass, expect_violation, as_expected, note, seconds.
Json report_to_json(const VerificationReport& r, bool include_timing = true);

Json search_to_json(double p, double q, Complex z, const SearchConfig& cfg, const SearchResult& res);

MomentProblem problem_from_json(const Json& j);
Json problem_to_json(const MomentProblem& prob);

/// {schema, lower, upper, gap, atoms: [[re, im, wre, wim], ...], ...}
Json solution_to_json(const MomentProblem& prob, const NormSandwich& s);
AtomicMeasure measure_from_json(const Json& j);

}  // namespace cubehc
