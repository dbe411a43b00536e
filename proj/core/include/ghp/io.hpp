#pragma once

#include <string>
#include <vector>

#include "ghp/ghp.hpp"
#include "ghp/space.hpp"
#include "ghp/tree_coding.hpp"

namespace ghp {

/// Space JSON: {"labels": [...], "root": i, "distances": [[...]], "masses": [...]}.
/// Labels may be strings or integers and default to "0".."n-1"; root defaults to 0,
/// masses to zeros. Unknown keys are ignored. Throws InputError on malformed
/// input and ValidationError when invariants fail.
Space parse_space(const std::string& text);
Space read_space(const std::string& path);

/// Canonical form: sorted keys, shortest round-trip decimals, trailing newline.
std::string serialize_space(const Space& space);
void write_space(const Space& space, const std::string& path);

/// JSON {"grid": [...], "values": [...]} or two-column CSV (an optional header row is skipped).
SampledFunction parse_function(const std::string& text);
SampledFunction read_function(const std::string& path);
std::string serialize_function(const SampledFunction& f);

/// Header "r_lo,r_hi,lower,upper" then one row per interval; the last r_hi is "inf".
std::string curve_csv(const std::vector<CurveSegment>& curve);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Named tolerances used across the library and the suites.
struct Tolerances {
    double triangle_rel = 1e-9;
    double cross_rel = 1e-9;
    double certify_rel = 1e-6;
    double quotient_rel = 1e-12;
    double four_point_rel = 1e-9;
    double oracle_abs = 1e-9;
    double quadrature_abs = 1e-6;
};

/// Applies a JSON object of field overrides; throws InputError on unknown keys or nonpositive values.
Tolerances apply_tolerance_overrides(Tolerances base, const std::string& json_text);

/// Defaults, overridden by the JSON object in the GHP_TOLERANCES environment variable when set.
Tolerances load_tolerances();

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace ghp
