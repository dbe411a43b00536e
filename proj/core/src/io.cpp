#include "ghp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ghp/error.hpp"

namespace ghp {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        for (const char* bad : {"NaN", "nan", "Infinity", "inf"})
            if (text.find(bad) != std::string::npos)
                throw InputError(std::string(what) + ": non-finite numbers (NaN/Infinity) are not allowed");
        throw InputError(std::string(what) + ": malformed JSON: " + e.what());
    }
}

double number_at(const json& v, const std::string& where) {
    if (v.is_null()) throw InputError(where + " is null (non-finite values such as NaN are not allowed)");
    if (!v.is_number()) throw InputError(where + " is not a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(where + " is not finite");
    return d;
}

std::vector<double> number_array(const json& v, const std::string& where) {
    if (!v.is_array()) throw InputError(where + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_at(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const char* skip_space(const char* p, const char* end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("failed writing " + path);
}

Space parse_space(const std::string& text) {
    const json doc = parse_json(text, "space");
    if (!doc.is_object()) throw InputError("space: top level must be an object");
    if (!doc.contains("distances")) throw InputError("space: missing \"distances\"");
    const json& rows = doc.at("distances");
    if (!rows.is_array()) throw InputError("space: \"distances\" must be an array of rows");
    RawSpace raw;
    for (std::size_t i = 0; i < rows.size(); ++i)
        raw.distances.push_back(number_array(rows[i], "distances[" + std::to_string(i) + "]"));
    const std::size_t n = raw.distances.size();
    if (doc.contains("labels")) {
        const json& labels = doc.at("labels");
        if (!labels.is_array()) throw InputError("space: \"labels\" must be an array");
        for (const json& l : labels) {
            if (l.is_string())
                raw.labels.push_back(l.get<std::string>());
            else if (l.is_number_integer())
                raw.labels.push_back(std::to_string(l.get<std::int64_t>()));
            else
                throw InputError("space: labels must be strings or integers");
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) raw.labels.push_back(std::to_string(i));
    }
    if (doc.contains("root")) {
        if (!doc.at("root").is_number_integer()) throw InputError("space: \"root\" must be an integer index");
        raw.root = doc.at("root").get<std::int64_t>();
    }
    raw.masses = doc.contains("masses") ? number_array(doc.at("masses"), "masses") : std::vector<double>(n, 0.0);
    return Space::from_raw(raw);
}

Space read_space(const std::string& path) { return parse_space(read_text(path)); }

std::string serialize_space(const Space& space) {
    const RawSpace raw = space.to_raw();
    json doc;
    doc["labels"] = raw.labels;
    doc["root"] = raw.root;
    doc["distances"] = raw.distances;
    doc["masses"] = raw.masses;
    return doc.dump() + "\n";
}

void write_space(const Space& space, const std::string& path) { write_text(path, serialize_space(space)); }

SampledFunction parse_function(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    SampledFunction f;
    if (first != std::string::npos && text[first] == '{') {
        const json doc = parse_json(text, "function");
        if (!doc.contains("grid") || !doc.contains("values"))
            throw InputError("function: expected keys \"grid\" and \"values\"");
        f.grid = number_array(doc.at("grid"), "grid");
        f.values = number_array(doc.at("values"), "values");
    } else {
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const char* p = skip_space(line.data(), line.data() + line.size());
            const char* end = line.data() + line.size();
            if (p == end) continue;
            double t = 0.0, v = 0.0;
            auto r1 = std::from_chars(p, end, t);
            if (r1.ec != std::errc{}) {
                if (f.grid.empty() && lineno == 1) continue;  // header row
                throw InputError("function CSV: cannot parse line " + std::to_string(lineno));
            }
            p = skip_space(r1.ptr, end);
            if (p == end || *p != ',') throw InputError("function CSV: expected two columns on line " + std::to_string(lineno));
            p = skip_space(p + 1, end);
            auto r2 = std::from_chars(p, end, v);
            if (r2.ec != std::errc{}) throw InputError("function CSV: cannot parse line " + std::to_string(lineno));
            f.grid.push_back(t);
            f.values.push_back(v);
        }
    }
    check_function(f);
    return f;
}

SampledFunction read_function(const std::string& path) { return parse_function(read_text(path)); }

std::string serialize_function(const SampledFunction& f) {
    json doc;
    doc["grid"] = f.grid;
    doc["values"] = f.values;
    return doc.dump() + "\n";
}

std::string curve_csv(const std::vector<CurveSegment>& curve) {
    std::string out = "r_lo,r_hi,lower,upper\n";
    for (const auto& seg : curve) {
        out += format_double(seg.r_lo) + "," + (std::isinf(seg.r_hi) ? std::string("inf") : format_double(seg.r_hi)) +
               "," + format_double(seg.bound.lower) + "," + format_double(seg.bound.upper) + "\n";
    }
    return out;
}

Tolerances apply_tolerance_overrides(Tolerances t, const std::string& json_text) {
    const json doc = parse_json(json_text, "tolerances");
    if (!doc.is_object()) throw InputError("tolerances: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        double* slot = key == "triangle_rel"     ? &t.triangle_rel
                       : key == "cross_rel"      ? &t.cross_rel
                       : key == "certify_rel"    ? &t.certify_rel
                       : key == "quotient_rel"   ? &t.quotient_rel
                       : key == "four_point_rel" ? &t.four_point_rel
                       : key == "oracle_abs"     ? &t.oracle_abs
                       : key == "quadrature_abs" ? &t.quadrature_abs
                                                 : nullptr;
        if (!slot) throw InputError("tolerances: unknown key \"" + key + "\"");
        const double v = number_at(value, "tolerances." + key);
        if (!(v > 0.0)) throw InputError("tolerances." + key + " must be strictly positive");
        *slot = v;
    }
    return t;
}

Tolerances load_tolerances() {
    const char* env = std::getenv("GHP_TOLERANCES");
    if (!env || !*env) return {};
    return apply_tolerance_overrides({}, env);
}

}  // namespace ghp
