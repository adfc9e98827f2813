#include "logpoly/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

namespace logpoly {

using nlohmann::json;

namespace {

std::vector<Complex> parse_coeffs(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw SchemaError(where + ": expected an array of [re, im] pairs");
  if (arr.empty()) throw SchemaError(where + ": coefficient array must be nonempty");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw SchemaError(where + "[" + std::to_string(i) + "]: expected [re, im] numbers");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

AnalyticSeries parse_series(const json& arr, int cap, const std::string& where) {
  std::vector<Complex> c = parse_coeffs(arr, where);
  if (c.size() > static_cast<std::size_t>(cap) + 1) {
    throw SchemaError(where + ": " + std::to_string(c.size()) + " coefficients exceed degree_cap " +
                      std::to_string(cap));
  }
  try {
    return AnalyticSeries(std::move(c), cap);
  } catch (const Error& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

HarmonicLogMap parse_harmonic(const json& obj, int cap, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object with keys a, b");
  for (const char* key : {"a", "b"}) {
    if (!obj.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
  }
  return HarmonicLogMap(parse_series(obj["a"], cap, where + ".a"),
                        parse_series(obj["b"], cap, where + ".b"));
}

json series_json(const AnalyticSeries& s) {
  json arr = json::array();
  const int last = std::max(0, s.degree());
  for (int n = 0; n <= last; ++n) arr.push_back({s[n].real(), s[n].imag()});
  return arr;
}

json harmonic_json(const HarmonicLogMap& g) {
  return {{"a", series_json(g.a())}, {"b", series_json(g.b())}};
}

}  // namespace

MappingSpecFile::MappingSpecFile(AnalyticSeries log_f, AnalyticSeries log_h,
                                 std::optional<HarmonicLogMap> log_G, std::vector<Complex> lambdas,
                                 std::optional<PolyharmonicSpec> parts)
    : log_f_(std::move(log_f)),
      log_h_(std::move(log_h)),
      log_G_(std::move(log_G)),
      lambdas_(std::move(lambdas)),
      parts_(std::move(parts)) {
  if (!parts_ && !has_lphg()) {
    throw SchemaError("spec needs either log_G and lambda, or parts");
  }
  const int cap = log_f_.degree_cap();
  if (log_h_.degree_cap() != cap || (log_G_ && log_G_->degree_cap() != cap) ||
      (parts_ && parts_->degree_cap() != cap)) {
    throw SchemaError("inconsistent degree caps");
  }
}

MappingSpecFile::MappingSpecFile(const LPHGSpec& spec)
    : MappingSpecFile(spec.log_f(), spec.log_h(), spec.log_G(), spec.lambdas(), std::nullopt) {}

LPHGSpec MappingSpecFile::lphg() const {
  if (!has_lphg()) throw SchemaError("spec has no log_G/lambda section");
  return LPHGSpec(log_f_, log_h_, *log_G_, lambdas_);
}

BiSeries MappingSpecFile::logF() const {
  if (parts_) {
    return BiSeries::embed(log_f_) + BiSeries::embed_anti(log_h_) + assemble_polyharmonic(*parts_);
  }
  return assemble_logF(lphg());
}

BiSeries MappingSpecFile::logG() const {
  if (!log_G_) throw SchemaError("spec has no log_G section");
  return log_G_->embed();
}

MappingSpecFile parse_spec(const json& doc) {
  if (!doc.is_object()) throw SchemaError("spec must be a JSON object");
  if (!doc.contains("degree_cap") || !doc["degree_cap"].is_number_integer()) {
    throw SchemaError("degree_cap: required integer");
  }
  const int cap = doc["degree_cap"].get<int>();
  if (cap < 1 || cap > kMaxDegreeCap) {
    throw SchemaError("degree_cap: must lie in [1, " + std::to_string(kMaxDegreeCap) + "]");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "degree_cap" && key != "log_f" && key != "log_h" && key != "log_G" &&
        key != "lambda" && key != "parts") {
      throw SchemaError("unknown key '" + key + "'");
    }
  }

  const json zero = json::array({json::array({0.0, 0.0})});
  AnalyticSeries log_f = parse_series(doc.value("log_f", zero), cap, "log_f");
  AnalyticSeries log_h = parse_series(doc.value("log_h", zero), cap, "log_h");

  std::optional<HarmonicLogMap> log_G;
  if (doc.contains("log_G")) log_G = parse_harmonic(doc["log_G"], cap, "log_G");

  std::vector<Complex> lambdas;
  if (doc.contains("lambda")) lambdas = parse_coeffs(doc["lambda"], "lambda");

  std::optional<PolyharmonicSpec> parts;
  if (doc.contains("parts")) {
    const json& arr = doc["parts"];
    if (!arr.is_array() || arr.empty()) throw SchemaError("parts: expected a nonempty array");
    std::vector<HarmonicLogMap> maps;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      maps.push_back(parse_harmonic(arr[i], cap, "parts[" + std::to_string(i) + "]"));
    }
    try {
      parts.emplace(std::move(maps));
    } catch (const Error& e) {
      throw SchemaError(std::string("parts: ") + e.what());
    }
  }

  if (!parts) {
    if (!log_G) throw SchemaError("log_G: required when parts is absent");
    if (lambdas.empty()) throw SchemaError("lambda: required when parts is absent");
  }
  if (!lambdas.empty() && static_cast<int>(lambdas.size()) - 1 > cap) {
    throw SchemaError("lambda: p - 1 exceeds degree_cap");
  }

  MappingSpecFile spec(std::move(log_f), std::move(log_h), std::move(log_G), std::move(lambdas),
                       std::move(parts));
  // Surface cap overflow of the assembled log F as a schema problem.
  try {
    (void)spec.logF();
  } catch (const DimensionError& e) {
    throw SchemaError(std::string("log F does not fit degree_cap: ") + e.what());
  }
  return spec;
}

MappingSpecFile parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return parse_spec(doc);
}

MappingSpecFile load_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

json to_json(const MappingSpecFile& spec) {
  json doc;
  doc["degree_cap"] = spec.degree_cap();
  doc["log_f"] = series_json(spec.log_f());
  doc["log_h"] = series_json(spec.log_h());
  if (spec.log_G()) doc["log_G"] = harmonic_json(*spec.log_G());
  if (!spec.lambdas().empty()) {
    json arr = json::array();
    for (Complex l : spec.lambdas()) arr.push_back({l.real(), l.imag()});
    doc["lambda"] = arr;
  }
  if (spec.parts()) {
    json arr = json::array();
    for (const auto& g : spec.parts()->parts()) arr.push_back(harmonic_json(g));
    doc["parts"] = arr;
  }
  return doc;
}

}  // namespace logpoly
