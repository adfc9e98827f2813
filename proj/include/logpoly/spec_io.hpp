#ifndef LOGPOLY_SPEC_IO_HPP
#define LOGPOLY_SPEC_IO_HPP

// JSON mapping specification files.
//
//   {
//     "degree_cap": 32,
//     "log_f":  [[re, im], ...],            optional, defaults to [[0, 0]]
//     "log_h":  [[re, im], ...],            optional, defaults to [[0, 0]]
//     "log_G":  {"a": [[re, im], ...], "b": [[re, im], ...]},
//     "lambda": [[re, im], ...],
//     "parts":  [{"a": ..., "b": ...}, ...] optional
//   }
//
// Without "parts" the file describes a member of L_pH(G) and "log_G" and
// "lambda" are required.  With "parts" it describes a raw log-polyharmonic
// mapping log F = log f + log h(zbar) + sum_k |z|^{2(k-1)} G_k, and "log_G" /
// "lambda" become optional.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "logpoly/mappings.hpp"

namespace logpoly {

/// Malformed or schema-violating specification input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class MappingSpecFile {
 public:
  MappingSpecFile(AnalyticSeries log_f, AnalyticSeries log_h, std::optional<HarmonicLogMap> log_G,
                  std::vector<Complex> lambdas, std::optional<PolyharmonicSpec> parts);

  /// Convenience for an L_pH(G) member.
  explicit MappingSpecFile(const LPHGSpec& spec);

  int degree_cap() const { return log_f_.degree_cap(); }
  const AnalyticSeries& log_f() const { return log_f_; }
  const AnalyticSeries& log_h() const { return log_h_; }
  const std::optional<HarmonicLogMap>& log_G() const { return log_G_; }
  const std::vector<Complex>& lambdas() const { return lambdas_; }
  const std::optional<PolyharmonicSpec>& parts() const { return parts_; }

  bool has_lphg() const { return log_G_.has_value() && !lambdas_.empty(); }
  /// SchemaError unless log_G and lambda are present.
  LPHGSpec lphg() const;

  /// The series of log F (raw parts take precedence over log_G/lambda).
  BiSeries logF() const;
  /// SchemaError unless log_G is present.
  BiSeries logG() const;

 private:
  AnalyticSeries log_f_;
  AnalyticSeries log_h_;
  std::optional<HarmonicLogMap> log_G_;
  std::vector<Complex> lambdas_;
  std::optional<PolyharmonicSpec> parts_;
};

/// All structural problems surface as SchemaError.
MappingSpecFile parse_spec(const nlohmann::json& doc);
MappingSpecFile parse_spec_text(const std::string& text);
MappingSpecFile load_spec_file(const std::filesystem::path& path);

/// Canonical serialisation: trailing zero coefficients are trimmed to the
/// series degree (one [0,0] entry for the zero series).
nlohmann::json to_json(const MappingSpecFile& spec);

}  // namespace logpoly

#endif  // LOGPOLY_SPEC_IO_HPP
