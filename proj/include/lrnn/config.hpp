#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lrnn/assembly.hpp"
#include "lrnn/basis.hpp"
#include "lrnn/error.hpp"
#include "lrnn/linsolve.hpp"
#include "lrnn/mesh.hpp"

namespace lrnn {

// ---------------------------------------------------------------------------------------
// Flat TOML subset: [table] headers, key = value, strings, integers, floats, booleans and
// single-line arrays of those. Keys inside a table are stored as "table.key".

struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, TomlArray> data;
  int line = 0;

  bool is_number() const { return std::holds_alternative<std::int64_t>(data) || std::holds_alternative<double>(data); }
};

using TomlTable = std::map<std::string, TomlValue>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline bool bare_key(std::string_view k) {
  if (k.empty()) return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

/// Drops a trailing comment that is not inside a string.
inline std::string_view strip_comment(std::string_view s) {
  char quote = 0;  // open string delimiter
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && quote == '"') {
      ++i;
    } else if ((s[i] == '"' || s[i] == '\'') && (!quote || quote == s[i])) {
      quote = quote ? 0 : s[i];
    } else if (s[i] == '#' && !quote) {
      return s.substr(0, i);
    }
  }
  return s;
}

class ValueParser {
 public:
  ValueParser(std::string_view text, int line) : s_(text), line_(line) {}

  TomlValue parse_all() {
    TomlValue v = value();
    skip_ws();
    if (pos_ != s_.size()) parse_fail(line_, "unexpected text after value");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  TomlValue value() {
    skip_ws();
    if (pos_ >= s_.size()) parse_fail(line_, "missing value");
    const char c = s_[pos_];
    if (c == '"') return {string(), line_};
    if (c == '\'') return {literal_string(), line_};
    if (c == '[') return {array(), line_};
    return scalar();
  }

  std::string string() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      char c = s_[pos_++];
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: parse_fail(line_, std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) parse_fail(line_, "unterminated string");
    ++pos_;
    return out;
  }

  // 'text': no escapes
  std::string literal_string() {
    const std::size_t end = s_.find('\'', pos_ + 1);
    if (end == std::string_view::npos) parse_fail(line_, "unterminated string");
    std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }

  TomlArray array() {
    ++pos_;
    TomlArray out;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(value());
      skip_ws();
      if (pos_ >= s_.size()) parse_fail(line_, "unterminated array");
      if (s_[pos_] == ',') {
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return out;
        }
        continue;
      }
      if (s_[pos_] == ']') {
        ++pos_;
        return out;
      }
      parse_fail(line_, "expected ',' or ']' in array");
    }
  }

  TomlValue scalar() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
    std::string tok(s_.substr(start, pos_ - start));
    if (tok == "true") return {true, line_};
    if (tok == "false") return {false, line_};
    std::erase(tok, '_');
    if (tok == "inf" || tok == "+inf") return {std::numeric_limits<double>::infinity(), line_};
    if (tok == "-inf") return {-std::numeric_limits<double>::infinity(), line_};
    if (tok == "nan" || tok == "+nan" || tok == "-nan") return {std::numeric_limits<double>::quiet_NaN(), line_};
    const std::string_view body = !tok.empty() && tok.front() == '+' ? std::string_view(tok).substr(1) : tok;
    const bool is_float = body.find_first_of(".eE") != std::string_view::npos;
    if (!is_float) {
      std::int64_t i = 0;
      const auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), i);
      if (ec == std::errc() && p == body.data() + body.size()) return {i, line_};
    } else {
      double d = 0.0;
      const auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), d);
      if (ec == std::errc() && p == body.data() + body.size()) return {d, line_};
    }
    parse_fail(line_, "cannot parse value '" + tok + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

}  // namespace detail

inline TomlTable parse_toml(std::string_view text) {
  TomlTable out;
  std::string table;
  int line_no = 0;
  std::size_t at = 0;
  while (at <= text.size()) {
    const std::size_t nl = text.find('\n', at);
    const std::string_view raw = text.substr(at, nl == std::string_view::npos ? std::string_view::npos : nl - at);
    at = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.size() < 3 || line.back() != ']') detail::parse_fail(line_no, "malformed table header");
      const std::string_view name = detail::trim(line.substr(1, line.size() - 2));
      if (!detail::bare_key(name)) detail::parse_fail(line_no, "unsupported table name '" + std::string(name) + "'");
      table = std::string(name);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) detail::parse_fail(line_no, "expected key = value");
    const std::string_view key = detail::trim(line.substr(0, eq));
    if (!detail::bare_key(key)) detail::parse_fail(line_no, "invalid key '" + std::string(key) + "'");
    const std::string full = table.empty() ? std::string(key) : table + "." + std::string(key);
    if (out.count(full)) detail::parse_fail(line_no, "duplicate key '" + full + "'");
    out[full] = detail::ValueParser(line.substr(eq + 1), line_no).parse_all();
  }
  return out;
}

// ---------------------------------------------------------------------------------------
// Run configuration

enum class CaseId { Example1, Example2, Example3, Zero1d, Zero2d };

inline std::string_view to_string(CaseId c) {
  switch (c) {
    case CaseId::Example1: return "example1";
    case CaseId::Example2: return "example2";
    case CaseId::Example3: return "example3";
    case CaseId::Zero1d: return "zero1d";
    case CaseId::Zero2d: return "zero2d";
  }
  return "unknown";
}

inline ManufacturedCase make_case(CaseId c) {
  switch (c) {
    case CaseId::Example1: return example_1d();
    case CaseId::Example2: return example_2d();
    case CaseId::Example3: return example_3d();
    case CaseId::Zero1d: return zero_case(1);
    case CaseId::Zero2d: return zero_case(2);
  }
  fail(ErrorKind::ValidationError, "unknown case");
}

struct RunConfig {
  std::string name;
  CaseId case_id = CaseId::Example1;
  MethodConfig method;
  RnnConfig rnn;
  int time_slabs = 10;
  std::array<int, kMaxSpaceDim> cells{10, 10, 10};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  // Local spaces keep directions above reduce_tol * sigma_max (0 keeps the raw basis). When
  // the estimated system would exceed max_nonzeros, the tolerance is raised tenfold at a time.
  double reduce_tol = 1e-8;
  double max_nonzeros = 2.1e7;
  SolverOptions solver;
  std::optional<double> slice_time;
  std::vector<int> sample_resolution;  // empty: no sample grid
  std::string out_dir = "out";
  std::string csv_file = "results.csv";
  std::string samples_file = "samples.csv";
  std::string system_file;  // non-empty: dump the first seed's system here

  int dim() const { return make_case(case_id).domain.dim; }
};

/// Settings of the published experiments for a case and scheme.
inline void apply_preset(RunConfig& c) {
  const Scheme s = c.method.scheme;
  MethodConfig& m = c.method;
  auto colloc = [&m](int n) { m.colloc_spatial = m.colloc_temporal = m.colloc_initial = m.colloc_dirichlet = n; };
  c.slice_time.reset();
  switch (c.case_id) {
    case CaseId::Example1:
      m.quad_points = 15;
      m.beta1 = m.beta2 = 7.0;
      c.rnn.init_range = s == Scheme::LrnnDg ? 1.38 : 1.34;
      colloc(13);
      break;
    case CaseId::Example2:
      m.quad_points = 9;
      m.beta1 = m.beta2 = 5.0;
      c.rnn.init_range = s == Scheme::LrnnDg ? 0.6 : s == Scheme::LrnnC0Dg ? 0.57 : 0.44;
      colloc(s == Scheme::LrnnC1Dg ? 32 : 39);
      break;
    case CaseId::Example3:
      m.quad_points = 9;
      m.beta1 = m.beta2 = 42.0;
      c.rnn.init_range = s == Scheme::LrnnDg ? 0.25 : s == Scheme::LrnnC0Dg ? 0.16 : 0.17;
      colloc(s == Scheme::LrnnC1Dg ? 37 : 41);
      c.slice_time = 5.0;
      break;
    case CaseId::Zero1d:
    case CaseId::Zero2d:
      m.quad_points = 8;
      c.rnn.init_range = 1.0;
      colloc(8);
      break;
  }
}

inline void validate(const RunConfig& c) {
  auto bad = [](const std::string& field, const std::string& why) {
    fail(ErrorKind::ValidationError, field + ": " + why);
  };
  validate(c.method);
  if (c.rnn.neurons < 1) bad("M", "must be >= 1");
  if (!(c.rnn.init_range > 0.0) || !std::isfinite(c.rnn.init_range)) bad("r", "must be positive and finite");
  if (c.time_slabs < 1) bad("N_t", "must be >= 1");
  const int d = c.dim();
  for (int k = 0; k < d; ++k) {
    if (c.cells[k] < 1) bad("cells", "must be >= 1");
  }
  if (c.seeds.empty()) bad("seeds", "at least one seed required");
  if (!(c.reduce_tol >= 0.0 && c.reduce_tol < 1.0)) bad("reduce_tol", "must be in [0, 1)");
  if (!(c.max_nonzeros > 0.0)) bad("max_nonzeros", "must be positive");
  if (!(c.solver.rcond > 0.0 && c.solver.rcond < 1.0)) bad("rcond", "must be in (0, 1)");
  if (c.solver.dense_limit < 0) bad("dense_limit", "must be >= 0");
  if (c.slice_time) {
    const double t_end = make_case(c.case_id).final_time;
    if (!(*c.slice_time >= 0.0 && *c.slice_time <= t_end)) bad("slice_time", "must lie in [0, T]");
  }
  if (!c.sample_resolution.empty()) {
    if (static_cast<int>(c.sample_resolution.size()) != d + 1) bad("sample", "needs one entry per space-time axis");
    for (int r : c.sample_resolution) {
      if (r < 2) bad("sample", "entries must be >= 2");
    }
  }
  if (c.out_dir.empty()) bad("output.dir", "must not be empty");
}

namespace detail {

inline std::string type_error(const std::string& key, const char* want) { return key + ": expected " + want; }

inline double as_double(const std::string& key, const TomlValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v.data)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&v.data)) return *d;
  fail(ErrorKind::ValidationError, type_error(key, "a number"));
}

inline std::int64_t as_int(const std::string& key, const TomlValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v.data)) return *i;
  fail(ErrorKind::ValidationError, type_error(key, "an integer"));
}

inline int as_count(const std::string& key, const TomlValue& v) {
  const std::int64_t i = as_int(key, v);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) {
    fail(ErrorKind::ValidationError, key + ": out of range");
  }
  return static_cast<int>(i);
}

inline bool as_bool(const std::string& key, const TomlValue& v) {
  if (const auto* b = std::get_if<bool>(&v.data)) return *b;
  fail(ErrorKind::ValidationError, type_error(key, "true or false"));
}

inline const std::string& as_string(const std::string& key, const TomlValue& v) {
  if (const auto* s = std::get_if<std::string>(&v.data)) return *s;
  fail(ErrorKind::ValidationError, type_error(key, "a string"));
}

inline std::vector<std::int64_t> as_int_list(const std::string& key, const TomlValue& v) {
  std::vector<std::int64_t> out;
  if (const auto* a = std::get_if<TomlArray>(&v.data)) {
    for (const auto& e : *a) out.push_back(as_int(key, e));
  } else {
    out.push_back(as_int(key, v));
  }
  return out;
}

template <class Enum, std::size_t N>
Enum as_enum(const std::string& key, const TomlValue& v, const std::array<std::pair<std::string_view, Enum>, N>& names) {
  const std::string& s = as_string(key, v);
  for (const auto& [n, e] : names) {
    if (s == n) return e;
  }
  std::string allowed;
  for (const auto& [n, e] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
  fail(ErrorKind::ValidationError, key + ": unknown value '" + s + "' (expected one of " + allowed + ")");
}

inline constexpr std::array<std::pair<std::string_view, CaseId>, 5> kCaseNames{{
    {"example1", CaseId::Example1},
    {"example2", CaseId::Example2},
    {"example3", CaseId::Example3},
    {"zero1d", CaseId::Zero1d},
    {"zero2d", CaseId::Zero2d},
}};

inline constexpr std::array<std::pair<std::string_view, Scheme>, 3> kSchemeNames{{
    {"lrnn_dg", Scheme::LrnnDg},
    {"lrnn_c0dg", Scheme::LrnnC0Dg},
    {"lrnn_c1dg", Scheme::LrnnC1Dg},
}};

}  // namespace detail

/// Parses and validates a run configuration. `case` and `scheme` select the preset that
/// supplies every setting not given explicitly.
inline RunConfig parse_config(std::string_view text) {
  const TomlTable doc = parse_toml(text);
  RunConfig c;
  auto get = [&doc](const std::string& key) -> const TomlValue* {
    const auto it = doc.find(key);
    return it == doc.end() ? nullptr : &it->second;
  };
  if (const TomlValue* v = get("case")) c.case_id = detail::as_enum(std::string("case"), *v, detail::kCaseNames);
  if (const TomlValue* v = get("scheme")) c.method.scheme = detail::as_enum(std::string("scheme"), *v, detail::kSchemeNames);
  apply_preset(c);
  const int d = c.dim();

  for (const auto& [key, v] : doc) {
    MethodConfig& m = c.method;
    if (key == "case" || key == "scheme") continue;
    if (key == "name") {
      c.name = detail::as_string(key, v);
    } else if (key == "M") {
      c.rnn.neurons = detail::as_count(key, v);
    } else if (key == "r") {
      c.rnn.init_range = detail::as_double(key, v);
    } else if (key == "N_t") {
      c.time_slabs = detail::as_count(key, v);
    } else if (key == "cells") {
      const auto list = detail::as_int_list(key, v);
      if (list.size() == 1) {
        c.cells.fill(static_cast<int>(list[0]));
      } else if (static_cast<int>(list.size()) == d) {
        for (int k = 0; k < d; ++k) c.cells[k] = static_cast<int>(list[k]);
      } else {
        fail(ErrorKind::ValidationError, "cells: give one count or one per spatial axis");
      }
    } else if (key == "seeds") {
      c.seeds.clear();
      for (const auto s : detail::as_int_list(key, v)) {
        if (s < 0) fail(ErrorKind::ValidationError, "seeds: must be non-negative");
        c.seeds.push_back(static_cast<std::uint64_t>(s));
      }
    } else if (key == "quad") {
      m.quad_points = detail::as_count(key, v);
    } else if (key == "beta") {
      m.beta1 = m.beta2 = detail::as_double(key, v);
    } else if (key == "beta1") {
      m.beta1 = detail::as_double(key, v);
    } else if (key == "beta2") {
      m.beta2 = detail::as_double(key, v);
    } else if (key == "colloc") {
      m.colloc_spatial = m.colloc_temporal = m.colloc_initial = m.colloc_dirichlet = detail::as_count(key, v);
    } else if (key == "colloc_spatial") {
      m.colloc_spatial = detail::as_count(key, v);
    } else if (key == "colloc_temporal") {
      m.colloc_temporal = detail::as_count(key, v);
    } else if (key == "colloc_initial") {
      m.colloc_initial = detail::as_count(key, v);
    } else if (key == "colloc_dirichlet") {
      m.colloc_dirichlet = detail::as_count(key, v);
    } else if (key == "constraint_weight") {
      m.constraint_weight = detail::as_double(key, v);
    } else if (key == "literal_w0_sign") {
      m.literal_w0_sign = detail::as_bool(key, v);
    } else if (key == "activation") {
      c.rnn.activation = detail::as_enum(key, v, std::array<std::pair<std::string_view, Activation>, 3>{{
                                                      {"tanh", Activation::Tanh},
                                                      {"sin", Activation::Sin},
                                                      {"gaussian", Activation::Gaussian},
                                                  }});
    } else if (key == "input_scaling") {
      c.rnn.input_scaling = detail::as_enum(key, v, std::array<std::pair<std::string_view, InputScaling>, 3>{{
                                                         {"global", InputScaling::Global},
                                                         {"element_local", InputScaling::ElementLocal},
                                                         {"element_centered", InputScaling::ElementCentered},
                                                     }});
    } else if (key == "reduce_tol") {
      c.reduce_tol = detail::as_double(key, v);
    } else if (key == "max_nonzeros") {
      c.max_nonzeros = detail::as_double(key, v);
    } else if (key == "solver") {
      c.solver.backend = detail::as_enum(key, v, std::array<std::pair<std::string_view, SolverBackend>, 3>{{
                                                      {"auto", SolverBackend::Auto},
                                                      {"dense", SolverBackend::DenseSvd},
                                                      {"sparse", SolverBackend::SparseQr},
                                                  }});
    } else if (key == "rcond") {
      c.solver.rcond = detail::as_double(key, v);
    } else if (key == "dense_limit") {
      c.solver.dense_limit = detail::as_int(key, v);
    } else if (key == "slice_time") {
      c.slice_time = detail::as_double(key, v);
    } else if (key == "sample") {
      c.sample_resolution.clear();
      for (const auto r : detail::as_int_list(key, v)) c.sample_resolution.push_back(static_cast<int>(r));
    } else if (key == "output.dir") {
      c.out_dir = detail::as_string(key, v);
    } else if (key == "output.csv") {
      c.csv_file = detail::as_string(key, v);
    } else if (key == "output.samples") {
      c.samples_file = detail::as_string(key, v);
    } else if (key == "output.system") {
      c.system_file = detail::as_string(key, v);
    } else {
      fail(ErrorKind::ValidationError, "unknown key '" + key + "' (line " + std::to_string(v.line) + ")");
    }
  }
  if (c.name.empty()) c.name = std::string(to_string(c.case_id)) + "_" + std::string(to_string(c.method.scheme));
  validate(c);
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace lrnn
