#include "schurlab/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace schurlab {

namespace {

double finite_number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw parse_error(where + ": number expected");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw parse_error(where + ": non-finite value rejected");
  return v;
}

std::size_t positive_integer_at(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !j.is_number_integer()) {
    throw parse_error(where + ": positive integer expected");
  }
  const long long v = j.get<long long>();
  if (v < 1) throw parse_error(where + ": positive integer expected");
  return static_cast<std::size_t>(v);
}

}  // namespace

Matrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw parse_error(where + ": matrix object expected");
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw parse_error(where + ": matrix object needs rows, cols, data");
  }
  const std::size_t rows = positive_integer_at(j["rows"], where + ".rows");
  const std::size_t cols = positive_integer_at(j["cols"], where + ".cols");
  const json& data = j["data"];
  if (!data.is_array() || data.size() != rows) {
    throw parse_error(where + ".data: expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data[i];
    const std::string row_where = where + ".data[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols) {
      throw parse_error(row_where + ": expected " + std::to_string(cols) + " entries (ragged rows rejected)");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(i, k) = finite_number_at(row[k], row_where + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    data.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    std::size_t column = 0;
    while (fields >> token) {
      ++column;
      const std::string where =
          "line " + std::to_string(line_number) + ", entry " + std::to_string(column);
      double v = 0.0;
      std::size_t consumed = 0;
      try {
        v = std::stod(token, &consumed);
      } catch (const std::exception&) {
        throw parse_error(where + ": '" + token + "' is not a number");
      }
      if (consumed != token.size()) {
        throw parse_error(where + ": trailing characters in '" + token + "'");
      }
      if (!std::isfinite(v)) {
        throw parse_error(where + ": non-finite value rejected");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw parse_error("matrix text: no rows found");
  const std::size_t cols = rows.front().size();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw parse_error("line " + std::to_string(i + 1) + ": ragged row (expected " +
                        std::to_string(cols) + " entries, got " + std::to_string(rows[i].size()) +
                        ")");
    }
  }
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Matrix load_matrix_file(const std::string& path) {
  const std::string text = read_file(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw parse_error(path + ": file is empty");
  if (text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& err) {
      throw parse_error(path + ": " + err.what());
    }
    return matrix_from_json(j, path);
  }
  try {
    return parse_matrix_text(text);
  } catch (const parse_error& err) {
    throw parse_error(path + ": " + err.what());
  }
}

MapSpec map_spec_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
    throw parse_error(where + ": map node with string field 'op' expected");
  }
  const std::string op = j["op"].get<std::string>();
  const auto need = [&](const char* field) -> const json& {
    if (!j.contains(field)) {
      throw parse_error(where + ": op '" + op + "' needs field '" + field + "'");
    }
    return j[field];
  };
  if (op == "leftRight") {
    return MapSpec::left_right(matrix_from_json(need("M"), where + ".M"),
                               matrix_from_json(need("N"), where + ".N"));
  }
  if (op == "congruence") {
    return MapSpec::congruence(matrix_from_json(need("A"), where + ".A"));
  }
  if (op == "similarity") {
    return MapSpec::similarity(matrix_from_json(need("T"), where + ".T"));
  }
  if (op == "transpose") {
    return MapSpec::transpose(positive_integer_at(need("n"), where + ".n"));
  }
  if (op == "traceShift") {
    return MapSpec::trace_shift(finite_number_at(need("alpha"), where + ".alpha"),
                                finite_number_at(need("beta"), where + ".beta"),
                                matrix_from_json(need("S"), where + ".S"));
  }
  if (op == "scale") {
    return MapSpec::scale(finite_number_at(need("c"), where + ".c"),
                          map_spec_from_json(need("child"), where + ".child"));
  }
  if (op == "sum" || op == "compose") {
    const json& children = need("children");
    if (!children.is_array() || children.empty()) {
      throw parse_error(where + ".children: non-empty array expected");
    }
    std::vector<MapSpec> specs;
    specs.reserve(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
      specs.push_back(
          map_spec_from_json(children[i], where + ".children[" + std::to_string(i) + "]"));
    }
    return op == "sum" ? MapSpec::sum(std::move(specs)) : MapSpec::compose(std::move(specs));
  }
  throw parse_error(where + ": unknown op '" + op + "'");
}

MapSpec load_map_spec_file(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw parse_error(path + ": " + err.what());
  }
  return map_spec_from_json(j, path);
}

json map_spec_to_json(const MapSpec& spec) {
  switch (spec.kind) {
    case MapSpec::Kind::left_right:
      return json{{"op", "leftRight"}, {"M", matrix_to_json(spec.m1)}, {"N", matrix_to_json(spec.m2)}};
    case MapSpec::Kind::congruence:
      return json{{"op", "congruence"}, {"A", matrix_to_json(spec.m1)}};
    case MapSpec::Kind::similarity:
      return json{{"op", "similarity"}, {"T", matrix_to_json(spec.m1)}};
    case MapSpec::Kind::transpose:
      return json{{"op", "transpose"}, {"n", spec.dimension}};
    case MapSpec::Kind::trace_shift:
      return json{{"op", "traceShift"},
                  {"alpha", spec.alpha},
                  {"beta", spec.beta},
                  {"S", matrix_to_json(spec.m1)}};
    case MapSpec::Kind::scale:
      return json{{"op", "scale"}, {"c", spec.factor}, {"child", map_spec_to_json(spec.children.front())}};
    case MapSpec::Kind::sum:
    case MapSpec::Kind::compose: {
      json children = json::array();
      for (const MapSpec& child : spec.children) children.push_back(map_spec_to_json(child));
      return json{{"op", spec.kind == MapSpec::Kind::sum ? "sum" : "compose"},
                  {"children", std::move(children)}};
    }
  }
  throw std::logic_error("map_spec_to_json: unreachable");
}

json to_json(const Spectrum& s) {
  json eigs = json::array();
  for (const auto& lambda : s.eigenvalues) {
    eigs.push_back(json{{"re", lambda.real()}, {"im", lambda.imag()}});
  }
  return json{{"eigenvalues", std::move(eigs)},
              {"residuals", s.residuals},
              {"spectral_radius", s.spectral_radius}};
}

json to_json(const TwoByTwoCriterion& c) {
  return json{{"trace", c.trace},
              {"determinant", c.determinant},
              {"trace_condition", c.trace_condition},
              {"det_condition", c.det_condition},
              {"stable", c.stable}};
}

json to_json(const SteinSolution& s) {
  return json{{"X", matrix_to_json(s.x)},
              {"residual", s.residual},
              {"min_eigenvalue", s.min_eigenvalue},
              {"positive_definite", s.min_eigenvalue > 0.0}};
}

json to_json(const PowerLimitResult& p) {
  return json{{"verdict", to_string(p.verdict)}, {"steps", p.steps}, {"tail_norms", p.tail_norms}};
}

json to_json(const AloidClassification& a) {
  return json{{"normaloid", a.normaloid},
              {"spectraloid", a.spectraloid},
              {"spectral_radius", a.rho},
              {"operator_norm", a.norm},
              {"numerical_radius", a.numerical_radius}};
}

json to_json(const StabilityReport& r) {
  json out{{"verdict", to_string(r.verdict)},
           {"spectral_radius", r.spectral_radius},
           {"margin", r.margin},
           {"spectrum", to_json(r.spectrum)}};
  if (r.two_by_two) out["two_by_two"] = to_json(*r.two_by_two);
  if (r.stein) out["stein"] = to_json(*r.stein);
  if (r.power) out["power"] = to_json(*r.power);
  if (r.aloid) out["classification"] = to_json(*r.aloid);
  return out;
}

json to_json(const Witness& w) {
  return json{{"trial_index", w.trial_index},
              {"input", matrix_to_json(w.input)},
              {"image", matrix_to_json(w.image)},
              {"rho_input", w.rho_input},
              {"rho_image", w.rho_image}};
}

json to_json(const PreserverVerdict& v) {
  json out{{"outcome", v.counterexample ? "counterexample" : "no_counterexample"},
           {"trials_run", v.trials_run},
           {"seed", v.seed}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

json to_json(const OntoVerdict& v) {
  json out{{"onto", v.onto}, {"singular", v.singular}, {"forward", to_json(v.forward)}};
  if (v.singular) out["singular_reason"] = v.singular_reason;
  if (v.backward) out["backward"] = to_json(*v.backward);
  return out;
}

json to_json(const RhoPreservationResult& r) {
  return json{{"pass", r.pass},
              {"max_relative_deviation", r.max_relative_deviation},
              {"trials_run", r.trials_run},
              {"seed", r.seed}};
}

}  // namespace schurlab
