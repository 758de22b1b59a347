#include "nodal_morse/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nodal_morse/errors.hpp"

namespace nodal_morse {

std::string format_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::ParseError, "non-finite number cannot be written");
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string write_instance(const SchrodingerOperator& op) {
  const Graph& g = op.graph();
  std::string out = "{\n  \"diagonal\": [";
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (x > 0) out += ", ";
    out += format_double(op.matrix()(x, x));
  }
  out += "],\n  \"edges\": [";
  for (int e = 0; e < g.num_edges(); ++e) {
    out += e == 0 ? "\n" : ",\n";
    out += "    {\"h\": " + format_double(op.off_diagonal(e)) + ", \"u\": " + std::to_string(g.edge(e).u) +
           ", \"v\": " + std::to_string(g.edge(e).v) + "}";
  }
  out += g.num_edges() > 0 ? "\n  ],\n" : "],\n";
  out += "  \"vertices\": " + std::to_string(g.num_vertices()) + "\n}\n";
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

const json& require(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) field_error(where + key, "missing");
  return *it;
}

int as_int(const json& value, const std::string& field) {
  if (!value.is_number_integer()) field_error(field, "expected an integer");
  return value.get<int>();
}

double as_number(const json& value, const std::string& field) {
  if (!value.is_number()) field_error(field, "expected a number");
  return value.get<double>();
}

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

SchrodingerOperator read_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at " + position(text, e.byte));
  }
  if (!doc.is_object()) field_error("document", "expected an object");

  const int nv = as_int(require(doc, "vertices", ""), "vertices");
  if (nv < 1) field_error("vertices", "must be positive");

  const json& diag = require(doc, "diagonal", "");
  if (!diag.is_array()) field_error("diagonal", "expected an array");
  if (static_cast<int>(diag.size()) != nv) {
    field_error("diagonal", "has " + std::to_string(diag.size()) + " entries, expected " + std::to_string(nv));
  }

  const json& edges = require(doc, "edges", "");
  if (!edges.is_array()) field_error("edges", "expected an array");

  std::vector<std::pair<int, int>> edge_list;
  std::vector<double> weights;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "].";
    const json& item = edges[k];
    if (!item.is_object()) field_error("edges[" + std::to_string(k) + "]", "expected an object");
    const int u = as_int(require(item, "u", where), where + "u");
    const int v = as_int(require(item, "v", where), where + "v");
    const double h = as_number(require(item, "h", where), where + "h");
    if (!(h < 0.0)) field_error(where + "h", "edge weight must be negative");
    edge_list.emplace_back(u, v);
    weights.push_back(h);
  }

  Graph g(nv, edge_list);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nv, nv);
  for (int x = 0; x < nv; ++x) m(x, x) = as_number(diag[x], "diagonal[" + std::to_string(x) + "]");
  for (std::size_t k = 0; k < edge_list.size(); ++k) {
    const auto [u, v] = edge_list[k];
    m(u, v) = m(v, u) = weights[k];
  }
  return SchrodingerOperator(std::move(g), m);
}

SchrodingerOperator load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_instance(buffer.str());
}

void save_instance(const SchrodingerOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << write_instance(op);
}

}  // namespace nodal_morse
