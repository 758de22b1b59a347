#pragma once

#include <string>

#include "nodal_morse/schrodinger.hpp"

namespace nodal_morse {

/// Canonical text of an operator:
///   {"diagonal": [...], "edges": [{"h": w, "u": i, "v": j}, ...], "vertices": N}
/// with keys in lexicographic order, edges in graph order and every number
/// printed with 17 significant digits, so write(read(write(op))) == write(op).
std::string write_instance(const SchrodingerOperator& op);

/// Throws Error(ParseError) with a line/column or field diagnostic, or the
/// validation errors of Graph and SchrodingerOperator.
SchrodingerOperator read_instance(const std::string& text);

SchrodingerOperator load_instance(const std::string& path);
void save_instance(const SchrodingerOperator& op, const std::string& path);

/// printf("%.17g"); throws on non-finite input.
std::string format_double(double value);

}  // namespace nodal_morse
