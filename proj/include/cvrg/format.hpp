#pragma once

#include "cvrg/problem.hpp"

#include <string>
#include <string_view>

namespace cvrg {

// Line-oriented text documents; the grammar is in docs/format.md. Numbers are
// written with %.17g so parse(emit(x)) reproduces every double exactly.

/// Canonical instance document.
std::string emit_instance(const Instance& instance);

/// Throws ParseError naming the first offending line and field; instance
/// invariant violations are reported the same way.
Instance parse_instance(std::string_view text);

std::string emit_solution(const Solution& solution);
Solution parse_solution(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace cvrg
