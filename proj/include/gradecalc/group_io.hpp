#pragma once

#include "gradecalc/algebra.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace gradecalc {

// Thrown for malformed group files; line/column are 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

GradedLieAlgebra parse_group(const std::string& json_text);
GradedLieAlgebra load_group(const std::filesystem::path& path);
std::string group_to_json(const GradedLieAlgebra& alg);

// Directory holding the shipped group files; GRADECALC_DATA overrides the build-time path.
std::filesystem::path data_directory();
// Resolve a name such as "heisenberg" or a path to a group file.
std::filesystem::path resolve_group_path(const std::string& name_or_path);

}  // namespace gradecalc
