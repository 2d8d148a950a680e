#include "gradecalc/group_io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace gradecalc {

namespace {

std::string where(std::size_t line, std::size_t column) {
  if (!line) return {};
  return " at line " + std::to_string(line) + ", column " + std::to_string(column);
}

void line_column(const std::string& text, std::size_t byte, std::size_t& line, std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + where(line, column)), line_(line), column_(column) {}

GradedLieAlgebra parse_group(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line, column;
    // e.byte points one past the offending character.
    line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
    throw ParseError("malformed JSON", line, column);
  }
  if (!j.is_object()) throw ParseError("group file must be a JSON object");
  try {
    auto weights = j.at("weights").get<std::vector<int>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != weights.size())
      throw ParseError("field n disagrees with the number of weights");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    if (!labels.empty() && labels.size() != weights.size())
      throw ParseError("label count disagrees with the number of weights");
    std::vector<BracketEntry> brackets;
    std::set<std::tuple<int, int, int>> seen;
    const int n = static_cast<int>(weights.size());
    if (j.contains("brackets")) {
      for (const auto& b : j.at("brackets")) {
        if (!b.is_array() || b.size() != 5)
          throw ParseError("bracket entries must be [j, k, l, numerator, denominator]");
        int bj = b[0].get<int>(), bk = b[1].get<int>(), bl = b[2].get<int>();
        long long num = b[3].get<long long>(), den = b[4].get<long long>();
        if (bj < 1 || bk < 1 || bl < 1 || bj > n || bk > n || bl > n)
          throw ParseError("bracket index out of range 1.." + std::to_string(n));
        if (den == 0) throw ParseError("bracket with zero denominator");
        if (!seen.emplace(bj, bk, bl).second)
          throw ParseError("duplicate bracket entry (" + std::to_string(bj) + "," + std::to_string(bk) + "," +
                           std::to_string(bl) + ")");
        brackets.push_back({bj - 1, bk - 1, bl - 1, make_rational(num, den)});
      }
    }
    return GradedLieAlgebra(std::move(weights), std::move(brackets), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid group file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid group file: ") + e.what());
  }
}

GradedLieAlgebra load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group(ss.str());
}

std::string group_to_json(const GradedLieAlgebra& alg) {
  nlohmann::ordered_json j;
  j["n"] = alg.dim();
  j["weights"] = alg.weights();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : alg.entries()) {
    auto num = numerator(e.coefficient), den = denominator(e.coefficient);
    arr.push_back({e.j + 1, e.k + 1, e.l + 1, num.convert_to<long long>(), den.convert_to<long long>()});
  }
  j["brackets"] = arr;
  j["labels"] = alg.labels();
  return j.dump(2);
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("GRADECALC_DATA")) return env;
#ifdef GRADECALC_DATA_DIR
  return GRADECALC_DATA_DIR;
#else
  return "data";
#endif
}

std::filesystem::path resolve_group_path(const std::string& name) {
  std::filesystem::path p(name);
  if (std::filesystem::exists(p)) return p;
  auto candidate = data_directory() / "groups" / (name + (p.has_extension() ? "" : ".json"));
  if (std::filesystem::exists(candidate)) return candidate;
  throw ParseError("no group file named " + name);
}

}  // namespace gradecalc
