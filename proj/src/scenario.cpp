#include <emulab/scenario.hpp>

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace emulab {

namespace {

std::string location(const std::string& file, int line) {
  if (line <= 0) return file;
  return file + ":" + std::to_string(line);
}

std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return text.substr(begin, end - begin);
}

// Strips a trailing comment, respecting double-quoted values.
std::string strip_comment(const std::string& line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

struct Parser {
  std::string file;
  std::set<std::string> seen;

  [[noreturn]] void fail(int line, const std::string& message) const {
    throw ScenarioError(file, line, message);
  }

  Scalar parse_number(int line, const std::string& key,
                      const std::string& value) const {
    errno = 0;
    char* end = nullptr;
    const double parsed = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty() || errno != 0) {
      fail(line, "value for " + key + " is not a number: '" + value + "'");
    }
    return parsed;
  }

  std::uint64_t parse_count(int line, const std::string& key,
                            const std::string& value) const {
    if (value.empty() || value[0] == '-') {
      fail(line, key + " must be a non-negative integer");
    }
    errno = 0;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || errno != 0) {
      fail(line, key + " must be a non-negative integer, got '" + value + "'");
    }
    return parsed;
  }

  std::string parse_string(int line, const std::string& key,
                           const std::string& value) const {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      return value.substr(1, value.size() - 2);
    }
    for (const char ch : value) {
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
        fail(line, "value for " + key + " must be a bare word or quoted");
      }
    }
    return value;
  }
};

}  // namespace

ScenarioError::ScenarioError(const std::string& file, int line_,
                             const std::string& message)
    : std::runtime_error(location(file, line_) + ": " + message),
      line(line_) {}

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
  Parser parser{name, {}};
  Scenario scenario;

  std::optional<Scalar> k_is, s_param, b_lm, e_param;
  std::optional<Scalar> explicit_c;
  int structural_line = 0;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      parser.fail(line_no, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parser.fail(line_no, "missing key before '='");
    if (value.empty()) parser.fail(line_no, "missing value for " + key);
    if (!parser.seen.insert(key).second) {
      parser.fail(line_no, "duplicate key " + key);
    }

    if (key == "structural.k_is" || key == "structural.s" ||
        key == "structural.b_lm" || key == "structural.e") {
      structural_line = line_no;
      const Scalar v = parser.parse_number(line_no, key, value);
      if (key == "structural.k_is") k_is = v;
      if (key == "structural.s") s_param = v;
      if (key == "structural.b_lm") b_lm = v;
      if (key == "structural.e") e_param = v;
    } else if (key == "loss.w_y") {
      scenario.model.loss.w_y = parser.parse_number(line_no, key, value);
    } else if (key == "loss.k_target") {
      scenario.model.loss.k_target = parser.parse_number(line_no, key, value);
    } else if (key == "union.c") {
      explicit_c = parser.parse_number(line_no, key, value);
    } else if (key == "union.lambda") {
      scenario.model.rule.lambda = parser.parse_number(line_no, key, value);
    } else if (key == "union.t") {
      scenario.model.sanction_t = parser.parse_number(line_no, key, value);
    } else if (key == "shocks.family") {
      const std::string family = parser.parse_string(line_no, key, value);
      if (family == "gaussian") {
        scenario.model.shocks.family = ShockFamily::Gaussian;
      } else if (family == "uniform") {
        scenario.model.shocks.family = ShockFamily::UniformSymmetric;
      } else {
        parser.fail(line_no, "shocks.family must be gaussian or uniform, got '" +
                                 family + "'");
      }
    } else if (key == "shocks.sigma_u") {
      scenario.model.shocks.sigma_u = parser.parse_number(line_no, key, value);
    } else if (key == "shocks.sigma_a") {
      scenario.model.shocks.sigma_a = parser.parse_number(line_no, key, value);
    } else if (key == "run.n_draws") {
      scenario.n_draws = parser.parse_count(line_no, key, value);
    } else if (key == "run.seed") {
      scenario.seed = parser.parse_count(line_no, key, value);
    } else {
      parser.fail(line_no, "unknown key " + key);
    }
  }

  const bool has_structural = k_is || s_param || b_lm || e_param;
  if (has_structural) {
    if (!(k_is && s_param && b_lm && e_param)) {
      parser.fail(structural_line,
                  "incomplete structural block: need structural.k_is, "
                  "structural.s, structural.b_lm, structural.e");
    }
    if (explicit_c) {
      parser.fail(0,
                  "give either the structural block or union.c, not both");
    }
    scenario.structural = StructuralParams{*k_is, *s_param, *b_lm, *e_param};
  } else if (!explicit_c) {
    parser.fail(0, "missing union.c (or a structural.* block to derive it)");
  }

  try {
    if (scenario.structural) {
      scenario.structural->validate();
      scenario.model.c = reduced_form_coefficients(*scenario.structural).c;
    } else {
      scenario.model.c = *explicit_c;
    }
    scenario.model.validate();
    if (scenario.n_draws < 1) {
      throw std::invalid_argument("run.n_draws must be >= 1");
    }
  } catch (const std::exception& e) {
    parser.fail(0, e.what());
  }

  scenario.digest = scenario_digest(scenario.model);
  return scenario;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream input(path);
  if (!input) {
    throw ScenarioError(path, 0, "cannot open scenario file");
  }
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return parse_scenario_text(buffer.str(), path);
}

}  // namespace emulab
