#include "dioph/lab.hpp"

#include "dioph/errors.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace dioph {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error(ErrorCode::ParseError, "bad value for " + key + ": '" + v + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, "bad value for " + key + ": '" + v + "'");
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& v) {
  std::vector<T> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
  return out;
}

std::string exact_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ParseError, what); };
  if (c.target.empty()) fail("target is required");
  if (c.degrees.empty()) fail("degrees must be nonempty");
  for (int n : c.degrees)
    if (n < 1 || n > 8) fail("degrees must lie in 1..8");
  if (c.grid.heights.empty() && (c.grid.h0 < 1 || c.grid.points < 1 || !(c.grid.ratio > 1)))
    fail("grid needs h0 >= 1, points >= 1, ratio > 1");
  if (c.budget == 0 || c.precision_cap <= 0 || c.lattice_cap_bits <= 0) fail("caps must be positive");
  if (c.max_height < 0 || c.star_max_height < 0 || c.exhaustive_limit < 0) fail("heights must be >= 0");
  if (!(c.tail > 0 && c.tail <= 1)) fail("tail must lie in (0, 1]");
  if (!(c.bracket_constant >= 0)) fail("bracket_constant must be >= 0");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (key == "target") c.target = v;
    else if (key == "degrees") c.degrees = parse_list<int>(key, v);
    else if (key == "grid.h0") c.grid.h0 = parse_number<long>(key, v);
    else if (key == "grid.ratio") c.grid.ratio = parse_double(key, v);
    else if (key == "grid.points") c.grid.points = parse_number<int>(key, v);
    else if (key == "grid.heights") c.grid.heights = parse_list<long>(key, v);
    else if (key == "max_height") c.max_height = parse_number<long>(key, v);
    else if (key == "star_max_height") c.star_max_height = parse_number<long>(key, v);
    else if (key == "strategy") {
      try {
        c.strategy = parse_strategy(v);
      } catch (const Error&) {
        throw Error(ErrorCode::ParseError, "bad strategy '" + v + "'");
      }
    } else if (key == "budget") c.budget = parse_number<std::uint64_t>(key, v);
    else if (key == "precision_cap") c.precision_cap = parse_number<long>(key, v);
    else if (key == "lattice_cap_bits") c.lattice_cap_bits = parse_number<long>(key, v);
    else if (key == "exhaustive_limit") c.exhaustive_limit = parse_number<long>(key, v);
    else if (key == "record_skip") c.record_skip = parse_number<std::size_t>(key, v);
    else if (key == "tail") c.tail = parse_double(key, v);
    else if (key == "bracket_constant") c.bracket_constant = parse_double(key, v);
    else if (key == "star_mixed") {
      if (v != "true" && v != "false") throw Error(ErrorCode::ParseError, "star_mixed must be true or false");
      c.star_mixed = v == "true";
    } else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "workers") c.workers = parse_number<unsigned>(key, v);
    else if (key == "out") c.out = v;
    else throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  validate(c);
  return c;
}

std::string config_to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "target = " << c.target << "\n"
     << "degrees = " << join(c.degrees) << "\n"
     << "grid.h0 = " << c.grid.h0 << "\n"
     << "grid.ratio = " << exact_double(c.grid.ratio) << "\n"
     << "grid.points = " << c.grid.points << "\n"
     << "grid.heights = " << join(c.grid.heights) << "\n"
     << "max_height = " << c.max_height << "\n"
     << "star_max_height = " << c.star_max_height << "\n"
     << "strategy = " << to_string(c.strategy) << "\n"
     << "budget = " << c.budget << "\n"
     << "precision_cap = " << c.precision_cap << "\n"
     << "lattice_cap_bits = " << c.lattice_cap_bits << "\n"
     << "exhaustive_limit = " << c.exhaustive_limit << "\n"
     << "record_skip = " << c.record_skip << "\n"
     << "tail = " << exact_double(c.tail) << "\n"
     << "bracket_constant = " << exact_double(c.bracket_constant) << "\n"
     << "star_mixed = " << (c.star_mixed ? "true" : "false") << "\n"
     << "seed = " << c.seed << "\n"
     << "workers = " << c.workers << "\n"
     << "out = " << c.out << "\n";
  return os.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return config_to_text(a) == config_to_text(b);
}

}  // namespace dioph
