#include "splitter/set_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace splitter {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

u64 parse_u64(const std::string& token, int line_no) {
  u64 value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw InvalidInput("set file line " + std::to_string(line_no) + ": '" + token + "' is not a nonnegative integer");
  }
  return value;
}

void parse_header(const std::string& comment, SetFile& out, int line_no) {
  std::istringstream is(comment);
  std::string field;
  while (is >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "modulus") {
      out.modulus = parse_u64(value, line_no);
    } else if (key == "k1") {
      out.k1 = static_cast<unsigned>(parse_u64(value, line_no));
    } else if (key == "k2") {
      out.k2 = static_cast<unsigned>(parse_u64(value, line_no));
    }
  }
}

}  // namespace

SetFile parse_set_text(const std::string& content) {
  SetFile out;
  std::istringstream is(content);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      parse_header(t.substr(1), out, line_no);
      continue;
    }
    out.elements.push_back(parse_u64(t, line_no));
  }
  return out;
}

SetFile parse_set_json(const std::string& content) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("set file: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw InvalidInput("set file: expected an object with an 'elements' array");
  }
  SetFile out;
  try {
    if (j.contains("modulus")) out.modulus = j["modulus"].get<u64>();
    if (j.contains("k1")) out.k1 = j["k1"].get<unsigned>();
    if (j.contains("k2")) out.k2 = j["k2"].get<unsigned>();
    for (const auto& e : j["elements"]) {
      if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<i64>() >= 0)) {
        throw InvalidInput("set file: elements must be nonnegative integers");
      }
      out.elements.push_back(e.get<u64>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("set file: ") + e.what());
  }
  return out;
}

SetFile parse_set(const std::string& content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && content[first] == '{') return parse_set_json(content);
  return parse_set_text(content);
}

std::string format_set_text(const SplitterSet& set) {
  std::string out = "# modulus=" + std::to_string(set.modulus) + " k1=" + std::to_string(set.interval.k1()) +
                    " k2=" + std::to_string(set.interval.k2()) + "\n";
  for (u64 e : set.elements) {
    out += std::to_string(e);
    out += '\n';
  }
  return out;
}

std::string format_set_json(const SplitterSet& set) {
  nlohmann::ordered_json j;
  j["modulus"] = set.modulus;
  j["k1"] = set.interval.k1();
  j["k2"] = set.interval.k2();
  j["elements"] = set.elements;
  return j.dump() + "\n";
}

std::string format_set(const SplitterSet& set, SetFormat format) {
  return format == SetFormat::json ? format_set_json(set) : format_set_text(set);
}

SetFile read_set_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open set file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set(ss.str());
}

void write_set_file(const std::filesystem::path& path, const SplitterSet& set, SetFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write set file " + path.string());
  out << format_set(set, format);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace splitter
