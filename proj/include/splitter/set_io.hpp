#pragma once

// Set files.
//
// Text form: '#' comment lines, then one decimal element per line. The
// writer emits a header comment "# modulus=N k1=K1 k2=K2" which the reader
// recognizes; plain element lists without it are accepted too.
//
// Structured form: {"modulus": N, "k1": K1, "k2": K2, "elements": [...]},
// elements ascending.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "splitter/splitter_core.hpp"

namespace splitter {

enum class SetFormat { text, json };

struct SetFile {
  std::optional<u64> modulus;
  std::optional<unsigned> k1;
  std::optional<unsigned> k2;
  std::vector<u64> elements;
};

/// Throws InvalidInput on malformed content.
SetFile parse_set_text(const std::string& content);
SetFile parse_set_json(const std::string& content);
/// Structured when the first non-space character is '{', text otherwise.
SetFile parse_set(const std::string& content);

std::string format_set_text(const SplitterSet& set);
std::string format_set_json(const SplitterSet& set);
std::string format_set(const SplitterSet& set, SetFormat format);

SetFile read_set_file(const std::filesystem::path& path);
void write_set_file(const std::filesystem::path& path, const SplitterSet& set, SetFormat format);

}  // namespace splitter
