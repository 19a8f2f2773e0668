#pragma once

// Algorithm X over dancing links. Columns are chosen by fewest remaining
// options, ties to the lowest item index; options within a column are tried
// in insertion order. The search is therefore fully deterministic.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace splitter {

class ExactCover {
 public:
  explicit ExactCover(std::size_t num_items);

  std::size_t num_items() const { return num_items_; }
  std::size_t num_options() const { return option_first_.size(); }

  /// Adds an option covering `items` (distinct, each < num_items). Returns its id.
  std::size_t add_option(std::span<const std::size_t> items);

  /// Calls `visit` with the option ids of each exact cover, in selection
  /// order, until it returns false. Returns the number of covers visited.
  std::uint64_t solve(const std::function<bool(std::span<const std::size_t>)>& visit);

  std::optional<std::vector<std::size_t>> first_solution();

  /// Search nodes expanded by the last solve() call.
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Node {
    std::size_t left, right, up, down, column, option;
  };

  void cover(std::size_t c);
  void uncover(std::size_t c);
  bool search(const std::function<bool(std::span<const std::size_t>)>& visit);

  std::size_t num_items_;
  std::vector<Node> nodes_list_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> option_first_;
  std::vector<std::size_t> chosen_;
  std::uint64_t solutions_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace splitter
