#include "splitter/exact_cover.hpp"

#include "splitter/errors.hpp"

namespace splitter {

namespace {
constexpr std::size_t kRoot = 0;
}

// Node 0 is the root; nodes 1..num_items are column headers.
ExactCover::ExactCover(std::size_t num_items) : num_items_(num_items), sizes_(num_items + 1, 0) {
  nodes_list_.resize(num_items + 1);
  for (std::size_t i = 0; i <= num_items; ++i) {
    nodes_list_[i] = {i == 0 ? num_items : i - 1, i == num_items ? 0 : i + 1, i, i, i, SIZE_MAX};
  }
}

std::size_t ExactCover::add_option(std::span<const std::size_t> items) {
  if (items.empty()) throw InvalidInput("ExactCover: empty option");
  const std::size_t id = option_first_.size();
  const std::size_t first = nodes_list_.size();
  option_first_.push_back(first);
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::size_t item = items[k];
    if (item >= num_items_) throw InvalidInput("ExactCover: item out of range");
    const std::size_t col = item + 1;
    const std::size_t idx = nodes_list_.size();
    Node n{};
    n.column = col;
    n.option = id;
    n.down = col;
    n.up = nodes_list_[col].up;
    n.left = k == 0 ? idx : idx - 1;
    n.right = first;
    nodes_list_.push_back(n);
    nodes_list_[nodes_list_[col].up].down = idx;
    nodes_list_[col].up = idx;
    if (k > 0) {
      nodes_list_[idx - 1].right = idx;
      nodes_list_[first].left = idx;
    }
    ++sizes_[col];
  }
  return id;
}

void ExactCover::cover(std::size_t c) {
  auto& nl = nodes_list_;
  nl[nl[c].right].left = nl[c].left;
  nl[nl[c].left].right = nl[c].right;
  for (std::size_t i = nl[c].down; i != c; i = nl[i].down) {
    for (std::size_t j = nl[i].right; j != i; j = nl[j].right) {
      nl[nl[j].down].up = nl[j].up;
      nl[nl[j].up].down = nl[j].down;
      --sizes_[nl[j].column];
    }
  }
}

void ExactCover::uncover(std::size_t c) {
  auto& nl = nodes_list_;
  for (std::size_t i = nl[c].up; i != c; i = nl[i].up) {
    for (std::size_t j = nl[i].left; j != i; j = nl[j].left) {
      ++sizes_[nl[j].column];
      nl[nl[j].down].up = j;
      nl[nl[j].up].down = j;
    }
  }
  nl[nl[c].right].left = c;
  nl[nl[c].left].right = c;
}

bool ExactCover::search(const std::function<bool(std::span<const std::size_t>)>& visit) {
  auto& nl = nodes_list_;
  ++nodes_;
  if (nl[kRoot].right == kRoot) {
    ++solutions_;
    return visit(chosen_);
  }
  std::size_t best = nl[kRoot].right;
  for (std::size_t c = nl[best].right; c != kRoot; c = nl[c].right) {
    if (sizes_[c] < sizes_[best]) best = c;
  }
  if (sizes_[best] == 0) return true;
  cover(best);
  bool keep_going = true;
  for (std::size_t r = nl[best].down; r != best && keep_going; r = nl[r].down) {
    chosen_.push_back(nl[r].option);
    for (std::size_t j = nl[r].right; j != r; j = nl[j].right) cover(nl[j].column);
    keep_going = search(visit);
    for (std::size_t j = nl[r].left; j != r; j = nl[j].left) uncover(nl[j].column);
    chosen_.pop_back();
  }
  uncover(best);
  return keep_going;
}

std::uint64_t ExactCover::solve(const std::function<bool(std::span<const std::size_t>)>& visit) {
  solutions_ = 0;
  nodes_ = 0;
  chosen_.clear();
  search(visit);
  return solutions_;
}

std::optional<std::vector<std::size_t>> ExactCover::first_solution() {
  std::optional<std::vector<std::size_t>> out;
  solve([&](std::span<const std::size_t> sol) {
    out.emplace(sol.begin(), sol.end());
    return false;
  });
  return out;
}

}  // namespace splitter
