#include "maplab/trees.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "maplab/error.hpp"

namespace maplab {

WellLabeledTree::WellLabeledTree(std::vector<std::uint8_t> dyck, std::vector<int> labels)
    : dyck_(std::move(dyck)), labels_(std::move(labels)) {
  if (dyck_.size() % 2 != 0) throw MapLabError(ErrorCode::kInvalidTree, "odd Dyck word length");
  if (labels_.size() != dyck_.size() / 2 + 1) {
    throw MapLabError(ErrorCode::kInvalidTree, "need one label per vertex");
  }
  if (labels_[0] != 0) throw MapLabError(ErrorCode::kInvalidTree, "root label must be 0");
  std::vector<VertexId> stack{0};
  VertexId next_id = 1;
  for (std::uint8_t step : dyck_) {
    if (step > 1) throw MapLabError(ErrorCode::kInvalidTree, "Dyck letters are 0 and 1");
    if (step == 1) {
      const VertexId child = next_id++;
      if (std::abs(labels_[child] - labels_[stack.back()]) > 1) {
        throw MapLabError(ErrorCode::kInvalidTree,
                          "labels of vertices " + std::to_string(stack.back()) + " and " +
                              std::to_string(child) + " differ by more than one");
      }
      stack.push_back(child);
    } else {
      if (stack.size() == 1) throw MapLabError(ErrorCode::kInvalidTree, "Dyck word dips below 0");
      stack.pop_back();
    }
  }
  if (stack.size() != 1) throw MapLabError(ErrorCode::kInvalidTree, "Dyck word does not return to 0");
}

std::vector<VertexId> WellLabeledTree::parents() const {
  std::vector<VertexId> parent(num_vertices(), 0);
  std::vector<VertexId> stack{0};
  VertexId next_id = 1;
  for (std::uint8_t step : dyck_) {
    if (step == 1) {
      parent[next_id] = stack.back();
      stack.push_back(next_id++);
    } else {
      stack.pop_back();
    }
  }
  return parent;
}

std::vector<std::uint8_t> sample_dyck_word(std::size_t n, Rng& rng) {
  // n up-steps and n + 1 down-steps: exactly one of the 2n + 1 rotations is a
  // Dyck word followed by a final down-step, and all rotations are distinct.
  const std::size_t len = 2 * n + 1;
  std::vector<std::uint8_t> steps(len, 0);
  std::fill(steps.begin(), steps.begin() + static_cast<long>(n), 1);
  for (std::size_t i = len - 1; i > 0; --i) {
    std::swap(steps[i], steps[rng.uniform_below(i + 1)]);
  }
  long sum = 0;
  long best = 1;
  std::size_t cut = 0;  // number of steps up to the first minimum
  for (std::size_t k = 0; k < len; ++k) {
    sum += steps[k] ? 1 : -1;
    if (sum < best) {
      best = sum;
      cut = k + 1;
    }
  }
  std::vector<std::uint8_t> word;
  word.reserve(2 * n);
  for (std::size_t k = 0; k + 1 < len; ++k) word.push_back(steps[(cut + k) % len]);
  return word;
}

WellLabeledTree sample_uniform_tree(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> word = sample_dyck_word(n, rng);
  std::vector<int> labels(n + 1, 0);
  std::vector<VertexId> stack{0};
  VertexId next_id = 1;
  for (std::uint8_t step : word) {
    if (step == 1) {
      labels[next_id] = labels[stack.back()] + static_cast<int>(rng.uniform_below(3)) - 1;
      stack.push_back(next_id++);
    } else {
      stack.pop_back();
    }
  }
  return WellLabeledTree(std::move(word), std::move(labels));
}

WellLabeledTree sample_uniform_tree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_uniform_tree(n, rng);
}

std::vector<std::vector<std::uint8_t>> dyck_words(std::size_t n) {
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> word;
  word.reserve(2 * n);
  auto extend = [&](auto&& self, std::size_t ups, std::size_t downs) -> void {
    if (word.size() == 2 * n) {
      out.push_back(word);
      return;
    }
    if (ups < n) {
      word.push_back(1);
      self(self, ups + 1, downs);
      word.pop_back();
    }
    if (downs < ups) {
      word.push_back(0);
      self(self, ups, downs + 1);
      word.pop_back();
    }
  };
  extend(extend, 0, 0);
  return out;
}

namespace {

std::vector<int> labels_from_increments(const std::vector<std::uint8_t>& dyck,
                                        const std::vector<int>& increments) {
  std::vector<int> labels(increments.size() + 1, 0);
  std::vector<VertexId> stack{0};
  VertexId next_id = 1;
  for (std::uint8_t step : dyck) {
    if (step == 1) {
      labels[next_id] = labels[stack.back()] + increments[next_id - 1];
      stack.push_back(next_id++);
    } else {
      stack.pop_back();
    }
  }
  return labels;
}

// Odometer over {-1, 0, 1}^k; false once it wraps around.
bool advance(std::vector<int>& increments) {
  for (std::size_t i = increments.size(); i-- > 0;) {
    if (increments[i] < 1) {
      ++increments[i];
      return true;
    }
    increments[i] = -1;
  }
  return false;
}

}  // namespace

TreeEnumerator::TreeEnumerator(std::size_t n, std::size_t bound) {
  if (n > bound) {
    throw MapLabError(ErrorCode::kBoundExceeded,
                      "n = " + std::to_string(n) + " exceeds enumeration bound " +
                          std::to_string(bound));
  }
  shapes_ = dyck_words(n);
  increments_.assign(n, -1);
}

std::optional<WellLabeledTree> TreeEnumerator::next() {
  if (exhausted_ || shape_index_ >= shapes_.size()) return std::nullopt;
  const auto& shape = shapes_[shape_index_];
  WellLabeledTree tree(shape, labels_from_increments(shape, increments_));
  if (!advance(increments_)) {
    ++shape_index_;
    exhausted_ = shape_index_ >= shapes_.size();
  }
  return tree;
}

std::vector<WellLabeledTree> enumerate_trees(std::size_t n, std::size_t bound) {
  TreeEnumerator enumerator(n, bound);
  std::vector<WellLabeledTree> out;
  while (auto tree = enumerator.next()) out.push_back(std::move(*tree));
  return out;
}

void for_each_labeling(const std::vector<std::uint8_t>& dyck,
                       const std::function<void(const WellLabeledTree&)>& visit) {
  std::vector<int> increments(dyck.size() / 2, -1);
  do {
    visit(WellLabeledTree(dyck, labels_from_increments(dyck, increments)));
  } while (advance(increments));
}

ContourLabelProcess contour_label_process(const WellLabeledTree& tree) {
  const std::size_t steps = tree.dyck().size();
  ContourLabelProcess process;
  process.height.resize(steps + 1);
  process.label.resize(steps + 1);
  process.vertex.resize(steps + 1);
  std::vector<VertexId> stack{0};
  VertexId next_id = 1;
  process.vertex[0] = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    if (tree.dyck()[i] == 1) {
      stack.push_back(next_id++);
    } else {
      stack.pop_back();
    }
    process.vertex[i + 1] = stack.back();
  }
  for (std::size_t i = 0; i <= steps; ++i) {
    process.label[i] = tree.label(process.vertex[i]);
  }
  // Heights follow from the walk itself.
  int h = 0;
  process.height[0] = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    h += tree.dyck()[i] == 1 ? 1 : -1;
    process.height[i + 1] = h;
  }
  return process;
}

WellLabeledTree tree_from_process(const std::vector<int>& height, const std::vector<int>& label) {
  if (height.size() != label.size() || height.empty() || height.size() % 2 == 0) {
    throw MapLabError(ErrorCode::kInvalidTree, "processes must have odd, equal lengths");
  }
  if (height.front() != 0 || label.front() != 0) {
    throw MapLabError(ErrorCode::kInvalidTree, "processes must start at 0");
  }
  std::vector<std::uint8_t> dyck;
  std::vector<int> labels{label[0]};
  std::vector<VertexId> stack{0};
  for (std::size_t i = 0; i + 1 < height.size(); ++i) {
    const int step = height[i + 1] - height[i];
    if (step == 1) {
      dyck.push_back(1);
      stack.push_back(static_cast<VertexId>(labels.size()));
      labels.push_back(label[i + 1]);
    } else if (step == -1) {
      dyck.push_back(0);
      if (stack.size() == 1) throw MapLabError(ErrorCode::kInvalidTree, "height below 0");
      stack.pop_back();
      if (labels[stack.back()] != label[i + 1]) {
        throw MapLabError(ErrorCode::kInvalidTree, "label process disagrees on a revisited vertex");
      }
    } else {
      throw MapLabError(ErrorCode::kInvalidTree, "height steps must be +-1");
    }
  }
  return WellLabeledTree(std::move(dyck), std::move(labels));
}

std::vector<VertexId> broad_local_maxima(const WellLabeledTree& tree) {
  const auto parent = tree.parents();
  std::vector<bool> is_max(tree.num_vertices(), true);
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    const VertexId p = parent[v];
    if (tree.label(p) > tree.label(v)) is_max[v] = false;
    if (tree.label(v) > tree.label(p)) is_max[p] = false;
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < tree.num_vertices(); ++v) {
    if (is_max[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::uint32_t> nj_process(const WellLabeledTree& tree) {
  const ContourLabelProcess process = contour_label_process(tree);
  std::vector<bool> is_max(tree.num_vertices(), false);
  for (VertexId v : broad_local_maxima(tree)) is_max[v] = true;
  std::vector<bool> seen(tree.num_vertices(), false);
  const std::size_t steps = tree.dyck().size();
  std::vector<std::uint32_t> counts(steps + 1, 0);
  for (std::size_t j = 1; j <= steps; ++j) {
    const VertexId v = process.vertex[j - 1];
    counts[j] = counts[j - 1];
    if (!seen[v]) {
      seen[v] = true;
      if (!is_max[v]) ++counts[j];
    }
  }
  return counts;
}

std::string write_tree_text(const WellLabeledTree& tree) {
  std::string out = std::to_string(tree.num_edges()) + '\n';
  for (std::uint8_t step : tree.dyck()) out += step ? '1' : '0';
  out += '\n';
  for (std::size_t i = 0; i < tree.num_vertices(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(tree.labels()[i]);
  }
  out += '\n';
  return out;
}

WellLabeledTree read_tree_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    if (end == std::string_view::npos) throw MapLabError(ErrorCode::kParseError, "missing newline");
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.size() != 3) throw MapLabError(ErrorCode::kParseError, "tree text has three lines");
  std::size_t n = 0;
  {
    const auto [ptr, ec] = std::from_chars(lines[0].data(), lines[0].data() + lines[0].size(), n);
    if (ec != std::errc() || ptr != lines[0].data() + lines[0].size()) {
      throw MapLabError(ErrorCode::kParseError, "bad edge count");
    }
  }
  if (lines[1].size() != 2 * n) throw MapLabError(ErrorCode::kParseError, "Dyck word length");
  std::vector<std::uint8_t> dyck;
  for (char c : lines[1]) {
    if (c != '0' && c != '1') throw MapLabError(ErrorCode::kParseError, "Dyck word must be 0/1");
    dyck.push_back(c == '1');
  }
  std::vector<int> labels;
  std::size_t p = 0;
  const std::string_view line = lines[2];
  while (p <= line.size()) {
    const auto space = line.find(' ', p);
    const std::size_t stop = space == std::string_view::npos ? line.size() : space;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + p, line.data() + stop, value);
    if (ec != std::errc() || ptr != line.data() + stop || stop == p) {
      throw MapLabError(ErrorCode::kParseError, "bad label");
    }
    labels.push_back(value);
    if (space == std::string_view::npos) break;
    p = space + 1;
  }
  return WellLabeledTree(std::move(dyck), std::move(labels));
}

}  // namespace maplab
