#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maplab/plane_map.hpp"
#include "maplab/random.hpp"

namespace maplab {

/// Rooted plane tree with integer labels.
///
/// The shape is a Dyck word (1 = step away from the root, 0 = step back) of
/// length 2n. Vertices are numbered in order of first contour visit, so the
/// root is vertex 0, and `labels` is indexed by that numbering. Only the root
/// corner matters; the tree's root edge is never represented.
class WellLabeledTree {
 public:
  /// Validates the Dyck word and the label constraints (root label 0,
  /// neighbouring labels differ by at most one).
  WellLabeledTree(std::vector<std::uint8_t> dyck, std::vector<int> labels);

  std::size_t num_edges() const { return dyck_.size() / 2; }
  std::size_t num_vertices() const { return labels_.size(); }
  const std::vector<std::uint8_t>& dyck() const { return dyck_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(VertexId v) const { return labels_[v]; }

  /// Parent of each vertex; the root maps to itself.
  std::vector<VertexId> parents() const;

  bool operator==(const WellLabeledTree&) const = default;

 private:
  std::vector<std::uint8_t> dyck_;
  std::vector<int> labels_;
};

/// Contour (height) and label processes at integer times 0..2n together with
/// the vertex incident to each contour corner; corner 2n is corner 0 again.
struct ContourLabelProcess {
  std::vector<int> height;
  std::vector<int> label;
  std::vector<VertexId> vertex;

  std::size_t num_edges() const { return (height.size() - 1) / 2; }
};

/// Uniform element of the set of well-labeled trees with n edges.
WellLabeledTree sample_uniform_tree(std::size_t n, Rng& rng);
WellLabeledTree sample_uniform_tree(std::size_t n, std::uint64_t seed);

/// Uniform Dyck word with n up-steps (cycle lemma on n + 1 down-steps).
std::vector<std::uint8_t> sample_dyck_word(std::size_t n, Rng& rng);

inline constexpr std::size_t kDefaultEnumerationBound = 6;

/// All Dyck words of semi-length n in lexicographic order (up-step first).
std::vector<std::vector<std::uint8_t>> dyck_words(std::size_t n);

/// Streams every well-labeled tree with n edges exactly once, shapes in
/// `dyck_words` order and label increments in base-3 order (-1, 0, +1).
class TreeEnumerator {
 public:
  explicit TreeEnumerator(std::size_t n, std::size_t bound = kDefaultEnumerationBound);
  std::optional<WellLabeledTree> next();

 private:
  std::vector<std::vector<std::uint8_t>> shapes_;
  std::size_t shape_index_ = 0;
  std::vector<int> increments_;
  bool exhausted_ = false;
};

std::vector<WellLabeledTree> enumerate_trees(std::size_t n,
                                             std::size_t bound = kDefaultEnumerationBound);

/// Calls `visit` for every labeling of a fixed shape.
void for_each_labeling(const std::vector<std::uint8_t>& dyck,
                       const std::function<void(const WellLabeledTree&)>& visit);

ContourLabelProcess contour_label_process(const WellLabeledTree& tree);

/// Inverse of contour_label_process.
WellLabeledTree tree_from_process(const std::vector<int>& height, const std::vector<int>& label);

/// Vertices whose label is >= the label of every tree neighbour, ascending.
std::vector<VertexId> broad_local_maxima(const WellLabeledTree& tree);

/// N(j) = number of distinct vertices among v_0..v_{j-1} that are not broad
/// local maxima, for j = 0..2n.
std::vector<std::uint32_t> nj_process(const WellLabeledTree& tree);

/// Text form: "n\n", the Dyck word as a 0/1 string, then the labels.
std::string write_tree_text(const WellLabeledTree& tree);
WellLabeledTree read_tree_text(std::string_view text);

}  // namespace maplab
