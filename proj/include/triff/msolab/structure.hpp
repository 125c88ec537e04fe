#pragma once

// Finite word and truncated b-ary tree structures with successor relations,
// an optional letter predicate, named constants, and named element sets.
// Values are immutable once built; expansions return modified copies.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace triff::msolab {

enum class Shape { word, tree };

class LabStructure {
 public:
  // Positions 0..length-1 with the single successor relation i -> i+1.
  // letters, when nonempty, gives each position a letter below alphabet.
  static LabStructure word(int length, int alphabet = 0, std::vector<int> letters = {});

  // Every string over {0..branching-1} of length at most depth; the empty
  // string is the designated constant "root".
  static LabStructure full_tree(int branching, int depth);

  // Explicit prefix-closed node list (strings of branch digits, "" = root).
  static LabStructure tree_from_nodes(int branching, std::vector<std::string> nodes);

  LabStructure with_constant(const std::string& name, int element) const;
  LabStructure with_set(const std::string& name, std::uint64_t members) const;
  LabStructure with_letters(std::vector<int> letters, int alphabet) const;

  // Restriction to branch j: the root plus every node whose first digit is
  // j, with induced relations; constants outside the branch are dropped,
  // sets are intersected. Tree shape only.
  LabStructure restrict_to_branch(int j) const;

  Shape shape() const { return shape_; }
  int branching() const { return branching_; }
  int size() const { return static_cast<int>(names_.size()); }
  int alphabet() const { return alphabet_; }
  bool has_letters() const { return alphabet_ > 0; }
  int letter(int v) const { return alphabet_ > 0 ? letters_[v] : -1; }

  // Child of v along branch a, -1 when absent.
  int child(int v, int a) const { return children_[v][a]; }
  bool succ(int a, int x, int y) const { return children_[x][a] == y; }

  // Node names in breadth-first (length, then lexicographic) order; word
  // positions are named by their index, the tree root by the empty string.
  const std::vector<std::string>& node_names() const { return names_; }
  int node_index(std::string_view name) const;  // -1 when absent

  const std::vector<std::pair<std::string, int>>& constants() const { return constants_; }
  const std::vector<std::pair<std::string, std::uint64_t>>& sets() const { return sets_; }

  // -1 when the name is not a constant.
  int constant_element(std::string_view name) const;
  // Pointer into sets() or nullptr.
  const std::uint64_t* set_members(std::string_view name) const;

  std::uint64_t domain_mask() const {
    return size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
  }

  // Name-independent serialization over breadth-first indices: equal strings
  // exactly for isomorphic expansions. Used as a memo key.
  std::string canonical_form() const;

  // Same branching, letter alphabet, constant names, and set names.
  static bool same_vocabulary(const LabStructure& a, const LabStructure& b);

 private:
  LabStructure() = default;
  void index_nodes();  // fills children_ from names_

  Shape shape_ = Shape::word;
  int branching_ = 1;
  int alphabet_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> children_;
  std::vector<int> letters_;
  std::vector<std::pair<std::string, int>> constants_;         // sorted by name
  std::vector<std::pair<std::string, std::uint64_t>> sets_;    // sorted by name
};

}  // namespace triff::msolab
