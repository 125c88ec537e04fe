#include "triff/msolab/structure.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace triff::msolab {

namespace {

constexpr int kMaxDomain = 62;  // sets are 64-bit masks

bool bfs_less(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

void check_name(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty name");
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw std::invalid_argument("name contains whitespace: '" + name + "'");
}

}  // namespace

void LabStructure::index_nodes() {
  std::map<std::string_view, int> index;
  for (int i = 0; i < size(); ++i) index.emplace(names_[i], i);
  children_.assign(static_cast<size_t>(size()), std::vector<int>(static_cast<size_t>(branching_), -1));
  for (int i = 0; i < size(); ++i)
    for (int a = 0; a < branching_; ++a) {
      if (shape_ == Shape::word) {
        children_[i][a] = (i + 1 < size()) ? i + 1 : -1;
      } else {
        std::string c = names_[i];
        c.push_back(static_cast<char>('0' + a));
        auto it = index.find(c);
        children_[i][a] = it == index.end() ? -1 : it->second;
      }
    }
}

LabStructure LabStructure::word(int length, int alphabet, std::vector<int> letters) {
  if (length < 0 || length > kMaxDomain)
    throw std::invalid_argument("word length must be between 0 and 62");
  if (alphabet < 0) throw std::invalid_argument("alphabet must be nonnegative");
  LabStructure s;
  s.shape_ = Shape::word;
  s.branching_ = 1;
  s.names_.reserve(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) s.names_.push_back(std::to_string(i));
  s.index_nodes();
  if (alphabet > 0) {
    if (letters.empty()) letters.assign(static_cast<size_t>(length), 0);
    s = s.with_letters(std::move(letters), alphabet);
  } else if (!letters.empty()) {
    throw std::invalid_argument("letters given without an alphabet");
  }
  return s;
}

LabStructure LabStructure::full_tree(int branching, int depth) {
  if (branching < 1 || branching > 9)
    throw std::invalid_argument("branching must be between 1 and 9");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  std::vector<std::string> nodes{""};
  std::vector<std::string> frontier{""};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (int a = 0; a < branching; ++a) {
        next.push_back(w + static_cast<char>('0' + a));
        nodes.push_back(next.back());
      }
    frontier = std::move(next);
  }
  return tree_from_nodes(branching, std::move(nodes));
}

LabStructure LabStructure::tree_from_nodes(int branching, std::vector<std::string> nodes) {
  if (branching < 1 || branching > 9)
    throw std::invalid_argument("branching must be between 1 and 9");
  std::sort(nodes.begin(), nodes.end(), bfs_less);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (static_cast<int>(nodes.size()) > kMaxDomain)
    throw std::invalid_argument("tree domain exceeds 62 nodes");
  std::set<std::string_view> present(nodes.begin(), nodes.end());
  for (const auto& w : nodes) {
    for (char c : w)
      if (c < '0' || c >= '0' + branching)
        throw std::invalid_argument("node '" + w + "' uses a digit outside the branching");
    if (!w.empty() && !present.count(std::string_view(w).substr(0, w.size() - 1)))
      throw std::invalid_argument("tree domain is not prefix-closed at '" + w + "'");
  }
  if (nodes.empty() || !nodes.front().empty())
    throw std::invalid_argument("tree domain must contain the root");
  LabStructure s;
  s.shape_ = Shape::tree;
  s.branching_ = branching;
  s.names_ = std::move(nodes);
  s.index_nodes();
  s.constants_.emplace_back("root", 0);
  return s;
}

LabStructure LabStructure::with_constant(const std::string& name, int element) const {
  check_name(name);
  if (element < 0 || element >= size()) throw std::invalid_argument("constant element out of range");
  LabStructure s = *this;
  for (const auto& [n, _] : s.constants_)
    if (n == name) throw std::invalid_argument("duplicate constant name '" + name + "'");
  s.constants_.emplace_back(name, element);
  std::sort(s.constants_.begin(), s.constants_.end());
  return s;
}

LabStructure LabStructure::with_set(const std::string& name, std::uint64_t members) const {
  check_name(name);
  if (members & ~domain_mask()) throw std::invalid_argument("set member out of range");
  LabStructure s = *this;
  for (const auto& [n, _] : s.sets_)
    if (n == name) throw std::invalid_argument("duplicate set name '" + name + "'");
  s.sets_.emplace_back(name, members);
  std::sort(s.sets_.begin(), s.sets_.end());
  return s;
}

LabStructure LabStructure::with_letters(std::vector<int> letters, int alphabet) const {
  if (alphabet < 1) throw std::invalid_argument("alphabet must be positive");
  if (static_cast<int>(letters.size()) != size())
    throw std::invalid_argument("need one letter per domain element");
  for (int l : letters)
    if (l < 0 || l >= alphabet) throw std::invalid_argument("letter out of alphabet range");
  LabStructure s = *this;
  s.alphabet_ = alphabet;
  s.letters_ = std::move(letters);
  return s;
}

LabStructure LabStructure::restrict_to_branch(int j) const {
  if (shape_ != Shape::tree) throw std::invalid_argument("restriction applies to tree structures");
  if (j < 0 || j >= branching_) throw std::invalid_argument("branch index out of range");
  std::vector<int> keep;
  for (int v = 0; v < size(); ++v)
    if (names_[v].empty() || names_[v][0] == '0' + j) keep.push_back(v);
  std::vector<int> remap(static_cast<size_t>(size()), -1);
  for (size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<int>(i);

  LabStructure s;
  s.shape_ = Shape::tree;
  s.branching_ = branching_;
  for (int v : keep) s.names_.push_back(names_[v]);
  s.index_nodes();
  if (alphabet_ > 0) {
    s.alphabet_ = alphabet_;
    for (int v : keep) s.letters_.push_back(letters_[v]);
  }
  for (const auto& [name, elem] : constants_)
    if (remap[elem] >= 0) s.constants_.emplace_back(name, remap[elem]);
  for (const auto& [name, members] : sets_) {
    std::uint64_t out = 0;
    for (size_t i = 0; i < keep.size(); ++i)
      if (members & (std::uint64_t{1} << keep[i])) out |= std::uint64_t{1} << i;
    s.sets_.emplace_back(name, out);
  }
  return s;
}

int LabStructure::node_index(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

int LabStructure::constant_element(std::string_view name) const {
  for (const auto& [n, e] : constants_)
    if (n == name) return e;
  return -1;
}

const std::uint64_t* LabStructure::set_members(std::string_view name) const {
  for (const auto& [n, m] : sets_)
    if (n == name) return &m;
  return nullptr;
}

std::string LabStructure::canonical_form() const {
  std::string out = shape_ == Shape::word ? "w" : "t";
  out += ";b=" + std::to_string(branching_);
  out += ";a=" + std::to_string(alphabet_);
  out += ";n=" + std::to_string(size());
  out += ";E";
  for (int v = 0; v < size(); ++v)
    for (int a = 0; a < branching_; ++a)
      if (children_[v][a] >= 0)
        out += " " + std::to_string(v) + ">" + std::to_string(a) + ">" +
               std::to_string(children_[v][a]);
  if (alphabet_ > 0) {
    out += ";L";
    for (int v = 0; v < size(); ++v) out += " " + std::to_string(letters_[v]);
  }
  out += ";C";
  for (const auto& [name, e] : constants_) out += " " + name + "=" + std::to_string(e);
  out += ";S";
  for (const auto& [name, members] : sets_) {
    out += " " + name + "={";
    for (int v = 0; v < size(); ++v)
      if (members & (std::uint64_t{1} << v)) out += std::to_string(v) + ",";
    out += "}";
  }
  return out;
}

bool LabStructure::same_vocabulary(const LabStructure& a, const LabStructure& b) {
  if (a.branching_ != b.branching_ || a.alphabet_ != b.alphabet_) return false;
  if (a.constants_.size() != b.constants_.size() || a.sets_.size() != b.sets_.size()) return false;
  for (size_t i = 0; i < a.constants_.size(); ++i)
    if (a.constants_[i].first != b.constants_[i].first) return false;
  for (size_t i = 0; i < a.sets_.size(); ++i)
    if (a.sets_[i].first != b.sets_[i].first) return false;
  return true;
}

}  // namespace triff::msolab
