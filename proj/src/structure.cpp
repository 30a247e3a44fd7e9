#include "dplearn/structure.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace dplearn {

std::vector<Label> ReducingArray::tuple(int j) const {
  const int k = depth();
  if (j < 1 || j > k + 1) throw ValidationError("reducing-array tuple index out of range");
  const int len = std::min(j, k);
  std::vector<Label> out(len);
  for (int i = 0; i < len - 1; ++i) out[i] = static_cast<Label>(-diagonal[i]);
  out[len - 1] = j <= k ? diagonal[len - 1] : static_cast<Label>(-diagonal[len - 1]);
  return out;
}

bool ReducingArray::valid() const {
  if (diagonal.empty()) return false;
  for (Label c : diagonal)
    if (c != 1 && c != -1) return false;
  // Adjacent tuples must agree below the flip coordinate.
  for (int j = 1; j <= depth(); ++j) {
    auto a = tuple(j);
    auto b = tuple(j + 1);
    for (int i = 0; i + 1 < j; ++i)
      if (a[i] != b[i]) return false;
    if (b[j - 1] != -a[j - 1]) return false;
  }
  return true;
}

GeneralizedTree::GeneralizedTree() { nodes_.emplace_back(); }

const GeneralizedTree::Node& GeneralizedTree::node(int id) const {
  if (id < 0 || id >= node_count()) throw ValidationError("node id not in tree");
  return nodes_[id];
}

GeneralizedTree::Node& GeneralizedTree::node(int id) {
  if (id < 0 || id >= node_count()) throw ValidationError("node id not in tree");
  return nodes_[id];
}

std::vector<int> GeneralizedTree::leaves() const {
  std::vector<int> ids;
  for (int i = 0; i < node_count(); ++i)
    if (nodes_[i].children.empty()) ids.push_back(i);
  return ids;
}

std::vector<Label> GeneralizedTree::edge_tuple(int id) const {
  const Node& n = node(id);
  if (n.parent < 0) throw ValidationError("root has no incoming edge");
  return nodes_[n.parent].array.tuple(n.edge_index);
}

ConstraintSet GeneralizedTree::ancestor_set(int id) const {
  node(id);
  std::vector<int> path;
  for (int v = id; v >= 0; v = nodes_[v].parent) path.push_back(v);
  std::reverse(path.begin(), path.end());
  ConstraintSet out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Node& up = nodes_[path[i]];
    std::vector<Label> tuple = up.array.tuple(nodes_[path[i + 1]].edge_index);
    for (std::size_t t = 0; t < tuple.size(); ++t) out.add(up.points[t], tuple[t]);
  }
  return out;
}

int GeneralizedTree::node_height(int id) const {
  node(id);
  int h = 0;
  for (int v = id; nodes_[v].parent >= 0; v = nodes_[v].parent) {
    const Node& up = nodes_[nodes_[v].parent];
    h += std::min(nodes_[v].edge_index, up.array.depth());
  }
  return h;
}

int GeneralizedTree::height() const {
  int h = 0;
  for (int i = 0; i < node_count(); ++i) h = std::max(h, node_height(i));
  return h;
}

int GeneralizedTree::depth() const {
  int best = 0;
  for (int i = 0; i < node_count(); ++i) {
    int d = 0;
    for (int v = i; nodes_[v].parent >= 0; v = nodes_[v].parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

std::vector<int> GeneralizedTree::expand(int leaf_id, std::vector<DomainPoint> points,
                                         ReducingArray array) {
  Node& leaf = node(leaf_id);
  if (!leaf.children.empty()) throw ValidationError("expand target is not a leaf");
  if (!array.valid() || array.depth() != static_cast<int>(points.size()))
    throw ValidationError("point tuple and reducing array must have equal depth");
  leaf.points = std::move(points);
  leaf.array = std::move(array);
  std::vector<int> created;
  const int k = nodes_[leaf_id].array.depth();
  for (int j = 1; j <= k + 1; ++j) {
    Node child;
    child.parent = leaf_id;
    child.edge_index = j;
    nodes_.push_back(std::move(child));
    created.push_back(node_count() - 1);
    nodes_[leaf_id].children.push_back(node_count() - 1);
  }
  return created;
}

namespace {

std::shared_mutex order_mutex;
std::unordered_map<std::vector<std::uint64_t>, int> order_memo;

std::vector<std::uint64_t> order_key(const HypothesisClass& cls) {
  std::vector<std::uint64_t> key;
  key.reserve(cls.key().size() + 1);
  key.push_back(static_cast<std::uint64_t>(cls.domain_size()));
  key.insert(key.end(), cls.key().begin(), cls.key().end());
  return key;
}

}  // namespace

void clear_structure_cache() {
  std::unique_lock lock(order_mutex);
  order_memo.clear();
}

// Recursive characterization: a nonempty class is k-irreducible iff for every
// x there is a bit b with ldim(cls|(x,b)) = ldim(cls) and cls|(x,b)
// (k-1)-irreducible. Points on which the whole class agrees impose no
// constraint; for the rest the preserving bit is unique, and following it
// strictly shrinks the class, so the order is finite for non-singletons.
int irreducibility_order(const HypothesisClass& cls) {
  if (cls.empty()) return 0;
  if (cls.size() == 1) return kIrreducibleForever;
  auto key = order_key(cls);
  {
    std::shared_lock lock(order_mutex);
    auto it = order_memo.find(key);
    if (it != order_memo.end()) return it->second;
  }
  const int d = ldim(cls);
  int order = kIrreducibleForever;
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    HypothesisClass pos = restrict(cls, x, 1);
    if (pos.empty() || pos.size() == cls.size()) continue;
    HypothesisClass neg = restrict(cls, x, -1);
    int term = 0;
    if (ldim(pos) == d) {
      int inner = irreducibility_order(pos);
      term = inner == kIrreducibleForever ? kIrreducibleForever : 1 + inner;
    } else if (ldim(neg) == d) {
      int inner = irreducibility_order(neg);
      term = inner == kIrreducibleForever ? kIrreducibleForever : 1 + inner;
    }
    if (term < order) order = term;
    if (order == 0) break;
  }
  {
    std::unique_lock lock(order_mutex);
    order_memo.emplace(std::move(key), order);
  }
  return order;
}

bool is_k_irreducible(const HypothesisClass& cls, int k) {
  if (k < 0) throw ValidationError("irreducibility order must be >= 0");
  if (k == 0) return true;
  if (cls.empty()) return false;
  int order = irreducibility_order(cls);
  return order == kIrreducibleForever || k <= order;
}

bool is_k_irreducible_oracle(const HypothesisClass& cls, int k, std::size_t max_trees) {
  if (k < 0) throw ValidationError("irreducibility order must be >= 0");
  if (k == 0) return true;
  if (cls.empty()) return false;
  const int n_points = cls.domain_size();
  const std::uint64_t slots = (std::uint64_t{1} << k) - 1;
  if (std::pow(static_cast<double>(n_points), static_cast<double>(slots)) >
      static_cast<double>(max_trees))
    throw CapacityError("is_k_irreducible_oracle would enumerate too many trees");
  const int d = ldim(cls);

  ShatteredTree tree;
  tree.depth = k;
  tree.levels.resize(k);
  for (int t = 0; t < k; ++t) tree.levels[t].resize(std::size_t{1} << t);
  std::vector<int> odometer(slots, 0);
  while (true) {
    std::size_t pos = 0;
    for (int t = 0; t < k; ++t)
      for (std::size_t i = 0; i < tree.levels[t].size(); ++i)
        tree.levels[t][i] = static_cast<DomainPoint>(odometer[pos++]);
    bool some_path = false;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k) && !some_path; ++bits) {
      ConstraintSet path;
      for (int t = 0; t < k; ++t) {
        std::uint64_t prefix = bits & ((std::uint64_t{1} << t) - 1);
        path.add(tree.levels[t][prefix], (bits >> t) & 1 ? Label{1} : Label{-1});
      }
      if (ldim(restrict(cls, path)) == d) some_path = true;
    }
    if (!some_path) return false;
    std::size_t carry = 0;
    while (carry < slots && ++odometer[carry] == n_points) odometer[carry++] = 0;
    if (carry == slots) break;
  }
  return true;
}

namespace {

// Constructive step: build a witness of exactly the minimal failing depth m.
// For m = 1 there is a point dropping ldim on both sides; for m >= 2 there is
// a point whose unique ldim-preserving branch has minimal failing depth m-1,
// and the witness is assembled by prefixing that branch.
ReductionWitness build_witness(const HypothesisClass& cls, int m) {
  const int d = ldim(cls);
  if (m == 1) {
    for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
      HypothesisClass pos = restrict(cls, x, 1);
      if (pos.empty() || pos.size() == cls.size()) continue;
      HypothesisClass neg = restrict(cls, x, -1);
      if (ldim(pos) < d && ldim(neg) < d) {
        ReductionWitness w;
        w.points = {x};
        w.array.diagonal = {Label{1}};
        return w;
      }
    }
    throw ContractError("no depth-1 reduction point despite order 0");
  }
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    HypothesisClass pos = restrict(cls, x, 1);
    if (pos.empty() || pos.size() == cls.size()) continue;
    HypothesisClass neg = restrict(cls, x, -1);
    Label b;
    const HypothesisClass* branch;
    if (ldim(pos) == d) {
      b = 1;
      branch = &pos;
    } else if (ldim(neg) == d) {
      b = -1;
      branch = &neg;
    } else {
      continue;  // this point would witness depth 1, impossible at m >= 2
    }
    if (irreducibility_order(*branch) != m - 2) continue;
    ReductionWitness inner = build_witness(*branch, m - 1);
    ReductionWitness w;
    w.points.reserve(m);
    w.points.push_back(x);
    w.points.insert(w.points.end(), inner.points.begin(), inner.points.end());
    w.array.diagonal.reserve(m);
    w.array.diagonal.push_back(static_cast<Label>(-b));
    w.array.diagonal.insert(w.array.diagonal.end(), inner.array.diagonal.begin(),
                            inner.array.diagonal.end());
    return w;
  }
  throw ContractError("no reduction point found despite failing order");
}

}  // namespace

std::optional<ReductionWitness> find_reducing_witness(const HypothesisClass& cls, int k) {
  if (cls.empty()) throw ValidationError("reducing witness of empty class");
  if (ldim(cls) < 1) throw ValidationError("reducing witness needs ldim >= 1");
  if (is_k_irreducible(cls, k)) return std::nullopt;
  const int order = irreducibility_order(cls);
  const int m = order + 1;  // minimal failing depth
  ReductionWitness w = build_witness(cls, m);
  return w;
}

bool witness_is_valid(const HypothesisClass& cls, const ReductionWitness& witness) {
  if (!witness.array.valid()) return false;
  if (witness.points.size() != static_cast<std::size_t>(witness.array.depth())) return false;
  const int d = ldim(cls);
  for (int j = 1; j <= witness.array.depth() + 1; ++j) {
    std::vector<Label> tuple = witness.array.tuple(j);
    ConstraintSet constraints;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      constraints.add(witness.points[i], tuple[i]);
    int restricted = ldim(restrict(cls, constraints));
    if (restricted < 0 || restricted >= d) return false;
  }
  return true;
}

Hypothesis soa(const HypothesisClass& cls) {
  if (cls.empty()) throw ValidationError("soa of empty class");
  std::vector<Label> labels(cls.domain_size());
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    int up = ldim(restrict(cls, x, 1));
    int down = ldim(restrict(cls, x, -1));
    labels[x] = up >= down ? Label{1} : Label{-1};
  }
  return Hypothesis(std::move(labels));
}

namespace {

HypothesisClass soa_of_subsets(const HypothesisClass& cls, int k, bool filter) {
  std::vector<Hypothesis> out;
  const std::uint64_t subsets = std::uint64_t{1} << cls.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::vector<Hypothesis> members;
    for (int i = 0; i < cls.size(); ++i)
      if ((mask >> i) & 1) members.push_back(cls[i]);
    HypothesisClass sub(cls.domain_size(), std::move(members));
    if (filter && !is_k_irreducible(sub, k)) continue;
    out.push_back(soa(sub));
  }
  return HypothesisClass(cls.domain_size(), std::move(out));
}

}  // namespace

HypothesisClass tilde_class(const HypothesisClass& cls, int k) {
  if (cls.empty()) throw ValidationError("tilde class of empty class");
  if (cls.size() > 12) throw CapacityError("tilde_class limited to |class| <= 12");
  return soa_of_subsets(cls, k, true);
}

HypothesisClass soa_closure(const HypothesisClass& cls) {
  if (cls.empty()) throw ValidationError("soa closure of empty class");
  if (cls.size() > 16) throw CapacityError("soa_closure limited to |class| <= 16");
  return soa_of_subsets(cls, 0, false);
}

int unique_full_ldim_leaf(const HypothesisClass& cls, const GeneralizedTree& tree) {
  if (cls.empty()) throw ValidationError("leaf search for empty class");
  const int d = ldim(cls);
  std::vector<int> hits;
  for (int leaf : tree.leaves())
    if (ldim(restrict(cls, tree.ancestor_set(leaf))) == d) hits.push_back(leaf);
  if (hits.size() != 1)
    throw ContractError("expected exactly one ldim-preserving leaf, found " +
                        std::to_string(hits.size()));
  return hits[0];
}

GeneralizedTree gen_to_binary(const GeneralizedTree& tree,
                              std::vector<std::pair<int, int>>* leaf_map) {
  GeneralizedTree binary;
  if (leaf_map) leaf_map->clear();
  // Walk the original tree, mirroring each node's point tuple as a chain of
  // depth-1 nodes. chain(v): the binary-tree leaf where v's subtree attaches.
  struct Item {
    int original;
    int binary_leaf;
  };
  std::vector<Item> stack{{tree.root(), binary.root()}};
  while (!stack.empty()) {
    auto [orig, slot] = stack.back();
    stack.pop_back();
    if (tree.is_leaf(orig)) {
      if (leaf_map) leaf_map->emplace_back(orig, slot);
      continue;
    }
    const auto& pts = tree.points(orig);
    const auto& diag = tree.array(orig).diagonal;
    const int k = static_cast<int>(pts.size());
    int attach = slot;
    for (int i = 0; i < k; ++i) {
      ReducingArray unit;
      unit.diagonal = {diag[i]};
      auto kids = binary.expand(attach, {pts[i]}, unit);
      // Child edge 1 carries bit c_i: the original child labeled tuple(i+1).
      stack.push_back({tree.children(orig)[i], kids[0]});
      if (i + 1 < k) {
        attach = kids[1];  // continue the chain along bit -c_i
      } else {
        stack.push_back({tree.children(orig)[k], kids[1]});
      }
    }
  }
  return binary;
}

}  // namespace dplearn
