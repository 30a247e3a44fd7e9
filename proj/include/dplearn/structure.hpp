#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "dplearn/dimensions.hpp"
#include "dplearn/hypothesis.hpp"

namespace dplearn {

// Depth-k reducing array. Tuple j+1 agrees with tuple j below coordinate j
// and flips coordinate j, so the whole array is determined by its diagonal
// bits c_j = b^(j)_j:
//   tuple(j)   = (-c_1, ..., -c_{j-1}, c_j)      for j <= k
//   tuple(k+1) = (-c_1, ..., -c_k)
struct ReducingArray {
  std::vector<Label> diagonal;

  int depth() const { return static_cast<int>(diagonal.size()); }
  // 1-based j in [1, depth()+1].
  std::vector<Label> tuple(int j) const;
  bool valid() const;
};

// Witness that a class is not depth()-irreducible: restricting along every
// array tuple keeps the class nonempty but strictly drops its Littlestone
// dimension.
struct ReductionWitness {
  std::vector<DomainPoint> points;
  ReducingArray array;
};

// Rooted tree whose non-leaf nodes carry a point tuple and a reducing array
// of matching depth; the k_v+1 child edges are labeled by the array tuples.
// Nodes are stored in creation order with stable integer ids.
class GeneralizedTree {
 public:
  GeneralizedTree();  // single unlabeled leaf

  int root() const { return 0; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  bool is_leaf(int id) const { return node(id).children.empty(); }
  int parent(int id) const { return node(id).parent; }
  // 1-based index of the edge from the parent, 0 for the root.
  int edge_index(int id) const { return node(id).edge_index; }
  const std::vector<DomainPoint>& points(int id) const { return node(id).points; }
  const ReducingArray& array(int id) const { return node(id).array; }
  const std::vector<int>& children(int id) const { return node(id).children; }

  std::vector<int> leaves() const;
  // Edge label on the way into a non-root node.
  std::vector<Label> edge_tuple(int id) const;
  ConstraintSet ancestor_set(int id) const;
  int node_height(int id) const;
  int height() const;
  int depth() const;

  // Turns a leaf into an internal node with k_v+1 fresh leaf children.
  // Returns the new children ids in edge order.
  std::vector<int> expand(int leaf_id, std::vector<DomainPoint> points, ReducingArray array);

 private:
  struct Node {
    int parent = -1;
    int edge_index = 0;
    std::vector<DomainPoint> points;
    ReducingArray array;
    std::vector<int> children;
  };

  const Node& node(int id) const;
  Node& node(int id);

  std::vector<Node> nodes_;
};

constexpr int kIrreducibleForever = std::numeric_limits<int>::max();

// Largest k such that the class is k-irreducible (kIrreducibleForever for
// singletons, 0 when not even 1-irreducible or empty). Memoized.
int irreducibility_order(const HypothesisClass& cls);

// Every depth-k tree has a root-to-leaf constraint path preserving ldim.
// Convention: 0-irreducible is vacuously true; the empty class is not
// k-irreducible for any k >= 1.
bool is_k_irreducible(const HypothesisClass& cls, int k);

// Literal definitional check over all complete depth-k trees.
bool is_k_irreducible_oracle(const HypothesisClass& cls, int k,
                             std::size_t max_trees = 1000000);

// None iff the class is k-irreducible; otherwise a witness of minimal depth
// k_v <= k. Deterministic: smallest failing depth, then smallest points.
std::optional<ReductionWitness> find_reducing_witness(const HypothesisClass& cls, int k);

// Checks the defining inequality 0 <= ldim(restriction) < ldim(cls) at every
// array tuple.
bool witness_is_valid(const HypothesisClass& cls, const ReductionWitness& witness);

// soa(cls)(x) = +1 iff ldim(cls|(x,+1)) >= ldim(cls|(x,-1)).
Hypothesis soa(const HypothesisClass& cls);

// { soa(G) : G subset of cls, G nonempty and k-irreducible }.
HypothesisClass tilde_class(const HypothesisClass& cls, int k);

// Same but without the irreducibility filter (all nonempty subsets).
HypothesisClass soa_closure(const HypothesisClass& cls);

// The unique leaf whose ancestor set preserves ldim; requires the class to be
// k-irreducible for some k >= height(tree). Throws ContractError when zero or
// several leaves qualify.
int unique_full_ldim_leaf(const HypothesisClass& cls, const GeneralizedTree& tree);

// Incomplete binary tree (all node tuples of length 1) with the same leaf
// ancestor sets. leaf_map[i] pairs tree leaf ids with binary-tree leaf ids.
GeneralizedTree gen_to_binary(const GeneralizedTree& tree,
                              std::vector<std::pair<int, int>>* leaf_map = nullptr);

void clear_structure_cache();

}  // namespace dplearn
