#include "dplearn/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "dplearn/errors.hpp"

namespace dplearn {

namespace {

std::shared_mutex ldim_mutex;
std::unordered_map<std::vector<std::uint64_t>, int> ldim_memo;

std::vector<std::uint64_t> memo_key(const HypothesisClass& cls) {
  std::vector<std::uint64_t> key;
  key.reserve(cls.key().size() + 1);
  key.push_back(static_cast<std::uint64_t>(cls.domain_size()));
  key.insert(key.end(), cls.key().begin(), cls.key().end());
  return key;
}

std::optional<int> ldim_lookup(const std::vector<std::uint64_t>& key) {
  std::shared_lock lock(ldim_mutex);
  auto it = ldim_memo.find(key);
  if (it == ldim_memo.end()) return std::nullopt;
  return it->second;
}

void ldim_store(std::vector<std::uint64_t> key, int value) {
  std::unique_lock lock(ldim_mutex);
  ldim_memo.emplace(std::move(key), value);
}

}  // namespace

int ldim(const HypothesisClass& cls) {
  if (cls.empty()) return -1;
  if (cls.size() == 1) return 0;
  auto key = memo_key(cls);
  if (auto hit = ldim_lookup(key)) return *hit;

  int best = 0;
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    HypothesisClass pos = restrict(cls, x, 1);
    if (pos.empty() || pos.size() == cls.size()) continue;  // x does not split
    HypothesisClass neg = restrict(cls, x, -1);
    best = std::max(best, 1 + std::min(ldim(pos), ldim(neg)));
  }
  ldim_store(std::move(key), best);
  return best;
}

void clear_dimension_cache() {
  std::unique_lock lock(ldim_mutex);
  ldim_memo.clear();
}

bool verify_shattered(const HypothesisClass& cls, const ShatteredTree& tree) {
  if (tree.depth < 1 || static_cast<int>(tree.levels.size()) != tree.depth) return false;
  for (int t = 0; t < tree.depth; ++t)
    if (tree.levels[t].size() != (std::size_t{1} << t)) return false;
  const std::uint64_t patterns = std::uint64_t{1} << tree.depth;
  for (std::uint64_t bits = 0; bits < patterns; ++bits) {
    ConstraintSet path;
    for (int t = 0; t < tree.depth; ++t) {
      std::uint64_t prefix = bits & ((std::uint64_t{1} << t) - 1);
      DomainPoint x = tree.levels[t][prefix];
      Label b = (bits >> t) & 1 ? Label{1} : Label{-1};
      path.add(x, b);
    }
    if (restrict(cls, path).empty()) return false;
  }
  return true;
}

namespace {

// Depth-target shattered tree for a class with ldim >= target.
ShatteredTree witness_of_depth(const HypothesisClass& cls, int target) {
  ShatteredTree tree;
  tree.depth = target;
  if (target == 0) return tree;
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    HypothesisClass pos = restrict(cls, x, 1);
    if (pos.empty() || pos.size() == cls.size()) continue;
    HypothesisClass neg = restrict(cls, x, -1);
    if (std::min(ldim(pos), ldim(neg)) < target - 1) continue;
    ShatteredTree left = witness_of_depth(neg, target - 1);
    ShatteredTree right = witness_of_depth(pos, target - 1);
    tree.levels.assign(target, {});
    tree.levels[0] = {x};
    for (int t = 1; t < target; ++t) {
      tree.levels[t].resize(std::size_t{1} << t);
      for (std::size_t idx = 0; idx < tree.levels[t].size(); ++idx) {
        const ShatteredTree& side = (idx & 1) ? right : left;
        tree.levels[t][idx] = side.levels[t - 1][idx >> 1];
      }
    }
    return tree;
  }
  throw ContractError("witness recursion found no splitting point");
}

}  // namespace

std::optional<ShatteredTree> ldim_witness(const HypothesisClass& cls) {
  int d = ldim(cls);
  if (d <= 0) return std::nullopt;
  return witness_of_depth(cls, d);
}

int ldim_oracle(const HypothesisClass& cls, std::size_t max_trees) {
  if (cls.empty()) return -1;
  if (cls.size() == 1) return 0;
  const int n_points = cls.domain_size();
  int best = 0;
  for (int depth = 1;; ++depth) {
    if ((std::uint64_t{1} << depth) > static_cast<std::uint64_t>(cls.size())) break;
    const std::uint64_t slots = (std::uint64_t{1} << depth) - 1;
    double count = std::pow(static_cast<double>(n_points), static_cast<double>(slots));
    if (count > static_cast<double>(max_trees))
      throw CapacityError("ldim_oracle would enumerate too many trees");
    ShatteredTree tree;
    tree.depth = depth;
    tree.levels.resize(depth);
    for (int t = 0; t < depth; ++t) tree.levels[t].resize(std::size_t{1} << t);
    std::vector<int> odometer(slots, 0);
    bool found = false;
    while (true) {
      std::size_t pos = 0;
      for (int t = 0; t < depth; ++t)
        for (std::size_t i = 0; i < tree.levels[t].size(); ++i)
          tree.levels[t][i] = static_cast<DomainPoint>(odometer[pos++]);
      if (verify_shattered(cls, tree)) {
        found = true;
        break;
      }
      std::size_t carry = 0;
      while (carry < slots && ++odometer[carry] == n_points) odometer[carry++] = 0;
      if (carry == slots) break;
    }
    if (!found) break;
    best = depth;
  }
  return best;
}

int vcdim(const HypothesisClass& cls) {
  if (cls.empty()) return -1;
  const int n = cls.domain_size();
  int vc = 0;
  std::vector<DomainPoint> subset;
  // Recursively try subsets of each size until none shatters.
  for (int s = 1; s <= n; ++s) {
    if (cls.size() < (1 << s)) break;
    bool any = false;
    subset.assign(s, 0);
    auto shattered = [&](const std::vector<DomainPoint>& pts) {
      std::vector<bool> seen(std::size_t{1} << s, false);
      int distinct = 0;
      for (const Hypothesis& h : cls) {
        std::size_t pattern = 0;
        for (int i = 0; i < s; ++i)
          if (h(pts[i]) == 1) pattern |= std::size_t{1} << i;
        if (!seen[pattern]) {
          seen[pattern] = true;
          ++distinct;
        }
      }
      return distinct == (1 << s);
    };
    // Iterate combinations in lexicographic order.
    for (int i = 0; i < s; ++i) subset[i] = i;
    while (true) {
      if (shattered(subset)) {
        any = true;
        break;
      }
      int i = s - 1;
      while (i >= 0 && subset[i] == static_cast<DomainPoint>(n - s + i)) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < s; ++j) subset[j] = subset[j - 1] + 1;
    }
    if (!any) break;
    vc = s;
  }
  return vc;
}

HypothesisClass dual_class(const HypothesisClass& cls) {
  if (cls.empty()) throw ValidationError("dual class of empty class");
  if (cls.size() > kMaxDomainSize)
    throw CapacityError("dual class needs |F| <= 64");
  std::vector<Hypothesis> duals;
  duals.reserve(cls.domain_size());
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    std::vector<Label> labels(cls.size());
    for (int j = 0; j < cls.size(); ++j) labels[j] = cls[j](x);
    duals.emplace_back(std::move(labels));
  }
  return HypothesisClass(cls.size(), std::move(duals));
}

int dual_vcdim(const HypothesisClass& cls) { return vcdim(dual_class(cls)); }
int dual_ldim(const HypothesisClass& cls) { return ldim(dual_class(cls)); }

namespace {

bool tdim_extend(const HypothesisClass& cls, std::vector<int>& fs,
                 std::vector<DomainPoint>& xs, int target) {
  if (static_cast<int>(fs.size()) == target) return true;
  for (DomainPoint x = 0; x < static_cast<DomainPoint>(cls.domain_size()); ++x) {
    bool x_ok = true;
    for (int i : fs)
      if (cls[i](x) != -1) {
        x_ok = false;
        break;
      }
    if (!x_ok) continue;
    for (int f = 0; f < cls.size(); ++f) {
      if (cls[f](x) != 1) continue;
      bool f_ok = true;
      for (DomainPoint xj : xs)
        if (cls[f](xj) != 1) {
          f_ok = false;
          break;
        }
      if (!f_ok) continue;
      fs.push_back(f);
      xs.push_back(x);
      if (tdim_extend(cls, fs, xs, target)) return true;
      fs.pop_back();
      xs.pop_back();
    }
  }
  return false;
}

}  // namespace

int tdim(const HypothesisClass& cls, int cap) {
  if (cls.empty()) return 0;
  int best = 0;
  for (int target = 1; target <= cap; ++target) {
    std::vector<int> fs;
    std::vector<DomainPoint> xs;
    if (!tdim_extend(cls, fs, xs, target)) break;
    best = target;
  }
  return best;
}

double alpha_bound(int n, double gamma, int d_v, double c0) {
  if (n < 1) throw ValidationError("alpha_bound: n must be >= 1");
  if (gamma <= 0 || gamma >= 1) throw ValidationError("alpha_bound: gamma must be in (0,1)");
  if (d_v < 1) throw ValidationError("alpha_bound: d_v must be >= 1");
  if (c0 <= 0) throw ValidationError("alpha_bound: c0 must be > 0");
  return c0 * std::sqrt((static_cast<double>(d_v) + std::log(1.0 / gamma)) /
                        static_cast<double>(n));
}

DimensionReport compute_dimensions(const HypothesisClass& cls, bool with_witness) {
  DimensionReport report;
  report.ldim = ldim(cls);
  report.vc = vcdim(cls);
  if (with_witness) report.witness = ldim_witness(cls);
  return report;
}

}  // namespace dplearn
