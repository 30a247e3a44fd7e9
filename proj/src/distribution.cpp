#include "dplearn/distribution.hpp"

#include <algorithm>
#include <map>

namespace dplearn {

namespace {
const Rat kTolerance = rat(1, 1000000000000LL);  // 1e-12
}

Distribution::Distribution(int domain_size, std::vector<Atom> atoms)
    : domain_size_(domain_size) {
  if (domain_size < 1 || domain_size > kMaxDomainSize)
    throw ValidationError("domain size must be in [1, 64]");
  std::map<std::pair<DomainPoint, Label>, Rat> merged;
  Rat sum = 0;
  for (const Atom& a : atoms) {
    if (static_cast<int>(a.x) >= domain_size)
      throw ValidationError("distribution atom outside domain");
    if (a.y != 1 && a.y != -1) throw ValidationError("atom label must be -1 or +1");
    if (a.w < 0) throw ValidationError("negative atom weight");
    merged[{a.x, a.y}] += a.w;
    sum += a.w;
  }
  Rat gap = sum - 1;
  if (gap < 0) gap = -gap;
  if (gap > kTolerance)
    throw ValidationError("distribution weights must sum to 1 (got " +
                          rational_string(sum) + ")");
  atoms_.reserve(merged.size());
  for (auto& [key, w] : merged)
    if (w > 0) atoms_.push_back(Atom{key.first, key.second, std::move(w)});
}

Rat Distribution::weight(DomainPoint x, Label y) const {
  for (const Atom& a : atoms_)
    if (a.x == x && a.y == y) return a.w;
  return Rat(0);
}

Rat Distribution::total() const {
  Rat s = 0;
  for (const Atom& a : atoms_) s += a.w;
  return s;
}

Rat error(const Hypothesis& f, const Distribution& d) {
  if (f.domain_size() != d.domain_size())
    throw ValidationError("hypothesis/distribution domain mismatch");
  Rat e = 0;
  for (const Atom& a : d.atoms())
    if (f(a.x) != a.y) e += a.w;
  return e;
}

Rat empirical_error(const Hypothesis& f, const Dataset& s) {
  if (s.size() == 0) throw ValidationError("empirical error of empty dataset");
  long long bad = 0;
  for (const LabeledExample& ex : s.examples)
    if (f(ex.x) != ex.y) ++bad;
  return Rat(bad, s.size());
}

Distribution empirical_distribution(const Dataset& s, int domain_size) {
  if (s.size() == 0) throw ValidationError("empirical distribution of empty dataset");
  std::map<std::pair<DomainPoint, Label>, long long> counts;
  for (const LabeledExample& ex : s.examples) ++counts[{ex.x, ex.y}];
  std::vector<Atom> atoms;
  atoms.reserve(counts.size());
  for (const auto& [key, c] : counts)
    atoms.push_back(Atom{key.first, key.second, Rat(c, s.size())});
  return Distribution(domain_size, std::move(atoms));
}

HypothesisClass error_band(const HypothesisClass& cls, const Distribution& d,
                           const Rat& alpha) {
  std::vector<Hypothesis> kept;
  for (const Hypothesis& h : cls)
    if (error(h, d) <= alpha) kept.push_back(h);
  return HypothesisClass(cls.domain_size(), std::move(kept));
}

Dataset sample(const Distribution& d, int n, RandomSource& rng) {
  if (n < 1) throw ValidationError("sample size must be >= 1");
  const auto& atoms = d.atoms();
  std::vector<double> cdf(atoms.size());
  double acc = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    acc += to_double(atoms[i].w);
    cdf[i] = acc;
  }
  Dataset out;
  out.examples.reserve(n);
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform() * acc;
    std::size_t j = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (j >= atoms.size()) j = atoms.size() - 1;
    out.examples.push_back(LabeledExample{atoms[j].x, atoms[j].y});
  }
  return out;
}

bool is_realizable(const HypothesisClass& cls, const Distribution& d) {
  for (const Hypothesis& h : cls)
    if (error(h, d) == 0) return true;
  return false;
}

bool is_realizable(const HypothesisClass& cls, const Dataset& s) {
  for (const Hypothesis& h : cls)
    if (empirical_error(h, s) == 0) return true;
  return false;
}

Rat sup_error_gap(const HypothesisClass& cls, const Distribution& d1,
                  const Distribution& d2) {
  Rat sup = 0;
  for (const Hypothesis& h : cls) {
    Rat gap = error(h, d1) - error(h, d2);
    if (gap < 0) gap = -gap;
    if (gap > sup) sup = gap;
  }
  return sup;
}

}  // namespace dplearn
