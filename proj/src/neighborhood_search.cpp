#include "twpart/neighborhood_search.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace twpart {

namespace {

// One top-level search owns the scratch state; recursion nodes share it.
// States are memoized on the sorted set of currently deleted vertices, so
// permutations of the same guess set are explored once. The memo is local
// to the call: query accounting stays a pure function of the arguments.
class Searcher {
 public:
  Searcher(const Graph& g, QueryLedger& ledger, int v, const SearchBudget& budget, bool enumerate_all)
      : g_(g),
        ledger_(ledger),
        v_(v),
        budget_(budget),
        enumerate_all_(enumerate_all),
        removed_(g.vertex_count(), 0),
        stamp_(g.vertex_count(), 0),
        blocker_stamp_(g.vertex_count(), 0) {}

  VertexSet run_find() {
    found_.clear();
    std::vector<int> removed_sorted;
    search(removed_sorted, budget_.c);
    if (!found_.empty()) return found_;
    return {v_};
  }

  std::vector<VertexSet> run_enumerate() {
    std::vector<int> removed_sorted;
    search(removed_sorted, budget_.c);
    return {outputs_.begin(), outputs_.end()};
  }

 private:
  // Returns true when find-mode succeeded and the search should unwind.
  bool search(std::vector<int>& removed_sorted, int depth_left) {
    // cheap dedup first: permutations of the same deletion set
    if (!visit(removed_sorted, depth_left)) return false;
    bfs();
    // Everything below this state is a function of the component of v in
    // the deleted graph. When the BFS exhausted that component, the state
    // collapses to the set of deleted vertices adjacent to it; deletions
    // that no longer touch the component are irrelevant. A truncated BFS
    // offers no such collapse (the component is only partially known).
    if (!truncated_) {
      std::vector<int> key = blockers_;
      std::sort(key.begin(), key.end());
      key.push_back(-1);  // namespace apart from raw deletion sets
      if (!visit(key, depth_left)) return false;
    }

    VertexSet s(set_.begin(), set_.end());
    std::sort(s.begin(), s.end());
    if (passes_check(s)) {
      if (!enumerate_all_) {
        found_ = std::move(s);
        return true;
      }
      outputs_.insert(s);
    }
    if (depth_left == 0) return false;
    for (int w : s) {
      if (w == v_) continue;
      removed_[w] = 1;
      auto pos = std::lower_bound(removed_sorted.begin(), removed_sorted.end(), w);
      pos = removed_sorted.insert(pos, w);
      bool done = search(removed_sorted, depth_left - 1);
      removed_sorted.erase(std::lower_bound(removed_sorted.begin(), removed_sorted.end(), w));
      removed_[w] = 0;
      if (done) return true;
    }
    return false;
  }

  // True when the state is new at this depth and must be explored.
  bool visit(const std::vector<int>& key, int depth_left) {
    auto [it, inserted] = explored_.try_emplace(key, depth_left);
    if (!inserted) {
      if (it->second >= depth_left) return false;
      it->second = depth_left;
    }
    return true;
  }

  // BFS from v in the graph minus deleted vertices, neighbors in ascending
  // id, stopping as soon as exactly k vertices are visited. Tracks the
  // deleted vertices adjacent to the visited set and whether the component
  // was exhausted.
  void bfs() {
    ++epoch_;
    set_.clear();
    blockers_.clear();
    truncated_ = false;
    set_.push_back(v_);
    stamp_[v_] = epoch_;
    if (static_cast<long long>(set_.size()) == budget_.k) {
      truncated_ = true;
      return;
    }
    for (std::size_t qi = 0; qi < set_.size(); ++qi) {
      int u = set_[qi];
      int du = g_.degree(ledger_, u);
      for (int j = 1; j <= du; ++j) {
        int w = g_.neighbor(ledger_, u, j);
        if (removed_[w]) {
          if (blocker_stamp_[w] != epoch_) {
            blocker_stamp_[w] = epoch_;
            blockers_.push_back(w);
          }
          continue;
        }
        if (stamp_[w] == epoch_) continue;
        stamp_[w] = epoch_;
        set_.push_back(w);
        if (static_cast<long long>(set_.size()) == budget_.k) {
          truncated_ = true;
          return;
        }
      }
    }
  }

  // Isolation check in the original graph (deleted vertices count as
  // outside neighbors). Size and connectivity hold by construction of the
  // BFS set; cut-size and conductance are measured with model queries.
  bool passes_check(const VertexSet& s) {
    ++epoch_;
    for (int u : s) stamp_[u] = epoch_;
    outside_.clear();
    for (int u : s) {
      int du = g_.degree(ledger_, u);
      for (int j = 1; j <= du; ++j) {
        int w = g_.neighbor(ledger_, u, j);
        if (stamp_[w] != epoch_) outside_.push_back(w);
      }
    }
    std::sort(outside_.begin(), outside_.end());
    outside_.erase(std::unique(outside_.begin(), outside_.end()), outside_.end());
    int eta = static_cast<int>(outside_.size());
    if (eta > budget_.c) return false;
    return Rational(eta, static_cast<long long>(s.size())) <= budget_.delta;
  }

  const Graph& g_;
  QueryLedger& ledger_;
  int v_;
  SearchBudget budget_;
  bool enumerate_all_;

  std::vector<char> removed_;
  std::vector<int> stamp_;
  std::vector<int> blocker_stamp_;
  int epoch_ = 0;
  std::vector<int> set_;
  std::vector<int> blockers_;
  bool truncated_ = false;
  std::vector<int> outside_;
  std::map<std::vector<int>, int> explored_;
  std::set<VertexSet> outputs_;
  VertexSet found_;
};

}  // namespace

VertexSet find_neighborhood(const Graph& g, QueryLedger& ledger, int v, const SearchBudget& budget) {
  budget.validate();
  Searcher searcher(g, ledger, v, budget, /*enumerate_all=*/false);
  return searcher.run_find();
}

std::vector<VertexSet> enumerate_neighborhoods(const Graph& g, QueryLedger& ledger, int v,
                                               const SearchBudget& budget) {
  budget.validate();
  Searcher searcher(g, ledger, v, budget, /*enumerate_all=*/true);
  return searcher.run_enumerate();
}

std::vector<int> find_coverers(const Graph& g, QueryLedger& ledger, int v,
                               const SearchBudget& budget) {
  budget.validate();
  std::vector<int> candidates = {v};
  for (const VertexSet& s : enumerate_neighborhoods(g, ledger, v, budget))
    candidates.insert(candidates.end(), s.begin(), s.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<int> coverers;
  for (int u : candidates) {
    VertexSet su = find_neighborhood(g, ledger, u, budget);
    if (vertex_set_contains(su, v)) coverers.push_back(u);
  }
  return coverers;
}

int min_cover_bruteforce(const std::vector<VertexSet>& family) {
  if (family.size() > 20) throw cap_error("min_cover_bruteforce: family larger than 20 sets");
  if (family.empty()) return 0;

  VertexSet universe;
  for (const auto& s : family) universe.insert(universe.end(), s.begin(), s.end());
  universe = make_vertex_set(universe);
  if (universe.empty()) return 0;

  const std::size_t words = (universe.size() + 63) / 64;
  auto to_mask = [&](const VertexSet& s) {
    std::vector<std::uint64_t> mask(words, 0);
    for (int x : s) {
      auto bit = static_cast<std::size_t>(
          std::lower_bound(universe.begin(), universe.end(), x) - universe.begin());
      mask[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
    return mask;
  };
  std::vector<std::vector<std::uint64_t>> masks;
  masks.reserve(family.size());
  for (const auto& s : family) masks.push_back(to_mask(s));
  const std::vector<std::uint64_t> full = to_mask(universe);

  int best = static_cast<int>(family.size());
  const unsigned f = static_cast<unsigned>(family.size());
  for (std::uint32_t pick = 1; pick < (std::uint32_t{1} << f); ++pick) {
    int size = __builtin_popcount(pick);
    if (size >= best) continue;
    std::vector<std::uint64_t> acc(words, 0);
    for (unsigned i = 0; i < f; ++i)
      if (pick & (std::uint32_t{1} << i))
        for (std::size_t w = 0; w < words; ++w) acc[w] |= masks[i][w];
    if (acc == full) best = size;
  }
  return best;
}

}  // namespace twpart
