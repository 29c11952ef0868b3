#include "popbranch/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "popbranch/errors.hpp"

namespace popbranch {

namespace {

// vote of v for choice a over choice b; -1 encodes "no parent" (worst).
int vote(const Instance& g, int a, int b) {
  if (a == b) return 0;
  if (b < 0) return 1;
  if (a < 0) return -1;
  if (g.prefers(a, b)) return 1;
  if (g.prefers(b, a)) return -1;
  return 0;
}

void check_budget(const Instance& inst, std::uint64_t budget) {
  const auto count = parent_map_count(inst);
  if (count > budget)
    throw Error(Errc::BudgetExceeded, "enumeration needs " +
                                          (count == std::numeric_limits<std::uint64_t>::max() ? std::string("> 2^64")
                                                                                               : std::to_string(count)) +
                                          " parent maps; budget is " + std::to_string(budget));
}

// Would giving v the parent `u` close a cycle among assigned nodes?
bool closes_cycle(const Instance& g, const std::vector<int>& parent, int v, int u) {
  for (int x = u; x >= 0;) {
    if (x == v) return true;
    const int e = parent[x];
    if (e < 0) return false;
    x = g.tail(e);
  }
  return false;
}

// Depth-first search over parent maps maximizing Σ_v gain[v][choice]. Prunes
// with the per-node maxima; returns as soon as the best value exceeds `stop`.
class BestResponse {
 public:
  BestResponse(const Instance& g, const Branching& b) : g_(g), parent_(g.num_nodes(), -1) {
    const int n = g.num_nodes();
    gain_.resize(n);
    tail_max_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
      gain_[v].push_back(vote(g, -1, b.in_edge[v]));
      for (int e : g.in_edges(v)) gain_[v].push_back(vote(g, e, b.in_edge[v]));
    }
    for (int v = n - 1; v >= 0; --v) tail_max_[v] = tail_max_[v + 1] + *std::max_element(gain_[v].begin(), gain_[v].end());
  }

  int run(int stop) {
    stop_ = stop;
    best_ = 0;  // B itself scores 0
    dfs(0, 0);
    return best_;
  }

 private:
  void dfs(int v, int acc) {
    if (best_ > stop_) return;
    if (acc + tail_max_[v] <= best_) return;
    if (v == g_.num_nodes()) {
      best_ = acc;
      return;
    }
    parent_[v] = -1;
    dfs(v + 1, acc + gain_[v][0]);
    const auto in = g_.in_edges(v);
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (closes_cycle(g_, parent_, v, g_.tail(in[i]))) continue;
      parent_[v] = in[i];
      dfs(v + 1, acc + gain_[v][i + 1]);
    }
    parent_[v] = -1;
  }

  const Instance& g_;
  std::vector<std::vector<int>> gain_;
  std::vector<int> tail_max_;
  std::vector<int> parent_;
  int best_ = 0;
  int stop_ = 0;
};

// Runs body(i) for i in [0,count) across `jobs` threads.
template <class F>
void parallel_for(std::size_t count, int jobs, F body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs < 1 ? 1 : jobs, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::uint64_t parent_map_count(const Instance& inst) {
  std::uint64_t count = 1;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const std::uint64_t k = inst.in_edges(v).size() + 1;
    if (count > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    count *= k;
  }
  return count;
}

void for_each_branching(const Instance& inst, std::uint64_t budget, const std::function<bool(const Branching&)>& visit) {
  check_budget(inst, budget);
  const int n = inst.num_nodes();
  Branching b{std::vector<int>(n, -1)};
  bool go = true;
  std::function<void(int)> rec = [&](int v) {
    if (!go) return;
    if (v == n) {
      go = visit(b);
      return;
    }
    b.in_edge[v] = -1;
    rec(v + 1);
    for (int e : inst.in_edges(v)) {
      if (!go) return;
      if (closes_cycle(inst, b.in_edge, v, inst.tail(e))) continue;
      b.in_edge[v] = e;
      rec(v + 1);
    }
    b.in_edge[v] = -1;
  };
  rec(0);
}

std::vector<Branching> enumerate_branchings(const Instance& inst, std::uint64_t budget) {
  std::vector<Branching> out;
  for_each_branching(inst, budget, [&](const Branching& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

int brute_margin(const Instance& inst, const Branching& b, std::uint64_t budget) {
  check_budget(inst, budget);
  return BestResponse(inst, b).run(std::numeric_limits<int>::max());
}

std::vector<Branching> brute_popular(const Instance& inst, const OracleOptions& options) {
  const auto all = enumerate_branchings(inst, options.budget);
  std::vector<char> popular(all.size(), 0);
  parallel_for(all.size(), options.jobs, [&](std::size_t i) { popular[i] = BestResponse(inst, all[i]).run(0) <= 0; });
  std::vector<Branching> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (popular[i]) out.push_back(all[i]);
  return out;
}

BruteMargin brute_min_margin(const Instance& inst, const OracleOptions& options) {
  const auto all = enumerate_branchings(inst, options.budget);
  std::vector<int> margin(all.size());
  parallel_for(all.size(), options.jobs,
               [&](std::size_t i) { margin[i] = BestResponse(inst, all[i]).run(std::numeric_limits<int>::max()); });
  const auto it = std::min_element(margin.begin(), margin.end());
  return {*it, all[it - margin.begin()]};
}

bool factor_less(const FactorValue& a, const FactorValue& b) {
  using K = FactorValue::Kind;
  auto tier = [](K k) { return k == K::Vacuous ? 0 : k == K::Finite ? 1 : 2; };
  if (tier(a.kind) != tier(b.kind)) return tier(a.kind) < tier(b.kind);
  if (a.kind != K::Finite) return false;
  return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
}

namespace {

FactorValue factor_against(const Instance& inst, const Branching& b, const std::vector<Branching>& all) {
  const int n = inst.num_nodes();
  FactorValue best{FactorValue::Kind::Vacuous, 0, 1};
  for (const auto& other : all) {
    int pro = 0, con = 0;
    for (int v = 0; v < n; ++v) {
      const int s = vote(inst, other.in_edge[v], b.in_edge[v]);
      pro += s > 0;
      con += s < 0;
    }
    if (pro == 0) continue;
    FactorValue f = con == 0 ? FactorValue{FactorValue::Kind::Infinite, 0, 1}
                             : FactorValue{FactorValue::Kind::Finite, pro / std::gcd(pro, con), con / std::gcd(pro, con)};
    if (factor_less(best, f)) best = f;
    if (best.kind == FactorValue::Kind::Infinite) break;
  }
  return best;
}

}  // namespace

FactorValue brute_factor(const Instance& inst, const Branching& b, std::uint64_t budget) {
  return factor_against(inst, b, enumerate_branchings(inst, budget));
}

BruteFactor brute_min_factor(const Instance& inst, const OracleOptions& options) {
  const auto all = enumerate_branchings(inst, options.budget);
  std::vector<FactorValue> factor(all.size());
  parallel_for(all.size(), options.jobs, [&](std::size_t i) { factor[i] = factor_against(inst, all[i], all); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (factor_less(factor[i], factor[best])) best = i;
  return {factor[best], all[best]};
}

}  // namespace popbranch
