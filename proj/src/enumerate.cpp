#include "bpx/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bpx/errors.hpp"

namespace bpx {

void ThetaTally::merge(const ThetaTally& o) {
  for (const auto& [key, c] : o.counts) counts[key] += c;
  stats.pairs += o.stats.pairs;
  stats.nodes += o.stats.nodes;
}

namespace {

// Fincke-Pohst over an LLL-reduced Gram matrix.  Floating point is used
// only to prune (with a 0.49 margin against accumulated rounding error,
// far above the ~1e-9 worst case at atlas scale); norms and pairings are
// maintained exactly in 64-bit integers and decide everything.
struct Enumerator {
  int n;
  const std::vector<long>* gram;  // reduced, row-major
  long max_norm;
  std::vector<std::vector<double>> lower;  // unit lower triangular L
  std::vector<double> diag;                // positive pivots d_j
  std::vector<std::vector<long>> pair_w;  // k rows in reduced basis

  std::vector<long> x;
  std::vector<double> center;        // c_j = sum_{i>j} L[i][j] x_i
  std::vector<long> ip;         // ip[i] = sum_{k>level} G[i][k] x_k
  std::vector<long> pairs;      // running 2*(x,u_j) ... stored doubled
  long exact_norm = 0;
  double partial_q = 0;

  uint64_t node_budget = 0;
  EnumStats stats;

  // leaf hook
  virtual void leaf(long norm) = 0;
  virtual ~Enumerator() = default;

  long g(int i, int j) const { return (*gram)[i * n + j]; }

  void prepare() {
    QMat q(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q[i][j] = Rat(g(i, j));
    Ldl l = ldl_decompose(q);
    lower.assign(n, std::vector<double>(n, 0));
    diag.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      diag[i] = l.diag[i].get_d();
      for (int j = 0; j < n; ++j) lower[i][j] = l.lower[i][j].get_d();
    }
    x.assign(n, 0);
    center.assign(n, 0);
    ip.assign(n, 0);
    pairs.assign(pair_w.size(), 0);
  }

  void set(int level, long v) {
    x[level] = v;
    if (v == 0) return;
    for (int j = 0; j < level; ++j) center[j] += lower[level][j] * v;
    for (int i = 0; i <= level; ++i) ip[i] += g(i, level) * v;
    exact_norm += v * v * g(level, level) + 2 * v * (ip[level] - g(level, level) * v);
    for (size_t t = 0; t < pair_w.size(); ++t) pairs[t] += 2 * pair_w[t][level] * v;
  }

  void unset(int level) {
    long v = x[level];
    x[level] = 0;
    if (v == 0) return;
    exact_norm -= v * v * g(level, level) + 2 * v * (ip[level] - g(level, level) * v);
    for (int i = 0; i <= level; ++i) ip[i] -= g(i, level) * v;
    for (int j = 0; j < level; ++j) center[j] -= lower[level][j] * v;
    for (size_t t = 0; t < pair_w.size(); ++t) pairs[t] -= 2 * pair_w[t][level] * v;
  }

  void descend(int level, bool all_zero, double q_above) {
    if (level < 0) {
      if (all_zero) return;
      if (exact_norm > 0 && exact_norm <= max_norm) {
        if (exact_norm % 2 != 0)
          throw ConfigError("enumerate: odd norm in an even lattice");
        ++stats.pairs;
        leaf(exact_norm);
      }
      return;
    }
    const double margin = 0.49;
    double budget = static_cast<double>(max_norm) + margin - q_above;
    if (budget < 0) return;
    double c = center[level];
    double half = std::sqrt(budget / diag[level]);
    long lb = static_cast<long>(std::ceil(-c - half - 1e-9));
    long ub = static_cast<long>(std::floor(-c + half + 1e-9));
    if (all_zero && lb < 0) lb = 0;
    for (long v = lb; v <= ub; ++v) {
      ++stats.nodes;
      if (node_budget && stats.nodes > node_budget)
        throw BudgetError("enumerate: node budget exceeded", max_norm);
      double t = v + c;
      double q = diag[level] * t * t;
      if (q > budget + 1e-9) continue;
      set(level, v);
      descend(level - 1, all_zero && v == 0, q_above + q);
      unset(level);
    }
  }

  // run the whole tree, or only the given top-level residues (for workers)
  void run(int worker, int stride) {
    const int level = n - 1;
    const double margin = 0.49;
    double budget = static_cast<double>(max_norm) + margin;
    double half = std::sqrt(budget / diag[level]);
    long ub = static_cast<long>(std::floor(half + 1e-9));
    for (long v = 0; v <= ub; ++v) {
      if (stride > 1 && v % stride != worker) continue;
      ++stats.nodes;
      double q = diag[level] * v * v;
      if (q > budget) continue;
      set(level, v);
      descend(level - 1, v == 0, q);
      unset(level);
    }
  }
};

struct TallyEnumerator : Enumerator {
  ThetaTally tally;

  void leaf(long norm) override {
    std::vector<int32_t> key(pairs.size());
    for (size_t t = 0; t < pairs.size(); ++t) key[t] = static_cast<int32_t>(pairs[t]);
    tally.counts[{norm, key}] += 1;
    for (auto& k : key) k = -k;
    tally.counts[{norm, std::move(key)}] += 1;
  }
};

struct CollectEnumerator : Enumerator {
  const IMat* transform = nullptr;  // reduced basis rows in original coords
  std::vector<std::vector<long>> out;

  void leaf(long) override {
    const int r = n;
    std::vector<long> orig(r, 0);
    for (int i = 0; i < r; ++i)
      if (x[i] != 0)
        for (int j = 0; j < r; ++j) orig[j] += x[i] * (*transform)[i][j].get_si();
    for (int j = 0; j < r; ++j) {
      if (orig[j] > 0) break;
      if (orig[j] < 0) {
        for (auto& v : orig) v = -v;
        break;
      }
    }
    out.push_back(std::move(orig));
  }
};

struct ReducedGram {
  std::vector<long> gram;
  IMat transform;
};

ReducedGram reduce(const Lattice& L) {
  IMat g = imat(L.rank(), L.rank());
  for (int i = 0; i < L.rank(); ++i)
    for (int j = 0; j < L.rank(); ++j) g[i][j] = L.g(i, j);
  LllResult r = lll_gram(g);
  ReducedGram out;
  out.transform = std::move(r.transform);
  out.gram.resize(static_cast<size_t>(L.rank()) * L.rank());
  for (int i = 0; i < L.rank(); ++i)
    for (int j = 0; j < L.rank(); ++j)
      out.gram[i * L.rank() + j] = r.gram[i][j].get_si();
  return out;
}

}  // namespace

ThetaTally short_vector_tally(const Lattice& L, long max_norm,
                              const std::vector<std::vector<long>>& spec_weights,
                              const EnumOptions& opt) {
  if (max_norm < 0 || max_norm % 2 != 0)
    throw ConfigError("short_vector_tally: maxNorm must be a nonnegative even integer");
  ThetaTally total;
  total.max_norm = max_norm;
  total.k = static_cast<int>(spec_weights.size());
  if (max_norm == 0) return total;

  ReducedGram rg = reduce(L);
  // transform pairing weights into the reduced basis
  std::vector<std::vector<long>> w(spec_weights.size(),
                                        std::vector<long>(L.rank(), 0));
  for (size_t t = 0; t < spec_weights.size(); ++t)
    for (int i = 0; i < L.rank(); ++i)
      for (int j = 0; j < L.rank(); ++j)
        w[t][i] += rg.transform[i][j].get_si() * spec_weights[t][j];

  int workers = std::max(1, opt.workers);
  std::vector<TallyEnumerator> es(workers);
  auto run_one = [&](int wi) {
    TallyEnumerator& e = es[wi];
    e.n = L.rank();
    e.gram = &rg.gram;
    e.max_norm = max_norm;
    e.pair_w = w;
    e.node_budget = opt.node_budget;
    e.prepare();
    e.run(wi, workers);
  };
  if (workers == 1) {
    run_one(0);
  } else {
    std::vector<std::thread> ts;
    for (int i = 0; i < workers; ++i) ts.emplace_back(run_one, i);
    for (auto& t : ts) t.join();
  }
  for (auto& e : es) {
    e.tally.stats = e.stats;
    total.merge(e.tally);
  }
  return total;
}

std::vector<std::vector<long>> short_vectors_list(const Lattice& L,
                                                       long max_norm,
                                                       const EnumOptions& opt) {
  if (max_norm < 0 || max_norm % 2 != 0)
    throw ConfigError("short_vectors_list: maxNorm must be a nonnegative even integer");
  if (max_norm == 0) return {};
  ReducedGram rg = reduce(L);
  CollectEnumerator e;
  e.n = L.rank();
  e.gram = &rg.gram;
  e.max_norm = max_norm;
  e.node_budget = opt.node_budget;
  e.transform = &rg.transform;
  e.prepare();
  e.run(0, 1);
  std::sort(e.out.begin(), e.out.end());
  return e.out;
}

namespace {

long isqrt_ll(long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

template <typename F>
void brute_force_visit(const Lattice& L, long max_norm, F&& visit) {
  const int n = L.rank();
  // box bounds: x_i^2 <= maxNorm * (G^{-1})_ii
  std::vector<long> bound(n);
  for (int i = 0; i < n; ++i) {
    Int num = L.adj()[i][i] * max_norm;
    Int b = num / L.det();
    bound[i] = isqrt_ll(b.get_si());
  }
  std::vector<long> x(n, -1);
  for (int i = 0; i < n; ++i) x[i] = -bound[i];
  for (;;) {
    bool zero = std::all_of(x.begin(), x.end(), [](long v) { return v == 0; });
    if (!zero) {
      // representative: first nonzero coordinate positive
      bool rep = false;
      for (int i = 0; i < n; ++i) {
        if (x[i] > 0) { rep = true; break; }
        if (x[i] < 0) break;
      }
      if (rep) {
        long norm = L.norm_of(x);
        if (norm > 0 && norm <= max_norm) visit(x, norm);
      }
    }
    int i = n - 1;
    while (i >= 0 && x[i] == bound[i]) x[i--] = -bound[i];
    if (i < 0) break;
    ++x[i];
  }
}

}  // namespace

ThetaTally brute_force_tally(const Lattice& L, long max_norm,
                             const std::vector<std::vector<long>>& spec_weights) {
  ThetaTally tally;
  tally.max_norm = max_norm;
  tally.k = static_cast<int>(spec_weights.size());
  brute_force_visit(L, max_norm, [&](const std::vector<long>& x, long norm) {
    std::vector<int32_t> key(spec_weights.size());
    for (size_t t = 0; t < spec_weights.size(); ++t) {
      long p = 0;
      for (int i = 0; i < L.rank(); ++i) p += spec_weights[t][i] * x[i];
      key[t] = static_cast<int32_t>(2 * p);
    }
    tally.counts[{norm, key}] += 1;
    for (auto& k : key) k = -k;
    tally.counts[{norm, std::move(key)}] += 1;
    ++tally.stats.pairs;
  });
  return tally;
}

std::vector<std::vector<long>> brute_force_list(const Lattice& L,
                                                     long max_norm) {
  std::vector<std::vector<long>> out;
  brute_force_visit(L, max_norm,
                    [&](const std::vector<long>& x, long) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bpx
