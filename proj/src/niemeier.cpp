#include "bpx/niemeier.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "bpx/enumerate.hpp"
#include "bpx/errors.hpp"

namespace bpx {

namespace {

// ---------------------------------------------------------------- Golay

std::vector<std::vector<int>> build_golay_basis() {
  // Extended quadratic-residue construction: cyclic shifts of the
  // idempotent supported on the non-residues mod 23, plus a parity bit.
  std::set<int> nonres;
  std::set<int> squares;
  for (int a = 1; a < 23; ++a) squares.insert(a * a % 23);
  for (int a = 1; a < 23; ++a)
    if (!squares.count(a)) nonres.insert(a);

  std::vector<std::vector<int>> rows;
  for (int shift = 0; shift < 23; ++shift) {
    std::vector<int> w(24, 0);
    for (int p : nonres) w[(p + shift) % 23] = 1;
    int wt = std::accumulate(w.begin(), w.end(), 0);
    w[23] = wt % 2;
    rows.push_back(std::move(w));
  }
  // F2 row reduce to a basis
  std::vector<std::vector<int>> basis;
  for (auto w : rows) {
    for (const auto& b : basis) {
      int lead = -1;
      for (int i = 0; i < 24; ++i)
        if (b[i]) { lead = i; break; }
      if (w[lead])
        for (int i = 0; i < 24; ++i) w[i] ^= b[i];
    }
    if (std::any_of(w.begin(), w.end(), [](int v) { return v != 0; })) {
      basis.push_back(w);
      std::sort(basis.begin(), basis.end(),
                [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a > b;
                });
    }
  }
  if (basis.size() != 12) throw ConfigError("golay: basis rank != 12");
  return basis;
}

// ------------------------------------------------------- glue code data

struct GlueSpec {
  const char* label;
  std::vector<std::pair<char, int>> comps;
  std::vector<std::vector<int>> gens;
};

std::vector<std::vector<int>> cyc(std::vector<int> fixed_prefix, std::vector<int> cycle,
                                  std::vector<int> fixed_suffix = {}) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(cycle.size());
  for (int s = 0; s < n; ++s) {
    std::vector<int> g = fixed_prefix;
    for (int i = 0; i < n; ++i) g.push_back(cycle[(i + s) % n]);
    for (int v : fixed_suffix) g.push_back(v);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<int>> even_perms_0123() {
  std::vector<int> base = {0, 1, 2, 3};
  std::vector<std::vector<int>> out;
  std::vector<int> p = base;
  std::sort(p.begin(), p.end());
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (p[i] > p[j]) ++inv;
    if (inv % 2 == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<GlueSpec> glue_table() {
  std::vector<GlueSpec> t;
  auto add = [&](const char* label, std::vector<std::pair<char, int>> comps,
                 std::vector<std::vector<int>> gens) {
    t.push_back(GlueSpec{label, std::move(comps), std::move(gens)});
  };
  // Components and glue generators per cusp; D-family class labels are
  // 1 = s, 2 = v, 3 = c, A_n labels are multiples of the first
  // fundamental-weight class.
  add("3E8", {{'E', 8}, {'E', 8}, {'E', 8}}, {});
  add("E8+D16", {{'E', 8}, {'D', 16}}, {{0, 1}});
  add("D24", {{'D', 24}}, {{1}});
  add("2D12", {{'D', 12}, {'D', 12}}, {{1, 2}, {2, 1}});
  add("3D8", {{'D', 8}, {'D', 8}, {'D', 8}}, cyc({}, {1, 2, 2}));
  add("4D6", {{'D', 6}, {'D', 6}, {'D', 6}, {'D', 6}}, even_perms_0123());
  // 6D4 glue is the hexacode over F4 identified with D(D4) (0,1,w,w~) ->
  // (0, v, s, c); additive generators are the three F4 rows and their
  // w-multiples.
  add("6D4", {{'D', 4}, {'D', 4}, {'D', 4}, {'D', 4}, {'D', 4}, {'D', 4}},
      {{2, 0, 0, 2, 1, 3},
       {1, 0, 0, 1, 3, 2},
       {0, 2, 0, 2, 3, 1},
       {0, 1, 0, 1, 2, 3},
       {0, 0, 2, 2, 2, 2},
       {0, 0, 1, 1, 1, 1}});
  add("A24", {{'A', 24}}, {{5}});
  add("2A12", {{'A', 12}, {'A', 12}}, {{1, 5}});
  add("3A8", {{'A', 8}, {'A', 8}, {'A', 8}}, cyc({}, {1, 1, 4}));
  add("4A6", {{'A', 6}, {'A', 6}, {'A', 6}, {'A', 6}}, cyc({1}, {2, 1, 6}));
  add("6A4", {{'A', 4}, {'A', 4}, {'A', 4}, {'A', 4}, {'A', 4}, {'A', 4}},
      cyc({1}, {0, 1, 4, 4, 1}));
  add("8A3",
      {{'A', 3}, {'A', 3}, {'A', 3}, {'A', 3}, {'A', 3}, {'A', 3}, {'A', 3}, {'A', 3}},
      cyc({3}, {2, 0, 0, 1, 0, 1, 1}));
  {
    std::vector<std::pair<char, int>> comps(12, {'A', 2});
    add("12A2", std::move(comps), cyc({2}, {1, 1, 2, 1, 1, 1, 2, 2, 2, 1, 2}));
  }
  {
    std::vector<std::pair<char, int>> comps(24, {'A', 1});
    std::vector<std::vector<int>> gens = build_golay_basis();
    add("24A1", std::move(comps), std::move(gens));
  }
  add("A17+E7", {{'A', 17}, {'E', 7}}, {{3, 1}});
  add("2E7+D10", {{'D', 10}, {'E', 7}, {'E', 7}}, {{1, 1, 0}, {3, 0, 1}});
  add("4E6", {{'E', 6}, {'E', 6}, {'E', 6}, {'E', 6}}, cyc({1}, {0, 1, 2}));
  add("A11+D7+E6", {{'A', 11}, {'D', 7}, {'E', 6}}, {{1, 1, 1}});
  add("A15+D9", {{'A', 15}, {'D', 9}}, {{2, 1}});
  add("2A9+D6", {{'A', 9}, {'A', 9}, {'D', 6}}, {{2, 4, 0}, {5, 0, 1}, {0, 5, 3}});
  add("2A7+2D5", {{'A', 7}, {'A', 7}, {'D', 5}, {'D', 5}}, {{1, 1, 1, 2}, {1, 7, 2, 1}});
  add("4A5+D4", {{'A', 5}, {'A', 5}, {'A', 5}, {'A', 5}, {'D', 4}},
      [] {
        auto g = cyc({2}, {0, 2, 4}, {0});
        g.push_back({3, 3, 0, 0, 1});
        g.push_back({3, 0, 3, 0, 2});
        g.push_back({3, 0, 0, 3, 3});
        return g;
      }());
  return t;
}

int ade_coxeter(char family, int rank) {
  if (family == 'A') return rank + 1;
  if (family == 'D') return 2 * rank - 2;
  return rank == 6 ? 12 : rank == 7 ? 18 : 30;
}

// class representative inside one component, coordinates in its root basis
std::vector<Rat> component_class_rep(const Lattice& L, char family, int rank, int idx) {
  const int n = rank;
  std::vector<Rat> rep(n, 0);
  if (idx == 0) return rep;
  auto dual_column = [&](int col) {
    std::vector<Rat> v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = Rat(L.adj()[i][col], L.det());
      v[i].canonicalize();
    }
    return v;
  };
  std::vector<Rat> gen;
  int mult = 1;
  if (family == 'A') {
    gen = dual_column(0);
    mult = idx;
  } else if (family == 'D') {
    if (idx == 1) gen = dual_column(n - 1);       // s
    else if (idx == 2) gen = dual_column(0);      // v
    else gen = dual_column(n - 2);                // c
  } else if (family == 'E' && rank == 6) {
    gen = dual_column(0);
    mult = idx;
  } else if (family == 'E' && rank == 7) {
    gen = dual_column(6);
  } else {
    throw ConfigError("component_class_rep: no nontrivial classes");
  }
  for (int i = 0; i < n; ++i) rep[i] = Rat(mult) * gen[i];
  return rep;
}

// reduce coordinates mod 1 to a canonical coset representative
std::vector<Rat> frac_reduce(std::vector<Rat> v) {
  for (auto& c : v) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
    c -= Rat(q);
  }
  return v;
}

struct RatVecLess {
  bool operator()(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  }
};

CuspModel build_leech() {
  const auto& gb = golay_basis();
  IMat rows;
  auto push = [&](std::vector<Int> r) { rows.push_back(std::move(r)); };
  for (const auto& w : gb) {
    std::vector<Int> r(24);
    for (int i = 0; i < 24; ++i) r[i] = 2 * w[i];
    push(std::move(r));
  }
  for (int i = 0; i + 1 < 24; ++i) {
    std::vector<Int> r(24, 0);
    r[i] = 4;
    r[i + 1] = -4;
    push(std::move(r));
  }
  {
    std::vector<Int> r(24, 0);
    r[22] = 4;
    r[23] = 4;
    push(std::move(r));
  }
  {
    std::vector<Int> r(24, 1);
    r[0] = -3;
    push(std::move(r));
  }
  IMat basis = hnf_rows(std::move(rows));
  if (basis.size() != 24) throw ConfigError("leech: generators do not span rank 24");
  std::vector<long> gram(24 * 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      Int dot = 0;
      for (int k = 0; k < 24; ++k) dot += basis[i][k] * basis[j][k];
      if (dot % 8 != 0) throw ConfigError("leech: inner product not divisible by 8");
      gram[i * 24 + j] = Int(dot / 8).get_si();
    }
  CuspModel m;
  m.label = "Leech";
  m.lattice = std::make_shared<Lattice>(24, std::move(gram));
  if (m.lattice->det() != 1) throw ConfigError("leech: determinant != 1");
  if (!short_vectors_list(*m.lattice, 2).empty())
    throw ConfigError("leech: unexpected roots");
  return m;
}

CuspModel build_niemeier(const GlueSpec& spec) {
  // root lattice R and its per-component offsets
  std::vector<LatticePtr> parts;
  std::vector<int> offset;
  int pos = 0;
  for (auto [fam, rk] : spec.comps) {
    parts.push_back(root_lattice(fam, rk));
    offset.push_back(pos);
    pos += rk;
  }
  LatticePtr R = direct_sum(parts);
  const int n = R->rank();

  // glue generators as rational coordinate rows in the root basis
  std::vector<std::vector<Rat>> gens;
  for (const auto& g : spec.gens) {
    if (g.size() != spec.comps.size())
      throw ConfigError("glue generator arity mismatch");
    std::vector<Rat> row(n, 0);
    for (size_t c = 0; c < g.size(); ++c) {
      auto rep = component_class_rep(*parts[c], spec.comps[c].first,
                                     spec.comps[c].second, g[c]);
      for (int i = 0; i < parts[c]->rank(); ++i) row[offset[c] + i] = rep[i];
    }
    gens.push_back(frac_reduce(std::move(row)));
  }

  // closure of the glue group
  std::set<std::vector<Rat>, RatVecLess> code;
  code.insert(std::vector<Rat>(n, Rat(0)));
  std::vector<std::vector<Rat>> queue(code.begin(), code.end());
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      std::vector<Rat> s(n);
      for (int i = 0; i < n; ++i) s[i] = cur[i] + g[i];
      s = frac_reduce(std::move(s));
      if (code.insert(s).second) queue.push_back(std::move(s));
    }
  }
  Int code_size(static_cast<long>(code.size()));
  if (code_size * code_size != R->det())
    throw ConfigError(std::string("glue code size^2 != det(R) for ") + spec.label);

  // overlattice basis via HNF of [I ; glue] scaled to integers
  Int den = 1;
  for (const auto& v : code)
    for (const auto& c : v) den = lcm(den, Int(c.get_den()));
  long d = den.get_si();
  IMat rows;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> r(n, 0);
    r[i] = d;
    rows.push_back(std::move(r));
  }
  for (const auto& v : code) {
    std::vector<Int> r(n);
    for (int i = 0; i < n; ++i) r[i] = Rat(v[i] * d).get_num();
    rows.push_back(std::move(r));
  }
  IMat hb = hnf_rows(std::move(rows));
  if (static_cast<int>(hb.size()) != n)
    throw ConfigError(std::string("overlattice rank defect for ") + spec.label);

  QMat B(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      B[i][j] = Rat(hb[i][j], den);
      B[i][j].canonicalize();
    }

  // Gram of the overlattice: B G_R B^T
  std::vector<long> gram(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat s = 0;
      for (int k = 0; k < n; ++k) {
        Rat t = 0;
        for (int l = 0; l < n; ++l) t += B[j][l] * Rat(R->g(k, l));
        s += B[i][k] * t;
      }
      if (!is_integer(s))
        throw ConfigError(std::string("overlattice not integral for ") + spec.label);
      gram[i * n + j] = s.get_num().get_si();
    }

  CuspModel m;
  m.label = spec.label;
  m.lattice = std::make_shared<Lattice>(n, std::move(gram));
  m.basis_in_root_coords = B;
  if (m.lattice->det() != 1)
    throw ConfigError(std::string("overlattice not unimodular for ") + spec.label);

  // roots and their component decomposition
  int h = ade_coxeter(spec.comps[0].first, spec.comps[0].second);
  long expected = 0;
  for (auto [fam, rk] : spec.comps) {
    if (ade_coxeter(fam, rk) != h)
      throw ConfigError(std::string("component Coxeter mismatch for ") + spec.label);
    expected += static_cast<long>(rk) * h;
  }
  auto reps = short_vectors_list(*m.lattice, 2);
  if (static_cast<long>(reps.size()) * 2 != expected)
    throw ConfigError(std::string("root count mismatch for ") + spec.label);

  std::vector<long> comp_count(spec.comps.size(), 0);
  OrderingFunctional order;
  for (const auto& x : reps) {
    // root coordinates in the root basis must be integral
    std::vector<Rat> alpha(n, 0);
    for (int i = 0; i < n; ++i)
      if (x[i] != 0)
        for (int j = 0; j < n; ++j) alpha[j] += Rat(x[i]) * B[i][j];
    int comp = -1;
    for (int j = 0; j < n; ++j) {
      if (!is_integer(alpha[j]))
        throw ConfigError(std::string("root outside R for ") + spec.label);
      if (alpha[j] != 0) {
        int c = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), j) -
                                 offset.begin()) - 1;
        if (comp < 0) comp = c;
        else if (comp != c)
          throw ConfigError(std::string("root spans components for ") + spec.label);
      }
    }
    comp_count[comp] += 2;  // x and -x

    DualVector v;
    v.num = x;
    v.den = 1;
    m.roots.all_roots.push_back(v);
    m.roots.all_roots.push_back(-v);
    if (order.sign(*m.lattice, v) > 0)
      m.roots.positive_roots.push_back(v);
    else
      m.roots.positive_roots.push_back(-v);
  }
  for (size_t c = 0; c < spec.comps.size(); ++c) {
    if (comp_count[c] != static_cast<long>(spec.comps[c].second) * h)
      throw ConfigError(std::string("component root count mismatch for ") + spec.label);
    m.roots.components.push_back(RootComponent{spec.comps[c].first, spec.comps[c].second,
                                               h, static_cast<int>(comp_count[c])});
  }
  m.roots.coxeter_number = h;
  DualVector rho;
  rho.num.assign(n, 0);
  rho.den = 1;
  DualVector sum = rho;
  for (const auto& v : m.roots.positive_roots) sum = sum + v;
  m.roots.rho = sum.scaled(Rat(1, 2));
  std::sort(m.roots.all_roots.begin(), m.roots.all_roots.end());
  std::sort(m.roots.positive_roots.begin(), m.roots.positive_roots.end());
  return m;
}

}  // namespace

const std::vector<std::vector<int>>& golay_basis() {
  static const std::vector<std::vector<int>> basis = build_golay_basis();
  return basis;
}

std::vector<std::vector<int>> golay_codewords() {
  const auto& basis = golay_basis();
  std::vector<std::vector<int>> words;
  for (int mask = 0; mask < 4096; ++mask) {
    std::vector<int> w(24, 0);
    for (int b = 0; b < 12; ++b)
      if (mask & (1 << b))
        for (int i = 0; i < 24; ++i) w[i] ^= basis[b][i];
    words.push_back(std::move(w));
  }
  return words;
}

const CuspModel& cusp_model(const std::string& label) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<CuspModel>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(label);
  if (it != registry.end()) return *it->second;
  if (!is_cusp_label(label)) throw ConfigError("unknown cusp label: " + label);
  CuspModel m;
  if (label == "Leech") {
    m = build_leech();
  } else {
    for (const auto& spec : glue_table())
      if (label == spec.label) {
        m = build_niemeier(spec);
        break;
      }
  }
  auto ptr = std::make_unique<CuspModel>(std::move(m));
  const CuspModel& ref = *ptr;
  registry.emplace(label, std::move(ptr));
  return ref;
}

}  // namespace bpx
