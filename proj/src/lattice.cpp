#include "bpx/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bpx/errors.hpp"

namespace bpx {

Lattice::Lattice(int rank, std::vector<long> gram)
    : rank_(rank), gram_(std::move(gram)) {
  if (rank <= 0 || gram_.size() != static_cast<size_t>(rank) * rank)
    throw ConfigError("lattice: bad gram dimensions");
  for (int i = 0; i < rank; ++i) {
    if (g(i, i) % 2 != 0) throw ConfigError("lattice: odd diagonal entry");
    for (int j = 0; j < rank; ++j)
      if (g(i, j) != g(j, i)) throw ConfigError("lattice: gram not symmetric");
  }
  IMat a = imat(rank, rank);
  QMat q(rank, std::vector<Rat>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      a[i][j] = g(i, j);
      q[i][j] = Rat(g(i, j));
    }
  ldl_decompose(q);  // throws unless positive definite
  AdjDet ad = adjugate(a);
  det_ = ad.det;
  adj_ = std::move(ad.adj);
  SmithData sd = smith_with_left(a);
  smith_left_ = std::move(sd.left);
  smith_diag_ = sd.invariants;
  for (const Int& d : sd.invariants) {
    if (d > 1) {
      inv_factors_.push_back(d.get_si());
      exponent_ = std::lcm(exponent_, d.get_si());
    }
  }
  Fnv64 f;
  f.feed("lattice");
  f.feed_i64(rank);
  for (long v : gram_) f.feed_i64(v);
  digest_ = f.hex();
}

std::vector<long> Lattice::pairing_row(const std::vector<long>& c) const {
  std::vector<long> p(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) p[i] += g(i, j) * c[j];
  return p;
}

long Lattice::norm_of(const std::vector<long>& c) const {
  long n = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) n += c[i] * g(i, j) * c[j];
  return n;
}

Rat Lattice::norm24_of_key(const std::vector<int32_t>& key) const {
  // (l,l) = p^T G^{-1} p with p = key/2, so 24*(l,l) = 6 * key^T adj key / det
  Int s = 0;
  for (int i = 0; i < rank_; ++i) {
    Int row = 0;
    for (int j = 0; j < rank_; ++j) row += adj_[i][j] * key[j];
    s += row * key[i];
  }
  Rat r(6 * s, det_);
  r.canonicalize();
  return r;
}

std::string Lattice::class_of_key(const std::vector<int32_t>& key) const {
  // l mod L corresponds to p mod G Z^n; canonical form U p mod smith diag.
  // Keys are doubled pairings, so p = key/2 must be integral here.
  std::ostringstream os;
  bool trivial = true;
  for (int i = 0; i < rank_; ++i) {
    Int c = 0;
    for (int j = 0; j < rank_; ++j) {
      if (key[j] % 2 != 0) throw ConfigError("class_of_key: not a dual vector key");
      c += smith_left_[i][j] * (key[j] / 2);
    }
    Int d = smith_diag_[i];
    if (d > 1) {
      Int m;
      mpz_fdiv_r(m.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
      if (m != 0) trivial = false;
      os << m.get_str() << ".";
    }
  }
  if (trivial) return "0";
  return os.str();
}

void DualVector::normalize() {
  if (den < 0) {
    den = -den;
    for (auto& v : num) v = -v;
  }
  long g = den;
  for (long v : num) g = gcd_ll(g, v);
  if (g > 1) {
    den /= g;
    for (auto& v : num) v /= g;
  }
}

bool DualVector::is_zero() const {
  return std::all_of(num.begin(), num.end(), [](long v) { return v == 0; });
}

DualVector DualVector::operator-() const {
  DualVector r = *this;
  for (auto& v : r.num) v = -v;
  return r;
}

DualVector DualVector::operator+(const DualVector& o) const {
  DualVector r;
  long l = std::lcm(den, o.den);
  r.den = l;
  r.num.resize(num.size());
  for (size_t i = 0; i < num.size(); ++i)
    r.num[i] = num[i] * (l / den) + o.num[i] * (l / o.den);
  r.normalize();
  return r;
}

DualVector DualVector::scaled(const Rat& c) const {
  DualVector r;
  long cn = c.get_num().get_si(), cd = c.get_den().get_si();
  r.den = den * cd;
  r.num.resize(num.size());
  for (size_t i = 0; i < num.size(); ++i) r.num[i] = num[i] * cn;
  r.normalize();
  return r;
}

bool DualVector::operator<(const DualVector& o) const {
  for (size_t i = 0; i < num.size(); ++i) {
    long a = num[i] * o.den, b = o.num[i] * den;
    if (a != b) return a < b;
  }
  return false;
}

std::vector<int32_t> DualVector::pairing_key(const Lattice& L) const {
  std::vector<int32_t> key(L.rank());
  for (int i = 0; i < L.rank(); ++i) {
    long s = 0;
    for (int j = 0; j < L.rank(); ++j) s += L.g(i, j) * num[j];
    long doubled = 2 * s;
    if (doubled % den != 0)
      throw ConfigError("pairing_key: vector is not half-dual");
    key[i] = static_cast<int32_t>(doubled / den);
  }
  return key;
}

Rat DualVector::pair(const Lattice& L, const DualVector& o) const {
  Int s = 0;
  for (int i = 0; i < L.rank(); ++i)
    for (int j = 0; j < L.rank(); ++j)
      s += Int(num[i]) * L.g(i, j) * o.num[j];
  Rat r(s, Int(den) * o.den);
  r.canonicalize();
  return r;
}

DualVector dual_from_key(const Lattice& L, const std::vector<int32_t>& key) {
  // coords = G^{-1} p = adj * p / det, p = key/2
  DualVector v;
  std::vector<Int> t(L.rank(), 0);
  for (int i = 0; i < L.rank(); ++i)
    for (int j = 0; j < L.rank(); ++j) t[i] += L.adj()[i][j] * key[j];
  Int den = 2 * L.det();
  Int g = den;
  for (auto& x : t) g = gcd(g, x);
  v.num.resize(L.rank());
  for (int i = 0; i < L.rank(); ++i) v.num[i] = Int(t[i] / g).get_si();
  v.den = Int(den / g).get_si();
  v.normalize();
  return v;
}

int OrderingFunctional::sign_of_key(const std::vector<int32_t>& key) const {
  for (const auto& w : weight_rows) {
    long s = 0;
    for (size_t i = 0; i < key.size(); ++i) s += w[i] * key[i];
    if (s > 0) return 1;
    if (s < 0) return -1;
  }
  for (int32_t k : key) {
    if (k > 0) return 1;
    if (k < 0) return -1;
  }
  throw ConfigError("ordering functional undecided on a vector");
}

namespace {

// simple-root adjacency for the ADE Cartan matrices
std::vector<std::pair<int, int>> ade_edges(char family, int rank) {
  std::vector<std::pair<int, int>> e;
  if (family == 'A') {
    for (int i = 1; i < rank; ++i) e.emplace_back(i, i + 1);
  } else if (family == 'D') {
    for (int i = 1; i + 1 < rank; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(rank, rank - 2);
  } else {  // E6, E7, E8 (Bourbaki numbering)
    e.emplace_back(1, 3);
    for (int i = 3; i < rank; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(2, 4);
  }
  return e;
}

}  // namespace

LatticePtr root_lattice(char family, int rank) {
  bool ok = (family == 'A' && rank >= 1) || (family == 'D' && rank >= 4) ||
            (family == 'E' && rank >= 6 && rank <= 8);
  if (!ok) throw ConfigError("root_lattice: invalid ADE family/rank");
  std::vector<long> g(rank * rank, 0);
  for (int i = 0; i < rank; ++i) g[i * rank + i] = 2;
  for (auto [a, b] : ade_edges(family, rank)) {
    g[(a - 1) * rank + (b - 1)] = -1;
    g[(b - 1) * rank + (a - 1)] = -1;
  }
  return std::make_shared<Lattice>(rank, std::move(g));
}

LatticePtr direct_sum(const std::vector<LatticePtr>& parts) {
  if (parts.empty()) throw ConfigError("direct_sum: empty list");
  int n = 0;
  for (const auto& p : parts) n += p->rank();
  std::vector<long> g(static_cast<size_t>(n) * n, 0);
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < p->rank(); ++i)
      for (int j = 0; j < p->rank(); ++j)
        g[(off + i) * static_cast<size_t>(n) + (off + j)] = p->g(i, j);
    off += p->rank();
  }
  return std::make_shared<Lattice>(n, std::move(g));
}

DiscriminantGroup discriminant_group(const Lattice& L) {
  DiscriminantGroup d;
  d.invariant_factors = L.invariant_factors();
  d.exponent = L.discriminant_exponent();
  d.determinant = 1;
  for (long f : d.invariant_factors) d.determinant *= f;
  return d;
}

std::pair<long, long> ideal_generators(const Lattice& L) {
  long s = 0, diag = 0;
  for (int i = 0; i < L.rank(); ++i) {
    diag = gcd_ll(diag, L.g(i, i));
    for (int j = 0; j < L.rank(); ++j) s = gcd_ll(s, L.g(i, j));
  }
  long n = gcd_ll(diag, 2 * s);
  return {s, n};
}

int coxeter_number(const RootSystemData& R) {
  if (R.components.empty()) throw ConfigError("coxeter_number: empty root system");
  int h = R.components.front().coxeter;
  for (const auto& c : R.components)
    if (c.coxeter != h)
      throw ConfigError("coxeter_number: components disagree");
  return h;
}

const std::array<const char*, 24> kCuspLabels = {
    "3E8",    "E8+D16",  "D24",      "2D12",   "3D8",    "4D6",
    "6D4",    "A24",     "2A12",     "3A8",    "4A6",    "6A4",
    "8A3",    "12A2",    "24A1",     "A17+E7", "2E7+D10", "4E6",
    "A11+D7+E6", "A15+D9", "2A9+D6", "2A7+2D5", "4A5+D4", "Leech"};

bool is_cusp_label(const std::string& label) {
  for (const char* s : kCuspLabels)
    if (label == s) return true;
  return false;
}

}  // namespace bpx
