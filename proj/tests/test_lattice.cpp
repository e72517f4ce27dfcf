#include "doctest.h"

#include <set>

#include "bpx/enumerate.hpp"
#include "bpx/errors.hpp"
#include "bpx/lattice.hpp"

using namespace bpx;

namespace {

// Independent oracle: build A_n from simple roots e_i - e_{i+1} inside the
// standard rank-(n+1) lattice.
std::vector<long> an_gram_from_embedding(int n) {
  std::vector<std::vector<long>> roots;
  for (int i = 0; i < n; ++i) {
    std::vector<long> r(n + 1, 0);
    r[i] = 1;
    r[i + 1] = -1;
    roots.push_back(r);
  }
  std::vector<long> g(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long s = 0;
      for (int k = 0; k <= n; ++k) s += roots[i][k] * roots[j][k];
      g[i * n + j] = s;
    }
  return g;
}

}  // namespace

TEST_CASE("root lattice grams") {
  auto a1 = root_lattice('A', 1);
  CHECK(a1->rank() == 1);
  CHECK(a1->g(0, 0) == 2);

  auto a2 = root_lattice('A', 2);
  CHECK(a2->g(0, 0) == 2);
  CHECK(a2->g(0, 1) == -1);
  CHECK(a2->g(1, 0) == -1);

  for (int n : {2, 3, 5}) {
    auto an = root_lattice('A', n);
    auto oracle = an_gram_from_embedding(n);
    CHECK(an->gram() == oracle);
  }

  auto e8 = root_lattice('E', 8);
  CHECK(e8->det() == 1);
  CHECK(short_vectors_list(*e8, 2).size() * 2 == 240);

  CHECK_THROWS_AS(root_lattice('D', 3), ConfigError);
  CHECK_THROWS_AS(root_lattice('E', 9), ConfigError);
}

TEST_CASE("direct sums and determinants") {
  auto a1 = root_lattice('A', 1);
  auto s1 = direct_sum({a1});
  CHECK(s1->gram() == a1->gram());

  auto s4 = direct_sum({a1, a1, a1, a1});
  CHECK(s4->rank() == 4);
  CHECK(s4->det() == 16);

  auto e8 = root_lattice('E', 8);
  auto s24 = direct_sum({e8, e8, e8});
  CHECK(s24->rank() == 24);
  CHECK(s24->det() == 1);
}

TEST_CASE("discriminant groups") {
  auto a1 = root_lattice('A', 1);
  auto d = discriminant_group(*a1);
  CHECK(d.invariant_factors == std::vector<long>{2});
  CHECK(d.exponent == 2);
  CHECK(d.determinant == 2);

  auto q = direct_sum({a1, a1, a1, a1});
  auto d4 = discriminant_group(*q);
  CHECK(d4.invariant_factors == std::vector<long>{2, 2, 2, 2});
  CHECK(d4.determinant == 16);

  // determinant equals fraction-free elimination independently
  for (char fam : {'A', 'D', 'E'}) {
    int rk = fam == 'A' ? 5 : fam == 'D' ? 6 : 7;
    auto L = root_lattice(fam, rk);
    Int prod = 1;
    for (long f : discriminant_group(*L).invariant_factors) prod *= f;
    CHECK(prod == L->det());
  }
}

TEST_CASE("ideal generators") {
  auto a1 = root_lattice('A', 1);
  CHECK(ideal_generators(*a1) == std::pair<long, long>{2, 2});
  auto q = direct_sum({a1, a1, a1, a1});
  CHECK(ideal_generators(*q) == std::pair<long, long>{2, 2});
  auto a2 = root_lattice('A', 2);
  CHECK(ideal_generators(*a2) == std::pair<long, long>{1, 2});
}

TEST_CASE("short vector enumeration against brute force") {
  auto a1 = root_lattice('A', 1);
  CHECK(short_vectors_list(*a1, 2).size() * 2 == 2);

  for (char fam : {'A', 'D'}) {
    for (int rk : {4}) {
      auto L = root_lattice(fam, rk);
      for (long n : {2LL, 4LL, 8LL}) {
        auto fast = short_vectors_list(*L, n);
        auto slow = brute_force_list(*L, n);
        CHECK(fast == slow);
      }
    }
  }
  // rejected inputs
  auto a2 = root_lattice('A', 2);
  CHECK_THROWS_AS(short_vectors_list(*a2, 3), ConfigError);
}

TEST_CASE("tally agrees with brute force including pairings") {
  auto d4 = root_lattice('D', 4);
  std::vector<long> u = {1, 0, 1, 0};
  std::vector<std::vector<long>> w = {d4->pairing_row(u)};
  auto fast = short_vector_tally(*d4, 6, w, {});
  auto slow = brute_force_tally(*d4, 6, w);
  CHECK(fast.counts == slow.counts);

  // parallel enumeration is deterministic and identical
  EnumOptions opt;
  opt.workers = 3;
  auto par = short_vector_tally(*d4, 6, w, opt);
  CHECK(par.counts == fast.counts);
}

TEST_CASE("coxeter number rejects disagreeing components") {
  RootSystemData bad;
  bad.components.push_back(RootComponent{'A', 1, 2, 2});
  bad.components.push_back(RootComponent{'A', 2, 3, 6});
  CHECK_THROWS_AS(coxeter_number(bad), ConfigError);
  RootSystemData empty;
  CHECK_THROWS_AS(coxeter_number(empty), ConfigError);
}

TEST_CASE("ordering functional") {
  OrderingFunctional ord;
  CHECK(ord.sign_of_key({0, 1, -5}) == 1);
  CHECK(ord.sign_of_key({-1, 7}) == -1);
  CHECK_THROWS_AS(ord.sign_of_key({0, 0}), ConfigError);
}

TEST_CASE("dual vectors and pairing keys") {
  auto a2 = root_lattice('A', 2);
  DualVector w1;
  w1.num = {2, 1};
  w1.den = 3;  // fundamental weight of A2
  auto key = w1.pairing_key(*a2);
  CHECK(key == std::vector<int32_t>{2, 0});
  CHECK(w1.norm(*a2) == Rat(2, 3));
  auto back = dual_from_key(*a2, key);
  CHECK(back == w1);
}
