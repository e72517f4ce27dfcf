#include "doctest.h"

#include <random>

#include "bpx/errors.hpp"
#include "bpx/series.hpp"

using namespace bpx;

namespace {

// independent oracle: coefficients of prod_{n>=1} (1-q^n)^{-24} by the
// Euler convolution p(n) = sum over divisors, here computed by naive
// polynomial inversion of the 24th power built term by term
std::vector<Int> p24_oracle(int count) {
  // first ∏(1-q^n)^24 by repeated naive multiplication
  int order = count + 2;
  std::vector<Int> f(order, 0);
  f[0] = 1;
  for (int n = 1; n < order; ++n)
    for (int rep = 0; rep < 24; ++rep) {
      std::vector<Int> g(order, 0);
      for (int i = 0; i < order; ++i) {
        if (f[i] == 0) continue;
        g[i] += f[i];
        if (i + n < order) g[i + n] -= f[i];
      }
      f = std::move(g);
    }
  // then invert: sum p24(n) q^n * f = 1
  std::vector<Int> p(count, 0);
  p[0] = 1;
  for (int n = 1; n < count; ++n) {
    Int s = 0;
    for (int i = 1; i <= n; ++i) s += f[i] * p[n - i];
    p[n] = -s;
  }
  return p;
}

MultiSeries random_series(ContextPtr ctx, std::mt19937& rng, int nterms, long qmax) {
  TruncationPolicy pol{qmax, 0};
  MultiSeries s(ctx, pol);
  std::uniform_int_distribution<int> qd(0, static_cast<int>(qmax / 24)),
      cd(-4, 4), ed(-2, 2);
  for (int i = 0; i < nterms; ++i) {
    ExponentKey k;
    k.q24 = 24 * qd(rng);
    k.ell.resize(ctx->rdim);
    for (auto& e : k.ell) e = 2 * ed(rng);
    s.add_term(k, Rat(cd(rng)));
  }
  return s;
}

ExponentKey qkey(long q24) {
  ExponentKey k;
  k.q24 = q24;
  return k;
}

}  // namespace

TEST_CASE("eta, delta and p24") {
  auto eta = eta_series(24 * 6);
  CHECK(eta.coefficient(qkey(1)) == 1);
  CHECK(eta.coefficient(qkey(25)) == -1);
  CHECK(eta.coefficient(qkey(49)) == -1);

  auto delta = delta_series(24 * 5);
  CHECK(delta.coefficient(qkey(24)) == 1);      // tau(1) = 1
  CHECK(delta.coefficient(qkey(48)) == -24);    // tau(2) = -24
  CHECK(delta.coefficient(qkey(72)) == 252);

  auto p = p24_coefficients(6);
  auto oracle = p24_oracle(6);
  for (int i = 0; i < 6; ++i) CHECK(p[i] == Rat(oracle[i]));
  CHECK(p[0] == 1);
  CHECK(p[1] == 24);
  CHECK(p[2] == 324);

  // Delta * Delta^{-1} = 1 to the configured order
  auto inv = delta_inverse_series(24 * 4);
  auto prod = delta * inv;
  MultiSeries one = MultiSeries::one(scalar_context(), prod.policy());
  CHECK(prod == one);
}

TEST_CASE("ring laws on random series") {
  auto L = root_lattice('A', 2);
  auto ctx = lattice_context(L);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(ctx, rng, 6, 24 * 6);
    auto b = random_series(ctx, rng, 6, 24 * 6);
    auto c = random_series(ctx, rng, 6, 24 * 6);
    CHECK((a * b).truncated(TruncationPolicy{24 * 3, 0}) ==
          (b * a).truncated(TruncationPolicy{24 * 3, 0}));
    auto left = ((a * b) * c).truncated(TruncationPolicy{24 * 2, 0});
    auto right = (a * (b * c)).truncated(TruncationPolicy{24 * 2, 0});
    CHECK(left == right);
    auto dist_l = (a * (b + c)).truncated(TruncationPolicy{24 * 2, 0});
    auto dist_r = (a * b + a * c).truncated(TruncationPolicy{24 * 2, 0});
    CHECK(dist_l == dist_r);
  }
}

TEST_CASE("exact division") {
  auto delta = delta_series(24 * 6);
  auto L = root_lattice('A', 1);
  auto ctx = lattice_context(L);

  // (Delta * X) / Delta = X for a small lattice series
  TruncationPolicy pol{24 * 4, 0};
  MultiSeries x(ctx, pol);
  ExponentKey k;
  k.ell = {2};
  k.q24 = 24;
  x.add_term(k, 7);
  k.ell = {-2};
  k.q24 = 48;
  x.add_term(k, Rat(3, 2));
  auto q = exact_div(delta * x, delta);
  CHECK(q.truncated(TruncationPolicy{24 * 2, 0}) ==
        x.truncated(TruncationPolicy{24 * 2, 0}));

  // 1/(1-q) has all-one coefficients
  MultiSeries one_minus_q(scalar_context(), TruncationPolicy{24 * 8, 0});
  one_minus_q.add_term(qkey(0), 1);
  one_minus_q.add_term(qkey(24), -1);
  auto geo = exact_div(MultiSeries::one(scalar_context(), TruncationPolicy{}), one_minus_q);
  for (long n = 0; n <= 6; ++n) CHECK(geo.coefficient(qkey(24 * n)) == 1);

  // r1 / (r1 + r2) is not a Laurent-polynomial series
  MultiSeries num(ctx, pol), den(ctx, pol);
  k.q24 = 0;
  k.ell = {2};
  num.add_term(k, 1);
  den.add_term(k, 1);
  k.ell = {-2};
  den.add_term(k, 1);
  CHECK_THROWS_AS(exact_div(num, den), NonDivisibleError);
}

TEST_CASE("exp and log are mutually inverse") {
  auto ctx = scalar_context();
  TruncationPolicy pol{24 * 4, 24 * 3};
  // toy x = -q^{-1} s - 24 s
  MultiSeries x(ctx, pol);
  ExponentKey k;
  k.s24 = 24;
  k.q24 = -24;
  x.add_term(k, -1);
  k.q24 = 0;
  x.add_term(k, -24);

  auto e = exp_series(x);
  CHECK(e.coefficient(ExponentKey{0, 0, {}}) == 1);
  auto back = log1p_series(e - MultiSeries::one(ctx, pol));
  CHECK(back == x);

  // exp(sum s^e / e) = 1/(1-s)
  MultiSeries y(ctx, TruncationPolicy{0, 24 * 5});
  for (long e2 = 1; e2 <= 5; ++e2) {
    ExponentKey kk;
    kk.s24 = 24 * e2;
    y.add_term(kk, Rat(1, e2));
  }
  auto g = exp_series(y);
  for (long m = 0; m <= 5; ++m) {
    ExponentKey kk;
    kk.s24 = 24 * m;
    CHECK(g.coefficient(kk) == 1);
  }

  MultiSeries bad(ctx, pol);
  bad.add_term(qkey(24), 1);
  CHECK_THROWS_AS(exp_series(bad), ConfigError);
}

TEST_CASE("exact_div after mul round trip on random data") {
  auto L = root_lattice('A', 2);
  auto ctx = lattice_context(L);
  std::mt19937 rng(11);
  int done = 0;
  for (int trial = 0; trial < 40 && done < 10; ++trial) {
    auto a = random_series(ctx, rng, 5, 24 * 4);
    auto b = random_series(ctx, rng, 4, 24 * 4);
    if (b.empty()) continue;
    MultiSeries prod = a * b;
    MultiSeries q = exact_div(prod, b);
    auto win = TruncationPolicy{q.policy().q_max24, 0};
    CHECK(q == a.truncated(win));
    ++done;
  }
  CHECK(done == 10);
}

TEST_CASE("specialize is a ring homomorphism") {
  auto L = root_lattice('D', 4);
  auto full = lattice_context(L);
  auto spec = specialized_context(L, {{1, 0, 1, 0}, {0, 1, 0, 0}});
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_series(full, rng, 6, 24 * 4);
    auto b = random_series(full, rng, 6, 24 * 4);
    auto lhs = (a * b).specialize(spec);
    auto rhs = a.specialize(spec) * b.specialize(spec);
    CHECK(lhs == rhs);
  }
  // specialize(1) = 1
  auto one = MultiSeries::one(full, TruncationPolicy{24, 0});
  CHECK(one.specialize(spec) == MultiSeries::one(spec, TruncationPolicy{24, 0}));
}

TEST_CASE("coefficient outside the window is an error, not zero") {
  auto d = delta_series(24 * 2);
  CHECK_THROWS_AS(d.coefficient(qkey(24 * 5)), BudgetError);
  CHECK(d.coefficient(qkey(24 * 2)) == -24);
}

TEST_CASE("json serialization is deterministic and ordered") {
  auto L = root_lattice('A', 1);
  auto ctx = lattice_context(L);
  TruncationPolicy pol{24 * 2, 24};
  MultiSeries s(ctx, pol);
  ExponentKey k;
  k.ell = {2};
  k.q24 = 24;
  s.add_term(k, Rat(3, 2));
  k.ell = {-2};
  k.s24 = 24;
  s.add_term(k, -5);
  auto j1 = s.to_json();
  auto j2 = s.to_json();
  CHECK(j1 == j2);
  CHECK(j1.find("\"q24\"") != std::string::npos);
  CHECK(j1.find("3") != std::string::npos);
  // sorted by s24 first
  CHECK(j1.find("\"s24\":0") < j1.find("\"s24\":24"));
}
