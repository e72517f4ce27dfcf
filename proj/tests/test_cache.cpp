#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "bpx/cache.hpp"
#include "bpx/errors.hpp"
#include "bpx/jacobi.hpp"
#include "bpx/niemeier.hpp"

using namespace bpx;
namespace fs = std::filesystem;

namespace {

struct CacheDirGuard {
  std::string dir;
  CacheDirGuard() {
    dir = (fs::temp_directory_path() / "bpx-cache-test").string();
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv("BPX_CACHE_DIR", dir.c_str(), 1);
  }
  ~CacheDirGuard() {
    unsetenv("BPX_CACHE_DIR");
    fs::remove_all(dir);
  }
};

}  // namespace

TEST_CASE("cache round trip, validation and quarantine") {
  CacheDirGuard guard;
  CHECK(cache_list(true).empty());

  auto d4 = root_lattice('D', 4);
  std::vector<long> u = {1, 1, 0, 0};
  std::vector<std::vector<long>> w = {d4->pairing_row(u)};

  auto fresh = cached_tally(*d4, 6, w);
  auto entries = cache_list(true);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].valid);
  CHECK(entries[0].rank == 4);
  CHECK(entries[0].max_norm == 6);

  auto warm = cached_tally(*d4, 6, w);
  CHECK(warm.counts == fresh.counts);

  // tamper: flip one byte in the body -> digest mismatch -> quarantine
  fs::path file;
  for (const auto& e : fs::directory_iterator(guard.dir)) file = e.path();
  {
    std::fstream f(file, std::ios::in | std::ios::out);
    f.seekp(-20, std::ios::end);
    f.put('9');
  }
  auto after = cache_list(true);
  REQUIRE(after.size() == 1);
  CHECK_FALSE(after[0].valid);
  auto quarantined = cache_quarantine();
  CHECK(quarantined.size() == 1);
  CHECK(cache_list(true).empty());
  CHECK(cache_gc() == 1);

  // a quarantined file no longer answers; the tally is recomputed
  auto again = cached_tally(*d4, 6, w);
  CHECK(again.counts == fresh.counts);
}

TEST_CASE("results are byte-identical across worker counts and cache warmth") {
  CacheDirGuard guard;
  const auto& m = cusp_model("24A1");
  auto ctx = specialized_context(m.lattice, {m.roots.rho.num});

  EnumOptions one_worker;
  one_worker.workers = 1;
  EnumOptions three_workers;
  three_workers.workers = 3;

  auto a = weak_phi0("24A1", 1, ctx, one_worker, false);
  auto b = weak_phi0("24A1", 1, ctx, three_workers, true);   // cold cache
  auto c = weak_phi0("24A1", 1, ctx, three_workers, true);   // warm cache
  std::string ja = jacobi_to_json(a);
  CHECK(ja == jacobi_to_json(b));
  CHECK(ja == jacobi_to_json(c));
}

TEST_CASE("enumeration node budget is reported, not silent") {
  auto e8 = root_lattice('E', 8);
  EnumOptions opt;
  opt.node_budget = 10;
  CHECK_THROWS_AS(short_vector_tally(*e8, 4, {}, opt), BudgetError);
}
