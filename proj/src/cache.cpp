#include "bpx/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "bpx/errors.hpp"

namespace fs = std::filesystem;

namespace bpx {

namespace {

constexpr const char* kMagic = "bpx-theta-cache v1";

std::string body_digest(const std::vector<std::string>& lines) {
  Fnv64 f;
  for (const auto& l : lines) {
    f.feed(l);
    f.feed("\n", 1);
  }
  return f.hex();
}

std::string entry_file(const std::string& dir, const std::string& gram_digest,
                       const std::string& spec_digest, long max_norm) {
  std::ostringstream os;
  os << dir << "/theta-" << gram_digest << "-" << spec_digest << "-n" << max_norm
     << ".txt";
  return os.str();
}

struct ParsedHeader {
  int rank = 0;
  std::string gram_digest, spec_digest;
  int k = 0;
  long max_norm = 0;
  size_t entries = 0;
};

bool parse_header(std::istream& in, ParsedHeader& h, std::string& reason) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    reason = "bad magic";
    return false;
  }
  std::string key;
  if (!(in >> key >> h.rank) || key != "rank") { reason = "bad rank"; return false; }
  if (!(in >> key >> h.gram_digest) || key != "gram-digest") { reason = "bad gram-digest"; return false; }
  if (!(in >> key >> h.spec_digest) || key != "spec-digest") { reason = "bad spec-digest"; return false; }
  if (!(in >> key >> h.k) || key != "spec-k") { reason = "bad spec-k"; return false; }
  if (!(in >> key >> h.max_norm) || key != "max-norm") { reason = "bad max-norm"; return false; }
  if (!(in >> key >> h.entries) || key != "entries") { reason = "bad entries"; return false; }
  std::getline(in, line);
  return true;
}

}  // namespace

std::string cache_directory() {
  const char* d = std::getenv("BPX_CACHE_DIR");
  return d ? std::string(d) : std::string();
}

std::string spec_weights_digest(const std::vector<std::vector<long>>& w) {
  if (w.empty()) return "full";
  Fnv64 f;
  f.feed("spec");
  f.feed_i64(static_cast<long>(w.size()));
  for (const auto& row : w)
    for (long v : row) f.feed_i64(v);
  return f.hex();
}

std::optional<ThetaTally> cache_load(const Lattice& L,
                                     const std::vector<std::vector<long>>& spec_weights,
                                     long max_norm) {
  std::string dir = cache_directory();
  if (dir.empty()) return std::nullopt;
  std::string file =
      entry_file(dir, L.digest(), spec_weights_digest(spec_weights), max_norm);
  std::ifstream in(file);
  if (!in) return std::nullopt;
  ParsedHeader h;
  std::string reason;
  if (!parse_header(in, h, reason)) return std::nullopt;
  if (h.rank != L.rank() || h.gram_digest != L.digest() || h.max_norm != max_norm ||
      h.k != static_cast<int>(spec_weights.size()))
    return std::nullopt;
  ThetaTally t;
  t.max_norm = max_norm;
  t.k = h.k;
  std::vector<std::string> lines;
  for (size_t e = 0; e < h.entries; ++e) {
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    lines.push_back(line);
    std::istringstream ls(line);
    long norm, count;
    std::vector<int32_t> key(h.k);
    if (!(ls >> norm)) return std::nullopt;
    for (int i = 0; i < h.k; ++i)
      if (!(ls >> key[i])) return std::nullopt;
    if (!(ls >> count)) return std::nullopt;
    t.counts[{norm, key}] = count;
  }
  std::string tail, digest;
  if (!(in >> tail >> digest) || tail != "end") return std::nullopt;
  if (digest != body_digest(lines)) return std::nullopt;
  return t;
}

void cache_store(const Lattice& L,
                 const std::vector<std::vector<long>>& spec_weights,
                 const ThetaTally& tally) {
  std::string dir = cache_directory();
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::string file =
      entry_file(dir, L.digest(), spec_weights_digest(spec_weights), tally.max_norm);
  // per-process temp name plus atomic rename keeps concurrent writers safe
  std::string tmp = file + ".tmp" + std::to_string(getpid());
  std::vector<std::string> lines;
  for (const auto& [key, count] : tally.counts) {
    std::ostringstream ls;
    ls << key.first;
    for (int32_t v : key.second) ls << " " << v;
    ls << " " << count;
    lines.push_back(ls.str());
  }
  {
    std::ofstream out(tmp);
    out << kMagic << "\n";
    out << "rank " << L.rank() << "\n";
    out << "gram-digest " << L.digest() << "\n";
    out << "spec-digest " << spec_weights_digest(spec_weights) << "\n";
    out << "spec-k " << spec_weights.size() << "\n";
    out << "max-norm " << tally.max_norm << "\n";
    out << "entries " << lines.size() << "\n";
    for (const auto& l : lines) out << l << "\n";
    out << "end " << body_digest(lines) << "\n";
  }
  fs::rename(tmp, file, ec);
  if (ec) std::remove(tmp.c_str());
}

ThetaTally cached_tally(const Lattice& L, long max_norm,
                        const std::vector<std::vector<long>>& spec_weights,
                        const EnumOptions& opt) {
  // a larger cached run also answers a smaller request
  if (auto hit = cache_load(L, spec_weights, max_norm)) return *hit;
  ThetaTally t = short_vector_tally(L, max_norm, spec_weights, opt);
  cache_store(L, spec_weights, t);
  return t;
}

std::vector<CacheEntryInfo> cache_list(bool validate) {
  std::vector<CacheEntryInfo> out;
  std::string dir = cache_directory();
  if (dir.empty() || !fs::exists(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    CacheEntryInfo info;
    info.file = p.filename().string();
    std::ifstream in(p);
    ParsedHeader h;
    std::string reason;
    if (!parse_header(in, h, reason)) {
      info.reason = reason;
      out.push_back(info);
      continue;
    }
    info.rank = h.rank;
    info.max_norm = h.max_norm;
    info.entries = h.entries;
    if (!validate) {
      info.valid = true;
      out.push_back(info);
      continue;
    }
    std::vector<std::string> lines;
    bool ok = true;
    for (size_t e = 0; e < h.entries && ok; ++e) {
      std::string line;
      if (!std::getline(in, line)) ok = false;
      else lines.push_back(line);
    }
    std::string tail, digest;
    if (ok && (!(in >> tail >> digest) || tail != "end" || digest != body_digest(lines))) {
      ok = false;
      info.reason = "digest mismatch";
    } else if (!ok) {
      info.reason = "truncated";
    }
    info.valid = ok;
    out.push_back(info);
  }
  return out;
}

std::vector<std::string> cache_quarantine() {
  std::vector<std::string> quarantined;
  std::string dir = cache_directory();
  for (const auto& info : cache_list(true)) {
    if (info.valid) continue;
    std::error_code ec;
    fs::rename(fs::path(dir) / info.file, fs::path(dir) / (info.file + ".quarantined"),
               ec);
    if (!ec) quarantined.push_back(info.file);
  }
  return quarantined;
}

int cache_gc() {
  std::string dir = cache_directory();
  if (dir.empty() || !fs::exists(dir)) return 0;
  int removed = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".quarantined") {
      std::error_code ec;
      fs::remove(e.path(), ec);
      if (!ec) ++removed;
    }
  }
  return removed;
}

}  // namespace bpx
