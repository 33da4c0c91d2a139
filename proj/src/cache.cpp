#include "taut/cache.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "taut/psi_integrals.hpp"

namespace taut {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || v < 0) throw CacheError(where + ": bad integer '" + s + "'");
  return v;
}

std::string body_of(const PsiEntry& e) {
  std::string out = std::to_string(e.genus) + ";";
  for (std::size_t i = 0; i < e.exponents.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e.exponents[i]);
  }
  return out + ";" + e.value.str();
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t load_psi_cache(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return 0;
  std::ifstream in(path);
  if (!in) throw CacheError("cannot open cache " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCacheHeader) throw CacheError(path.string() + ": missing cache header");
  std::vector<PsiEntry> entries;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    const auto fields = split(line, ';');
    if (fields.size() != 4) throw CacheError(where + ": expected 4 fields");
    const std::string body = fields[0] + ";" + fields[1] + ";" + fields[2];
    if (fnv1a_hex(body) != fields[3]) throw CacheError(where + ": checksum mismatch");
    PsiEntry e;
    e.genus = parse_int(fields[0], where);
    if (!fields[1].empty())
      for (const auto& x : split(fields[1], ',')) e.exponents.push_back(parse_int(x, where));
    for (std::size_t i = 1; i < e.exponents.size(); ++i)
      if (e.exponents[i - 1] > e.exponents[i]) throw CacheError(where + ": exponents not sorted");
    try {
      e.value = Rational::parse(fields[2]);
    } catch (const std::exception&) {
      throw CacheError(where + ": bad rational '" + fields[2] + "'");
    }
    entries.push_back(std::move(e));
  }
  try {
    psi_memo_seed(entries);
  } catch (const std::runtime_error& err) {
    throw CacheError(path.string() + ": " + err.what());
  }
  return entries.size();
}

std::size_t save_psi_cache(const std::filesystem::path& path) {
  const auto entries = psi_memo_snapshot();
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheError("cannot write cache " + tmp.string());
    out << kCacheHeader << '\n';
    for (const auto& e : entries) {
      const std::string body = body_of(e);
      out << body << ';' << fnv1a_hex(body) << '\n';
    }
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  return entries.size();
}

}  // namespace taut
