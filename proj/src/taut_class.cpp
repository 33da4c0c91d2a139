#include "taut/taut_class.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace taut {

struct StratumRegistry::Impl {
  mutable std::shared_mutex mu;
  std::deque<DecoratedStratum> strata;
  struct Meta {
    int degree, genus, legs;
  };
  std::deque<Meta> meta;
  std::unordered_map<std::string, StratumId> index;
};

StratumRegistry& StratumRegistry::instance() {
  static StratumRegistry r;
  return r;
}

StratumRegistry::Impl& StratumRegistry::impl() const {
  static Impl i;
  return i;
}

StratumId StratumRegistry::intern(const DecoratedStratum& s) { return intern_canonical(canonicalize(s).form); }

StratumId StratumRegistry::intern_canonical(const DecoratedStratum& s) {
  auto& I = impl();
  std::string key = encode(s);
  {
    std::shared_lock lock(I.mu);
    auto it = I.index.find(key);
    if (it != I.index.end()) return it->second;
  }
  std::unique_lock lock(I.mu);
  auto [it, inserted] = I.index.try_emplace(std::move(key), static_cast<StratumId>(I.strata.size()));
  if (inserted) {
    I.strata.push_back(s);
    I.meta.push_back({s.degree(), s.graph.genus(), s.graph.num_legs()});
  }
  return it->second;
}

const DecoratedStratum& StratumRegistry::get(StratumId id) const {
  auto& I = impl();
  std::shared_lock lock(I.mu);
  return I.strata.at(static_cast<std::size_t>(id));
}

int StratumRegistry::degree(StratumId id) const {
  auto& I = impl();
  std::shared_lock lock(I.mu);
  return I.meta.at(static_cast<std::size_t>(id)).degree;
}

int StratumRegistry::genus(StratumId id) const {
  auto& I = impl();
  std::shared_lock lock(I.mu);
  return I.meta.at(static_cast<std::size_t>(id)).genus;
}

int StratumRegistry::legs(StratumId id) const {
  auto& I = impl();
  std::shared_lock lock(I.mu);
  return I.meta.at(static_cast<std::size_t>(id)).legs;
}

std::size_t StratumRegistry::size() const {
  auto& I = impl();
  std::shared_lock lock(I.mu);
  return I.strata.size();
}

bool survives_truncation(const DecoratedStratum& s) {
  const auto& G = s.graph;
  if (s.degree() > moduli_dimension(G.genus(), G.num_legs())) return false;
  for (int v = 0; v < G.num_vertices(); ++v)
    if (s.vertex_degree(v) > moduli_dimension(G.vertex_genus[v], G.valence(v))) return false;
  return true;
}

TautClass TautClass::fundamental(int g, int n) {
  TautClass c(g, n);
  c.add(DecoratedStratum::bare(StableGraph::trivial(g, n)), Rational(1));
  return c;
}

TautClass TautClass::from_stratum(const DecoratedStratum& s, const Rational& c) {
  TautClass out(s.graph.genus(), s.graph.num_legs());
  out.add(s, c);
  return out;
}

TautClass TautClass::psi(int g, int n, int marking, int power) {
  if (marking < 1 || marking > n) throw std::out_of_range("psi: marking out of range");
  auto s = DecoratedStratum::bare(StableGraph::trivial(g, n));
  s.psi[marking - 1] = power;
  return from_stratum(s);
}

TautClass TautClass::kappa(int g, int n, int a) {
  auto s = DecoratedStratum::bare(StableGraph::trivial(g, n));
  s.kappa[0] = {a};
  return from_stratum(s);
}

Rational TautClass::coefficient(StratumId id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TautClass::add(StratumId id, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(id, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TautClass::add(const DecoratedStratum& s, const Rational& c) {
  if (c.is_zero()) return;
  if (s.graph.genus() != g_ || s.graph.num_legs() != n_)
    throw std::invalid_argument("TautClass::add: stratum lives on a different moduli space");
  if (!survives_truncation(s)) return;
  add(StratumRegistry::instance().intern(s), c);
}

TautClass TautClass::degree_part(int d) const {
  TautClass out(g_, n_);
  auto& R = StratumRegistry::instance();
  for (const auto& [id, c] : terms_)
    if (R.degree(id) == d) out.terms_.emplace(id, c);
  return out;
}

TautClass TautClass::truncated(int d) const {
  TautClass out(g_, n_);
  auto& R = StratumRegistry::instance();
  for (const auto& [id, c] : terms_)
    if (R.degree(id) <= d) out.terms_.emplace(id, c);
  return out;
}

int TautClass::max_degree() const {
  int d = -1;
  auto& R = StratumRegistry::instance();
  for (const auto& [id, c] : terms_) d = std::max(d, R.degree(id));
  return d;
}

bool TautClass::is_homogeneous(int d) const {
  auto& R = StratumRegistry::instance();
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return R.degree(t.first) == d; });
}

void TautClass::check_ambient(const TautClass& o) const {
  if (o.is_zero() || is_zero()) return;
  if (o.g_ != g_ || o.n_ != n_)
    throw std::invalid_argument("TautClass: mismatched ambient spaces (" + std::to_string(g_) + "," +
                                std::to_string(n_) + ") vs (" + std::to_string(o.g_) + "," + std::to_string(o.n_) +
                                ")");
}

TautClass& TautClass::operator+=(const TautClass& o) {
  check_ambient(o);
  if (is_zero()) {
    g_ = o.g_;
    n_ = o.n_;
  }
  for (const auto& [id, c] : o.terms_) add(id, c);
  return *this;
}

TautClass& TautClass::operator-=(const TautClass& o) {
  check_ambient(o);
  if (is_zero()) {
    g_ = o.g_;
    n_ = o.n_;
  }
  for (const auto& [id, c] : o.terms_) add(id, -c);
  return *this;
}

TautClass& TautClass::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [id, x] : terms_) x *= c;
  return *this;
}

bool operator==(const TautClass& a, const TautClass& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.g_ == b.g_ && a.n_ == b.n_ && a.terms_ == b.terms_;
}

std::vector<std::pair<std::string, Rational>> TautClass::sorted_terms() const {
  std::vector<std::pair<std::string, Rational>> out;
  auto& R = StratumRegistry::instance();
  out.reserve(terms_.size());
  for (const auto& [id, c] : terms_) out.emplace_back(serialize(R.get(id)), c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::string TautClass::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : sorted_terms()) {
    os << (first ? "" : "\n") << c << " * " << s;
    first = false;
  }
  return os.str();
}

}  // namespace taut
