#include "taut/audit.hpp"

#include <sstream>
#include <stdexcept>

#include "taut/master_relation.hpp"

namespace taut {

int symbol_degree(const Symbol& s, const StarTree& T) {
  switch (s.kind) {
    case SymKind::PsiRoot:
    case SymKind::PsiLeaf:
      return 1;
    case SymKind::Lambda:
      return s.b;
    case SymKind::DR:
      return T.leaf_genus[s.a];
    default:
      return 0;
  }
}

namespace {

int monomial_degree(const Monomial& m, const StarTree& T) {
  int d = 0;
  for (const auto& [s, p] : m) d += symbol_degree(s, T) * p;
  return d;
}

int vertex_genus(const StarTree& T, int v) { return v == 0 ? T.root_genus : T.leaf_genus[v - 1]; }

const char* kind_name(SymKind k) {
  switch (k) {
    case SymKind::U: return "u";
    case SymKind::A: return "a";
    case SymKind::Fact: return "fact";
    case SymKind::PowSelf: return "selfpow";
    case SymKind::UPowA: return "upow";
    case SymKind::PsiRoot: return "psiR";
    case SymKind::PsiLeaf: return "psiL";
    case SymKind::Lambda: return "lambda";
    case SymKind::DR: return "DR";
  }
  return "?";
}

}  // namespace

FormalExpr FormalExpr::scalar(const StarTree* T, int cap, const Rational& c) {
  FormalExpr out(T, cap);
  out.add({}, c);
  return out;
}

FormalExpr FormalExpr::symbol(const StarTree* T, int cap, Symbol s, int power, const Rational& c) {
  FormalExpr out(T, cap);
  Monomial m;
  if (power != 0) m[s] = power;
  out.add(m, c);
  return out;
}

void FormalExpr::add(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (T_ != nullptr && monomial_degree(m, *T_) > cap_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FormalExpr& FormalExpr::operator+=(const FormalExpr& o) {
  if (T_ == nullptr) {
    T_ = o.T_;
    cap_ = o.cap_;
  }
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FormalExpr& FormalExpr::operator*=(const Rational& c) {
  if (c.is_zero()) terms_.clear();
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

FormalExpr operator*(const FormalExpr& x, const FormalExpr& y) {
  FormalExpr out(x.T_ ? x.T_ : y.T_, x.T_ ? x.cap_ : y.cap_);
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) {
      Monomial m = mx;
      for (const auto& [s, p] : my) {
        const int q = (m[s] += p);
        if (q == 0) m.erase(s);
      }
      out.add(m, cx * cy);
    }
  return out;
}

FormalExpr FormalExpr::flip_u() const {
  FormalExpr out(T_, cap_);
  for (const auto& [m, c] : terms_) {
    int pu = 0;
    for (const auto& [s, p] : m) {
      if (s.kind == SymKind::UPowA) throw std::logic_error("flip_u: opaque u^{a(e)} atom present");
      if (s.kind == SymKind::U) pu = p;
    }
    out.add(m, pu % 2 == 0 ? c : -c);
  }
  return out;
}

FormalExpr FormalExpr::mumford_reduce() const {
  FormalExpr current = *this;
  while (true) {
    bool changed = false;
    FormalExpr next(T_, cap_);
    for (const auto& [m, c] : current.terms_) {
      // Lambda above the vertex genus vanishes.
      bool zero = false;
      const Symbol* square = nullptr;
      for (const auto& [s, p] : m) {
        if (s.kind != SymKind::Lambda) continue;
        if (s.b > vertex_genus(*T_, s.a)) zero = true;
        if (p >= 2 && square == nullptr) square = &s;
      }
      if (zero) continue;
      if (square == nullptr) {
        next.add(m, c);
        continue;
      }
      changed = true;
      const int v = square->a, l = square->b, gv = vertex_genus(*T_, v);
      Monomial rest = m;
      if ((rest[*square] -= 2) == 0) rest.erase(*square);
      // lambda_l^2 -> -2 (-1)^l sum_{i<l} (-1)^i lambda_i lambda_{2l-i}
      for (int i = 0; i < l; ++i) {
        const int j = 2 * l - i;
        if (j > gv) continue;
        Monomial t = rest;
        if (i > 0) ++t[Symbol{SymKind::Lambda, v, i}];
        ++t[Symbol{SymKind::Lambda, v, j}];
        const int sign = ((l + i) % 2 == 0) ? -2 : 2;
        next.add(t, c * Rational(sign));
      }
    }
    current = std::move(next);
    if (!changed) return current;
  }
}

FormalExpr FormalExpr::geometric(const FormalExpr& x) {
  FormalExpr out = scalar(x.T_, x.cap_, Rational(1));
  FormalExpr power = out;
  for (int k = 1; k <= x.cap_ + 1; ++k) {
    power = power * x;
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

std::string FormalExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (const auto& [s, p] : m) {
      os << '*' << kind_name(s.kind) << '[' << s.a;
      if (s.kind == SymKind::Lambda) os << ',' << s.b;
      os << ']';
      if (p != 1) os << '^' << p;
    }
  }
  return os.str();
}

namespace {

int cap_of(const StarTree& T) { return moduli_dimension(T.g, T.n + T.m); }

FormalExpr sym(const StarTree& T, SymKind k, int a = 0, int p = 1, const Rational& c = Rational(1), int b = 0) {
  return FormalExpr::symbol(&T, cap_of(T), Symbol{k, a, b}, p, c);
}

FormalExpr one(const StarTree& T, const Rational& c = Rational(1)) { return FormalExpr::scalar(&T, cap_of(T), c); }

/// sum_i sign^i lambda_i u^{g(v) - i} at vertex v.
FormalExpr hodge(const StarTree& T, int v, int sign) {
  const int gv = vertex_genus(T, v);
  FormalExpr out = sym(T, SymKind::U, 0, gv);
  for (int i = 1; i <= gv; ++i)
    out += sym(T, SymKind::Lambda, v, 1, Rational(sign < 0 && i % 2 ? -1 : 1), i) * sym(T, SymKind::U, 0, gv - i);
  return out;
}

/// lambda_{g(v)} at vertex v, or 1 in genus zero.
FormalExpr top_lambda(const StarTree& T, int v) {
  const int gv = vertex_genus(T, v);
  return gv == 0 ? one(T) : sym(T, SymKind::Lambda, v, 1, Rational(1), gv);
}

/// Multiplies every monomial of degree d by (s u)^{-d}.
FormalExpr grade(const FormalExpr& x, const StarTree& T, int s) {
  FormalExpr out(&T, x.cap());
  for (const auto& [m, c] : x.terms()) {
    const int d = monomial_degree(m, T);
    Monomial t = m;
    if ((t[Symbol{SymKind::U, 0, 0}] -= d) == 0) t.erase(Symbol{SymKind::U, 0, 0});
    out.add(t, (s < 0 && d % 2) ? -c : c);
  }
  return out;
}

/// DR cycle of leaf e; the fundamental class in genus zero.
FormalExpr dr(const StarTree& T, int e) { return T.leaf_genus[e] == 0 ? one(T) : sym(T, SymKind::DR, e); }

}  // namespace

FormalExpr alpha1(const StarTree& T) {
  const int E = T.num_edges();
  FormalExpr root = sym(T, SymKind::U, 0, -E - 1, Rational(-1)) * hodge(T, 0, -1);
  for (int e = 0; e < E; ++e) {
    root = root * sym(T, SymKind::A, e, 1) * sym(T, SymKind::PowSelf, e) * sym(T, SymKind::Fact, e, -1) *
           sym(T, SymKind::UPowA, e, -1);
    // 1/(1 - u^{-1} a psi); at a contracted root the series is (u^{-1} a)^{-1}.
    if (T.root_unstable())
      root = root * sym(T, SymKind::U, 0, 1) * sym(T, SymKind::A, e, -1);
    else
      root = root * FormalExpr::geometric(sym(T, SymKind::U, 0, -1) * sym(T, SymKind::A, e) * sym(T, SymKind::PsiRoot, e));
  }
  FormalExpr out = root;
  for (int e = 0; e < E; ++e) {
    // DR / (1 + u^{-1} a psi_last); contracted: (-u^{-1} a)^{-1}.
    if (T.leaf_unstable(e))
      out = out * sym(T, SymKind::U, 0, 1, Rational(-1)) * sym(T, SymKind::A, e, -1);
    else
      out = out * dr(T, e) *
            FormalExpr::geometric(sym(T, SymKind::U, 0, -1, Rational(-1)) * sym(T, SymKind::A, e) *
                                  sym(T, SymKind::PsiLeaf, e));
  }
  return out;
}

FormalExpr alpha2(const StarTree& T) {
  const int E = T.num_edges();
  const int sign = ((E - 1 + T.g + T.m + T.root_genus) % 2 == 0) ? 1 : -1;
  FormalExpr out = sym(T, SymKind::U, 0, E - 1 + T.m, Rational(sign)) * hodge(T, 0, +1);
  for (int e = 0; e < E; ++e) {
    out = out * sym(T, SymKind::Fact, e) * sym(T, SymKind::PowSelf, e, -1) * sym(T, SymKind::UPowA, e) *
          sym(T, SymKind::U, 0, -1);
    out = out * top_lambda(T, e + 1) * one(T, Rational(T.leaf_genus[e] % 2 ? -1 : 1));
  }
  return out;
}

FormalExpr xi_integrand_flipped(const StarTree& T) {
  const int E = T.num_edges();
  FormalExpr out = sym(T, SymKind::U, 0, XiConventions::prefactor_exponent(T.g, T.m));
  for (int e = 0; e < E; ++e) out = out * sym(T, SymKind::A, e) * sym(T, SymKind::U, 0, -1);

  if (T.root_unstable()) {
    out = out * sym(T, SymKind::U, 0, 1, Rational(XiConventions::root_u_sign)) * sym(T, SymKind::A, 0, -1);
  } else {
    FormalExpr psi = one(T);
    for (int e = 0; e < E; ++e)
      psi = psi * FormalExpr::geometric(sym(T, SymKind::A, e) * sym(T, SymKind::PsiRoot, e));
    out = out * grade(psi, T, XiConventions::root_u_sign);
  }
  for (int e = 0; e < E; ++e) {
    if (T.leaf_unstable(e)) {
      out = out * sym(T, SymKind::U, 0, 1, Rational(XiConventions::leaf_u_sign)) * sym(T, SymKind::A, e, -1);
      continue;
    }
    FormalExpr d = top_lambda(T, e + 1) * dr(T, e) *
                   FormalExpr::geometric(sym(T, SymKind::A, e) * sym(T, SymKind::PsiLeaf, e));
    out = out * grade(d, T, XiConventions::leaf_u_sign);
  }
  return out.flip_u();
}

bool edge_degrees_unique(const StarTree& T) {
  // Balancing at each vertex over infinity: sum of incident edge degrees
  // equals the sum of contact orders of its legs.
  const StableGraph G = T.graph();
  const int E = G.num_edges(), n = T.n;
  std::vector<std::vector<Rational>> M;
  std::vector<APoly> rhs;
  for (int v = 1; v < G.num_vertices(); ++v) {
    std::vector<Rational> row(E, Rational(0));
    for (int e = 0; e < E; ++e)
      if (G.edges[e][0] == v || G.edges[e][1] == v) row[e] = Rational(1);
    APoly b(n);
    for (int i = 0; i < n; ++i)
      if (G.leg_vertex[i] == v) b += APoly::variable(n, i);
    M.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
  // Gauss-Jordan elimination with polynomial right-hand sides.
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < E && rank < static_cast<int>(M.size()); ++c) {
    int p = rank;
    while (p < static_cast<int>(M.size()) && M[p][c].is_zero()) ++p;
    if (p == static_cast<int>(M.size())) continue;
    std::swap(M[p], M[rank]);
    std::swap(rhs[p], rhs[rank]);
    const Rational inv = Rational(1) / M[rank][c];
    for (auto& x : M[rank]) x *= inv;
    rhs[rank] *= inv;
    for (int r = 0; r < static_cast<int>(M.size()); ++r) {
      if (r == rank || M[r][c].is_zero()) continue;
      const Rational f = M[r][c];
      for (int k = 0; k < E; ++k) M[r][k] -= f * M[rank][k];
      rhs[r] -= rhs[rank] * f;
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank != E) return false;
  for (int r = 0; r < rank; ++r)
    if (!(rhs[r] == T.edge_part(pivot_col[r]))) return false;
  return true;
}

AuditResult audit_tree(const StarTree& T) {
  AuditResult r;
  const FormalExpr raw = alpha1(T) * alpha2(T);
  const FormalExpr reduced = raw.mumford_reduce();
  r.mumford_used = !(reduced == raw);
  const FormalExpr expected = xi_integrand_flipped(T);
  r.edge_degrees_unique = edge_degrees_unique(T);
  r.product = reduced.str();
  r.expected = expected.str();
  r.pass = reduced == expected && r.edge_degrees_unique;
  return r;
}

}  // namespace taut
