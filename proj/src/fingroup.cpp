#include "nilcov/fingroup.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nilcov {

// ---------------------------------------------------------------- Pcp

Pcp Pcp::trivial(int p, int m) {
  Pcp out;
  out.p = p;
  out.m = m;
  out.power_tail.assign(m, std::vector<int>(m, 0));
  out.comm_tail.assign(m, std::vector<std::vector<int>>(m));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) out.comm_tail[j][i].assign(m, 0);
  return out;
}

void Pcp::validate() const {
  if (p < 2) throw std::invalid_argument("Pcp: p must be a prime >= 2");
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) throw std::invalid_argument("Pcp: p must be prime");
  if (m < 1) throw std::invalid_argument("Pcp: m must be >= 1");
  auto check_tail = [&](const std::vector<int>& t, int owner, const char* what) {
    if (static_cast<int>(t.size()) != m)
      throw std::invalid_argument(std::string("Pcp: bad tail length in ") + what);
    for (int k = 0; k < m; ++k) {
      if (t[k] < 0 || t[k] >= p)
        throw std::invalid_argument(std::string("Pcp: tail entry out of [0,p) in ") + what);
      if (k <= owner && t[k] != 0)
        throw std::invalid_argument(std::string("Pcp: tail references generator <= owner in ") + what);
    }
  };
  if (static_cast<int>(power_tail.size()) != m ||
      static_cast<int>(comm_tail.size()) != m)
    throw std::invalid_argument("Pcp: tail table size != m");
  for (int i = 0; i < m; ++i) check_tail(power_tail[i], i, "power relation");
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i) check_tail(comm_tail[j][i], j, "commutator relation");
}

Int Pcp::order() const {
  return boost::multiprecision::pow(Int(p), static_cast<unsigned>(m));
}

namespace {

std::vector<std::pair<int, int>> tail_syllables(const std::vector<int>& tail) {
  std::vector<std::pair<int, int>> w;
  for (std::size_t t = 0; t < tail.size(); ++t)
    if (tail[t] != 0) w.emplace_back(static_cast<int>(t), tail[t]);
  return w;
}

}  // namespace

/* Collection from the left. The invariant is
 *     value = (collected exponent vector) * (stack, top first).
 * Popping a syllable g^e: if nothing above g is collected, merge and rewrite
 * g^p -> power tail (tail letters are > g, so they go back on the stack);
 * otherwise peel one boundary letter using j g = g j [j,g]. Created material
 * always references later generators, so the process terminates.
 */
std::vector<int> pcp_mult(const Pcp& pcp, const std::vector<int>& a,
                          const std::vector<std::pair<int, int>>& word) {
  const int m = pcp.m, p = pcp.p;
  std::vector<int> ev = a;
  std::vector<std::pair<int, int>> stack(word.rbegin(), word.rend());
  while (!stack.empty()) {
    auto [g, e] = stack.back();
    stack.pop_back();
    if (e == 0) continue;
    int hi = -1;
    for (int t = m - 1; t > g; --t)
      if (ev[t] != 0) {
        hi = t;
        break;
      }
    if (hi < 0) {
      ev[g] += e;
      while (ev[g] >= p) {
        ev[g] -= p;
        auto tail = tail_syllables(pcp.power_tail[g]);
        stack.insert(stack.end(), tail.rbegin(), tail.rend());
      }
      continue;
    }
    // ev ends in hi^f with hi > g:  hi^f g^e = hi^{f-1} g hi [hi,g] g^{e-1}
    ev[hi] -= 1;
    if (e > 1) stack.emplace_back(g, e - 1);
    auto tail = tail_syllables(pcp.comm_tail[hi][g]);
    stack.insert(stack.end(), tail.rbegin(), tail.rend());
    stack.emplace_back(hi, 1);
    stack.emplace_back(g, 1);
  }
  return ev;
}

std::vector<int> pcp_mult(const Pcp& pcp, const std::vector<int>& a,
                          const std::vector<int>& b) {
  return pcp_mult(pcp, a, tail_syllables(b));
}

bool pcp_consistency_check(const Pcp& pcp) {
  pcp.validate();
  const int m = pcp.m, p = pcp.p;
  auto unit = [&](int g) {
    std::vector<int> ev(m, 0);
    ev[g] = 1;
    return ev;
  };
  auto pow_ev = [&](int g, int e) {
    std::vector<int> ev(m, 0);
    ev[g] = e;
    return ev;
  };
  auto mul = [&](const std::vector<int>& x, const std::vector<int>& y) {
    return pcp_mult(pcp, x, y);
  };

  // associativity overlaps (g_k g_j) g_i = g_k (g_j g_i), k > j > i
  for (int k = 2; k < m; ++k)
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i)
        if (mul(mul(unit(k), unit(j)), unit(i)) !=
            mul(unit(k), mul(unit(j), unit(i))))
          return false;
  // power overlaps, j > i
  for (int j = 1; j < m; ++j)
    for (int i = 0; i < j; ++i) {
      if (mul(pcp.power_tail[j], unit(i)) !=
          mul(pow_ev(j, p - 1), mul(unit(j), unit(i))))
        return false;
      if (mul(unit(j), pcp.power_tail[i]) !=
          mul(mul(unit(j), unit(i)), pow_ev(i, p - 1)))
        return false;
    }
  // g_i^{p+1} both ways
  for (int i = 0; i < m; ++i)
    if (mul(unit(i), pcp.power_tail[i]) != mul(pcp.power_tail[i], unit(i)))
      return false;
  return true;
}

// ------------------------------------------------------- Pcp text format

namespace {

int parse_gen(const std::string& tok, int m) {
  if (tok.size() < 2 || tok[0] != 'g')
    throw std::invalid_argument("Pcp parse: expected generator, got '" + tok + "'");
  int idx = std::stoi(tok.substr(1));
  if (idx < 1 || idx > m)
    throw std::invalid_argument("Pcp parse: generator index out of range in '" + tok + "'");
  return idx - 1;
}

std::vector<int> parse_tail(const std::string& rhs, int m, int p) {
  std::vector<int> tail(m, 0);
  std::istringstream ss(rhs);
  std::string tok;
  while (ss >> tok) {
    if (tok == "1") continue;
    int exp = 1;
    auto caret = tok.find('^');
    std::string gen = tok;
    if (caret != std::string::npos) {
      gen = tok.substr(0, caret);
      exp = std::stoi(tok.substr(caret + 1));
    }
    int idx = parse_gen(gen, m);
    if (exp < 0 || exp >= p)
      throw std::invalid_argument("Pcp parse: exponent out of [0,p) in '" + tok + "'");
    tail[idx] = (tail[idx] + exp) % p;
  }
  return tail;
}

}  // namespace

Pcp Pcp::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int p = 0, m = 0;
  bool have_pcp = false;
  Pcp out;
  std::vector<std::pair<std::string, std::string>> relations;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("Pcp parse: missing '=' in line: " + line);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string lhs = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 1));
    if (lhs == "p") {
      p = std::stoi(rhs);
    } else if (lhs == "m") {
      m = std::stoi(rhs);
    } else {
      if (p == 0 || m == 0)
        throw std::invalid_argument("Pcp parse: p and m must precede relations");
      if (!have_pcp) {
        out = Pcp::trivial(p, m);
        have_pcp = true;
      }
      if (lhs.size() > 1 && lhs[0] == '[') {
        auto close = lhs.find(']');
        auto comma = lhs.find(',');
        if (close == std::string::npos || comma == std::string::npos)
          throw std::invalid_argument("Pcp parse: bad commutator lhs: " + lhs);
        int j = parse_gen(trim(lhs.substr(1, comma - 1)), m);
        int i = parse_gen(trim(lhs.substr(comma + 1, close - comma - 1)), m);
        if (j <= i)
          throw std::invalid_argument("Pcp parse: commutator must be [gj,gi] with j > i");
        out.comm_tail[j][i] = parse_tail(rhs, m, p);
      } else {
        auto caret = lhs.find('^');
        if (caret == std::string::npos)
          throw std::invalid_argument("Pcp parse: bad lhs: " + lhs);
        int i = parse_gen(trim(lhs.substr(0, caret)), m);
        int e = std::stoi(lhs.substr(caret + 1));
        if (e != p)
          throw std::invalid_argument("Pcp parse: power relation must use exponent p");
        out.power_tail[i] = parse_tail(rhs, m, p);
      }
    }
  }
  if (p == 0 || m == 0) throw std::invalid_argument("Pcp parse: p or m missing");
  if (!have_pcp) out = Pcp::trivial(p, m);
  out.validate();
  return out;
}

std::string Pcp::str() const {
  std::ostringstream out;
  out << "p = " << p << "\n" << "m = " << m << "\n";
  auto tail_str = [&](const std::vector<int>& t) {
    std::string s;
    for (int k = 0; k < m; ++k) {
      if (t[k] == 0) continue;
      if (!s.empty()) s += " ";
      s += "g" + std::to_string(k + 1);
      if (t[k] != 1) s += "^" + std::to_string(t[k]);
    }
    return s.empty() ? std::string("1") : s;
  };
  for (int i = 0; i < m; ++i)
    if (tail_syllables(power_tail[i]).size())
      out << "g" << i + 1 << "^" << p << " = " << tail_str(power_tail[i]) << "\n";
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < j; ++i)
      if (tail_syllables(comm_tail[j][i]).size())
        out << "[g" << j + 1 << ",g" << i + 1 << "] = " << tail_str(comm_tail[j][i]) << "\n";
  return out.str();
}

// --------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<int> table, int order,
                         std::vector<std::string> labels,
                         std::vector<int> generator_hint)
    : n_(order), t_(std::move(table)), labels_(std::move(labels)) {
  if (n_ < 1) throw std::invalid_argument("FiniteGroup: order must be >= 1");
  if (t_.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("FiniteGroup: table size != order^2");
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (int i = 0; i < n_; ++i) labels_.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != n_)
    throw std::invalid_argument("FiniteGroup: label count != order");
  verify(generator_hint);
}

void FiniteGroup::verify(const std::vector<int>& gen_hint) {
  // entries in range + Latin square
  std::vector<char> seen(n_);
  for (int r = 0; r < n_; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n_; ++c) {
      int v = mul(r, c);
      if (v < 0 || v >= n_ || seen[v])
        throw std::invalid_argument("FiniteGroup: table row is not a permutation");
      seen[v] = 1;
    }
  }
  for (int c = 0; c < n_; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n_; ++r) {
      int v = mul(r, c);
      if (seen[v])
        throw std::invalid_argument("FiniteGroup: table column is not a permutation");
      seen[v] = 1;
    }
  }
  // identity
  for (int e = 0; e < n_; ++e) {
    bool ok = true;
    for (int a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      id_ = e;
      break;
    }
  }
  if (id_ < 0) throw std::invalid_argument("FiniteGroup: no identity");
  // inverses
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == id_ && mul(b, a) == id_) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
  }
  // associativity: exhaustive when small, Light's test otherwise
  if (n_ <= 64) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("FiniteGroup: not associative");
    return;
  }
  std::vector<int> gens = gen_hint;
  {
    // make sure the generators span everything under table products
    std::set<int> closure{id_};
    std::queue<int> work;
    auto add = [&](int x) {
      if (closure.insert(x).second) work.push(x);
    };
    for (int g : gens) add(g);
    while (!work.empty()) {
      int x = work.front();
      work.pop();
      for (int y : closure) {
        add(mul(x, y));
        add(mul(y, x));
        if (closure.size() == static_cast<std::size_t>(n_)) break;
      }
    }
    for (int x = 0; x < n_ && closure.size() < static_cast<std::size_t>(n_); ++x)
      if (!closure.count(x)) {
        gens.push_back(x);
        add(x);
        while (!work.empty()) {
          int v = work.front();
          work.pop();
          std::vector<int> snapshot(closure.begin(), closure.end());
          for (int y : snapshot) {
            add(mul(v, y));
            add(mul(y, v));
          }
        }
      }
  }
  for (int g : gens)
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul(mul(a, g), b) != mul(a, mul(g, b)))
          throw std::invalid_argument("FiniteGroup: not associative (Light's test)");
}

int FiniteGroup::pow(int a, long long n) const {
  long long o = element_order(a);
  n %= o;
  if (n < 0) n += o;
  int acc = id_, base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(int a) const {
  int o = 1, x = a;
  while (x != id_) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup materialize(const Pcp& pcp, std::size_t max_order) {
  pcp.validate();
  Int big = pcp.order();
  if (big > Int(max_order))
    throw resource_error("materialize: order " + big.str() + " exceeds guard " +
                         std::to_string(max_order));
  const int n = static_cast<int>(big);
  const int m = pcp.m, p = pcp.p;

  auto ev_of = [&](int idx) {
    std::vector<int> ev(m);
    for (int i = m - 1; i >= 0; --i) {
      ev[i] = idx % p;
      idx /= p;
    }
    return ev;
  };
  auto idx_of = [&](const std::vector<int>& ev) {
    int idx = 0;
    for (int i = 0; i < m; ++i) idx = idx * p + ev[i];
    return idx;
  };

  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    std::vector<int> ea = ev_of(a);
    for (int b = 0; b < n; ++b)
      table[static_cast<std::size_t>(a) * n + b] = idx_of(pcp_mult(pcp, ea, ev_of(b)));
  }
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    std::vector<int> ev = ev_of(a);
    std::string s;
    for (int i = 0; i < m; ++i) {
      if (ev[i] == 0) continue;
      if (!s.empty()) s += " ";
      s += "g" + std::to_string(i + 1);
      if (ev[i] != 1) s += "^" + std::to_string(ev[i]);
    }
    labels[a] = s.empty() ? "e" : s;
  }
  std::vector<int> gens;
  for (int i = 0; i < m; ++i) {
    std::vector<int> ev(m, 0);
    ev[i] = 1;
    gens.push_back(idx_of(ev));
  }
  return FiniteGroup(std::move(table), n, std::move(labels), std::move(gens));
}

// ------------------------------------------------------------ Subgroup

Subgroup::Subgroup(const FiniteGroup& g, std::vector<int> elements)
    : g_(&g), elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (elems_.empty() || !contains(g.id()))
    throw std::invalid_argument("Subgroup: must contain the identity");
  for (int x : elems_) {
    if (x < 0 || x >= g.order())
      throw std::invalid_argument("Subgroup: element index out of range");
    if (!contains(g.inv(x)))
      throw std::invalid_argument("Subgroup: not closed under inverse");
    for (int y : elems_)
      if (!contains(g.mul(x, y)))
        throw std::invalid_argument("Subgroup: not closed under product");
  }
}

bool Subgroup::contains(int x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::all_of(other.elems_.begin(), other.elems_.end(),
                     [&](int x) { return contains(x); });
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup(g, {g.id()});
}

Subgroup full_subgroup(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return Subgroup(g, std::move(all));
}

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> closure{g.id()};
  std::queue<int> work;
  auto add = [&](int x) {
    if (closure.insert(x).second) work.push(x);
  };
  for (int x : gens) add(x);
  while (!work.empty()) {
    int x = work.front();
    work.pop();
    std::vector<int> snapshot(closure.begin(), closure.end());
    for (int y : snapshot) {
      add(g.mul(x, y));
      add(g.mul(y, x));
    }
    add(g.inv(x));
  }
  return Subgroup(g, std::vector<int>(closure.begin(), closure.end()));
}

bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  for (int x : h.elements())
    for (int a = 0; a < g.order(); ++a)
      if (!h.contains(g.mul(g.mul(g.inv(a), x), a))) return false;
  return true;
}

FiniteGroup subgroup_as_group(const Subgroup& h) {
  const FiniteGroup& g = h.parent();
  const auto& el = h.elements();
  const int k = static_cast<int>(el.size());
  std::map<int, int> reindex;
  for (int i = 0; i < k; ++i) reindex[el[i]] = i;
  std::vector<int> table(static_cast<std::size_t>(k) * k);
  std::vector<std::string> labels(k);
  for (int a = 0; a < k; ++a) {
    labels[a] = g.label(el[a]);
    for (int b = 0; b < k; ++b)
      table[static_cast<std::size_t>(a) * k + b] = reindex.at(g.mul(el[a], el[b]));
  }
  return FiniteGroup(std::move(table), k, std::move(labels));
}

std::vector<Subgroup> lower_central(const FiniteGroup& g) {
  std::vector<Subgroup> chain{full_subgroup(g)};
  for (;;) {
    const Subgroup& cur = chain.back();
    std::vector<int> gens;
    for (int x : cur.elements())
      for (int y = 0; y < g.order(); ++y) gens.push_back(g.comm(x, y));
    Subgroup next = subgroup_closure(g, gens);
    if (next == cur) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

std::vector<Subgroup> upper_central(const FiniteGroup& g) {
  std::vector<Subgroup> chain{trivial_subgroup(g)};
  for (;;) {
    const Subgroup& cur = chain.back();
    std::vector<int> next;
    for (int x = 0; x < g.order(); ++x) {
      bool central = true;
      for (int y = 0; y < g.order() && central; ++y)
        central = cur.contains(g.comm(x, y));
      if (central) next.push_back(x);
    }
    Subgroup z(g, std::move(next));
    if (z == cur) break;
    chain.push_back(std::move(z));
  }
  return chain;
}

Subgroup lower_central_term(const FiniteGroup& g, int i) {
  if (i < 1) throw std::invalid_argument("lower_central_term: i >= 1");
  auto chain = lower_central(g);
  std::size_t idx = std::min<std::size_t>(i - 1, chain.size() - 1);
  return chain[idx];
}

Subgroup upper_central_term(const FiniteGroup& g, int i) {
  if (i < 0) throw std::invalid_argument("upper_central_term: i >= 0");
  auto chain = upper_central(g);
  std::size_t idx = std::min<std::size_t>(i, chain.size() - 1);
  return chain[idx];
}

AbelianType abelian_invariants(const FiniteGroup& g, const Subgroup& n) {
  if (&n.parent() != &g)
    throw std::invalid_argument("abelian_invariants: subgroup of another group");
  if (!is_normal(n))
    throw std::invalid_argument("abelian_invariants: subgroup is not normal");

  // coset representatives (minimal element index per coset)
  std::vector<int> rep(g.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (rep[x] >= 0) continue;
    int r = x;
    for (int h : n.elements()) r = std::min(r, g.mul(x, h));
    for (int h : n.elements()) rep[g.mul(x, h)] = r;
    reps.push_back(r);
  }
  std::sort(reps.begin(), reps.end());
  auto qmul = [&](int a, int b) { return rep[g.mul(a, b)]; };
  for (int a : reps)
    for (int b : reps)
      if (qmul(a, b) != qmul(b, a))
        throw std::invalid_argument("abelian_invariants: quotient is not abelian");

  // greedy generators of the quotient
  std::vector<int> gens;
  {
    std::set<int> covered{rep[g.id()]};
    for (int r : reps) {
      if (covered.count(r)) continue;
      gens.push_back(r);
      // regrow the covered set
      std::set<int> grow{rep[g.id()]};
      std::queue<int> work;
      for (int q : gens)
        if (grow.insert(q).second) work.push(q);
      while (!work.empty()) {
        int x = work.front();
        work.pop();
        std::vector<int> snapshot(grow.begin(), grow.end());
        for (int y : snapshot) {
          int z = qmul(x, y);
          if (grow.insert(z).second) work.push(z);
        }
        int x2 = rep[g.inv(x)];
        if (grow.insert(x2).second) work.push(x2);
      }
      covered = std::move(grow);
    }
  }
  const std::size_t t = gens.size();
  if (t == 0) return AbelianType{};  // trivial quotient

  /* BFS exponent vectors: each coset q gets some v(q) in Z^t with
   * prod gens^(v(q)) = q; the kernel lattice of Z^t -> Q is generated by the
   * closing relations v(q) + e_i - v(q g_i). */
  std::map<int, std::vector<long long>> vec;
  std::queue<int> work;
  vec[rep[g.id()]] = std::vector<long long>(t, 0);
  work.push(rep[g.id()]);
  while (!work.empty()) {
    int q = work.front();
    work.pop();
    for (std::size_t i = 0; i < t; ++i) {
      int q2 = qmul(q, gens[i]);
      if (!vec.count(q2)) {
        auto v = vec[q];
        v[i] += 1;
        vec[q2] = std::move(v);
        work.push(q2);
      }
    }
  }
  if (vec.size() != reps.size())
    throw std::logic_error("abelian_invariants: generators do not span quotient");

  std::vector<std::vector<long long>> rows;
  for (int q : reps)
    for (std::size_t i = 0; i < t; ++i) {
      int q2 = qmul(q, gens[i]);
      std::vector<long long> row = vec[q];
      row[i] += 1;
      const auto& w = vec[q2];
      bool nonzero = false;
      for (std::size_t k = 0; k < t; ++k) {
        row[k] -= w[k];
        nonzero = nonzero || row[k] != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }

  IntMatrix mrel(rows.size(), t);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < t; ++c) mrel.at(r, c) = rows[r][c];
  AbelianType out = quotient_invariants(t, mrel);
  if (!out.finite() || out.order() != Int(reps.size()))
    throw std::logic_error("abelian_invariants: relation lattice has wrong index");
  return out;
}

AbelianType abelian_invariants(const FiniteGroup& g) {
  return abelian_invariants(g, trivial_subgroup(g));
}

std::vector<Subgroup> subgroups_of_order_in(const FiniteGroup& g,
                                            const Subgroup& ambient,
                                            std::size_t k, bool normal_only) {
  if (g.order() > 1024)
    throw resource_error("subgroups_of_order: group order exceeds 1024");
  if (k == 0 || ambient.order() % k != 0)
    throw std::invalid_argument("subgroups_of_order: k must divide the ambient order");

  std::set<std::vector<int>> seen;
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier{trivial_subgroup(g).elements()};
  seen.insert(frontier[0]);
  if (k == 1) found.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& h : frontier) {
      for (int x : ambient.elements()) {
        if (std::binary_search(h.begin(), h.end(), x)) continue;
        std::vector<int> gens = h;
        gens.push_back(x);
        Subgroup grown = subgroup_closure(g, gens);
        if (grown.order() > k) continue;
        if (!seen.insert(grown.elements()).second) continue;
        if (grown.order() == k)
          found.insert(grown.elements());
        else
          next.push_back(grown.elements());
      }
    }
    frontier = std::move(next);
  }

  std::vector<Subgroup> out;
  for (const auto& el : found) {
    Subgroup h(g, el);
    if (!normal_only || is_normal(h)) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Subgroup> subgroups_of_order(const FiniteGroup& g, std::size_t k,
                                         bool normal_only) {
  return subgroups_of_order_in(g, full_subgroup(g), k, normal_only);
}

bool is_stem_cover(const FiniteGroup& gstar, const Subgroup& a,
                   const BaerInput& in) {
  in.validate();
  if (&a.parent() != &gstar)
    throw std::invalid_argument("is_stem_cover: subgroup of another group");
  if (!is_normal(a)) return false;
  if (!lower_central_term(gstar, in.c + 1).contains(a)) return false;
  if (!upper_central_term(gstar, in.c).contains(a)) return false;
  // the quotient must be abelian at all (gamma_2 <= A) before its type can
  // match an abelian target
  if (!a.contains(lower_central_term(gstar, 2))) return false;

  // G*/A must have the type of Z_r + Z_s (computed from the diagonal lattice)
  IntMatrix rel(2, 2);
  rel.at(0, 0) = in.r;
  rel.at(1, 1) = in.s;
  if (abelian_invariants(gstar, a) != quotient_invariants(2, rel)) return false;

  // A must be abelian of the type of N_cM(G)
  FiniteGroup a_grp = subgroup_as_group(a);
  if (!a_grp.is_abelian()) return false;
  return abelian_invariants(a_grp) == baer_formula(in);
}

}  // namespace nilcov
