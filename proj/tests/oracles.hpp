#pragma once

// Reference computations for the tests. Each one works from first principles
// on plain integers and never calls into the library it is used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace oracle {

// ---- finite fields as polynomials over GF(p) -------------------------------

inline std::vector<int> digits(int code, int p, int m) {
  std::vector<int> d(m);
  for (int i = 0; i < m; ++i, code /= p) d[i] = code % p;
  return d;
}

inline int undigits(const std::vector<int>& d, int p) {
  int code = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
  return code;
}

inline int field_add(int p, int m, int a, int b) {
  auto x = digits(a, p, m), y = digits(b, p, m);
  for (int i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
  return undigits(x, p);
}

/// Schoolbook product reduced modulo the monic `poly` (low-to-high, degree m).
inline int field_mul(int p, const std::vector<int>& poly, int a, int b) {
  int m = static_cast<int>(poly.size()) - 1;
  auto x = digits(a, p, m), y = digits(b, p, m);
  std::vector<int> prod(2 * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (int d = 2 * m - 1; d >= m; --d) {
    int c = prod[d];
    if (c == 0) continue;
    for (int i = 0; i <= m; ++i) prod[d - m + i] = ((prod[d - m + i] - c * poly[i]) % p + p) % p;
  }
  prod.resize(m);
  return undigits(prod, p);
}

inline int field_pow(int p, const std::vector<int>& poly, int a, long long e) {
  int r = 1;
  for (long long i = 0; i < e; ++i) r = field_mul(p, poly, r, a);
  return r;
}

/// Irreducible iff no product of two monic factors of positive degree equals it.
inline bool irreducible_by_products(int p, const std::vector<int>& poly) {
  int m = static_cast<int>(poly.size()) - 1;
  auto monic = [&](int deg) {
    std::vector<std::vector<int>> out;
    int total = 1;
    for (int i = 0; i < deg; ++i) total *= p;
    for (int c = 0; c < total; ++c) {
      auto d = digits(c, p, deg);
      d.push_back(1);
      out.push_back(d);
    }
    return out;
  };
  for (int d1 = 1; d1 < m; ++d1)
    for (const auto& f : monic(d1))
      for (const auto& g : monic(m - d1)) {
        std::vector<int> prod(m + 1, 0);
        for (int i = 0; i <= d1; ++i)
          for (int j = 0; j <= m - d1; ++j) prod[i + j] = (prod[i + j] + f[i] * g[j]) % p;
        if (prod == poly) return false;
      }
  return true;
}

// ---- vector spaces over a prime field ---------------------------------------

using Vec = std::vector<int>;

inline int rank_mod_p(std::vector<Vec> rows, int p) {
  int r = 0;
  int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] % p) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    int inv = 1;
    while ((rows[r][c] * inv) % p != 1) ++inv;
    for (auto& x : rows[r]) x = (x * inv) % p;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      int f = rows[i][c];
      for (int j = 0; j < cols; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

/// Every vector of GF(p)^len, as integers read base p.
inline std::set<int> span_codes(const std::vector<Vec>& gens, int p, int len) {
  std::set<int> out{0};
  for (const auto& g : gens) {
    std::set<int> next;
    for (int base : out) {
      auto v = digits(base, p, len);
      for (int c = 0; c < p; ++c) {
        Vec w(len);
        for (int i = 0; i < len; ++i) w[i] = (v[i] + c * g[i]) % p;
        next.insert(undigits(w, p));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Number of k-dimensional subspaces of GF(p)^d: distinct spans of k-tuples of vectors.
inline long long count_vector_subspaces(int d, int k, int p) {
  int total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  std::set<std::set<int>> seen;
  std::vector<int> idx(k, 1);
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      std::vector<Vec> g;
      for (int c : idx) g.push_back(digits(c, p, d));
      if (rank_mod_p(g, p) == k) seen.insert(span_codes(g, p, d));
      return;
    }
    for (int c = from; c < total; ++c) {
      idx[pos] = c;
      rec(pos + 1, c + 1);
    }
  };
  rec(0, 1);
  return static_cast<long long>(seen.size());
}

/// Pascal-style recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
inline long long gaussian_recurrence(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  if (k == 0 || k == n) return 1;
  long long qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  return gaussian_recurrence(n - 1, k - 1, q) + qk * gaussian_recurrence(n - 1, k, q);
}

// ---- incidence structures given as line lists ------------------------------

using Lines = std::vector<std::vector<int>>;

inline bool closed(const Lines& lines, std::uint32_t set) {
  for (const auto& l : lines) {
    int inside = 0;
    for (int p : l) inside += (set >> p) & 1;
    if (inside >= 2 && inside < static_cast<int>(l.size())) return false;
  }
  return true;
}

/// Every closed subset, by testing all 2^n subsets (n <= 20).
inline std::vector<std::uint32_t> all_closed(int n, const Lines& lines) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (closed(lines, s)) out.push_back(s);
  return out;
}

/// Intersection of every closed set containing x.
inline std::uint32_t closure(const std::vector<std::uint32_t>& closed_sets, int n, std::uint32_t x) {
  std::uint32_t r = (n == 32) ? ~0u : (1u << n) - 1;
  for (auto s : closed_sets)
    if ((s & x) == x) r &= s;
  return r;
}

inline std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int from) {
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  d[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push(v);
      }
  }
  return d;
}

inline long long choose(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace oracle
