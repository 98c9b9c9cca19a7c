#ifndef LOGFORMS_BASELOCUS_HPP
#define LOGFORMS_BASELOCUS_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "logforms/logarithmic.hpp"
#include "logforms/matrix.hpp"

namespace logforms {

/// One decomposition d = e d' with e a nonnegative integer matrix without
/// zero columns.  Stored in canonical form: columns sorted ascending by the
/// key (d'_j, column entries), which quotients out column permutations.
struct Factorization {
  int m = 0;        // rows, = number of parts of d
  int m_prime = 0;  // columns
  std::vector<std::vector<int>> e;  // m x m_prime
  std::vector<int> d_prime;

  void canonicalize() {
    std::vector<std::pair<int, std::vector<int>>> cols;
    for (int j = 0; j < m_prime; ++j) {
      std::vector<int> col;
      col.reserve(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) col.push_back(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      cols.emplace_back(d_prime[static_cast<std::size_t>(j)], std::move(col));
    }
    std::sort(cols.begin(), cols.end());
    for (int j = 0; j < m_prime; ++j) {
      d_prime[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)].first;
      for (int i = 0; i < m; ++i)
        e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            cols[static_cast<std::size_t>(j)].second[static_cast<std::size_t>(i)];
    }
  }

  /// d_i = sum_j e_ij d'_j for every row, no zero column, no zero row.
  bool consistent_with(const DegreeVector& dv) const {
    if (m != dv.m() || static_cast<int>(e.size()) != m || static_cast<int>(d_prime.size()) != m_prime)
      return false;
    for (int j = 0; j < m_prime; ++j)
      if (d_prime[static_cast<std::size_t>(j)] < 1) return false;
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(e[static_cast<std::size_t>(i)].size()) != m_prime) return false;
      long long s = 0;
      bool row_nonzero = false;
      for (int j = 0; j < m_prime; ++j) {
        const int eij = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (eij < 0) return false;
        if (eij > 0) row_nonzero = true;
        s += static_cast<long long>(eij) * d_prime[static_cast<std::size_t>(j)];
      }
      if (!row_nonzero || s != dv.part(i)) return false;
    }
    for (int j = 0; j < m_prime; ++j) {
      bool col_nonzero = false;
      for (int i = 0; i < m; ++i)
        if (e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0) col_nonzero = true;
      if (!col_nonzero) return false;
    }
    return true;
  }

  int rank() const { return static_cast<int>(int_matrix_rank(e)); }

  std::string to_string() const {
    std::string s = "d'=(";
    for (int j = 0; j < m_prime; ++j) s += (j ? "," : "") + std::to_string(d_prime[static_cast<std::size_t>(j)]);
    s += ") e=[";
    for (int i = 0; i < m; ++i) {
      s += (i ? ";" : "");
      for (int j = 0; j < m_prime; ++j)
        s += (j ? "," : "") + std::to_string(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return s + "]";
  }

  friend bool operator==(const Factorization& a, const Factorization& b) {
    return a.m == b.m && a.m_prime == b.m_prime && a.d_prime == b.d_prime && a.e == b.e;
  }
  friend bool operator<(const Factorization& a, const Factorization& b) {
    return std::tie(a.m_prime, a.d_prime, a.e) < std::tie(b.m_prime, b.d_prime, b.e);
  }
};

namespace detail {

// all rows r with sum_j r_j * dp_j == target, r_j >= 0
inline void row_solutions(int target, const std::vector<int>& dp, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(dp.size(), 0);
  auto rec = [&](auto&& self, std::size_t j, int rem) -> void {
    if (j + 1 == dp.size()) {
      if (rem % dp[j] == 0) {
        cur[j] = rem / dp[j];
        out.push_back(cur);
      }
      return;
    }
    for (int v = 0; v * dp[j] <= rem; ++v) {
      cur[j] = v;
      self(self, j + 1, rem - v * dp[j]);
    }
  };
  if (!dp.empty()) rec(rec, 0, target);
}

// nondecreasing tuples of positive integers with the given length and sum cap
inline void degree_tuples(int len, int cap, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining_len, int cap_left, int minval) -> void {
    if (remaining_len == 0) {
      out.push_back(cur);
      return;
    }
    for (int v = minval; v * remaining_len <= cap_left; ++v) {
      cur.push_back(v);
      self(self, remaining_len - 1, cap_left - v, v);
      cur.pop_back();
    }
  };
  rec(rec, len, cap, 1);
}

}  // namespace detail

/// Exhaustive enumeration of F(d): all canonical factorizations, bounded by
/// sum_j d'_j <= d (every column is nonzero) and e_ij <= d_i / d'_j.
/// Deterministic output order.
inline std::vector<Factorization> enumerate_factorizations(const DegreeVector& dv) {
  const int d = dv.total();
  const int m = dv.m();
  std::set<Factorization> found;

  for (int mp = 1; mp <= d; ++mp) {
    std::vector<std::vector<int>> dps;
    detail::degree_tuples(mp, d, dps);
    for (const auto& dp : dps) {
      // independent row solutions, then a cross product over rows
      std::vector<std::vector<std::vector<int>>> rows(static_cast<std::size_t>(m));
      bool any_empty = false;
      for (int i = 0; i < m; ++i) {
        detail::row_solutions(dv.part(i), dp, rows[static_cast<std::size_t>(i)]);
        if (rows[static_cast<std::size_t>(i)].empty()) {
          any_empty = true;
          break;
        }
      }
      if (any_empty) continue;

      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      for (;;) {
        Factorization f;
        f.m = m;
        f.m_prime = mp;
        f.d_prime = dp;
        for (int i = 0; i < m; ++i)
          f.e.push_back(rows[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]]);
        bool zero_col = false;
        for (int j = 0; j < mp && !zero_col; ++j) {
          bool nz = false;
          for (int i = 0; i < m; ++i)
            if (f.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > 0) nz = true;
          zero_col = !nz;
        }
        if (!zero_col) {
          f.canonicalize();
          found.insert(std::move(f));
        }
        // odometer
        int pos = m - 1;
        while (pos >= 0) {
          if (++pick[static_cast<std::size_t>(pos)] < rows[static_cast<std::size_t>(pos)].size()) break;
          pick[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  return std::vector<Factorization>(found.begin(), found.end());
}

namespace detail {

// all x in N^{m1'} with e1 x = target, by depth-first search; the residual
// stays componentwise nonnegative, which bounds every x_j by the row
// equations
inline std::vector<std::vector<int>> nat_solutions(const std::vector<std::vector<int>>& e1,
                                                   const std::vector<int>& target) {
  const std::size_t m = e1.size();
  const std::size_t cols = e1.empty() ? 0 : e1[0].size();
  std::vector<std::vector<int>> out;
  std::vector<int> residual = target;
  std::vector<int> x(cols, 0);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == cols) {
      for (int r : residual)
        if (r != 0) return;
      out.push_back(x);
      return;
    }
    int bound = 0;
    bool has_pos = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (e1[i][j] > 0) {
        const int b = residual[i] / e1[i][j];
        bound = has_pos ? std::min(bound, b) : b;
        has_pos = true;
      }
    }
    if (!has_pos) bound = 0;
    for (int v = 0; v <= bound; ++v) {
      if (v > 0)
        for (std::size_t i = 0; i < m; ++i) residual[i] -= e1[i][j];
      x[j] = v;
      self(self, j + 1);
    }
    x[j] = 0;
    for (std::size_t i = 0; i < m; ++i) residual[i] += bound * e1[i][j];
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// phi2 <= phi1 (the stratum of phi2 sits inside the stratum of phi1):
/// equal ranks, and e2 = e1 e3 solvable over the nonnegative integers with
/// the degree bookkeeping d'_1 = e3 d'_2.  The degree condition makes every
/// phi1 input an actual polynomial built from phi2 inputs; without it the
/// relation is only a preorder and mutual domination of distinct canonical
/// triples occurs.
inline bool leq(const Factorization& phi2, const Factorization& phi1) {
  if (phi1.m != phi2.m) throw std::invalid_argument("leq: factorizations of different m");
  if (phi1.rank() != phi2.rank()) return false;

  // candidate e3 columns, one set per column of e2
  std::vector<std::vector<std::vector<int>>> col_solutions;
  for (int k = 0; k < phi2.m_prime; ++k) {
    std::vector<int> target;
    target.reserve(static_cast<std::size_t>(phi2.m));
    for (int i = 0; i < phi2.m; ++i)
      target.push_back(phi2.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    auto sols = detail::nat_solutions(phi1.e, target);
    if (sols.empty()) return false;
    col_solutions.push_back(std::move(sols));
  }

  // pick one solution per column so that row j of e3 satisfies
  // sum_k e3_jk d'_2k = d'_1j
  const std::size_t rows = static_cast<std::size_t>(phi1.m_prime);
  std::vector<int> acc(rows, 0);
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == col_solutions.size()) {
      for (std::size_t j = 0; j < rows; ++j)
        if (acc[j] != phi1.d_prime[j]) return false;
      return true;
    }
    const int dk = phi2.d_prime[k];
    for (const auto& x : col_solutions[k]) {
      bool ok = true;
      for (std::size_t j = 0; j < rows; ++j) {
        acc[j] += x[j] * dk;
        if (acc[j] > phi1.d_prime[j]) ok = false;
      }
      if (ok && self(self, k + 1)) return true;
      for (std::size_t j = 0; j < rows; ++j) acc[j] -= x[j] * dk;
    }
    return false;
  };
  return rec(rec, 0);
}

/// One stratum of the base locus with its lambda-space dimension.
struct BaseLocusComponent {
  Factorization phi;
  int lambda_dim = 0;   // dim Lambda(e) = m - rank(e)
  bool is_maximal = false;
};

/// Annotates every factorization with dim Lambda(e) and poset maximality.
/// The components of B(rho) are the maximal entries with lambda_dim > 0;
/// strata with Lambda(e) = {0} project into the discarded set Z.
inline std::vector<BaseLocusComponent> maximal_elements(const DegreeVector& dv) {
  const auto all = enumerate_factorizations(dv);
  std::vector<BaseLocusComponent> out;
  out.reserve(all.size());
  for (const auto& phi : all) {
    BaseLocusComponent c;
    c.phi = phi;
    c.lambda_dim = dv.m() - phi.rank();
    c.is_maximal = true;
    for (const auto& other : all) {
      if (other == phi) continue;
      if (leq(phi, other)) {
        c.is_maximal = false;
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<BaseLocusComponent> components_of_b_rho(const std::vector<BaseLocusComponent>& all) {
  std::vector<BaseLocusComponent> out;
  for (const auto& c : all)
    if (c.is_maximal && c.lambda_dim > 0) out.push_back(c);
  return out;
}

/// The Segre-Veronese substitution F_i = prod_j G_j^{e_ij}.
template <class K>
std::vector<Polynomial<K>> nu_phi(const Factorization& phi, const std::vector<Polynomial<K>>& G) {
  if (static_cast<int>(G.size()) != phi.m_prime) throw std::invalid_argument("nu_phi: |G| != m'");
  std::vector<Polynomial<K>> F;
  F.reserve(static_cast<std::size_t>(phi.m));
  for (int i = 0; i < phi.m; ++i) {
    Polynomial<K> prod =
        Polynomial<K>::constant(G.front().nvars_minus_one(), from_int_like(G.front().zero_like(), 1));
    for (int j = 0; j < phi.m_prime; ++j) {
      const int eij = phi.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (eij > 0) prod = prod * G[static_cast<std::size_t>(j)].pow(eij);
    }
    F.push_back(std::move(prod));
  }
  return F;
}

struct MembershipResult {
  bool lambda_kills_e = false;  // lambda e = 0 componentwise
  bool mu_is_zero = false;
};

/// Builds the instance through nu_phi and evaluates mu exactly.  When the
/// precondition lambda e = 0 holds, mu must vanish; the violated case is
/// reported rather than thrown so callers can observe mu != 0.
template <class K>
MembershipResult membership_check(int n, const DegreeVector& dv, const Factorization& phi,
                                  const std::vector<K>& lambda, const std::vector<Polynomial<K>>& G) {
  if (!phi.consistent_with(dv)) throw std::invalid_argument("membership_check: phi does not factor d");
  if (static_cast<int>(G.size()) != phi.m_prime) throw std::invalid_argument("membership_check: |G| != m'");
  for (int j = 0; j < phi.m_prime; ++j)
    if (G[static_cast<std::size_t>(j)].degree() != phi.d_prime[static_cast<std::size_t>(j)])
      throw std::invalid_argument("membership_check: deg G_" + std::to_string(j + 1) + " != d'_" +
                                  std::to_string(j + 1));
  if (static_cast<int>(lambda.size()) != dv.m())
    throw std::invalid_argument("membership_check: |lambda| != m");

  MembershipResult res;
  res.lambda_kills_e = true;
  const K zero = lambda.front() - lambda.front();
  for (int j = 0; j < phi.m_prime; ++j) {
    K acc = zero;
    for (int i = 0; i < dv.m(); ++i)
      acc += lambda[static_cast<std::size_t>(i)] *
             from_int_like(zero, phi.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    if (!is_zero(acc)) res.lambda_kills_e = false;
  }

  const LogInstance<K> inst(n, dv, lambda, nu_phi(phi, G));
  res.mu_is_zero = mu(inst).is_zero();
  return res;
}

/// Basis of Lambda(e) = {lambda : lambda e = 0} over the instance field
/// (row-vector kernel, i.e. the nullspace of e transposed).
template <class K>
std::vector<std::vector<K>> lambda_e_basis(const Factorization& phi, const K& like) {
  Matrix<K> et(static_cast<std::size_t>(phi.m_prime), static_cast<std::size_t>(phi.m), like - like);
  for (int i = 0; i < phi.m; ++i)
    for (int j = 0; j < phi.m_prime; ++j)
      et.set(static_cast<std::size_t>(j), static_cast<std::size_t>(i),
             from_int_like(like, phi.e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  return et.nullspace().basis;
}

}  // namespace logforms

#endif  // LOGFORMS_BASELOCUS_HPP
