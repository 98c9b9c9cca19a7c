#ifndef LOGFORMS_POLYNOMIAL_HPP
#define LOGFORMS_POLYNOMIAL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "logforms/fields.hpp"
#include "logforms/monomial.hpp"
#include "logforms/rng.hpp"

namespace logforms {

/// Sparse homogeneous polynomial over an exact field K.
///
/// Invariants: every stored monomial has degree exactly `degree()`, no zero
/// coefficients are kept, and the term map is ordered grevlex-descending, so
/// two polynomials are equal iff their term maps are equal.  The zero
/// polynomial carries a declared degree.
template <class K>
class Polynomial {
 public:
  using TermMap = std::map<Monomial, K, GrevlexGreater>;

  Polynomial(int nvars_minus_one, int degree, const K& zero_like)
      : n_(nvars_minus_one), degree_(degree), zero_(zero_like) {
    if (n_ < 0) throw std::invalid_argument("Polynomial: n must be >= 0");
    if (degree_ < 0) throw std::invalid_argument("Polynomial: degree must be >= 0");
    if (!logforms::is_zero(zero_)) throw std::invalid_argument("Polynomial: exemplar must be the zero element");
  }

  static Polynomial zero(int n, int degree, const K& like) { return Polynomial(n, degree, like); }

  static Polynomial constant(int n, const K& c) {
    Polynomial p(n, 0, c - c);
    p.add_term(Monomial(std::vector<int>(static_cast<std::size_t>(n) + 1, 0)), c);
    return p;
  }

  static Polynomial variable(int n, int i, const K& like) {
    if (i < 0 || i > n) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(static_cast<std::size_t>(n) + 1, 0);
    e[static_cast<std::size_t>(i)] = 1;
    Polynomial p(n, 1, like);
    p.add_term(Monomial(std::move(e)), from_int_like(like, 1));
    return p;
  }

  int nvars_minus_one() const { return n_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  const K& zero_like() const { return zero_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  K coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? zero_ : it->second;
  }

  /// Accumulating insert; drops the entry when the sum cancels.
  void add_term(const Monomial& m, const K& c) {
    if (m.nvars() != n_ + 1) throw std::invalid_argument("term variable-count mismatch");
    if (m.degree() != degree_) throw std::invalid_argument("term degree breaks homogeneity");
    if (logforms::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (logforms::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.require_compatible(b);
    if (a.degree_ != b.degree_) throw std::invalid_argument("degree mismatch in polynomial addition");
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r(a.n_, a.degree_, a.zero_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_compatible(b);
    Polynomial r(a.n_, a.degree_ + b.degree_, a.zero_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
  }

  Polynomial scaled(const K& c) const {
    Polynomial r(n_, degree_, zero_);
    if (logforms::is_zero(c)) return r;
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
  }

  /// Partial derivative; lowers the degree by one (zero polynomial of the
  /// lowered degree when nothing survives).
  Polynomial partial(int i) const {
    if (i < 0 || i > n_) throw std::invalid_argument("partial: variable index out of range");
    Polynomial r(n_, degree_ > 0 ? degree_ - 1 : 0, zero_);
    for (const auto& [m, c] : terms_) {
      int e = m.exp(i);
      if (e == 0) continue;
      std::vector<int> exps = m.exps();
      exps[static_cast<std::size_t>(i)] -= 1;
      r.add_term(Monomial(std::move(exps)), c * from_int_like(zero_, e));
    }
    return r;
  }

  Polynomial pow(int e) const {
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    Polynomial r = constant(n_, from_int_like(zero_, 1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + coeff_to_string(c) + ")";
      if (m.degree() > 0) s += "*" + m.to_string();
    }
    return s;
  }

 private:
  int n_;
  int degree_;
  K zero_;
  TermMap terms_;

  void require_compatible(const Polynomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial variable-count mismatch");
  }
};

template <class K>
struct DivRem {
  Polynomial<K> quotient;
  Polynomial<K> remainder;
};

/// Division with remainder by a single polynomial: f = q*g + r where no term
/// of r is divisible by the leading monomial of g.  For a single divisor,
/// r == 0 is exactly divisibility, which decides membership in the principal
/// ideal (g).
template <class K>
DivRem<K> divrem(const Polynomial<K>& f, const Polynomial<K>& g) {
  if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const int qdeg = f.degree() >= g.degree() ? f.degree() - g.degree() : 0;
  Polynomial<K> q(f.nvars_minus_one(), qdeg, f.zero_like());
  Polynomial<K> r(f.nvars_minus_one(), f.degree(), f.zero_like());
  const Monomial& glm = g.terms().begin()->first;
  const K& glc = g.terms().begin()->second;
  const K glc_inv = inv(glc);

  Polynomial<K> work = f;
  while (!work.is_zero()) {
    const Monomial wm = work.terms().begin()->first;
    const K wc = work.terms().begin()->second;
    if (glm.divides(wm)) {
      const Monomial t = wm.quotient_by(glm);
      const K tc = wc * glc_inv;
      q.add_term(t, tc);
      // work -= tc * t * g
      for (const auto& [gm, gc] : g.terms()) work.add_term(gm.times(t), -(gc * tc));
    } else {
      r.add_term(wm, wc);
      work.add_term(wm, -wc);
    }
  }
  return DivRem<K>{std::move(q), std::move(r)};
}

template <class K>
bool divisible_by(const Polynomial<K>& f, const Polynomial<K>& g) {
  if (f.is_zero()) return true;
  return divrem(f, g).remainder.is_zero();
}

/// Dense random homogeneous polynomial: every monomial of degree k draws a
/// uniform coefficient (integers in [-10^4, 10^4] over Q, uniform residues
/// over F_p), rejecting an all-zero result.  Deterministic in the rng state.
template <class K>
Polynomial<K> random_poly(int n, int k, const K& like, SeededRng& rng) {
  if (k < 1) throw std::invalid_argument("random_poly: degree must be >= 1");
  const auto monos = monomials_of_degree(n, k);
  for (;;) {
    Polynomial<K> p(n, k, like);
    for (const auto& m : monos) p.add_term(m, random_element(rng, like));
    if (!p.is_zero()) return p;
  }
}

template <class K>
Polynomial<K> random_poly(int n, int k, const K& like, std::uint64_t seed) {
  SeededRng rng(seed);
  return random_poly(n, k, like, rng);
}

inline Fp reduce_mod(const Rat& c, std::uint32_t p) {
  const BigInt num = numerator(c);
  const BigInt den = denominator(c);
  const auto to_fp = [p](const BigInt& v) {
    BigInt r = v % p;
    if (r < 0) r += p;
    return Fp(r.convert_to<std::uint64_t>(), p);
  };
  return to_fp(num) / to_fp(den);
}

/// Coefficient-wise reduction Q -> F_p (denominators must be units mod p).
inline Polynomial<Fp> reduce_mod(const Polynomial<Rat>& f, std::uint32_t p) {
  Polynomial<Fp> r(f.nvars_minus_one(), f.degree(), exemplar_fp(p));
  for (const auto& [m, c] : f.terms()) {
    if (denominator(c) % p == 0) throw std::invalid_argument("reduce_mod: denominator vanishes mod p");
    r.add_term(m, reduce_mod(c, p));
  }
  return r;
}

}  // namespace logforms

#endif  // LOGFORMS_POLYNOMIAL_HPP
