#ifndef LOGFORMS_FORM_HPP
#define LOGFORMS_FORM_HPP

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logforms/polynomial.hpp"

namespace logforms {

/// Strictly increasing subset of {0..n} indexing dx_{j_1} ^ ... ^ dx_{j_q}.
using IndexTuple = std::vector<int>;

/// All q-subsets of {0..n} in lexicographic order.
inline std::vector<IndexTuple> index_tuples(int n, int q) {
  std::vector<IndexTuple> out;
  if (q < 0 || q > n + 1) return out;
  IndexTuple cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == q) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Homogeneous differential q-form with Polynomial coefficients on C^{n+1}.
///
/// Each dx_i counts one toward the degree, so coefficients of a degree-d
/// q-form live in S_n(d-q).  Tuples are kept strictly increasing; all sign
/// bookkeeping happens when terms are combined, never at lookup time.
template <class K>
class Form {
 public:
  using CoeffMap = std::map<IndexTuple, Polynomial<K>>;

  Form(int n, int q, int degree, const K& zero_like)
      : n_(n), q_(q), degree_(degree), zero_(zero_like) {
    if (n_ < 0 || q_ < 0) throw std::invalid_argument("Form: bad n or q");
  }

  static Form zero_like_form(const Form& f) { return Form(f.n_, f.q_, f.degree_, f.zero_); }

  /// dx_i as a 1-form of degree 1.
  static Form dx(int n, int i, const K& like) {
    Form f(n, 1, 1, like);
    f.add_term({i}, Polynomial<K>::constant(n, from_int_like(like, 1)));
    return f;
  }

  /// A polynomial viewed as a 0-form.
  static Form from_polynomial(const Polynomial<K>& p) {
    Form f(p.nvars_minus_one(), 0, p.degree(), p.zero_like());
    if (!p.is_zero()) f.coeffs_.emplace(IndexTuple{}, p);
    return f;
  }

  /// Exterior derivative of a polynomial: dF as a 1-form of the same degree.
  static Form differential(const Polynomial<K>& p) {
    Form f(p.nvars_minus_one(), 1, p.degree(), p.zero_like());
    for (int i = 0; i <= p.nvars_minus_one(); ++i) {
      Polynomial<K> d = p.partial(i);
      if (!d.is_zero()) f.add_term({i}, d);
    }
    return f;
  }

  int nvars_minus_one() const { return n_; }
  int q() const { return q_; }
  int degree() const { return degree_; }
  const K& zero_like() const { return zero_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Polynomial<K> coeff(const IndexTuple& t) const {
    auto it = coeffs_.find(t);
    if (it != coeffs_.end()) return it->second;
    return Polynomial<K>(n_, degree_ - q_ >= 0 ? degree_ - q_ : 0, zero_);
  }

  void add_term(const IndexTuple& t, const Polynomial<K>& p) {
    if (static_cast<int>(t.size()) != q_) throw std::invalid_argument("tuple size != form grade");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      if (t[i] >= t[i + 1]) throw std::invalid_argument("tuple must be strictly increasing");
    if (!t.empty() && (t.front() < 0 || t.back() > n_))
      throw std::invalid_argument("tuple index out of range");
    if (p.is_zero()) return;
    if (p.nvars_minus_one() != n_) throw std::invalid_argument("coefficient variable-count mismatch");
    if (p.degree() != degree_ - q_) throw std::invalid_argument("coefficient degree breaks form degree");
    auto it = coeffs_.find(t);
    if (it == coeffs_.end()) {
      coeffs_.emplace(t, p);
    } else {
      it->second = it->second + p;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  friend Form operator+(const Form& a, const Form& b) {
    a.require_same_shape(b);
    Form r = a;
    for (const auto& [t, p] : b.coeffs_) r.add_term(t, p);
    return r;
  }

  friend Form operator-(const Form& a, const Form& b) { return a + b.scaled(from_int_like(a.zero_, -1)); }

  Form scaled(const K& c) const {
    Form r(n_, q_, degree_, zero_);
    if (logforms::is_zero(c)) return r;
    for (const auto& [t, p] : coeffs_) r.add_term(t, p.scaled(c));
    return r;
  }

  /// Multiply by a polynomial; the degree rises by its degree.
  Form poly_scaled(const Polynomial<K>& g) const {
    Form r(n_, q_, degree_ + g.degree(), zero_);
    if (g.is_zero()) return r;
    for (const auto& [t, p] : coeffs_) r.add_term(t, p * g);
    return r;
  }

  Form exterior_derivative() const {
    Form r(n_, q_ + 1, degree_, zero_);
    for (const auto& [t, p] : coeffs_) {
      for (int i = 0; i <= n_; ++i) {
        Polynomial<K> d = p.partial(i);
        if (d.is_zero()) continue;
        int sign = 1;
        IndexTuple merged;
        if (!insert_index(t, i, merged, sign)) continue;  // dx_i ^ dx_i = 0
        r.add_term(merged, sign > 0 ? d : -d);
      }
    }
    return r;
  }

  /// Interior product with the Euler field R = sum x_i d/dx_i; grade drops
  /// by one, the homogeneous degree is preserved.
  Form contract_radial() const {
    if (q_ < 1) throw std::invalid_argument("contract_radial: grade must be >= 1");
    Form r(n_, q_ - 1, degree_, zero_);
    for (const auto& [t, p] : coeffs_) {
      for (std::size_t pos = 0; pos < t.size(); ++pos) {
        IndexTuple rest;
        rest.reserve(t.size() - 1);
        for (std::size_t s = 0; s < t.size(); ++s)
          if (s != pos) rest.push_back(t[s]);
        Polynomial<K> xi = Polynomial<K>::variable(n_, t[pos], zero_);
        Polynomial<K> term = xi * p;
        r.add_term(rest, (pos % 2 == 0) ? term : -term);
      }
    }
    return r;
  }

  /// A 1-form descends to P^n exactly when it contracts to zero with R.
  bool is_projective() const {
    if (q_ != 1) throw std::invalid_argument("is_projective: defined for 1-forms");
    return contract_radial().is_zero();
  }

  /// The 0-form coefficient as a polynomial.
  Polynomial<K> as_polynomial() const {
    if (q_ != 0) throw std::invalid_argument("as_polynomial: grade must be 0");
    auto it = coeffs_.find(IndexTuple{});
    if (it != coeffs_.end()) return it->second;
    return Polynomial<K>(n_, degree_, zero_);
  }

  friend bool operator==(const Form& a, const Form& b) {
    return a.n_ == b.n_ && a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [t, p] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += "(" + p.to_string() + ")";
      for (std::size_t i = 0; i < t.size(); ++i)
        s += (i == 0 ? " dx" : "^dx") + std::to_string(t[i]);
    }
    return s;
  }

 private:
  int n_;
  int q_;
  int degree_;
  K zero_;
  CoeffMap coeffs_;

  void require_same_shape(const Form& o) const {
    if (n_ != o.n_ || q_ != o.q_) throw std::invalid_argument("form shape mismatch");
    if (degree_ != o.degree_) throw std::invalid_argument("form degree mismatch");
  }

  // insert i into the sorted tuple t, tracking the alternating sign;
  // returns false when i already occurs
  static bool insert_index(const IndexTuple& t, int i, IndexTuple& out, int& sign) {
    int before = 0;
    for (int x : t) {
      if (x == i) return false;
      if (x < i) ++before;
    }
    sign = (before % 2 == 0) ? 1 : -1;
    out.clear();
    out.reserve(t.size() + 1);
    bool placed = false;
    for (int x : t) {
      if (!placed && i < x) {
        out.push_back(i);
        placed = true;
      }
      out.push_back(x);
    }
    if (!placed) out.push_back(i);
    return true;
  }

  template <class K2>
  friend Form<K2> wedge(const Form<K2>& a, const Form<K2>& b);
};

/// Graded-anticommutative product.  When the grades overflow n+1 the zero
/// form of the summed grade is returned.
template <class K>
Form<K> wedge(const Form<K>& a, const Form<K>& b) {
  if (a.nvars_minus_one() != b.nvars_minus_one())
    throw std::invalid_argument("wedge: variable-count mismatch");
  Form<K> r(a.nvars_minus_one(), a.q() + b.q(), a.degree() + b.degree(), a.zero_like());
  if (a.q() + b.q() > a.nvars_minus_one() + 1) return r;
  for (const auto& [ta, pa] : a.coeffs()) {
    for (const auto& [tb, pb] : b.coeffs()) {
      // merge disjoint sorted tuples, counting inversions
      int inversions = 0;
      bool disjoint = true;
      for (int x : tb) {
        for (int y : ta) {
          if (y == x) {
            disjoint = false;
            break;
          }
          if (y > x) ++inversions;
        }
        if (!disjoint) break;
      }
      if (!disjoint) continue;
      IndexTuple merged;
      merged.reserve(ta.size() + tb.size());
      std::merge(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(merged));
      Polynomial<K> prod = pa * pb;
      r.add_term(merged, (inversions % 2 == 0) ? prod : -prod);
    }
  }
  return r;
}

}  // namespace logforms

#endif  // LOGFORMS_FORM_HPP
