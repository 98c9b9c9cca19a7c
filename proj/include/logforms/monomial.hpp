#ifndef LOGFORMS_MONOMIAL_HPP
#define LOGFORMS_MONOMIAL_HPP

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace logforms {

inline long long binomial(long long a, long long b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  long long r = 1;
  for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

/// dim S_n(k) = C(n+k, n); zero for k < 0.
inline long long monomial_count(int n, int k) {
  if (k < 0) return 0;
  return binomial(static_cast<long long>(n) + k, n);
}

/// Exponent vector over x_0..x_n.
class Monomial {
 public:
  explicit Monomial(std::vector<int> exps) : e_(std::move(exps)) {
    for (int x : e_)
      if (x < 0) throw std::invalid_argument("negative exponent");
    deg_ = std::accumulate(e_.begin(), e_.end(), 0);
  }

  int nvars() const { return static_cast<int>(e_.size()); }
  int degree() const { return deg_; }
  int exp(int i) const { return e_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& exps() const { return e_; }

  Monomial times(const Monomial& o) const {
    require_same_vars(o);
    std::vector<int> r(e_);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.e_[i];
    return Monomial(std::move(r));
  }

  bool divides(const Monomial& o) const {
    require_same_vars(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  Monomial quotient_by(const Monomial& o) const {
    require_same_vars(o);
    std::vector<int> r(e_);
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] -= o.e_[i];
      if (r[i] < 0) throw std::invalid_argument("monomial quotient is not a monomial");
    }
    return Monomial(std::move(r));
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i);
      if (e_[i] > 1) s += "^" + std::to_string(e_[i]);
    }
    return s.empty() ? "1" : s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  std::vector<int> e_;
  int deg_ = 0;

  void require_same_vars(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw std::invalid_argument("monomial variable-count mismatch");
  }
};

/// Graded reverse-lexicographic comparison: higher total degree wins; within
/// a degree, a > b when the last nonzero entry of a-b is negative.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& ea = a.exps();
  const auto& eb = b.exps();
  for (std::size_t i = ea.size(); i-- > 0;) {
    if (ea[i] != eb[i]) return ea[i] < eb[i];
  }
  return false;
}

/// Orders term maps so the leading (largest) monomial comes first.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_greater(a, b); }
};

/// All monomials of degree k in x_0..x_n, leading (grevlex-largest) first.
/// The order is a pure function of (n, k).
inline std::vector<Monomial> monomials_of_degree(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("monomials_of_degree: n, k must be nonnegative");
  std::vector<Monomial> out;
  std::vector<int> cur(static_cast<std::size_t>(n) + 1, 0);
  // enumerate compositions of k into n+1 parts
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n) {
      cur[static_cast<std::size_t>(pos)] = rem;
      out.emplace_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      self(self, pos + 1, rem - e);
    }
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

}  // namespace logforms

#endif  // LOGFORMS_MONOMIAL_HPP
