#ifndef LOGFORMS_LOGARITHMIC_HPP
#define LOGFORMS_LOGARITHMIC_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "logforms/form.hpp"
#include "logforms/polynomial.hpp"

namespace logforms {

/// Degree type d = (m; d_1 >= d_2 >= ... >= d_m >= 1), m >= 2.
class DegreeVector {
 public:
  explicit DegreeVector(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.size() < 2) throw std::invalid_argument("DegreeVector: need m >= 2 parts");
    total_ = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("DegreeVector: parts must be >= 1");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("DegreeVector: parts must be nonincreasing");
      total_ += parts_[i];
    }
  }

  int m() const { return static_cast<int>(parts_.size()); }
  int total() const { return total_; }
  int part(int i) const { return parts_.at(static_cast<std::size_t>(i)); }
  int hat(int i) const { return total_ - part(i); }  // degree of F-hat_i
  const std::vector<int>& parts() const { return parts_; }

  std::string to_string() const {
    std::string s = "(" + std::to_string(m()) + ";";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  bool operator==(const DegreeVector& o) const { return parts_ == o.parts_; }

 private:
  std::vector<int> parts_;
  int total_ = 0;
};

/// A point (lambda, F) of the parameter space, with its degree data.
/// Zero polynomials are rejected; genericity of lambda (all entries nonzero
/// and pairwise distinct) is recorded, not required.
template <class K>
class LogInstance {
 public:
  LogInstance(int n, DegreeVector dv, std::vector<K> lambda, std::vector<Polynomial<K>> F,
              std::optional<std::uint64_t> seed = std::nullopt)
      : n_(n), dv_(std::move(dv)), lambda_(std::move(lambda)), F_(std::move(F)), seed_(seed) {
    const int m = dv_.m();
    if (static_cast<int>(lambda_.size()) != m) throw std::invalid_argument("lambda size != m");
    if (static_cast<int>(F_.size()) != m) throw std::invalid_argument("F size != m");
    check_char_bound(lambda_.front() - lambda_.front(), dv_.total());
    for (int i = 0; i < m; ++i) {
      if (F_[static_cast<std::size_t>(i)].is_zero())
        throw std::invalid_argument("F_" + std::to_string(i + 1) + " is the zero polynomial");
      if (F_[static_cast<std::size_t>(i)].nvars_minus_one() != n_)
        throw std::invalid_argument("F_" + std::to_string(i + 1) + " has wrong variable count");
      if (F_[static_cast<std::size_t>(i)].degree() != dv_.part(i))
        throw std::invalid_argument("deg F_" + std::to_string(i + 1) + " != d_" + std::to_string(i + 1));
    }
  }

  int n() const { return n_; }
  const DegreeVector& dv() const { return dv_; }
  const std::vector<K>& lambda() const { return lambda_; }
  const std::vector<Polynomial<K>>& F() const { return F_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const K& zero_like() const { return F_.front().zero_like(); }

  K sum_d_lambda() const {
    K acc = zero_like();
    for (int i = 0; i < dv_.m(); ++i)
      acc += from_int_like(acc, dv_.part(i)) * lambda_[static_cast<std::size_t>(i)];
    return acc;
  }

  /// Lies in the hyperplane Lambda(d), i.e. mu lands in the projective forms.
  bool is_projective_point() const { return logforms::is_zero(sum_d_lambda()); }

  bool lambdas_all_nonzero() const {
    for (const K& l : lambda_)
      if (logforms::is_zero(l)) return false;
    return true;
  }

  bool lambdas_pairwise_distinct() const {
    for (std::size_t i = 0; i < lambda_.size(); ++i)
      for (std::size_t j = i + 1; j < lambda_.size(); ++j)
        if (lambda_[i] == lambda_[j]) return false;
    return true;
  }

  bool generic_flags() const { return lambdas_all_nonzero() && lambdas_pairwise_distinct(); }

 private:
  int n_;
  DegreeVector dv_;
  std::vector<K> lambda_;
  std::vector<Polynomial<K>> F_;
  std::optional<std::uint64_t> seed_;
};

/// Product of the F_j with j outside A (0-based indices); empty product = 1.
template <class K>
Polynomial<K> hat_F(const LogInstance<K>& inst, const std::set<int>& A) {
  Polynomial<K> prod = Polynomial<K>::constant(inst.n(), from_int_like(inst.zero_like(), 1));
  for (int j = 0; j < inst.dv().m(); ++j)
    if (A.find(j) == A.end()) prod = prod * inst.F()[static_cast<std::size_t>(j)];
  return prod;
}

template <class K>
Polynomial<K> product_F(const LogInstance<K>& inst) {
  return hat_F(inst, {});
}

template <class K>
Polynomial<K> hat_F_single(const LogInstance<K>& inst, int i) {
  return hat_F(inst, {i});
}

template <class K>
Polynomial<K> hat_F_pair(const LogInstance<K>& inst, int i, int j) {
  return hat_F(inst, {i, j});
}

/// mu(lambda, F) = sum_i lambda_i Fhat_i dF_i, homogeneous of degree d.
/// The zero form is a legal output and signals a base-locus point.
template <class K>
Form<K> mu(const LogInstance<K>& inst) {
  const int d = inst.dv().total();
  Form<K> w(inst.n(), 1, d, inst.zero_like());
  for (int i = 0; i < inst.dv().m(); ++i) {
    const Form<K> dFi = Form<K>::differential(inst.F()[static_cast<std::size_t>(i)]);
    w = w + dFi.poly_scaled(hat_F_single(inst, i)).scaled(inst.lambda()[static_cast<std::size_t>(i)]);
  }
  return w;
}

/// Frobenius condition w ^ dw == 0, decided exactly.
template <class K>
bool check_integrability(const Form<K>& w) {
  if (w.q() != 1) throw std::invalid_argument("check_integrability: expects a 1-form");
  return wedge(w, w.exterior_derivative()).is_zero();
}

/// <R, mu> computed by contraction and certified against (sum d_i lambda_i) F.
template <class K>
Polynomial<K> radial_contraction_value(const LogInstance<K>& inst) {
  const Polynomial<K> lhs = mu(inst).contract_radial().as_polynomial();
  const Polynomial<K> rhs = product_F(inst).scaled(inst.sum_d_lambda());
  if (lhs != rhs)
    throw std::logic_error("internal inconsistency: <R, mu> != (sum d_i lambda_i) F");
  return lhs;
}

struct IdentitySuiteReport {
  bool d_omega_closed_form = false;   // d(mu) = sum_{i<j} (l_j - l_i) Fhat_ij dF_i ^ dF_j
  bool integrating_factor = false;    // F dw - dF ^ w = 0
  std::vector<bool> leaf;             // dF_i ^ w == 0 mod F_i, per i
  bool radial_identity = false;       // <R, mu> = (sum d_i l_i) F

  bool all() const {
    if (!d_omega_closed_form || !integrating_factor || !radial_identity) return false;
    for (bool b : leaf)
      if (!b) return false;
    return true;
  }
};

/// Exact verification of every structural identity of a logarithmic form.
template <class K>
IdentitySuiteReport identity_suite(const LogInstance<K>& inst) {
  IdentitySuiteReport rep;
  const int m = inst.dv().m();
  const int d = inst.dv().total();
  const Form<K> w = mu(inst);
  const Form<K> dw = w.exterior_derivative();

  std::vector<Form<K>> dF;
  dF.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) dF.push_back(Form<K>::differential(inst.F()[static_cast<std::size_t>(i)]));

  // (i) closed form of the derivative
  Form<K> closed(inst.n(), 2, d, inst.zero_like());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const K c = inst.lambda()[static_cast<std::size_t>(j)] - inst.lambda()[static_cast<std::size_t>(i)];
      closed = closed + wedge(dF[static_cast<std::size_t>(i)], dF[static_cast<std::size_t>(j)])
                            .poly_scaled(hat_F_pair(inst, i, j))
                            .scaled(c);
    }
  }
  rep.d_omega_closed_form = (dw == closed);

  // (ii) F is an integrating factor
  const Polynomial<K> F = product_F(inst);
  rep.integrating_factor = (dw.poly_scaled(F) - wedge(Form<K>::differential(F), w)).is_zero();

  // (iii) each divisor is a leaf: dF_i ^ w vanishes mod F_i coefficient-wise
  rep.leaf.resize(static_cast<std::size_t>(m), false);
  for (int i = 0; i < m; ++i) {
    const Form<K> two = wedge(dF[static_cast<std::size_t>(i)], w);
    bool ok = true;
    for (const auto& [t, p] : two.coeffs()) {
      if (!divisible_by(p, inst.F()[static_cast<std::size_t>(i)])) {
        ok = false;
        break;
      }
    }
    rep.leaf[static_cast<std::size_t>(i)] = ok;
  }

  // radial contraction certificate
  const Polynomial<K> contracted = w.contract_radial().as_polynomial();
  rep.radial_identity = (contracted == F.scaled(inst.sum_d_lambda()));

  return rep;
}

/// Basis of the hyperplane Lambda(d): v_i = e_i - (d_i/d_m) e_m, i < m.
template <class K>
std::vector<std::vector<K>> lambda_hyperplane_basis(const DegreeVector& dv, const K& like) {
  const int m = dv.m();
  const K dm_inv = inv(from_int_like(like, dv.part(m - 1)));
  std::vector<std::vector<K>> basis;
  for (int i = 0; i < m - 1; ++i) {
    std::vector<K> v(static_cast<std::size_t>(m), like - like);
    v[static_cast<std::size_t>(i)] = from_int_like(like, 1);
    v[static_cast<std::size_t>(m - 1)] = -(from_int_like(like, dv.part(i)) * dm_inv);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// lambda = sum_j coords_j * (hyperplane basis vector j).
template <class K>
std::vector<K> lambda_from_hyperplane_coords(const DegreeVector& dv, const std::vector<K>& coords,
                                             const K& like) {
  if (static_cast<int>(coords.size()) != dv.m() - 1)
    throw std::invalid_argument("hyperplane coords must have length m-1");
  const auto basis = lambda_hyperplane_basis(dv, like);
  std::vector<K> lambda(static_cast<std::size_t>(dv.m()), like - like);
  for (std::size_t j = 0; j < coords.size(); ++j)
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] += coords[j] * basis[j][i];
  return lambda;
}

/// Canonical key of an instance modulo the order symmetry: within each block
/// of equal degrees, the (lambda_i, F_i) pairs are sorted by a printable key.
template <class K>
std::string canonical_order_key(const LogInstance<K>& inst) {
  const int m = inst.dv().m();
  std::string out;
  int block_start = 0;
  while (block_start < m) {
    int block_end = block_start;
    while (block_end < m && inst.dv().part(block_end) == inst.dv().part(block_start)) ++block_end;
    std::vector<std::string> keys;
    for (int i = block_start; i < block_end; ++i)
      keys.push_back(coeff_to_string(inst.lambda()[static_cast<std::size_t>(i)]) + "|" +
                     inst.F()[static_cast<std::size_t>(i)].to_string());
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) out += k + ";";
    block_start = block_end;
  }
  return out;
}

}  // namespace logforms

#endif  // LOGFORMS_LOGARITHMIC_HPP
