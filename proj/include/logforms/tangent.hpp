#ifndef LOGFORMS_TANGENT_HPP
#define LOGFORMS_TANGENT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "logforms/form.hpp"
#include "logforms/logarithmic.hpp"
#include "logforms/matrix.hpp"

namespace logforms {

/// Coordinates on the space of q-forms of degree `degree`: index tuples in
/// lexicographic order crossed with the grevlex monomial basis of the
/// coefficient degree.  index = tuple_idx * #monomials + monomial_idx.
template <class K>
class FormCoords {
 public:
  FormCoords(int n, int q, int degree, const K& like)
      : n_(n), q_(q), degree_(degree), like_(like), tuples_(index_tuples(n, q)),
        monos_(monomials_of_degree(n, degree - q)) {
    if (degree - q < 0) throw std::invalid_argument("FormCoords: degree < grade");
    for (std::size_t i = 0; i < monos_.size(); ++i) mono_index_.emplace(monos_[i], i);
    for (std::size_t i = 0; i < tuples_.size(); ++i) tuple_index_.emplace(tuples_[i], i);
  }

  int n() const { return n_; }
  int q() const { return q_; }
  int degree() const { return degree_; }
  std::size_t dim() const { return tuples_.size() * monos_.size(); }
  const std::vector<IndexTuple>& tuples() const { return tuples_; }
  const std::vector<Monomial>& monomials() const { return monos_; }

  std::vector<K> coords(const Form<K>& f) const {
    if (f.q() != q_ || f.degree() != degree_ || f.nvars_minus_one() != n_)
      throw std::invalid_argument("FormCoords::coords: shape mismatch");
    std::vector<K> v(dim(), like_);
    for (const auto& [t, p] : f.coeffs()) {
      const std::size_t ti = tuple_index_.at(t);
      for (const auto& [m, c] : p.terms()) v[ti * monos_.size() + mono_index_.at(m)] = c;
    }
    return v;
  }

  Form<K> form(const std::vector<K>& v) const {
    if (v.size() != dim()) throw std::invalid_argument("FormCoords::form: length mismatch");
    Form<K> f(n_, q_, degree_, like_);
    for (std::size_t ti = 0; ti < tuples_.size(); ++ti) {
      Polynomial<K> p(n_, degree_ - q_, like_);
      for (std::size_t mi = 0; mi < monos_.size(); ++mi) {
        const K& c = v[ti * monos_.size() + mi];
        if (!is_zero(c)) p.add_term(monos_[mi], c);
      }
      if (!p.is_zero()) f.add_term(tuples_[ti], p);
    }
    return f;
  }

  std::string label(std::size_t idx) const {
    const std::size_t ti = idx / monos_.size();
    const std::size_t mi = idx % monos_.size();
    std::string s = monos_[mi].to_string();
    for (std::size_t i = 0; i < tuples_[ti].size(); ++i)
      s += (i == 0 ? " dx" : "^dx") + std::to_string(tuples_[ti][i]);
    return s;
  }

 private:
  int n_, q_, degree_;
  K like_;
  std::vector<IndexTuple> tuples_;
  std::vector<Monomial> monos_;
  std::map<Monomial, std::size_t, GrevlexGreater> mono_index_;
  std::map<IndexTuple, std::size_t> tuple_index_;
};

/// Deterministic basis of the projective 1-forms of degree d, computed as
/// the exact kernel of radial contraction on the ambient 1-forms.  The RREF
/// parametrization (each member is 1 at its own free coordinate, 0 at every
/// other free coordinate) makes expressing a form in this basis a read-off.
template <class K>
class OneFormBasis {
 public:
  OneFormBasis(int n, int d, const K& like, FormCoords<K> ambient,
               std::vector<std::vector<K>> kernel, std::vector<std::size_t> free_cols)
      : n_(n), d_(d), like_(like), ambient_(std::move(ambient)), kernel_(std::move(kernel)),
        free_cols_(std::move(free_cols)) {
    members_.reserve(kernel_.size());
    for (const auto& v : kernel_) members_.push_back(ambient_.form(v));
  }

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t dim() const { return kernel_.size(); }
  const FormCoords<K>& ambient() const { return ambient_; }
  const std::vector<Form<K>>& members() const { return members_; }
  const std::vector<std::vector<K>>& kernel_vectors() const { return kernel_; }

  /// Coordinates of f in this basis, or nullopt when f is outside the span.
  std::optional<std::vector<K>> try_express(const Form<K>& f) const {
    std::vector<K> v = ambient_.coords(f);
    std::vector<K> c;
    c.reserve(kernel_.size());
    for (std::size_t j = 0; j < kernel_.size(); ++j) c.push_back(v[free_cols_[j]]);
    // verify exactly: v == sum_j c_j * kernel_j
    for (std::size_t i = 0; i < v.size(); ++i) {
      K acc = like_;
      for (std::size_t j = 0; j < kernel_.size(); ++j)
        if (!is_zero(c[j]) && !is_zero(kernel_[j][i])) acc += c[j] * kernel_[j][i];
      if (!(acc == v[i])) return std::nullopt;
    }
    return c;
  }

  std::vector<K> express(const Form<K>& f) const {
    auto c = try_express(f);
    if (!c) throw std::invalid_argument("form is not projective / not in the basis span");
    return *c;
  }

  Form<K> combine(const std::vector<K>& coords) const {
    if (coords.size() != dim()) throw std::invalid_argument("combine: length mismatch");
    std::vector<K> v(ambient_.dim(), like_);
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (is_zero(coords[j])) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(kernel_[j][i])) v[i] += coords[j] * kernel_[j][i];
    }
    return ambient_.form(v);
  }

 private:
  int n_, d_;
  K like_;
  FormCoords<K> ambient_;
  std::vector<std::vector<K>> kernel_;
  std::vector<std::size_t> free_cols_;
  std::vector<Form<K>> members_;
};

template <class K>
OneFormBasis<K> projective_oneform_basis(int n, int d, const K& like) {
  if (n < 1 || d < 1) throw std::invalid_argument("projective_oneform_basis: need n >= 1, d >= 1");
  FormCoords<K> ambient(n, 1, d, like);
  FormCoords<K> target(n, 0, d, like);
  Matrix<K> contr(target.dim(), ambient.dim(), like);
  for (std::size_t col = 0; col < ambient.dim(); ++col) {
    std::vector<K> unit(ambient.dim(), like);
    unit[col] = from_int_like(like, 1);
    const Form<K> b = ambient.form(unit);
    const std::vector<K> image = target.coords(b.contract_radial());
    for (std::size_t r = 0; r < image.size(); ++r)
      if (!is_zero(image[r])) contr.set(r, col, image[r]);
  }
  auto ns = contr.nullspace();
  OneFormBasis<K> basis(n, d, like, std::move(ambient), std::move(ns.basis), std::move(ns.free_cols));
  // Euler-sequence dimension count, used as a cross-check oracle
  const long long expected =
      static_cast<long long>(n + 1) * monomial_count(n, d - 1) - monomial_count(n, d);
  if (static_cast<long long>(basis.dim()) != expected)
    throw std::logic_error("projective basis dimension disagrees with the Euler count");
  return basis;
}

// ---------------------------------------------------------------------------
// Tangent space of the integrability variety
// ---------------------------------------------------------------------------

/// Evaluates the tangent condition w ^ d(alpha) + alpha ^ d(w) exactly.
template <class K>
Form<K> tangent_condition(const Form<K>& w, const Form<K>& alpha) {
  return wedge(w, alpha.exterior_derivative()) + wedge(alpha, w.exterior_derivative());
}

template <class K>
bool in_tangent_space(const Form<K>& w, const Form<K>& alpha) {
  return tangent_condition(w, alpha).is_zero();
}

template <class K>
struct TangentSpaceResult {
  std::vector<std::vector<K>> basis;  // coordinates in the projective basis
  std::size_t dim() const { return basis.size(); }
};

/// Basis of T(w) = {alpha projective of degree d : w^da + a^dw = 0} as an
/// exact nullspace over the projective one-form basis.
template <class K>
TangentSpaceResult<K> tangent_space(const Form<K>& w, const OneFormBasis<K>& pb) {
  if (w.is_zero()) throw std::invalid_argument("tangent_space: w must be nonzero");
  if (w.q() != 1 || w.degree() != pb.d() || w.nvars_minus_one() != pb.n())
    throw std::invalid_argument("tangent_space: w has the wrong shape");
  if (!w.is_projective()) throw std::invalid_argument("tangent_space: w is not projective");
  if (!check_integrability(w)) throw std::invalid_argument("tangent_space: w is not integrable");

  FormCoords<K> three(pb.n(), 3, 2 * pb.d(), w.zero_like());
  Matrix<K> phi(three.dim(), pb.dim(), w.zero_like());
  for (std::size_t col = 0; col < pb.dim(); ++col) {
    const std::vector<K> image = three.coords(tangent_condition(w, pb.members()[col]));
    for (std::size_t r = 0; r < image.size(); ++r)
      if (!is_zero(image[r])) phi.set(r, col, image[r]);
  }
  TangentSpaceResult<K> out;
  out.basis = phi.nullspace().basis;
  return out;
}

// ---------------------------------------------------------------------------
// Derivative of mu
// ---------------------------------------------------------------------------

/// The derivative formula evaluated at (lambda', F'):
///   sum_i l'_i Fhat_i dF_i + sum_{i != k} l_i F'_k Fhat_ik dF_i + sum_i l_i Fhat_i dF'_i.
/// F'_i must be zero or homogeneous of degree d_i; lambda' must satisfy
/// sum d_i l'_i = 0 (a tangent vector of the hyperplane).
template <class K>
Form<K> dmu_apply(const LogInstance<K>& inst, const std::vector<K>& lambda_prime,
                  const std::vector<Polynomial<K>>& F_prime) {
  const int m = inst.dv().m();
  const int d = inst.dv().total();
  if (static_cast<int>(lambda_prime.size()) != m || static_cast<int>(F_prime.size()) != m)
    throw std::invalid_argument("dmu_apply: direction size mismatch");
  for (int i = 0; i < m; ++i) {
    const auto& Fp = F_prime[static_cast<std::size_t>(i)];
    if (!Fp.is_zero() && Fp.degree() != inst.dv().part(i))
      throw std::invalid_argument("dmu_apply: deg F'_" + std::to_string(i + 1) + " != d_" +
                                  std::to_string(i + 1));
  }
  {
    K acc = inst.zero_like();
    for (int i = 0; i < m; ++i)
      acc += from_int_like(acc, inst.dv().part(i)) * lambda_prime[static_cast<std::size_t>(i)];
    if (!is_zero(acc))
      throw std::invalid_argument("dmu_apply: lambda' is outside the hyperplane Lambda(d)");
  }

  Form<K> out(inst.n(), 1, d, inst.zero_like());
  std::vector<Form<K>> dF;
  dF.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) dF.push_back(Form<K>::differential(inst.F()[static_cast<std::size_t>(i)]));

  for (int i = 0; i < m; ++i) {
    const K& li = inst.lambda()[static_cast<std::size_t>(i)];
    const K& lpi = lambda_prime[static_cast<std::size_t>(i)];
    if (!is_zero(lpi))
      out = out + dF[static_cast<std::size_t>(i)].poly_scaled(hat_F_single(inst, i)).scaled(lpi);
    if (is_zero(li)) continue;
    for (int k = 0; k < m; ++k) {
      if (k == i || F_prime[static_cast<std::size_t>(k)].is_zero()) continue;
      out = out + dF[static_cast<std::size_t>(i)]
                      .poly_scaled(F_prime[static_cast<std::size_t>(k)] * hat_F_pair(inst, i, k))
                      .scaled(li);
    }
    if (!F_prime[static_cast<std::size_t>(i)].is_zero())
      out = out + Form<K>::differential(F_prime[static_cast<std::size_t>(i)])
                      .poly_scaled(hat_F_single(inst, i))
                      .scaled(li);
  }
  return out;
}

/// Domain coordinates of dmu on V_n(d): the hyperplane basis of Lambda(d)
/// followed by the monomial basis of each S_n(d_i).
template <class K>
class VCoordinates {
 public:
  VCoordinates(int n, const DegreeVector& dv, const K& like) : n_(n), dv_(dv), like_(like) {
    for (int i = 0; i < dv_.m(); ++i) fmonos_.push_back(monomials_of_degree(n_, dv_.part(i)));
  }

  std::size_t dim() const {
    std::size_t s = static_cast<std::size_t>(dv_.m() - 1);
    for (const auto& ms : fmonos_) s += ms.size();
    return s;
  }

  /// The pair (lambda', F') realizing unit coordinate j.
  std::pair<std::vector<K>, std::vector<Polynomial<K>>> direction(std::size_t j) const {
    const int m = dv_.m();
    std::vector<K> lp(static_cast<std::size_t>(m), like_);
    std::vector<Polynomial<K>> fp;
    for (int i = 0; i < m; ++i) fp.emplace_back(n_, dv_.part(i), like_);
    if (j < static_cast<std::size_t>(m - 1)) {
      lp = lambda_from_hyperplane_coords(dv_, unit_coords(static_cast<std::size_t>(m - 1), j), like_);
      return {lp, fp};
    }
    std::size_t rest = j - static_cast<std::size_t>(m - 1);
    for (int i = 0; i < m; ++i) {
      if (rest < fmonos_[static_cast<std::size_t>(i)].size()) {
        fp[static_cast<std::size_t>(i)].add_term(fmonos_[static_cast<std::size_t>(i)][rest],
                                                 from_int_like(like_, 1));
        return {lp, fp};
      }
      rest -= fmonos_[static_cast<std::size_t>(i)].size();
    }
    throw std::invalid_argument("VCoordinates::direction: index out of range");
  }

  std::string label(std::size_t j) const {
    const int m = dv_.m();
    if (j < static_cast<std::size_t>(m - 1))
      return "lam" + std::to_string(j + 1) + "-(d" + std::to_string(j + 1) + "/d" +
             std::to_string(m) + ")lam" + std::to_string(m);
    std::size_t rest = j - static_cast<std::size_t>(m - 1);
    for (int i = 0; i < m; ++i) {
      if (rest < fmonos_[static_cast<std::size_t>(i)].size())
        return "F" + std::to_string(i + 1) + ":" + fmonos_[static_cast<std::size_t>(i)][rest].to_string();
      rest -= fmonos_[static_cast<std::size_t>(i)].size();
    }
    throw std::invalid_argument("VCoordinates::label: index out of range");
  }

 private:
  int n_;
  DegreeVector dv_;
  K like_;
  std::vector<std::vector<Monomial>> fmonos_;

  std::vector<K> unit_coords(std::size_t len, std::size_t idx) const {
    std::vector<K> v(len, like_);
    v[idx] = from_int_like(like_, 1);
    return v;
  }
};

/// Exact matrix of a linear map with labeled coordinates.
template <class K>
struct LinearMapMatrix {
  Matrix<K> mat;
  std::vector<std::string> domain_labels;
  std::vector<std::string> codomain_labels;

  /// Sparse view: the nonzero entries as (row, col, value) triplets.
  std::vector<std::tuple<std::size_t, std::size_t, K>> nonzero_entries() const {
    std::vector<std::tuple<std::size_t, std::size_t, K>> out;
    for (std::size_t r = 0; r < mat.rows(); ++r)
      for (std::size_t c = 0; c < mat.cols(); ++c)
        if (!is_zero(mat.at(r, c))) out.emplace_back(r, c, mat.at(r, c));
    return out;
  }
};

/// Matrix of dmu from V_n(d)-coordinates to the projective one-form basis.
/// Column j is dmu_apply on the j-th coordinate direction, expressed exactly
/// in the basis (the image is projective, so expression never fails for a
/// projective instance).
template <class K>
LinearMapMatrix<K> dmu_matrix(const LogInstance<K>& inst, const OneFormBasis<K>& pb) {
  if (!inst.is_projective_point())
    throw std::invalid_argument("dmu_matrix: instance must lie in the hyperplane Lambda(d)");
  VCoordinates<K> vc(inst.n(), inst.dv(), inst.zero_like());
  LinearMapMatrix<K> out{Matrix<K>(pb.dim(), vc.dim(), inst.zero_like()), {}, {}};
  for (std::size_t j = 0; j < vc.dim(); ++j) {
    auto [lp, fp] = vc.direction(j);
    const std::vector<K> col = pb.express(dmu_apply(inst, lp, fp));
    for (std::size_t r = 0; r < col.size(); ++r)
      if (!is_zero(col[r])) out.mat.set(r, j, col[r]);
    out.domain_labels.push_back(vc.label(j));
  }
  for (std::size_t r = 0; r < pb.dim(); ++r) out.codomain_labels.push_back("pb" + std::to_string(r));
  return out;
}

/// Denominator-cleared derivative identity:
///   F a = F (sum_i l'_i Fhat_i dF_i) + G w + F dH - H dF,
/// with G = sum Fhat_i F'_i and H = sum l_i Fhat_i F'_i.
template <class K>
bool perturbation_identity(const LogInstance<K>& inst, const std::vector<K>& lambda_prime,
                           const std::vector<Polynomial<K>>& F_prime) {
  const int m = inst.dv().m();
  const int d = inst.dv().total();
  const Form<K> alpha = dmu_apply(inst, lambda_prime, F_prime);
  const Polynomial<K> F = product_F(inst);
  const Form<K> w = mu(inst);

  Polynomial<K> G(inst.n(), d, inst.zero_like());
  Polynomial<K> H(inst.n(), d, inst.zero_like());
  Form<K> eta_prime_scaled(inst.n(), 1, d, inst.zero_like());  // F * sum l'_i dF_i / F_i
  for (int i = 0; i < m; ++i) {
    const Polynomial<K> hat = hat_F_single(inst, i);
    const auto& Fp = F_prime[static_cast<std::size_t>(i)];
    if (!Fp.is_zero()) {
      G = G + hat * Fp;
      H = H + (hat * Fp).scaled(inst.lambda()[static_cast<std::size_t>(i)]);
    }
    if (!is_zero(lambda_prime[static_cast<std::size_t>(i)]))
      eta_prime_scaled = eta_prime_scaled +
                         Form<K>::differential(inst.F()[static_cast<std::size_t>(i)])
                             .poly_scaled(hat)
                             .scaled(lambda_prime[static_cast<std::size_t>(i)]);
  }

  const Form<K> lhs = alpha.poly_scaled(F);
  const Form<K> rhs = eta_prime_scaled.poly_scaled(F) + w.poly_scaled(G) +
                      Form<K>::differential(H).poly_scaled(F) -
                      Form<K>::differential(F).poly_scaled(H);
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Stability certificate
// ---------------------------------------------------------------------------

struct BalanceInfo {
  bool balanced;
  int r;  // floor(d_1 / (d - d_1)); zero exactly when balanced
};

/// d is balanced iff 2 d_1 < d; r(d) = floor(d_1 / dhat_1) measures the
/// failure of balance.
inline BalanceInfo classify_balance(const DegreeVector& dv) {
  const int d1 = dv.part(0);
  const int d = dv.total();
  return BalanceInfo{2 * d1 < d, d1 / (d - d1)};
}

/// mu vanished: the instance sits in the base locus, no certificate exists.
struct BaseLocusInstanceError : std::runtime_error {
  BaseLocusInstanceError() : std::runtime_error("mu(instance) = 0: base-locus instance rejected") {}
};

struct StabilityReport {
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::vector<int> degrees;
  std::string field;
  int n = 0;
  std::size_t dim_V = 0;
  std::size_t dim_ambient = 0;
  std::size_t dim_T = 0;
  std::size_t rank_dmu = 0;
  std::size_t ker_dmu_dim = 0;
  bool balanced = false;
  int r_d = 0;
  bool surjective = false;
  bool in_theorem_scope = false;  // the n >= 3 hypothesis
  bool degenerate = false;        // genericity flags failed
};

/// Desk-scale witness for stability: computes rank(dmu) and dim T(w) as
/// exact linear systems and reports surjective = (rank == dim T).  Every
/// column of dmu is also verified to satisfy the tangent condition, so the
/// comparison is between a subspace and the space containing it.
template <class K>
StabilityReport stability_certificate(const LogInstance<K>& inst, const std::string& field_name) {
  const Form<K> w = mu(inst);
  if (w.is_zero()) throw BaseLocusInstanceError();
  if (!inst.is_projective_point())
    throw std::invalid_argument("stability_certificate: instance must be projective");

  StabilityReport rep;
  if (inst.seed()) {
    rep.seed = *inst.seed();
    rep.has_seed = true;
  }
  rep.degrees = inst.dv().parts();
  rep.field = field_name;
  rep.n = inst.n();
  rep.in_theorem_scope = inst.n() >= 3;
  rep.degenerate = !inst.generic_flags();
  const BalanceInfo bal = classify_balance(inst.dv());
  rep.balanced = bal.balanced;
  rep.r_d = bal.r;

  const OneFormBasis<K> pb = projective_oneform_basis(inst.n(), inst.dv().total(), inst.zero_like());
  rep.dim_ambient = pb.dim();

  const TangentSpaceResult<K> T = tangent_space(w, pb);
  rep.dim_T = T.dim();

  const LinearMapMatrix<K> dmu = dmu_matrix(inst, pb);
  rep.dim_V = dmu.mat.cols();
  for (std::size_t j = 0; j < dmu.mat.cols(); ++j) {
    std::vector<K> col(dmu.mat.rows(), inst.zero_like());
    for (std::size_t r = 0; r < dmu.mat.rows(); ++r) col[r] = dmu.mat.at(r, j);
    if (!in_tangent_space(w, pb.combine(col)))
      throw std::logic_error("internal inconsistency: a dmu column violates the tangent condition");
  }
  rep.rank_dmu = dmu.mat.rank();
  rep.ker_dmu_dim = rep.dim_V - rep.rank_dmu;
  if (rep.rank_dmu > rep.dim_T || rep.dim_T > rep.dim_ambient)
    throw std::logic_error("internal inconsistency: rank/dimension ordering violated");
  rep.surjective = (rep.rank_dmu == rep.dim_T);
  return rep;
}

}  // namespace logforms

#endif  // LOGFORMS_TANGENT_HPP
