#ifndef LOGFORMS_SINGULAR_HPP
#define LOGFORMS_SINGULAR_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "logforms/logarithmic.hpp"
#include "logforms/matrix.hpp"
#include "logforms/tangent.hpp"

namespace logforms {

/// Generators Fhat_i of the second-stratum ideal together with the standard
/// syzygies R_j = F_j e_j - F_1 e_1 (j = 2..m), checked to compose to zero.
template <class K>
struct J2Presentation {
  std::vector<Polynomial<K>> generators;               // Fhat_i, degree dhat_i
  std::vector<std::vector<Polynomial<K>>> relations;   // m-1 rows of coefficient vectors
};

template <class K>
J2Presentation<K> j2_presentation(const LogInstance<K>& inst) {
  const int m = inst.dv().m();
  J2Presentation<K> pres;
  for (int i = 0; i < m; ++i) pres.generators.push_back(hat_F_single(inst, i));
  for (int j = 1; j < m; ++j) {
    std::vector<Polynomial<K>> rel;
    rel.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      Polynomial<K> entry(inst.n(), inst.dv().part(i), inst.zero_like());
      if (i == j) entry = inst.F()[static_cast<std::size_t>(j)];
      if (i == 0) entry = -inst.F()[0];
      rel.push_back(std::move(entry));
    }
    // delta_1(delta_0(e_j)) = F_j Fhat_j - F_1 Fhat_1 = F - F
    Polynomial<K> composite(inst.n(), inst.dv().total(), inst.zero_like());
    for (int i = 0; i < m; ++i)
      if (!rel[static_cast<std::size_t>(i)].is_zero())
        composite = composite + rel[static_cast<std::size_t>(i)] * pres.generators[static_cast<std::size_t>(i)];
    if (!composite.is_zero())
      throw std::logic_error("internal inconsistency: syzygy does not compose to zero");
    pres.relations.push_back(std::move(rel));
  }
  return pres;
}

struct HilbertCheck {
  int k = 0;
  long long direct = 0;     // rank of the generated span in degree k
  long long predicted = 0;  // resolution formula
  bool match = false;
};

/// Compares dim span{Fhat_i * (monomials of degree k - dhat_i)} inside
/// S_n(k), computed by exact rank, against the resolution prediction
///   sum_i C(n + k - dhat_i, n) - (m-1) C(n + k - d, n).
template <class K>
HilbertCheck hilbert_check(const LogInstance<K>& inst, int k) {
  if (k < 0) throw std::invalid_argument("hilbert_check: k must be nonnegative");
  const int n = inst.n();
  const int m = inst.dv().m();
  const int d = inst.dv().total();

  HilbertCheck out;
  out.k = k;
  out.predicted = -static_cast<long long>(m - 1) * monomial_count(n, k - d);
  for (int i = 0; i < m; ++i) out.predicted += monomial_count(n, k - inst.dv().hat(i));

  FormCoords<K> target(n, 0, k, inst.zero_like());
  std::vector<std::vector<K>> cols;
  for (int i = 0; i < m; ++i) {
    const int ki = k - inst.dv().hat(i);
    if (ki < 0) continue;
    const Polynomial<K> hat = hat_F_single(inst, i);
    for (const auto& mono : monomials_of_degree(n, ki)) {
      Polynomial<K> mp(n, ki, inst.zero_like());
      mp.add_term(mono, from_int_like(inst.zero_like(), 1));
      cols.push_back(target.coords(Form<K>::from_polynomial(hat * mp)));
    }
  }
  Matrix<K> span(target.dim(), cols.size(), inst.zero_like());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r)
      if (!is_zero(cols[c][r])) span.set(r, c, cols[c][r]);
  out.direct = static_cast<long long>(span.rank());
  out.match = (out.direct == out.predicted);
  return out;
}

/// Solves alpha = sum_i Fhat_i alpha_i with alpha_i arbitrary 1-forms of
/// degree d_i.  Feasibility is membership of alpha in the stratum ideal
/// shape; infeasible is a normal outcome.  Any exact solution is returned
/// (the syzygies make it non-unique); only recomposed values are canonical.
template <class K>
std::optional<std::vector<Form<K>>> vanishing_decomposition(const LogInstance<K>& inst,
                                                            const Form<K>& alpha) {
  const int n = inst.n();
  const int m = inst.dv().m();
  const int d = inst.dv().total();
  if (alpha.q() != 1 || alpha.degree() != d || alpha.nvars_minus_one() != n)
    throw std::invalid_argument("vanishing_decomposition: alpha must be a 1-form of degree d");

  FormCoords<K> target(n, 1, d, inst.zero_like());
  std::vector<FormCoords<K>> blocks;
  std::vector<Polynomial<K>> hats;
  std::size_t total_cols = 0;
  for (int i = 0; i < m; ++i) {
    blocks.emplace_back(n, 1, inst.dv().part(i), inst.zero_like());
    hats.push_back(hat_F_single(inst, i));
    total_cols += blocks.back().dim();
  }

  Matrix<K> sys(target.dim(), total_cols, inst.zero_like());
  std::size_t col = 0;
  for (int i = 0; i < m; ++i) {
    for (std::size_t b = 0; b < blocks[static_cast<std::size_t>(i)].dim(); ++b, ++col) {
      std::vector<K> unit(blocks[static_cast<std::size_t>(i)].dim(), inst.zero_like());
      unit[b] = from_int_like(inst.zero_like(), 1);
      const Form<K> basis_form = blocks[static_cast<std::size_t>(i)].form(unit);
      const std::vector<K> image = target.coords(basis_form.poly_scaled(hats[static_cast<std::size_t>(i)]));
      for (std::size_t r = 0; r < image.size(); ++r)
        if (!is_zero(image[r])) sys.set(r, col, image[r]);
    }
  }

  auto sol = sys.solve(target.coords(alpha));
  if (!sol) return std::nullopt;
  std::vector<Form<K>> parts;
  col = 0;
  for (int i = 0; i < m; ++i) {
    std::vector<K> v(sol->begin() + static_cast<long>(col),
                     sol->begin() + static_cast<long>(col + blocks[static_cast<std::size_t>(i)].dim()));
    parts.push_back(blocks[static_cast<std::size_t>(i)].form(v));
    col += blocks[static_cast<std::size_t>(i)].dim();
  }
  return parts;
}

template <class K>
Form<K> recompose_vanishing(const LogInstance<K>& inst, const std::vector<Form<K>>& parts) {
  const int d = inst.dv().total();
  Form<K> acc(inst.n(), 1, d, inst.zero_like());
  for (int i = 0; i < inst.dv().m(); ++i)
    acc = acc + parts[static_cast<std::size_t>(i)].poly_scaled(hat_F_single(inst, i));
  return acc;
}

template <class K>
struct ProjectiveDecomposition {
  std::vector<K> lambda_prime;   // in Lambda(d): sum d_i lambda'_i = 0
  std::vector<Form<K>> gamma;    // projective 1-forms of degrees d_i
};

/// Refined solver for projective alpha vanishing on the second stratum:
///   alpha = sum_i lambda'_i Fhat_i dF_i + sum_i Fhat_i gamma_i
/// with gamma_i projective.  Feasible exactly when the unconstrained
/// decomposition is feasible and alpha is projective.
template <class K>
std::optional<ProjectiveDecomposition<K>> projective_vanishing_decomposition(
    const LogInstance<K>& inst, const Form<K>& alpha) {
  const int n = inst.n();
  const int m = inst.dv().m();
  const int d = inst.dv().total();
  if (alpha.q() != 1 || alpha.degree() != d || alpha.nvars_minus_one() != n)
    throw std::invalid_argument("projective_vanishing_decomposition: alpha must be a 1-form of degree d");
  if (!alpha.is_projective())
    throw std::invalid_argument("projective_vanishing_decomposition: alpha must be projective");

  FormCoords<K> target(n, 1, d, inst.zero_like());
  const auto lam_basis = lambda_hyperplane_basis(inst.dv(), inst.zero_like());
  std::vector<OneFormBasis<K>> gamma_bases;
  std::size_t total_cols = lam_basis.size();
  for (int i = 0; i < m; ++i) {
    gamma_bases.push_back(projective_oneform_basis(n, inst.dv().part(i), inst.zero_like()));
    total_cols += gamma_bases.back().dim();
  }

  std::vector<Form<K>> dF;
  std::vector<Polynomial<K>> hats;
  for (int i = 0; i < m; ++i) {
    dF.push_back(Form<K>::differential(inst.F()[static_cast<std::size_t>(i)]));
    hats.push_back(hat_F_single(inst, i));
  }

  Matrix<K> sys(target.dim(), total_cols, inst.zero_like());
  std::size_t col = 0;
  for (std::size_t j = 0; j < lam_basis.size(); ++j, ++col) {
    Form<K> img(n, 1, d, inst.zero_like());
    for (int i = 0; i < m; ++i)
      if (!is_zero(lam_basis[j][static_cast<std::size_t>(i)]))
        img = img + dF[static_cast<std::size_t>(i)]
                        .poly_scaled(hats[static_cast<std::size_t>(i)])
                        .scaled(lam_basis[j][static_cast<std::size_t>(i)]);
    const std::vector<K> image = target.coords(img);
    for (std::size_t r = 0; r < image.size(); ++r)
      if (!is_zero(image[r])) sys.set(r, col, image[r]);
  }
  for (int i = 0; i < m; ++i) {
    for (const auto& member : gamma_bases[static_cast<std::size_t>(i)].members()) {
      const std::vector<K> image = target.coords(member.poly_scaled(hats[static_cast<std::size_t>(i)]));
      for (std::size_t r = 0; r < image.size(); ++r)
        if (!is_zero(image[r])) sys.set(r, col, image[r]);
      ++col;
    }
  }

  auto sol = sys.solve(target.coords(alpha));
  if (!sol) return std::nullopt;

  ProjectiveDecomposition<K> out;
  std::vector<K> lam_coords(sol->begin(), sol->begin() + static_cast<long>(lam_basis.size()));
  out.lambda_prime = lambda_from_hyperplane_coords(inst.dv(), lam_coords, inst.zero_like());
  col = lam_basis.size();
  for (int i = 0; i < m; ++i) {
    const auto& gb = gamma_bases[static_cast<std::size_t>(i)];
    std::vector<K> coords(sol->begin() + static_cast<long>(col),
                          sol->begin() + static_cast<long>(col + gb.dim()));
    out.gamma.push_back(gb.combine(coords));
    col += gb.dim();
  }
  return out;
}

template <class K>
Form<K> recompose_projective(const LogInstance<K>& inst, const ProjectiveDecomposition<K>& dec) {
  const int d = inst.dv().total();
  Form<K> acc(inst.n(), 1, d, inst.zero_like());
  for (int i = 0; i < inst.dv().m(); ++i) {
    const Polynomial<K> hat = hat_F_single(inst, i);
    if (!is_zero(dec.lambda_prime[static_cast<std::size_t>(i)]))
      acc = acc + Form<K>::differential(inst.F()[static_cast<std::size_t>(i)])
                      .poly_scaled(hat)
                      .scaled(dec.lambda_prime[static_cast<std::size_t>(i)]);
    if (!dec.gamma[static_cast<std::size_t>(i)].is_zero())
      acc = acc + dec.gamma[static_cast<std::size_t>(i)].poly_scaled(hat);
  }
  return acc;
}

}  // namespace logforms

#endif  // LOGFORMS_SINGULAR_HPP
