#ifndef LOGFORMS_JSON_IO_HPP
#define LOGFORMS_JSON_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "logforms/baselocus.hpp"
#include "logforms/logarithmic.hpp"
#include "logforms/singular.hpp"
#include "logforms/tangent.hpp"

namespace logforms {

using Json = nlohmann::ordered_json;

// Coefficients are serialized as strings so files stay exact.

template <class K>
Json poly_to_json(const Polynomial<K>& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exps"] = m.exps();
    t["coeff"] = coeff_to_string(c);
    terms.push_back(std::move(t));
  }
  Json out;
  out["degree"] = p.degree();
  out["terms"] = std::move(terms);
  return out;
}

template <class K>
Polynomial<K> poly_from_json(const Json& j, int n, const K& like) {
  if (!j.contains("degree") || !j.contains("terms"))
    throw std::invalid_argument("polynomial JSON needs 'degree' and 'terms'");
  Polynomial<K> p(n, j.at("degree").get<int>(), like);
  for (const auto& t : j.at("terms")) {
    const std::vector<int> exps = t.at("exps").get<std::vector<int>>();
    p.add_term(Monomial(exps), coeff_from_string(like, t.at("coeff").get<std::string>()));
  }
  return p;
}

template <class K>
Json form_to_json(const Form<K>& f) {
  Json coeffs = Json::array();
  for (const auto& [t, p] : f.coeffs()) {
    Json entry;
    entry["J"] = t;
    entry["poly"] = poly_to_json(p);
    coeffs.push_back(std::move(entry));
  }
  Json out;
  out["q"] = f.q();
  out["degree"] = f.degree();
  out["coeffs"] = std::move(coeffs);
  return out;
}

template <class K>
Form<K> form_from_json(const Json& j, int n, const K& like) {
  Form<K> f(n, j.at("q").get<int>(), j.at("degree").get<int>(), like);
  for (const auto& entry : j.at("coeffs"))
    f.add_term(entry.at("J").get<std::vector<int>>(), poly_from_json(entry.at("poly"), n, like));
  return f;
}

inline Json field_to_json(const FieldSpec& fs) {
  if (fs.is_rational()) return Json("rational");
  Json j;
  j["prime"] = fs.p;
  return j;
}

inline FieldSpec field_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "rational") return FieldSpec::rational();
    throw std::invalid_argument("unknown field name: " + j.get<std::string>());
  }
  if (j.is_object() && j.contains("prime")) return FieldSpec::prime(j.at("prime").get<std::uint64_t>());
  throw std::invalid_argument("field JSON must be \"rational\" or {\"prime\": p}");
}

template <class K>
Json instance_to_json(const LogInstance<K>& inst, const FieldSpec& fs) {
  Json out;
  out["n"] = inst.n();
  out["field"] = field_to_json(fs);
  out["degrees"] = inst.dv().parts();
  Json lambda = Json::array();
  for (const K& l : inst.lambda()) lambda.push_back(coeff_to_string(l));
  out["lambda"] = std::move(lambda);
  Json polys = Json::array();
  for (const auto& f : inst.F()) polys.push_back(poly_to_json(f));
  out["polys"] = std::move(polys);
  if (inst.seed()) out["seed"] = *inst.seed();
  return out;
}

template <class K>
LogInstance<K> instance_from_json(const Json& j, const K& like) {
  const int n = j.at("n").get<int>();
  DegreeVector dv(j.at("degrees").get<std::vector<int>>());
  std::vector<K> lambda;
  for (const auto& l : j.at("lambda"))
    lambda.push_back(coeff_from_string(like, l.get<std::string>()));
  std::vector<Polynomial<K>> F;
  for (const auto& pj : j.at("polys")) F.push_back(poly_from_json(pj, n, like));
  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
  return LogInstance<K>(n, std::move(dv), std::move(lambda), std::move(F), seed);
}

inline Json stability_report_to_json(const StabilityReport& rep) {
  Json out;
  Json inst;
  if (rep.has_seed) inst["seed"] = rep.seed;
  inst["degrees"] = rep.degrees;
  inst["field"] = rep.field;
  inst["n"] = rep.n;
  out["instance"] = std::move(inst);
  out["dim_V"] = rep.dim_V;
  out["dim_ambient"] = rep.dim_ambient;
  out["dim_T"] = rep.dim_T;
  out["rank_dmu"] = rep.rank_dmu;
  out["ker_dmu_dim"] = rep.ker_dmu_dim;
  out["balanced"] = rep.balanced;
  out["r_d"] = rep.r_d;
  out["surjective"] = rep.surjective;
  out["in_theorem_scope"] = rep.in_theorem_scope;
  out["degenerate"] = rep.degenerate;
  return out;
}

inline Json identity_report_to_json(const IdentitySuiteReport& rep) {
  Json out;
  out["d_omega_closed_form"] = rep.d_omega_closed_form;
  out["integrating_factor"] = rep.integrating_factor;
  out["leaf"] = rep.leaf;
  out["radial_identity"] = rep.radial_identity;
  out["pass"] = rep.all();
  return out;
}

inline Json factorization_to_json(const BaseLocusComponent& c) {
  Json out;
  out["m_prime"] = c.phi.m_prime;
  Json rows = Json::array();
  for (const auto& row : c.phi.e) rows.push_back(row);
  out["e"] = std::move(rows);
  out["d_prime"] = c.phi.d_prime;
  out["lambda_dim"] = c.lambda_dim;
  out["is_maximal"] = c.is_maximal;
  return out;
}

inline Json baselocus_to_json(const std::vector<BaseLocusComponent>& all) {
  Json out;
  Json fac = Json::array();
  for (const auto& c : all) fac.push_back(factorization_to_json(c));
  out["factorizations"] = std::move(fac);
  Json maximal = Json::array();
  for (const auto& c : components_of_b_rho(all)) maximal.push_back(factorization_to_json(c));
  out["maximal"] = std::move(maximal);
  return out;
}

inline Json hilbert_to_json(const std::vector<HilbertCheck>& rows) {
  Json out = Json::array();
  for (const auto& h : rows) {
    Json r;
    r["k"] = h.k;
    r["direct"] = h.direct;
    r["predicted"] = h.predicted;
    r["match"] = h.match;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace logforms

#endif  // LOGFORMS_JSON_IO_HPP
