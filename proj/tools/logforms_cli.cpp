// Command-line front end: seeded instance generation, identity checking,
// stability certification, base-locus enumeration, and Hilbert tables.
// JSON in, JSON out; no clock, no environment, every random draw is seeded.
//
// Exit codes: 0 = success, 1 = a check or certificate failed, 2 = malformed
// input (bad flags, bad files, bad instance data).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logforms/logforms.hpp"

using namespace logforms;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

std::vector<int> parse_degrees(const std::string& csv) {
  std::vector<int> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad degree list: '" + csv + "'");
    }
  }
  if (parts.empty()) throw std::invalid_argument("empty degree list");
  std::sort(parts.rbegin(), parts.rend());  // normalize nonincreasing
  return parts;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      seeds.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed list: '" + csv + "'");
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

// "2..6" or "4"
std::pair<int, int> parse_k_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(s);
      return {k, k};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad k range: '" + s + "' (want K or K1..K2)");
  }
}

void emit(const Json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

Json load_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open input file: " + path);
  try {
    return Json::parse(f);
  } catch (const std::exception& e) {
    throw std::invalid_argument("JSON parse error in '" + path + "': " + e.what());
  }
}

template <class Fn>
int with_field(const FieldSpec& fs, Fn&& fn) {
  if (fs.is_rational()) return fn(exemplar_rat());
  return fn(exemplar_fp(fs.p));
}

// the human one-liner goes to stdout when the JSON report went to a file,
// to stderr when the JSON occupies stdout
struct Options;
std::ostream& summary_stream(const struct Options& opt);

struct Options {
  int n = 3;
  std::string degrees;
  std::string field = "prime:2147483647";
  std::uint64_t seed = 0;
  std::string seeds;
  std::string out;
  std::string krange;
  std::string instance_path;
  bool verbose = false;
};

std::ostream& summary_stream(const Options& opt) { return opt.out.empty() ? std::cerr : std::cout; }

int cmd_gen(const Options& opt) {
  const FieldSpec fs = FieldSpec::parse(opt.field);
  const DegreeVector dv(parse_degrees(opt.degrees));
  fs.require_char_above(dv.total());
  return with_field(fs, [&](const auto& like) {
    auto inst = random_instance(opt.n, dv, like, opt.seed);
    emit(instance_to_json(inst, fs), opt.out);
    return kExitPass;
  });
}

template <class K>
Json check_report(const LogInstance<K>& inst) {
  const auto rep = identity_suite(inst);
  const auto w = mu(inst);
  const bool integrable = check_integrability(w);
  const bool projectivity_consistent = (w.is_zero() || w.is_projective() == inst.is_projective_point());
  Json out;
  out["degrees"] = inst.dv().parts();
  out["n"] = inst.n();
  out["mu_is_zero"] = w.is_zero();
  out["identities"] = identity_report_to_json(rep);
  out["integrable"] = integrable;
  out["projectivity_consistent"] = projectivity_consistent;
  out["generic_flags"] = inst.generic_flags();
  out["pass"] = rep.all() && integrable && projectivity_consistent;
  return out;
}

int cmd_check(const Options& opt) {
  const Json j = load_json(opt.instance_path);
  const FieldSpec fs = field_from_json(j.at("field"));
  return with_field(fs, [&](const auto& like) {
    using K = std::decay_t<decltype(like)>;
    const LogInstance<K> inst = instance_from_json<K>(j, like);
    const Json rep = check_report(inst);
    emit(rep, opt.out);
    const bool pass = rep.at("pass").get<bool>();
    summary_stream(opt) << (pass ? "check: all identities hold\n" : "check: FAILED\n");
    return pass ? kExitPass : kExitCheckFailed;
  });
}

int cmd_certify(const Options& opt) {
  const FieldSpec fs = FieldSpec::parse(opt.field);
  const DegreeVector dv(parse_degrees(opt.degrees));
  fs.require_char_above(dv.total());
  std::vector<std::uint64_t> seeds =
      opt.seeds.empty() ? std::vector<std::uint64_t>{opt.seed} : parse_seeds(opt.seeds);

  return with_field(fs, [&](const auto& like) {
    Json reports = Json::array();
    bool all_surjective = true;
    for (const auto seed : seeds) {
      auto inst = random_instance(opt.n, dv, like, seed);
      const StabilityReport rep = stability_certificate(inst, fs.to_string());
      all_surjective = all_surjective && rep.surjective;
      reports.push_back(stability_report_to_json(rep));
      if (opt.verbose)
        std::cerr << "seed " << seed << ": rank(dmu)=" << rep.rank_dmu << " dim T=" << rep.dim_T
                  << (rep.surjective ? " surjective" : " NOT surjective") << "\n";
    }
    Json out;
    Json config;
    config["n"] = opt.n;
    config["degrees"] = dv.parts();
    config["field"] = fs.to_string();
    out["config"] = std::move(config);
    out["seeds"] = seeds;
    out["reports"] = std::move(reports);
    out["unanimous_surjective"] = all_surjective;
    emit(out, opt.out);
    summary_stream(opt) << (all_surjective ? "certify: surjective at every seed\n"
                                           : "certify: FAILED at some seed\n");
    return all_surjective ? kExitPass : kExitCheckFailed;
  });
}

int cmd_baselocus(const Options& opt) {
  const DegreeVector dv(parse_degrees(opt.degrees));
  emit(baselocus_to_json(maximal_elements(dv)), opt.out);
  return kExitPass;
}

int cmd_hilbert(const Options& opt) {
  const FieldSpec fs = FieldSpec::parse(opt.field);
  const DegreeVector dv(parse_degrees(opt.degrees));
  fs.require_char_above(dv.total());
  const auto [k_lo, k_hi] = parse_k_range(opt.krange);
  if (k_lo < 0 || k_hi < k_lo) throw std::invalid_argument("bad k range");
  return with_field(fs, [&](const auto& like) {
    using K = std::decay_t<decltype(like)>;
    const LogInstance<K> inst = random_instance(opt.n, dv, like, opt.seed);
    std::vector<HilbertCheck> rows;
    bool all_match = true;
    for (int k = k_lo; k <= k_hi; ++k) {
      rows.push_back(hilbert_check(inst, k));
      all_match = all_match && rows.back().match;
    }
    emit(hilbert_to_json(rows), opt.out);
    summary_stream(opt) << (all_match ? "hilbert: all degrees match the resolution\n"
                                      : "hilbert: MISMATCH\n");
    return all_match ? kExitPass : kExitCheckFailed;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact logarithmic differential one-forms on P^n"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_degrees) {
    sub->add_option("--field", opt.field, "coefficient field: rational | prime:P");
    sub->add_option("--out", opt.out, "write the JSON result here (default: stdout)");
    if (needs_degrees)
      sub->add_option("--degrees", opt.degrees, "comma-separated d_1,...,d_m")->required();
  };

  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  add_common(gen, true);
  gen->add_option("--n", opt.n, "projective dimension");
  gen->add_option("--seed", opt.seed, "64-bit seed")->required();

  auto* check = app.add_subcommand("check", "run the identity suite on an instance file");
  check->add_option("instance", opt.instance_path, "instance JSON path")->required();
  check->add_option("--out", opt.out, "write the JSON report here (default: stdout)");

  auto* certify = app.add_subcommand("certify", "stability certificate at seeded instances");
  add_common(certify, true);
  certify->add_option("--n", opt.n, "projective dimension");
  certify->add_option("--seed", opt.seed, "single seed");
  certify->add_option("--seeds", opt.seeds, "comma-separated seed list (unanimity required)");
  certify->add_flag("-v,--verbose", opt.verbose, "per-seed progress on stderr");

  auto* baselocus = app.add_subcommand("baselocus", "enumerate factorizations and components");
  add_common(baselocus, true);

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert table of the second-stratum ideal");
  add_common(hilbert, true);
  hilbert->add_option("--n", opt.n, "projective dimension");
  hilbert->add_option("--k", opt.krange, "degree or range, e.g. 4 or 2..6")->required();
  hilbert->add_option("--seed", opt.seed, "64-bit seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (gen->parsed()) return cmd_gen(opt);
    if (check->parsed()) return cmd_check(opt);
    if (certify->parsed()) return cmd_certify(opt);
    if (baselocus->parsed()) return cmd_baselocus(opt);
    if (hilbert->parsed()) return cmd_hilbert(opt);
  } catch (const BaseLocusInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
