// torsym command-line front end: JSON in, JSON report out.
// Exit codes: 0 pass/success, 1 verified failure (identity violated),
// 2 input or usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "torsym/dist.hpp"
#include "torsym/json_io.hpp"
#include "torsym/suite.hpp"

namespace ts = torsym;
using ts::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 7;
  std::size_t samples = 24;
  double tolerance = 1e-9;
  unsigned precision_bits = 256;
  std::size_t budget = ts::kDefaultEnumBudget;
  std::string output;  // empty = stdout
};

ts::SamplePlan plan_from(const GlobalOpts& g) {
  ts::SamplePlan p;
  p.seed = g.seed;
  p.count = g.samples;
  p.tolerance = g.tolerance;
  p.precision_bits = g.precision_bits;
  return p;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) ts::fail(ts::errc::bad_input, "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    ts::fail(ts::errc::bad_input, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

int emit(const GlobalOpts& g, const json& report, bool pass) {
  std::string text = report.dump(2) + "\n";
  if (g.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(g.output);
    if (!out) ts::fail(ts::errc::bad_input, "cannot write '" + g.output + "'");
    out << text;
  }
  return pass ? 0 : 1;
}

ts::TorsionPoint parse_point(const std::string& csv) {
  ts::QVec coords;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) coords.push_back(ts::parse_rational(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  ts::require(!coords.empty(), ts::errc::bad_input, "empty torsion point");
  return ts::TorsionPoint(coords);
}

ts::GammaTuple gammas_from_json(const json& j) {
  ts::require(j.is_array(), ts::errc::bad_input, "gammas: expected an array of matrices");
  ts::GammaTuple t;
  for (const auto& g : j) t.push_back(ts::qmat_from_json(g));
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torsym: exact and numeric verification of torus symbol cocycles"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("TORSYM_PRECISION_BITS")) g.precision_bits = std::atoi(env);
  app.add_option("--seed", g.seed, "master seed for all randomized batches");
  app.add_option("--samples", g.samples, "sample count per numeric comparison");
  app.add_option("--tolerance", g.tolerance, "numeric comparison tolerance");
  app.add_option("--precision-bits", g.precision_bits, "working precision in bits (>= 64)");
  app.add_option("--budget", g.budget, "enumeration budget");
  app.add_option("--output", g.output, "write the JSON report to a file instead of stdout");

  // classify
  auto* c_classify = app.add_subcommand("classify", "classify a tuple of rays");
  std::string classify_file;
  c_classify->add_option("--tuple", classify_file, "JSON file: list of integer vectors")
      ->required();

  // realize
  auto* c_realize = app.add_subcommand("realize", "realize a simplex generator as a K element");
  std::string realize_file;
  c_realize->add_option("--simplex", realize_file, "JSON file: {\"n\":., \"vertices\":[[..]]}")
      ->required();

  // stellar
  auto* c_stellar = app.add_subcommand("stellar", "verify one stellar subdivision instance");
  std::string stellar_file;
  c_stellar->add_option("--instance", stellar_file, "JSON file: {\"base\":[[..]],\"r\":.,\"m\":[..]}")
      ->required();

  // theta
  auto* c_theta = app.add_subcommand("theta", "evaluate the cocycle on a matrix tuple");
  std::size_t theta_n = 2;
  std::string theta_mode = "plain", theta_file;
  c_theta->add_option("--n", theta_n, "ambient dimension")->required();
  c_theta->add_option("--mode", theta_mode, "plain | sym");
  c_theta->add_option("--gammas", theta_file, "JSON file: list of (n-1) rational matrices")
      ->required();

  // defect
  auto* c_defect = app.add_subcommand("defect", "Euler defect of an n-tuple");
  std::string defect_file;
  std::size_t defect_n = 2;
  c_defect->add_option("--n", defect_n, "ambient dimension")->required();
  c_defect->add_option("--gammas", defect_file, "JSON file: list of n rational matrices")
      ->required();

  // hecke
  auto* c_hecke = app.add_subcommand("hecke", "verify the Hecke multiset identity");
  long long hk_n = 2, hk_i = 1, hk_p = 2;
  c_hecke->add_option("--n", hk_n)->required();
  c_hecke->add_option("--i", hk_i)->required();
  c_hecke->add_option("--p", hk_p)->required();

  // dist verify
  auto* c_dist = app.add_subcommand("dist", "distribution operations");
  auto* c_dist_verify = c_dist->add_subcommand("verify", "verify the distribution relation");
  std::size_t dist_n = 1;
  long long dist_k = 2;
  std::string dist_a = "0", dist_source;
  c_dist_verify->add_option("--n", dist_n, "ambient dimension")->required();
  c_dist_verify->add_option("--k", dist_k, "refinement level")->required();
  c_dist_verify->add_option("--a", dist_a, "torsion point, comma-separated rationals");
  c_dist_verify->add_option("--source", dist_source,
                            "optional KElement JSON file (default: identity generator)");

  // specialize
  auto* c_spec = app.add_subcommand("specialize", "specialize an element at a torsion point");
  std::string spec_element, spec_x;
  c_spec->add_option("--element", spec_element, "KElement JSON file")->required();
  c_spec->add_option("--x", spec_x, "torsion point, comma-separated rationals")->required();

  // intersect
  auto* c_inter = app.add_subcommand("intersect", "certify proper intersection of a configuration");
  std::string inter_file;
  c_inter->add_option("--matrix", inter_file, "JSON file: n x (n+1) integer matrix")->required();

  // sullivan
  auto* c_sull = app.add_subcommand("sullivan", "Sullivan denominator gcd");
  std::size_t sull_n = 2;
  long long sull_bound = 50;
  std::vector<long long> sull_excl;
  c_sull->add_option("--n", sull_n)->required();
  c_sull->add_option("--bound", sull_bound);
  c_sull->add_option("--exclude", sull_excl, "primes to exclude");

  // suite
  auto* c_suite = app.add_subcommand("suite", "run the full verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_classify) {
      auto tuple = ts::tuple_from_json(load_json(classify_file));
      ts::TupleClass cls = ts::classify(tuple);
      json rep;
      rep["kind"] = ts::tuple_kind_name(cls.kind);
      rep["rank"] = cls.rank;
      if (cls.orientation) rep["orientation"] = *cls.orientation;
      return emit(g, rep, true);
    }
    if (*c_realize) {
      json j = load_json(realize_file);
      ts::require(j.contains("n") && j.contains("vertices"), ts::errc::bad_input,
                  "simplex: need n and vertices");
      ts::SimplexGen s(j["n"].get<std::size_t>(), ts::tuple_from_json(j["vertices"]));
      json rep;
      try {
        rep["element"] = ts::kelement_json(ts::realize(s));
        rep["status"] = "realized";
      } catch (const ts::error& e) {
        if (e.code() != ts::errc::extension_dependent) throw;
        rep["status"] = "extension_dependent";
      }
      return emit(g, rep, true);
    }
    if (*c_stellar) {
      json j = load_json(stellar_file);
      ts::require(j.contains("base") && j.contains("r") && j.contains("m"), ts::errc::bad_input,
                  "stellar instance: need base, r, m");
      auto base = ts::tuple_from_json(j["base"]);
      ts::require(!base.empty(), ts::errc::bad_input, "stellar: empty base");
      std::size_t n = base[0].size();
      ts::IVec m;
      for (const auto& x : j["m"]) m.push_back(ts::integer_from_json(x));
      ts::StellarPair pair = ts::stellar_instance(n, base, j["r"].get<std::size_t>(), m);
      ts::RegulatorReport rep =
          ts::compare(pair.lhs, pair.rhs, plan_from(g), ts::CompareMode::strict);
      json out;
      out["lhs"] = ts::kelement_json(pair.lhs);
      out["rhs"] = ts::kelement_json(pair.rhs);
      out["report"] = ts::regulator_report_json(rep);
      return emit(g, out, rep.verdict == ts::Verdict::equal);
    }
    if (*c_theta) {
      ts::GammaTuple t = gammas_from_json(load_json(theta_file));
      ts::ThetaMode mode =
          theta_mode == "sym" ? ts::ThetaMode::symmetrized : ts::ThetaMode::plain;
      json rep;
      try {
        rep["element"] = ts::kelement_json(ts::theta(t, theta_n, mode));
        rep["status"] = "ok";
      } catch (const ts::error& e) {
        if (e.code() != ts::errc::extension_dependent) throw;
        rep["status"] = "extension_dependent";
      }
      return emit(g, rep, true);
    }
    if (*c_defect) {
      ts::GammaTuple t = gammas_from_json(load_json(defect_file));
      ts::EulerDefect d = ts::euler_defect(t, defect_n, plan_from(g));
      json rep;
      rep["defect"] = d.value;
      rep["report"] = ts::regulator_report_json(d.report);
      return emit(g, rep, true);
    }
    if (*c_hecke) {
      ts::HeckeReport rep = ts::verify_hecke(static_cast<std::size_t>(hk_n),
                                             static_cast<std::size_t>(hk_i), hk_p, g.budget);
      json out;
      out["pass"] = rep.pass;
      out["identity_mult"] = rep.identity_mult.str();
      out["nonidentity_mult"] = rep.nonidentity_mult.str();
      out["lhs"] = ts::multiset_json(rep.lhs);
      out["rhs"] = ts::multiset_json(rep.rhs);
      return emit(g, out, rep.pass);
    }
    if (*c_dist_verify) {
      ts::KElement source(dist_n);
      if (dist_source.empty()) {
        source.add_term(ts::generator_untwisted(ts::IMat::identity(dist_n)));
      } else {
        source = ts::kelement_from_json(load_json(dist_source));
      }
      ts::LCDistribution d(source);
      ts::TorsionPoint a = parse_point(dist_a);
      ts::DistReport rep = ts::verify_distribution(d, a, dist_k, plan_from(g));
      json out;
      out["pass"] = rep.equal;
      out["report"] = ts::regulator_report_json(rep.report);
      return emit(g, out, rep.equal);
    }
    if (*c_spec) {
      ts::KElement e = ts::kelement_from_json(load_json(spec_element));
      auto symbols = ts::specialize(e, parse_point(spec_x));
      json out;
      out["symbols"] = json::array();
      for (const auto& s : symbols) {
        json entries = json::array();
        for (const auto& b : s.entries) entries.push_back(ts::rational_str(b));
        out["symbols"].push_back({{"coeff", ts::rational_str(s.coeff)}, {"entries", entries}});
      }
      return emit(g, out, true);
    }
    if (*c_inter) {
      ts::IMat m = ts::imat_from_json(load_json(inter_file));
      ts::IntersectReport rep = ts::certify_infinity_faces(m);
      return emit(g, ts::intersect_report_json(rep), true);
    }
    if (*c_sull) {
      std::set<ts::Integer> excl;
      for (long long p : sull_excl) excl.insert(ts::Integer(p));
      ts::SullivanResult r = ts::sullivan_d(sull_n, excl, sull_bound);
      json out;
      out["d"] = r.d.str();
      out["stabilized"] = r.stabilized;
      return emit(g, out, true);
    }
    if (*c_suite) {
      ts::SuiteConfig cfg;
      cfg.seed = g.seed;
      cfg.tolerance = g.tolerance;
      cfg.precision_bits = g.precision_bits;
      cfg.samples = g.samples;
      cfg.budget = g.budget;
      ts::SuiteResult result = ts::run_suite(cfg);
      for (const auto& c : result.criteria)
        std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name
                  << "\n";
      return emit(g, result.report, result.pass);
    }
  } catch (const ts::error& e) {
    json err;
    err["error"] = e.what();
    err["code"] = ts::errc_name(e.code());
    std::cerr << err.dump(2) << "\n";
    switch (e.code()) {
      case ts::errc::non_constant_defect:
      case ts::errc::non_integer_defect:
        return 1;  // a verified identity failure
      default:
        return 2;  // input/precondition problem
    }
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return 2;
  }
  return 2;
}
