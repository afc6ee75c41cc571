// Batch front-end: parse a job file, run one command, print a report.
// Exit codes: 0 success, 1 verdict failure, 2 input error, 3 precision
// exhaustion.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "iwa/textio.hpp"

using namespace iwa;
namespace tio = iwa::textio;
using json = nlohmann::ordered_json;

namespace {

int exit_code_for(ErrorKind k) {
  switch (k) {
  case ErrorKind::PrecisionExhausted:
  case ErrorKind::DegreeCapExceeded:
  case ErrorKind::NotTorsionAtPrecision:
  case ErrorKind::DescentViolation:
    return 3;
  default:
    return 2;
  }
}

std::string ideal_kind(const PrincipalIdeal &c) {
  switch (c.kind()) {
  case PrincipalIdeal::Kind::Level1: return "level1";
  case PrincipalIdeal::Kind::Det: return "det";
  case PrincipalIdeal::Kind::Split: return "split";
  }
  return "?";
}

json ideal_json(const PrincipalIdeal &c) {
  json out;
  out["kind"] = ideal_kind(c);
  if (c.kind() == PrincipalIdeal::Kind::Level1) {
    out["mu"] = c.mu();
    out["lambda"] = c.lambda();
    out["distinguished"] = tio::series_to_string(c.level1_form().poly);
    out["generator"] = tio::series_to_string(c.generator());
  } else if (c.kind() == PrincipalIdeal::Kind::Det) {
    out["generator"] = tio::series_to_string(c.generator());
  } else {
    out["components"] = json::array();
    for (const auto &comp : c.components()) out["components"].push_back(ideal_json(comp));
  }
  return out;
}

json character_json(const std::vector<int> &expo) {
  json a = json::array();
  for (int e : expo) a.push_back(e);
  return a;
}

json decomposition_json(const Decomposition &d) {
  json out;
  out["char_generator"] = tio::series_to_string(d.char_generator.element());
  out["primes"] = json::array();
  for (const auto &pe : d.primes) {
    json p;
    p["prime"] = pe.prime.is_p ? "p" : tio::series_to_string(pe.prime.poly);
    p["exponents"] = pe.exponents;
    out["primes"].push_back(p);
  }
  out["residual_blocks"] = json::array();
  for (const auto &b : d.residual_blocks) {
    json rb;
    rb["chain_index"] = b.chain_index;
    rb["factor"] = tio::series_to_string(b.factor);
    out["residual_blocks"].push_back(rb);
  }
  out["chain"] = json::array();
  for (const auto &c : d.chain)
    out["chain"].push_back(tio::series_to_string(c.element()));
  return out;
}

const Presentation &need_presentation(const tio::ParsedJob &job) {
  if (!job.presentation)
    fail(ErrorKind::InvalidArgument, "this command needs a presentation block");
  return *job.presentation;
}

const Tower &need_tower(const tio::ParsedJob &job) {
  if (!job.tower) fail(ErrorKind::InvalidArgument, "this command needs a tower block");
  return *job.tower;
}

struct Options {
  std::string command;
  std::string jobfile;
  bool as_json = false;
  bool parallel = false;
  std::string precision_override;
  long long cap = 1ll << 20;
  int oracle_a = 2;
  int oracle_b = 2;
  int level = 1;
  int demo_m = 4;
};

// Returns (report, exit code).
std::pair<json, int> run_command(const Options &opt) {
  std::optional<std::pair<int, int>> override;
  if (!opt.precision_override.empty()) {
    auto comma = opt.precision_override.find(',');
    if (comma == std::string::npos)
      fail(ErrorKind::InvalidArgument, "--precision-override needs N,D");
    override = std::make_pair(std::stoi(opt.precision_override.substr(0, comma)),
                              std::stoi(opt.precision_override.substr(comma + 1)));
  }

  std::ifstream in(opt.jobfile);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open job file " + opt.jobfile);
  std::stringstream buf;
  buf << in.rdbuf();
  tio::ParsedJob job = tio::parse_job(buf.str(), override);

  json rep;
  rep["command"] = opt.command;
  rep["status"] = "ok";
  int code = 0;

  if (opt.command == "char") {
    rep["ideal"] = ideal_json(char_ideal(need_presentation(job)));
  } else if (opt.command == "prep") {
    if (job.ideal_gens.empty())
      fail(ErrorKind::InvalidArgument, "prep needs an ideal block with generators");
    rep["prepared"] = json::array();
    for (const auto &g : job.ideal_gens) {
      WeierstrassData w = weierstrass_prepare(g);
      json e;
      e["input"] = tio::series_to_string(g);
      e["mu"] = w.mu;
      e["lambda"] = w.lambda;
      e["distinguished"] = tio::series_to_string(w.distinguished);
      e["unit"] = tio::series_to_string(w.unit);
      rep["prepared"].push_back(e);
    }
  } else if (opt.command == "fit0") {
    auto gens = fitting0(need_presentation(job));
    rep["count"] = gens.size();
    rep["generators"] = json::array();
    for (const auto &g : gens) rep["generators"].push_back(tio::entry_to_string(g));
  } else if (opt.command == "snf") {
    auto divs = determinantal_divisors(need_presentation(job));
    rep["divisors"] = json::array();
    for (const auto &d : divs) {
      json e;
      e["mu"] = d.mu;
      e["lambda"] = d.lambda();
      e["generator"] = tio::series_to_string(d.element());
      rep["divisors"].push_back(e);
    }
  } else if (opt.command == "decompose") {
    const Presentation &P = need_presentation(job);
    if (P.group().trivial()) {
      rep["decomposition"] = decomposition_json(decompose(P));
    } else {
      SplitDecomposition sd = decompose_split(P);
      rep["components"] = json::array();
      for (size_t i = 0; i < sd.components.size(); ++i) {
        json comp;
        comp["character"] = character_json(sd.characters[i]);
        comp["decomposition"] = decomposition_json(sd.components[i]);
        rep["components"].push_back(comp);
      }
    }
  } else if (opt.command == "pseudonull") {
    const Presentation &P = need_presentation(job);
    if (P.group().trivial() && P.level() >= 2) {
      auto cert = pseudo_null_sufficient(P);
      rep["mode"] = "sufficient-condition";
      rep["verdict"] = cert ? "pseudo-null (certified)" : "inconclusive";
      if (cert) {
        json c;
        c["generator_a"] = cert->gen_index_a;
        c["generator_b"] = cert->gen_index_b;
        c["specialization_a"] = tio::series_to_string(cert->specialization_a);
        c["specialization_b"] = tio::series_to_string(cert->specialization_b);
        rep["certificate"] = c;
      } else {
        code = 1;
      }
    } else {
      PseudoNullVerdict v = is_pseudo_null(P);
      rep["mode"] = "char";
      rep["verdict"] = v.pseudo_null ? "pseudo-null" : "not pseudo-null";
      if (!v.pseudo_null) code = 1;
    }
  } else if (opt.command == "tower-check") {
    CompatVerdict v = check_compatibility(need_tower(job));
    rep["compatible"] = v.compatible;
    if (!v.compatible) {
      rep["failing_level"] = v.level;
      rep["failing_row"] = v.row;
      rep["failing_col"] = v.col;
      code = 1;
    }
  } else if (opt.command == "tower-char") {
    IdealFamily fam = levelwise_char(need_tower(job), opt.parallel);
    rep["levels"] = json::array();
    for (const auto &lc : fam.levels) {
      json e;
      e["level"] = lc.level;
      e["torsion_exact"] = lc.torsion_exact;
      if (lc.char_ideal) {
        e["ideal"] = ideal_json(*lc.char_ideal);
        e["descent_verified"] = lc.descent_verified;
      }
      rep["levels"].push_back(e);
    }
    if (fam.stabilization_level) rep["stabilization_level"] = *fam.stabilization_level;
  } else if (opt.command == "pro-char") {
    ProChar pc = pro_char(need_tower(job), opt.parallel);
    rep["n0"] = pc.n0;
    rep["top_level"] = pc.top_level;
    rep["ideal"] = ideal_json(pc.generator);
    if (pc.stabilization_level) rep["stabilization_level"] = *pc.stabilization_level;
  } else if (opt.command == "fixed-part") {
    FixedPartVerdict v = fixed_part_check(need_tower(job), opt.level);
    rep["level"] = v.level;
    rep["certified"] = v.certified;
    rep["verdict"] =
        v.certified ? "fixed part pseudo-null certified" : "certificate failed";
    rep["projected_generator"] = tio::series_to_string(v.projected_generator);
    rep["expected_generator"] = tio::series_to_string(v.expected_generator);
    if (!v.certified) code = 1;
  } else if (opt.command == "demo-noncomplete") {
    NoncompletenessReport r = noncompleteness_demo(job.ctx, opt.demo_m);
    rep["m"] = r.m;
    rep["levels"] = json::array();
    for (const auto &lvl : r.levels) {
      json e;
      e["level"] = lvl.level;
      e["generators"] = json::array();
      for (const auto &g : lvl.generators)
        e["generators"].push_back(tio::series_to_string(g));
      e["memberships"] = json::array();
      for (const auto &cert : lvl.memberships) {
        json c;
        c["variable"] = "X" + std::to_string(cert.variable_index);
        c["combination"] = json::array();
        for (const auto &[coeff, idx] : cert.combination) {
          json t;
          t["coefficient"] = tio::series_to_string(coeff);
          t["generator_index"] = idx;
          c["combination"].push_back(t);
        }
        e["memberships"].push_back(c);
      }
      e["one_excluded"] = lvl.one_excluded;
      rep["levels"].push_back(e);
    }
  } else if (opt.command == "oracle-card" || opt.command == "cross-validate") {
    const Presentation &P = need_presentation(job);
    oracle::FiniteQuotientSpec spec;
    spec.p = P.ctx()->p();
    spec.a = opt.oracle_a;
    spec.b = opt.oracle_b;
    spec.level = P.level();
    spec.group = P.group();
    spec.cap = opt.cap;
    spec.parallel = opt.parallel;
    rep["a"] = spec.a;
    rep["b"] = spec.b;
    if (opt.command == "oracle-card") {
      rep["cardinality"] = oracle::coker_cardinality(P, spec).str();
    } else {
      auto v = oracle::cross_validate(P, spec);
      rep["equal"] = v.equal;
      rep["enumerated"] = v.enumerated.str();
      rep["predicted"] = v.predicted.str();
      rep["summands"] = json::array();
      for (const auto &s : v.summand_cardinalities) rep["summands"].push_back(s.str());
      if (!v.equal) code = 1;
    }
  } else {
    fail(ErrorKind::InvalidArgument, "unknown command " + opt.command);
  }
  return {rep, code};
}

} // namespace

int main(int argc, char **argv) {
  Options opt;
  CLI::App app{"exact arithmetic for truncated Iwasawa algebras"};
  app.add_option("command", opt.command, "one of: char prep fit0 snf decompose pseudonull tower-check tower-char pro-char fixed-part demo-noncomplete oracle-card cross-validate")
      ->required();
  app.add_option("jobfile", opt.jobfile, "job file path")->required();
  app.add_flag("--json", opt.as_json, "emit the machine-readable report");
  app.add_flag("--parallel", opt.parallel, "enable level-wise/enumeration concurrency");
  app.add_option("--precision-override", opt.precision_override, "override context as N,D");
  app.add_option("--cap", opt.cap, "oracle enumeration cap (ring cardinality)");
  app.add_option("--oracle-a", opt.oracle_a, "oracle coefficient exponent a");
  app.add_option("--oracle-b", opt.oracle_b, "oracle nilpotency degree b");
  app.add_option("--level", opt.level, "tower level j for fixed-part");
  app.add_option("--m", opt.demo_m, "levels for demo-noncomplete");
  CLI11_PARSE(app, argc, argv);

  try {
    auto [rep, code] = run_command(opt);
    if (opt.as_json)
      std::cout << rep.dump(2) << "\n";
    else
      std::cout << tio::render_human(rep.dump());
    return code;
  } catch (const AlgebraError &e) {
    json rep;
    rep["command"] = opt.command;
    rep["status"] = "error";
    rep["error"] = to_string(e.kind());
    rep["message"] = e.what();
    if (opt.as_json)
      std::cout << rep.dump(2) << "\n";
    else
      std::cout << tio::render_human(rep.dump());
    return exit_code_for(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
