#include "beauville/cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "suites.hpp"

namespace beauville::cli {

namespace {

// --family, --params and one flag per family parameter. Flags override the
// JSON, which overrides the family defaults.
struct FamilyFlags {
  std::string family;
  std::string params_json;
  std::map<std::string, std::uint64_t> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app, const char* default_family = nullptr) {
    auto* f = app->add_option("--family", family, "metacyclic, class2-five-tuple, class2-beauville, "
                                                  "special-class2, triangle-quotient or abelian");
    if (default_family)
      f->default_val(default_family);
    else
      f->required();
    app->add_option("--params", params_json, "family parameters as a JSON object");
    for (const char* key : {"p", "e", "i", "j", "k", "m", "n", "r", "alpha", "beta", "gamma", "rho", "sigma"})
      options[key] = app->add_option(std::string("--") + key, values[key], std::string("family parameter ") + key);
  }

  FamilyParams resolve() const {
    Json j = Json::object();
    if (!params_json.empty()) {
      try {
        j = Json::parse(params_json);
      } catch (const Json::parse_error& e) {
        throw ParseError(std::string("--params is not valid JSON: ") + e.what());
      }
      if (!j.is_object()) throw ParseError("--params must be a JSON object");
    }
    if (j.contains("family") && j["family"] != family && !family.empty())
      throw UsageError("--family and --params name different families");
    j["family"] = family;
    FamilyParams params = family_from_json(j);
    for (const auto& [key, opt] : options)
      if (opt->count()) set_family_field(params, key, values.at(key));
    return params;
  }
};

std::uint64_t resolve_seed(CLI::Option* flag, std::uint64_t value, const Environment& env) {
  if (flag->count()) return value;
  if (env.seed) {
    try {
      // stoull would accept a sign and wrap negative values.
      const std::string& text = *env.seed;
      if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw std::invalid_argument("not a decimal integer");
      return std::stoull(text);
    } catch (const std::exception&) {
      throw UsageError("BEAUVILLE_SEED must be a non-negative integer");
    }
  }
  return 0;
}

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + " is not valid JSON: " + e.what());
  }
}

std::uint64_t ipow(std::uint64_t b, unsigned k) {
  std::uint64_t r = 1;
  while (k--) r *= b;
  return r;
}

}  // namespace

Environment process_environment() {
  Environment env;
  if (const char* s = std::getenv("BEAUVILLE_SEED")) env.seed = s;
  return env;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Verification harness for Beauville p-groups", "beauville"};
  app.require_subcommand(1);

  std::uint64_t seed_value = 0;
  unsigned workers = 1;
  bool timing = false;
  auto* seed_flag = app.add_option("--seed", seed_value, "seed for every sampled check (default BEAUVILLE_SEED, "
                                                         "else 0)");
  app.add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--timing", timing, "add elapsed_ms to the report");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->require_subcommand(1);
  verify->fallthrough();

  std::uint64_t max_order = 128;
  auto* prop = verify->add_subcommand("prop-no-2group-class2", "no class-2 2-group is Beauville");
  prop->add_option("--max-order", max_order, "largest group order")->default_val(128);

  Metacyclic meta;
  auto* thm_meta = verify->add_subcommand("thm-metacyclic", "metacyclic groups are Beauville exactly when p >= 5");
  thm_meta->add_option("--p", meta.p)->required();
  thm_meta->add_option("--e", meta.e)->required();
  thm_meta->add_option("--i", meta.i)->required();

  std::uint32_t crit_p = 0;
  std::uint64_t crit_max = 0;
  auto* crit = verify->add_subcommand("thm-class2-criterion", "Beauville criterion for class-2 groups");
  crit->add_option("--p", crit_p)->required();
  auto* crit_max_opt = crit->add_option("--max-order", crit_max, "largest group order (default p^5, 128 for p = 2)");

  FamilyFlags aut_flags;
  AutFamilyOptions aut_opts;
  auto* aut = verify->add_subcommand("aut-family", "parametrised automorphism families against Aut(G)");
  aut_flags.attach(aut);
  aut->add_option("--samples", aut_opts.soundness_samples, "sampled parameter tuples")->default_val(10000);
  aut->add_option("--completeness-samples", aut_opts.completeness_samples, "random automorphisms")
      ->default_val(1000);

  FamilyFlags a_flags;
  ThmAOptions a_opts;
  auto* thm_a = verify->add_subcommand("thm-a", "no Beauville structure is strongly real");
  a_flags.attach(thm_a);
  auto* a_exh = thm_a->add_flag("--exhaustive", a_opts.exhaustive, "scan every family automorphism");
  thm_a->add_option("--samples", a_opts.samples, "sampled automorphisms and pairs")
      ->default_val(1000)
      ->excludes(a_exh);

  unsigned b_e = 2;
  ThmBOptions b_opts;
  auto* thm_b = verify->add_subcommand("thm-b", "every Beauville structure of the triangle quotient is strongly real");
  thm_b->add_option("--e", b_e)->required();
  auto* b_all = thm_b->add_flag("--all", b_opts.all, "every structure");
  auto* b_samples = thm_b->add_option("--samples", b_opts.samples, "sampled structures")->excludes(b_all);
  thm_b->add_option("--agreement-samples", b_opts.agreement_samples, "structures checked against a scan")
      ->default_val(100);

  unsigned id_e = 2;
  std::uint64_t id_samples = 10000;
  auto* ident = verify->add_subcommand("identities", "identities behind the constructive witnesses");
  ident->add_option("--e", id_e)->required();
  ident->add_option("--samples", id_samples, "random instances for sampled identities")->default_val(10000);

  FamilyFlags find_flags;
  FindOptions find_opts;
  auto* find = app.add_subcommand("find-structure", "search for a Beauville structure");
  find->fallthrough();
  find_flags.attach(find);
  find->add_flag("--random", find_opts.random, "seeded random sampling instead of the deterministic scan");
  find->add_option("--budget", find_opts.budget, "candidates to examine, 0 for no limit")->default_val(0);

  std::string witness_file;
  auto* replay = app.add_subcommand("verify-witness", "replay a witness or counterexample document");
  replay->fallthrough();
  replay->add_option("--file", witness_file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kVerified;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kVerified;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Context ctx;
  ctx.workers = workers;
  ctx.timing = timing;
  std::string command;
  auto start = std::chrono::steady_clock::now();
  try {
    ctx.seed = resolve_seed(seed_flag, seed_value, env);
    Report rep;
    if (prop->parsed()) {
      command = "verify prop-no-2group-class2";
      rep = verify_prop_no_2group_class2(ctx, max_order);
    } else if (thm_meta->parsed()) {
      command = "verify thm-metacyclic";
      rep = verify_thm_metacyclic(ctx, meta);
    } else if (crit->parsed()) {
      command = "verify thm-class2-criterion";
      if (!crit_max_opt->count()) crit_max = crit_p == 2 ? 128 : ipow(crit_p, 5);
      rep = verify_thm_class2_criterion(ctx, crit_p, crit_max);
    } else if (aut->parsed()) {
      command = "verify aut-family";
      rep = verify_aut_family(ctx, aut_flags.resolve(), aut_opts);
    } else if (thm_a->parsed()) {
      command = "verify thm-a";
      rep = verify_thm_a(ctx, a_flags.resolve(), a_opts);
    } else if (thm_b->parsed()) {
      command = "verify thm-b";
      // Without a mode flag, small groups get every structure.
      if (!b_all->count() && !b_samples->count()) b_opts.all = b_e <= 2;
      rep = verify_thm_b(ctx, b_e, b_opts);
    } else if (ident->parsed()) {
      command = "verify identities";
      rep = verify_identities(ctx, id_e, id_samples);
    } else if (find->parsed()) {
      command = "find-structure";
      rep = find_structure(ctx, find_flags.resolve(), find_opts);
    } else if (replay->parsed()) {
      command = "verify-witness";
      auto doc = read_document(witness_file);
      rep = verify_witness_document(ctx, doc);
      rep.params["file"] = witness_file;
    }
    rep.seed = ctx.seed;
    rep.workers = ctx.workers;
    if (ctx.timing)
      rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                           .count();
    out << to_json(rep).dump(2) << '\n';
    write_summary(err, rep);
    return exit_code(rep);
  } catch (const TooLarge& e) {
    Report rep;
    rep.command = command;
    rep.seed = ctx.seed;
    rep.workers = ctx.workers;
    rep.add("size-cap", Status::unknown, e.what());
    out << to_json(rep).dump(2) << '\n';
    write_summary(err, rep);
    return kUnknown;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InvalidParams& e) {
    err << "invalid parameters: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "malformed input: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "malformed input: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace beauville::cli
