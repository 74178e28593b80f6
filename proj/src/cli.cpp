#include "fq/cli.hpp"

#include "fq/covers.hpp"
#include "fq/error.hpp"
#include "fq/fixedpoints.hpp"
#include "fq/quatalg.hpp"
#include "fq/quotient.hpp"
#include "fq/registry.hpp"
#include "fq/report.hpp"
#include "fq/singres.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace fq::cli {

namespace {

struct Output {
  Json doc;
  std::string text;  // empty: render doc
};

using Handler = std::function<Output()>;

[[noreturn]] void usage(const std::string& what) { throw Error(Errc::UsageError, what); }

long long to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    usage("bad " + what + " '" + s + "'");
  }
}

// --field, --ramified, --gen and the level options shared by algebra, euler and torsion.
struct AlgebraArgs {
  long long d = 0;
  std::vector<long long> ramified;
  std::vector<std::string> generators;  // "p=element"
  std::vector<long long> principal;
  std::vector<std::string> intermediate;  // "p:h"
  int extension = 0;

  void attach(CLI::App* sub, bool with_level) {
    sub->add_option("--field", d, "squarefree d > 1 of Q(sqrt d)")->required();
    sub->add_option("--ramified", ramified, "rational primes below the ramified primes")->delimiter(',');
    sub->add_option("--gen", generators, "p=element picks the prime over a split p, e.g. 11=4+sqrt5");
    if (!with_level) return;
    sub->add_option("--principal", principal, "principal level at the ramified prime over p")->delimiter(',');
    sub->add_option("--intermediate", intermediate, "p:h, image of order h in the cyclic quotient");
    sub->add_option("--extension", extension, "index of Gamma1 in a larger normalizer subgroup");
  }

  QuadraticField field() const { return make_field(d); }

  PrimeSplit prime(const QuadraticField& k, long long p) const {
    for (const auto& g : generators) {
      auto eq = g.find('=');
      if (eq == std::string::npos) usage("--gen expects p=element, got '" + g + "'");
      if (to_number(g.substr(0, eq), "prime") != p) continue;
      PrimeSplit s = prime_of_generator(k, parse_element(k, g.substr(eq + 1)));
      if (s.p != p) usage(g.substr(eq + 1) + " does not lie over " + std::to_string(p));
      return s;
    }
    return split_type(k, p);
  }

  QuaternionData algebra() const {
    auto k = field();
    std::vector<PrimeSplit> primes;
    for (long long p : ramified) primes.push_back(prime(k, p));
    return make_algebra(k, primes);
  }

  std::vector<LevelFactor> level(const QuaternionData& B) const {
    auto find = [&](long long p) {
      for (const auto& P : B.ramified)
        if (P.p == p) return P;
      throw Error(Errc::OutOfRange, "no ramified prime over " + std::to_string(p) + " in " + B.name());
    };
    std::vector<LevelFactor> out;
    for (long long p : principal) out.push_back(LevelFactor::principal(find(p)));
    for (const auto& s : intermediate) {
      auto colon = s.find(':');
      if (colon == std::string::npos) usage("--intermediate expects p:h, got '" + s + "'");
      out.push_back(LevelFactor::intermediate(find(to_number(s.substr(0, colon), "prime")),
                                              static_cast<int>(to_number(s.substr(colon + 1), "image order"))));
    }
    if (extension) out.push_back(LevelFactor::normalizer_extension(extension));
    return out;
  }
};

Json prime_json(const QuadraticField& k, const PrimeSplit& s) {
  Json j{{"p", s.p}, {"kind", std::string(split_kind_name(s.kind))}, {"q", s.q}, {"label", s.label}};
  if (s.kind == SplitKind::split) j["conjugate"] = conjugate_prime(k, s).label;
  return j;
}

Json algebra_json(const QuaternionData& B) {
  Json primes = Json::array();
  for (const auto& P : B.ramified) primes.push_back(prime_json(B.field, P));
  return Json{{"name", B.name()}, {"field", B.field.name()}, {"ramified", primes}};
}

Json census_json(const std::map<int, int>& census) {
  Json j = Json::object();
  for (const auto& [n, v] : census) j[std::to_string(n)] = v;
  return j;
}

Json fixed_config_json(const FixedConfig& c) {
  Json counts = Json::array();
  for (int k = 1; k < c.n; ++k) counts.push_back(c.fixed_count(k));
  return Json{{"singularities", display_config(c.singularities())},
              {"census", census_json(c.census())},
              {"fixed_points_of_powers", counts}};
}

Json scenario_json(const QuotientScenario& s) {
  auto inv = raw_invariants(s);
  return Json{{"singularities", display_config(s.config)},
              {"census", census_json(s.stabilizer_census)},
              {"euler_quotient", rational_json(euler_quotient(s.group.order(), s.stabilizer_census))},
              {"k2", rational_json(inv.k2)},
              {"c2", rational_json(inv.c2)},
              {"chi", rational_json(inv.chi)},
              {"noether", inv.k2 + inv.c2 == 12}};
}

Json bases_json(const KernelCode& c) {
  Json rows = Json::array();
  for (const auto& r : c.basis) {
    std::string s;
    for (int x : r) s += std::to_string(x);
    rows.push_back(s);
  }
  return rows;
}

Json reconstruction_json(const Reconstruction& r) { return covers_json({r})["reconstructions"][0]; }

SingularityType singularity_from(const std::vector<std::string>& tokens) {
  if (tokens.size() == 1) return parse_singularity(tokens[0]);
  if (tokens.empty() || (tokens[0] != "A" && tokens[0] != "a")) usage("expected A n q, A k or A_{n,q}");
  if (tokens.size() == 2) return parse_singularity("A" + tokens[1]);
  if (tokens.size() == 3)
    return canonical(static_cast<int>(to_number(tokens[1], "n")), static_cast<int>(to_number(tokens[2], "q")));
  usage("too many singularity arguments");
}

void compare_golden(const std::string& dir, const std::string& file, const std::string& produced) {
  std::ifstream in(dir + "/" + file);
  if (!in) throw Error(Errc::GoldenMismatch, "no golden file " + dir + "/" + file);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string golden = buf.str();
  if (golden == produced) return;
  std::istringstream a(golden), b(produced);
  std::string la, lb;
  int line = 0;
  while (true) {
    ++line;
    bool ga = static_cast<bool>(std::getline(a, la));
    bool gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) break;
    if (!ga || !gb || la != lb) {
      throw Error(Errc::GoldenMismatch, file + " line " + std::to_string(line) + ": golden '" + (ga ? la : "<eof>") +
                                            "', produced '" + (gb ? lb : "<eof>") + "'");
    }
  }
  throw Error(Errc::GoldenMismatch, file + ": trailing whitespace differs");
}

const Registry& registry_for(const std::string& path, Registry& storage) {
  if (path.empty()) return default_registry();
  storage = load_registry_file(path);
  return storage;
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::UsageError: return kExitUsage;
    case Errc::GoldenMismatch: return kExitGolden;
    default: return kExitDomain;
  }
}

}  // namespace

std::string default_golden_dir() {
#ifdef FQ_GOLDEN_DIR
  return FQ_GOLDEN_DIR;
#else
  return "tests/golden";
#endif
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic of quaternionic fake quadrics and their quotients", "fq"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "emit one JSON document instead of text");

  Handler handler;
  auto verb_cmd = [&](const char* name, const char* help) {
    return app.add_subcommand(name, help);
  };

  // field
  long long field_d = 0;
  std::vector<long long> field_primes;
  auto* field = verb_cmd("field", "real quadratic field data and prime splitting");
  field->add_option("d", field_d, "squarefree d > 1")->required();
  field->add_option("--primes", field_primes, "rational primes to split")->delimiter(',');
  field->callback([&] {
    handler = [&] {
      auto k = make_field(field_d);
      Json primes = Json::array();
      for (long long p : field_primes) primes.push_back(prime_json(k, split_type(k, p)));
      return Output{Json{{"field", k.name()},
                         {"d", k.d()},
                         {"discriminant", k.discriminant()},
                         {"zeta_minus_one", rational_json(zeta_minus_one(k))},
                         {"primes", primes}},
                    ""};
    };
  });

  // algebra
  AlgebraArgs alg_args;
  auto* algebra = verb_cmd("algebra", "quaternion algebra: ramification, torsion, Shimizu Euler number");
  alg_args.attach(algebra, false);
  algebra->callback([&] {
    handler = [&] {
      auto B = alg_args.algebra();
      Json j = algebra_json(B);
      j["shimizu_c2"] = rational_json(shimizu_euler(B));
      j["torsion_orders"] = torsion_orders(B);
      auto rank = normalizer_quotient_rank(B);
      j["normalizer_rank"] = Json{{"value", rank.value}, {"lower_bound", rank.lower_bound}};
      return Output{j, ""};
    };
  });

  // euler
  AlgebraArgs eu_args;
  auto* euler = verb_cmd("euler", "c2 of Gamma1 and of a congruence or normalizer subgroup");
  eu_args.attach(euler, true);
  euler->callback([&] {
    handler = [&] {
      auto B = eu_args.algebra();
      auto spec = make_subgroup(B, eu_args.level(B));
      Rational e = shimizu_euler(B);
      Json groups = Json::array();
      for (const auto& f : spec.level)
        if (f.prime) groups.push_back(Json{{"prime", f.prime->label}, {"quotient_order", gamma1_quotient_order(f.prime->q, f.prime->p)}});
      return Output{Json{{"algebra", B.name()},
                         {"shimizu_c2", rational_json(e)},
                         {"subgroup", spec.name},
                         {"level_quotients", groups},
                         {"index", rational_json(spec.index_in_base)},
                         {"c2", rational_json(euler_of_subgroup(e, spec))}},
                    ""};
    };
  });

  // torsion
  AlgebraArgs tor_args;
  auto* torsion = verb_cmd("torsion", "torsion orders of Gamma1 and torsion-freeness of a subgroup");
  tor_args.attach(torsion, true);
  torsion->callback([&] {
    handler = [&] {
      auto B = tor_args.algebra();
      Json orders = Json::array();
      for (int m : torsion_orders(B))
        orders.push_back(Json{{"m", m},
                              {"trace", torsion_trace(B.field, m)->to_string()},
                              {"nrd_one_plus", nrd_one_plus_torsion(B.field, m).to_string()}});
      Json j{{"algebra", B.name()}, {"orders", orders}};
      auto level = tor_args.level(B);
      if (!level.empty()) {
        auto spec = make_subgroup(B, level);
        auto check = torsion_free_check(B, spec);
        j["subgroup"] = spec.name;
        j["torsion_free"] = check.torsion_free;
        j["relies_on_record"] = check.relies_on_record;
        j["reasons"] = check.reasons;
      }
      return Output{j, ""};
    };
  });

  // resolve
  std::vector<std::string> sing_tokens;
  auto* resolve_cmd = verb_cmd("resolve", "Hirzebruch-Jung resolution of A_{n,q}");
  resolve_cmd->add_option("type", sing_tokens, "A n q, A k (for A_k) or A_{n,q}")->required();
  resolve_cmd->callback([&] {
    handler = [&] {
      auto s = singularity_from(sing_tokens);
      auto r = resolve(s);
      Json disc = Json::array();
      for (const auto& a : r.discrepancies) disc.push_back(rational_json(a));
      return Output{Json{{"type", s.name()},
                         {"display", display_name(s)},
                         {"n", s.n},
                         {"q", s.q},
                         {"chain", r.chain.selfints},
                         {"discrepancies", disc},
                         {"delta_k2", rational_json(r.delta_k2)},
                         {"delta_e", r.delta_e}},
                    ""};
    };
  });

  // enumerate
  auto* enumerate = verb_cmd("enumerate", "fixed-point configurations of group actions");
  enumerate->require_subcommand(1);
  int en_n = 0, zh_points = 4;
  auto* en_cyclic = enumerate->add_subcommand("cyclic", "Z/nZ, n = 2..12");
  en_cyclic->add_option("n", en_n)->required();
  en_cyclic->callback([&] {
    handler = [&] {
      Json raw = Json::array();
      for (const auto& c : enumerate_cyclic_raw(en_n)) raw.push_back(fixed_config_json(c));
      Json distinct = Json::array();
      for (const auto& c : enumerate_cyclic(en_n)) distinct.push_back(display_config(c));
      return Output{Json{{"group", GroupDescriptor::cyclic(en_n).name()}, {"configurations", distinct}, {"actions", raw}}, ""};
    };
  });
  auto* en_klein = enumerate->add_subcommand("klein", "(Z/2Z)^2");
  en_klein->callback([&] {
    handler = [&] {
      auto r = enumerate_klein_four();
      return Output{Json{{"group", GroupDescriptor::klein_four().name()},
                         {"singularities", display_config(r.config)},
                         {"census", census_json(r.census)},
                         {"faithful_representations", r.faithful_representations},
                         {"with_reflection", r.with_reflection}},
                    ""};
    };
  });
  auto* en_dihedral = enumerate->add_subcommand("dihedral", "D_m of order 2m, m = 4 or 8");
  en_dihedral->add_option("m", en_n)->required();
  en_dihedral->callback([&] {
    handler = [&] {
      auto r = enumerate_dihedral(en_n);
      Json branches = Json::array();
      for (const auto& b : r.branches)
        branches.push_back(Json{{"rotation", display_config(b.rotation_config)},
                                {"rotation_fixed_points", b.rotation_fixed_points},
                                {"census", census_json(b.census)},
                                {"euler", rational_json(b.euler)},
                                {"accepted", b.accepted},
                                {"reason", b.reason},
                                {"quotient", b.quotient_config ? display_config(*b.quotient_config) : "-"}});
      Json configs = Json::array();
      for (const auto& c : r.configs) configs.push_back(display_config(c));
      return Output{Json{{"group", GroupDescriptor::dihedral(r.m).name()}, {"configurations", configs}, {"branches", branches}}, ""};
    };
  });
  auto* en_zhang = enumerate->add_subcommand("zhang", "solutions of the linear fixed-point relation for prime p");
  en_zhang->add_option("p", en_n)->required();
  en_zhang->add_option("points", zh_points, "number of isolated fixed points");
  en_zhang->callback([&] {
    handler = [&] {
      Json coeffs = Json::array();
      for (int i = 1; i < en_n; ++i) coeffs.push_back(rational_json(zhang_coefficient(en_n, i)));
      Json sols = Json::array();
      for (const auto& r : zhang_solutions(en_n, zh_points))
        sols.push_back(Json{{"r", r}, {"singularities", display_config(zhang_configuration(en_n, r))}});
      return Output{Json{{"p", en_n}, {"points", zh_points}, {"coefficients", coeffs}, {"solutions", sols}}, ""};
    };
  });

  // quotient
  std::string quot_group;
  auto* quotient = verb_cmd("quotient", "candidate quotients S/G with resolution invariants");
  quotient->add_option("group", quot_group, "Z/n, (Z/2)^2, D4 or D8")->required();
  quotient->callback([&] {
    handler = [&] {
      auto g = parse_group(quot_group);
      auto candidates = candidate_scenarios(g);
      Json cands = Json::array();
      for (const auto& s : candidates) cands.push_back(scenario_json(s));
      Json survivors = Json::array();
      for (const auto& s : noether_filter(candidates)) survivors.push_back(display_config(s.config));
      return Output{Json{{"group", g.name()}, {"order", g.order()}, {"candidates", cands}, {"noether_survivors", survivors}}, ""};
    };
  });

  // cover
  auto* cover = verb_cmd("cover", "covers branched on nodal or (-3)-curves");
  cover->require_subcommand(1);
  int code_k = 0;
  auto* cv_codes = cover->add_subcommand("codes", "binary codes with all weights 4 and full support");
  cv_codes->add_option("k", code_k)->required();
  cv_codes->callback([&] {
    handler = [&] {
      Json codes = Json::array();
      for (const auto& c : weight4_codes(code_k)) codes.push_back(Json{{"dimension", c.dimension()}, {"basis", bases_json(c)}});
      return Output{Json{{"length", code_k}, {"codes", codes}}, ""};
    };
  });
  std::string cv_k2 = "0", cv_c2 = "0";
  int cv_k = 0, cv_r = 0, cv_curves = 0;
  bool uncontracted = false;
  auto* cv_double = cover->add_subcommand("double", "(Z/2)^r cover branched on k nodal curves");
  cv_double->add_option("--k2", cv_k2)->required();
  cv_double->add_option("--c2", cv_c2)->required();
  cv_double->add_option("--k", cv_k, "number of nodal curves")->required();
  cv_double->add_option("--r", cv_r, "rank of the cover group")->required();
  cv_double->add_flag("--uncontracted", uncontracted, "keep the (-1)-curves over the branch");
  cv_double->callback([&] {
    handler = [&] {
      SurfaceInvariants y;
      y.k2 = parse_rational(cv_k2);
      y.c2 = parse_rational(cv_c2);
      y.chi = (y.k2 + y.c2) / 12;
      auto c = uncontracted ? double_cover_uncontracted(y, cv_k, cv_r) : double_cover_invariants(y, cv_k, cv_r);
      return Output{Json{{"base", invariants_json(y)}, {"k", cv_k}, {"r", cv_r}, {"contracted", !uncontracted}, {"cover", cover_json(c)}}, ""};
    };
  });
  auto* cv_triple = cover->add_subcommand("triple", "Z/3 cover branched on disjoint (-3)-curves with K.C = 1");
  cv_triple->add_option("--k2", cv_k2)->required();
  cv_triple->add_option("--c2", cv_c2)->required();
  cv_triple->add_option("--curves", cv_curves)->required();
  cv_triple->callback([&] {
    handler = [&] {
      TripleCoverInput w;
      w.k2 = parse_rational(cv_k2);
      w.c2 = parse_rational(cv_c2);
      w.chi = (w.k2 + w.c2) / 12;
      w.branch.resize(cv_curves);
      auto c = triple_cover_invariants(w);
      return Output{Json{{"base", Json{{"k2", rational_json(w.k2)}, {"c2", rational_json(w.c2)}, {"chi", rational_json(w.chi)}}},
                         {"curves", cv_curves},
                         {"cover", cover_json(c)}},
                    ""};
    };
  });
  std::string recon_name;
  auto* cv_recon = cover->add_subcommand("reconstruct", "a full pipeline ending at a fake quadric");
  cv_recon->add_option("name", recon_name, "double, bidouble or triple")->required();
  cv_recon->callback([&] {
    handler = [&] {
      if (recon_name == "double") return Output{reconstruction_json(double_cover_reconstruction()), ""};
      if (recon_name == "bidouble") return Output{reconstruction_json(bidouble_cover_reconstruction()), ""};
      if (recon_name == "triple") return Output{reconstruction_json(triple_cover_reconstruction()), ""};
      usage("unknown reconstruction '" + recon_name + "'");
    };
  });

  // repro
  std::string target, golden_dir = default_golden_dir(), registry_path;
  auto* repro = verb_cmd("repro", "reproduce a result and compare it with its golden file");
  repro->add_option("target", target, "theorem-b, section4 or covers")->required();
  repro->add_option("--golden-dir", golden_dir, "directory with the golden files");
  repro->add_option("--registry", registry_path, "registry file instead of the built-in one");
  bool update_golden = false;
  repro->add_flag("--update-golden", update_golden, "overwrite the golden file with this output");
  repro->callback([&] {
    handler = [&] {
      Registry storage;
      Output o;
      std::string file;
      if (target == "theorem-b") {
        auto rows = theorem_b_table(registry_for(registry_path, storage).theorem_b);
        o = {theorem_b_json(rows), theorem_b_text(rows)};
        file = "theorem_b.txt";
      } else if (target == "section4") {
        const auto& reg = registry_for(registry_path, storage);
        std::vector<ReplayReport> reps, facts;
        for (const auto& r : reg.examples) reps.push_back(replay(r));
        for (const auto& f : reg.facts) facts.push_back(check_fact(f));
        o = {section4_json(reps, facts), section4_text(reps, facts)};
        file = "section4.txt";
      } else if (target == "covers") {
        std::vector<Reconstruction> recs{double_cover_reconstruction(), bidouble_cover_reconstruction(),
                                         triple_cover_reconstruction()};
        o = {covers_json(recs), covers_text(recs)};
        file = "covers.txt";
      } else {
        usage("unknown repro target '" + target + "' (theorem-b, section4, covers)");
      }
      if (update_golden) {
        std::ofstream w(golden_dir + "/" + file);
        if (!(w << o.text)) usage("cannot write " + golden_dir + "/" + file);
      }
      compare_golden(golden_dir, file, o.text);
      o.doc["golden"] = file;
      o.doc["golden_match"] = true;
      return o;
    };
  });

  // registry
  std::string reg_id;
  auto* registry = verb_cmd("registry", "the example catalogue");
  registry->add_option("--file", registry_path, "registry file instead of the built-in one");
  registry->require_subcommand(1);
  auto* reg_list = registry->add_subcommand("list", "records with their automorphism groups");
  reg_list->callback([&] {
    handler = [&] {
      Registry storage;
      const auto& reg = registry_for(registry_path, storage);
      Json recs = Json::array();
      for (const auto& r : reg.examples)
        recs.push_back(Json{{"id", r.id},
                            {"section", r.section},
                            {"field", make_field(r.field_d).name()},
                            {"subgroup", r.subgroup},
                            {"aut", r.aut.name()},
                            {"aut_order", r.aut.order()},
                            {"resolved", r.aut.resolved}});
      Json groups = Json::array();
      for (const auto& g : automorphism_groups(reg)) groups.push_back(g.name());
      return Output{Json{{"schema_version", reg.schema_version},
                         {"conjecture", Json{{"statement", reg.conjecture}, {"status", reg.conjecture_status}}},
                         {"records", recs},
                         {"automorphism_groups", groups}},
                    ""};
    };
  });
  auto* reg_show = registry->add_subcommand("show", "replay one record field by field");
  reg_show->add_option("id", reg_id)->required();
  reg_show->callback([&] {
    handler = [&] {
      Registry storage;
      auto rep = replay(registry_for(registry_path, storage).example(reg_id));
      return Output{section4_json({rep}, {})["records"][0], ""};
    };
  });
  auto* reg_facts = registry->add_subcommand("facts", "exclusions and unverified scenarios");
  reg_facts->callback([&] {
    handler = [&] {
      Registry storage;
      Json fs = Json::array();
      for (const auto& f : registry_for(registry_path, storage).facts) {
        auto rep = check_fact(f);
        fs.push_back(Json{{"id", f.id},
                          {"status", f.status},
                          {"group", f.group_name},
                          {"order", f.group_order},
                          {"statement", f.statement},
                          {"arithmetic_consistent", rep.pass()}});
      }
      return Output{Json{{"facts", fs}}, ""};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }

  if (!handler) {
    err << "error: UsageError: no command\n";
    return kExitUsage;
  }
  try {
    Output o = handler();
    if (json) {
      std::string verb;
      for (const auto* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        verb += (verb.empty() ? "" : " ") + sub->get_name();
      }
      Json doc{{"schema_version", kJsonSchemaVersion}, {"command", verb}, {"result", o.doc}};
      out << doc.dump(2) << "\n";
    } else {
      out << (o.text.empty() ? render_text(o.doc) : o.text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
}

}  // namespace fq::cli
