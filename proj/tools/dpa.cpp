// Command-line workbench: quiver/root utilities, representation I/O and
// checks, reflection functors, Ext-quiver and Coxeter calculus, corpus
// generation and the property self-test suites.  All output is JSON on
// stdout.  Exit codes: 0 success, 1 a mathematical property failed, 2 bad
// input.
#include <CLI11.hpp>

#include <dpa/corpus.hpp>
#include <dpa/selftest.hpp>

#include <iostream>
#include <variant>

namespace {

using namespace dpa;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

const char* kind_name(QuiverClass k) {
  switch (k) {
    case QuiverClass::Dynkin:
      return "Dynkin";
    case QuiverClass::ExtendedDynkin:
      return "ExtendedDynkin";
    default:
      return "Other";
  }
}

std::string stem_of(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
    base.resize(base.size() - 5);
  return base;
}

// A quiver argument is either a shipped fixture name (optionally written as a
// file name) or a path to a quiver JSON file.
Quiver resolve_quiver(const std::string& arg) {
  std::string stem = stem_of(arg);
  for (const Fixture& fx : fixtures())
    if (fx.name == stem) return fx.q;
  return quiver_from_json(load_json_file(arg));
}

IntVec parse_ints(const std::string& s) {
  IntVec out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t a = tok.find_first_not_of(" \t");
    std::size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty entry in integer list '" + s + "'");
    tok = tok.substr(a, b - a + 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + tok + "' in list '" + s + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  for (std::int64_t v : parse_ints(s)) w.push_back(static_cast<int>(v));
  return w;
}

IntVec root_box(const Quiver& q, std::int64_t bound) {
  if (bound <= 0) throw ParseError("bound must be positive");
  Classification cls = classify_quiver(q);
  if (cls.kind == QuiverClass::ExtendedDynkin) return scale_vec(bound, cls.delta);
  return IntVec(static_cast<std::size_t>(q.vertices()), bound);
}

Json vecs_to_json(const std::vector<IntVec>& vs) {
  Json out = Json::array();
  for (const IntVec& v : vs) out.push_back(v);
  return out;
}

// Collects a loaded directory into one typed family; every member must live
// over the same field, quiver and weight.
template <FieldType F>
SimpleFamily<F> family_as(const F&, const std::vector<std::pair<std::string, AnyRep>>& items) {
  std::vector<std::string> labels;
  std::vector<Representation<F>> members;
  for (const auto& [label, any] : items) {
    const auto* p = std::get_if<Representation<F>>(&any.value);
    if (!p) throw FieldMismatch("family member '" + label + "' is over a different field");
    labels.push_back(label);
    members.push_back(*p);
  }
  return make_simple_family(std::move(labels), std::move(members));
}

template <FieldType F>
void require_comparable(const Representation<F>& a, const Representation<F>& b) {
  if (!a.lambda.field.same(b.lambda.field))
    throw FieldMismatch("representations are over different fields");
  if (!same_shape(a.dq, b.dq))
    throw InvalidRepresentation("representations are over different quivers");
  if (!weights_equal(a.lambda, b.lambda))
    throw IncompatibleWeights("representations are over different weights");
}

int cmd_quiver_classify(const std::string& quiver_arg) {
  Quiver q = resolve_quiver(quiver_arg);
  Classification cls = classify_quiver(q);
  Json j;
  j["kind"] = kind_name(cls.kind);
  j["vertices"] = q.vertices();
  j["arrows"] = q.arrows().size();
  if (cls.kind == QuiverClass::ExtendedDynkin) j["delta"] = cls.delta;
  emit(j);
  return 0;
}

int cmd_roots_enum(const std::string& quiver_arg, std::int64_t bound) {
  Quiver q = resolve_quiver(quiver_arg);
  IntVec box = root_box(q, bound);
  RootEnumeration roots = enumerate_positive_roots(q, box);
  Json j;
  j["bound"] = box;
  j["real"] = vecs_to_json(roots.real_roots);
  j["imaginary"] = vecs_to_json(roots.imaginary_roots);
  emit(j);
  return 0;
}

int cmd_sigma_enum(const std::string& quiver_arg, const std::string& field_name,
                   const std::string& lambda_str, std::int64_t bound) {
  Quiver q = resolve_quiver(quiver_arg);
  IntVec box = root_box(q, bound);
  IntVec lam = parse_ints(lambda_str);
  return std::visit(
      [&](auto f) {
        auto w = weight_from_ints(f, lam);
        Json j;
        j["bound"] = box;
        j["members"] = vecs_to_json(sigma_lambda_re(q, w, box));
        emit(j);
        return 0;
      },
      field_from_name(field_name));
}

int cmd_rep_check(const std::string& rep_path) {
  AnyRep any = rep_from_json(load_json_file(rep_path), /*validate_relations=*/false);
  return any.visit([&](const auto& rep) {
    auto residuals = check_relations(rep);
    Json bad = Json::array();
    for (std::size_t i = 0; i < residuals.size(); ++i)
      if (!residuals[i].is_zero())
        bad.push_back(Json{{"vertex", i}, {"residual", matrix_to_json(residuals[i])}});
    Json j;
    j["sound"] = bad.empty();
    j["residuals"] = bad;
    emit(j);
    return bad.empty() ? 0 : 1;
  });
}

int cmd_rep_pair(const std::string& left_path, const std::string& right_path, bool want_ext) {
  AnyRep left = rep_from_json(load_json_file(left_path));
  AnyRep right = rep_from_json(load_json_file(right_path));
  return left.visit([&](const auto& a) {
    using Rep = std::decay_t<decltype(a)>;
    const auto* b = std::get_if<Rep>(&right.value);
    if (!b) throw FieldMismatch("representations are over different fields");
    require_comparable(a, *b);
    Json j;
    if (want_ext) {
      auto e = ext_complex(a, *b);
      j["c0"] = e.c0;
      j["c1"] = e.c1;
      j["c2"] = e.c2;
      j["hom"] = e.h0;
      j["ext1"] = e.h1;
      j["ext2_shadow"] = e.h2;
      j["euler"] = e.euler;
    } else {
      j["dim"] = hom_dim(a, *b);
    }
    emit(j);
    return 0;
  });
}

int cmd_reflect_apply(const std::string& rep_path, int vertex, const std::string& functor,
                      const std::string& out_path) {
  AnyRep any = rep_from_json(load_json_file(rep_path));
  return any.visit([&](const auto& rep) {
    const auto& f = rep.lambda.field;
    if (functor != "C" && functor != "K" && functor != "E")
      throw ParseError("functor must be C, K or E");
    if (functor == "E" && f.is_zero(rep.lambda.coords[vertex]))
      throw ParseError("the equivalence requires a nonzero weight at the vertex");
    auto image = functor == "K" ? kernel_functor_obj(rep, vertex).image
                                : cokernel_functor_obj(rep, vertex).image;
    Json out = rep_to_json(image);
    if (out_path.empty()) {
      emit(out);
    } else {
      save_json_file(out_path, out);
      Json j;
      j["out"] = out_path;
      j["dims"] = image.dims;
      j["lambda"] = weight_to_json(image.lambda);
      emit(j);
    }
    return 0;
  });
}

int cmd_braid_verify(const std::string& corpus_dir, std::uint64_t seed) {
  auto items = load_rep_dir(corpus_dir);
  if (items.empty()) throw ParseError("corpus directory '" + corpus_dir + "' has no *.json files");
  return items[0].second.visit([&](const auto& first) {
    using Rep = std::decay_t<decltype(first)>;
    std::vector<Rep> reps;
    for (const auto& [label, any] : items) {
      const auto* p = std::get_if<Rep>(&any.value);
      if (!p) throw FieldMismatch("corpus member '" + label + "' is over a different field");
      require_comparable(first, *p);
      reps.push_back(*p);
    }
    const Quiver& q = first.dq.base();
    Json pairs = Json::array();
    bool all_ok = true;
    for (int i = 0; i < q.vertices(); ++i)
      for (int j = i + 1; j < q.vertices(); ++j) {
        if (q.has_loop_at(i) || q.has_loop_at(j)) continue;
        if (q.edges_between(i, j) > 1) continue;
        std::size_t checked = 0;
        bool ok = true;
        for (const Rep& r : reps) {
          auto rep = verify_braid_relation(r, i, j, seed);
          ++checked;
          ok = ok && rep.ok;
        }
        all_ok = all_ok && ok;
        pairs.push_back(Json{{"left", i},
                             {"right", j},
                             {"arrows", q.edges_between(i, j)},
                             {"checked", checked},
                             {"ok", ok}});
      }
    Json j;
    j["reps"] = reps.size();
    j["pairs"] = pairs;
    j["ok"] = all_ok;
    emit(j);
    return all_ok ? 0 : 1;
  });
}

int cmd_extquiver_build(const std::string& family_dir, bool decompose) {
  auto items = load_rep_dir(family_dir);
  if (items.empty()) throw ParseError("family directory '" + family_dir + "' has no *.json files");
  return items[0].second.visit([&](const auto& first) {
    auto fam = family_as(first.lambda.field, items);
    ExtQuiverData eq = build_ext_quiver(fam);
    Json j = extquiver_to_json(eq);
    if (decompose) {
      Json comps = Json::array();
      for (const GammaComponent& gc : decompose_gamma(eq)) {
        Json c;
        c["vertices"] = gc.vertices;
        c["kind"] = kind_name(gc.cls.kind);
        if (gc.cls.kind == QuiverClass::ExtendedDynkin) c["delta_prime"] = gc.cls.delta;
        comps.push_back(std::move(c));
      }
      j["components"] = std::move(comps);
      const Quiver& ambient = fam.members[0].dq.base();
      if (classify_quiver(ambient).kind == QuiverClass::ExtendedDynkin) {
        DeltaDecomposition dd = delta_decomposition(eq, ambient);
        Json d;
        d["ambient_delta"] = dd.ambient_delta;
        d["ok"] = dd.ok;
        Json certs = Json::array();
        for (const DeltaCertificate& ct : dd.components)
          certs.push_back(Json{{"vertices", ct.vertices},
                               {"kind", kind_name(ct.kind)},
                               {"delta_prime", ct.delta_prime},
                               {"weighted_sum", ct.weighted_sum},
                               {"matches", ct.matches}});
        d["components"] = std::move(certs);
        j["delta"] = std::move(d);
      }
    }
    emit(j);
    return 0;
  });
}

int cmd_coxeter(const std::string& extquiver_path, const std::string& word_str, bool demazure) {
  ExtQuiverData eq = extquiver_from_json(load_json_file(extquiver_path));
  auto lat = std::make_shared<ClassLattice>(class_lattice(eq));
  std::vector<int> word = parse_word(word_str);
  for (int s : word)
    if (s < 0 || static_cast<std::size_t>(s) >= eq.rank())
      throw ParseError("word letter " + std::to_string(s) + " out of range");
  CoxeterElement el = demazure ? demazure_product(lat, word) : element_from_word(lat, word);
  Json j;
  j["input"] = word;
  j["word"] = el.word();
  j["length"] = el.length();
  j["identity"] = el.is_identity();
  emit(j);
  return 0;
}

int cmd_serre_member(const std::string& rep_path, const std::string& family_dir,
                     const std::string& chain_str) {
  AnyRep any = rep_from_json(load_json_file(rep_path));
  auto items = load_rep_dir(family_dir);
  return any.visit([&](const auto& rep) {
    auto fam = family_as(rep.lambda.field, items);
    require_comparable(rep, fam.members[0]);
    std::vector<int> chain;
    std::size_t pos = 0;
    std::string s = chain_str;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      std::string tok =
          s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t a = tok.find_first_not_of(" \t");
      std::size_t b = tok.find_last_not_of(" \t");
      if (a == std::string::npos) throw ParseError("empty label in chain '" + chain_str + "'");
      chain.push_back(fam.index_of(tok.substr(a, b - a + 1)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    bool member = chain_member(rep, fam, chain);
    Json j;
    j["chain"] = chain;
    j["member"] = member;
    emit(j);
    return 0;
  });
}

int cmd_serre_relations(const std::string& family_dir, std::int64_t bound, std::uint64_t seed) {
  auto items = load_rep_dir(family_dir);
  if (items.empty()) throw ParseError("family directory '" + family_dir + "' has no *.json files");
  return items[0].second.visit([&](const auto& first) {
    auto fam = family_as(first.lambda.field, items);
    StarReport r = verify_star_relations(fam, bound, seed);
    Json j;
    j["ext"] = r.ext_st;
    j["corpus"] = r.corpus_size;
    j["idempotent"] = Json{{"instances", r.idempotent_instances}, {"ok", r.idempotent_ok}};
    j["swap"] = Json{{"applicable", r.swap_applicable},
                     {"instances", r.swap_instances},
                     {"ok", r.swap_ok}};
    j["braid"] = Json{{"applicable", r.braid_applicable}, {"ok", r.braid_ok}};
    j["counterexamples"] = r.counterexamples;
    j["ok"] = r.ok;
    emit(j);
    return r.ok ? 0 : 1;
  });
}

int cmd_corpus_generate(const std::string& quiver_arg, const std::string& field_name,
                        const std::string& lambda_str, const CorpusConfig& cfg,
                        const std::string& out_dir) {
  Quiver q = resolve_quiver(quiver_arg);
  DoubleQuiver dq(q);
  IntVec lam = parse_ints(lambda_str);
  return std::visit(
      [&](auto f) {
        auto w = weight_from_ints(f, lam);
        auto pool = generate_corpus(dq, w, cfg);
        auto files = write_corpus_dir(out_dir, pool);
        Json j;
        j["dir"] = out_dir;
        j["count"] = pool.size();
        j["files"] = files;
        emit(j);
        return 0;
      },
      field_from_name(field_name));
}

int cmd_selftest(const std::string& suite, const selftest::Options& opt) {
  if (suite == "all") {
    auto reports = selftest::run_all(opt);
    Json arr = Json::array();
    bool ok = true;
    for (const auto& r : reports) {
      ok = ok && r.passed;
      arr.push_back(selftest::report_to_json(r));
    }
    Json j;
    j["suites"] = std::move(arr);
    j["passed"] = ok;
    emit(j);
    return ok ? 0 : 1;
  }
  auto r = selftest::run_suite(suite, opt);
  emit(selftest::report_to_json(r));
  return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for deformed preprojective algebras"};
  app.require_subcommand(1);
  int rc = 0;

  std::string quiver_arg, field_name = "Q", lambda_str, rep_path, left_path, right_path;
  std::string out_path, corpus_dir, family_dir, extquiver_path, word_str, chain_str, functor = "C";
  std::int64_t bound = 3;
  std::uint64_t seed = 12345;
  int vertex = 0;
  bool decompose = false;

  auto* quiver = app.add_subcommand("quiver", "quiver utilities");
  quiver->require_subcommand(1);
  auto* classify = quiver->add_subcommand("classify", "classify by the symmetric form");
  classify->add_option("--quiver", quiver_arg, "fixture name or quiver JSON file")->required();
  classify->callback([&] { rc = cmd_quiver_classify(quiver_arg); });

  auto* roots = app.add_subcommand("roots", "root-system utilities");
  roots->require_subcommand(1);
  auto* roots_enum = roots->add_subcommand("enum", "positive roots in a box");
  roots_enum->add_option("--quiver", quiver_arg)->required();
  roots_enum->add_option("--bound", bound, "box: multiple of delta, or constant");
  roots_enum->callback([&] { rc = cmd_roots_enum(quiver_arg, bound); });

  auto* sigma = app.add_subcommand("sigma", "minimal orthogonal positive real roots");
  sigma->require_subcommand(1);
  auto* sigma_enum = sigma->add_subcommand("enum", "enumerate the set for a weight");
  sigma_enum->add_option("--quiver", quiver_arg)->required();
  sigma_enum->add_option("--field", field_name, "Q or Fp:<prime>");
  sigma_enum->add_option("--lambda", lambda_str, "comma-separated integers")->required();
  sigma_enum->add_option("--bound", bound);
  sigma_enum->callback([&] { rc = cmd_sigma_enum(quiver_arg, field_name, lambda_str, bound); });

  auto* rep = app.add_subcommand("rep", "representation files");
  rep->require_subcommand(1);
  auto* rep_check = rep->add_subcommand("check", "report relation residuals");
  rep_check->add_option("--rep", rep_path)->required();
  rep_check->callback([&] { rc = cmd_rep_check(rep_path); });
  auto* rep_hom = rep->add_subcommand("hom", "dimension of the homomorphism space");
  rep_hom->add_option("--left", left_path)->required();
  rep_hom->add_option("--right", right_path)->required();
  rep_hom->callback([&] { rc = cmd_rep_pair(left_path, right_path, false); });
  auto* rep_ext = rep->add_subcommand("ext1", "Ext^1 via the three-term complex");
  rep_ext->add_option("--left", left_path)->required();
  rep_ext->add_option("--right", right_path)->required();
  rep_ext->callback([&] { rc = cmd_rep_pair(left_path, right_path, true); });

  auto* reflect = app.add_subcommand("reflect", "reflection functors");
  reflect->require_subcommand(1);
  auto* reflect_apply = reflect->add_subcommand("apply", "apply C, K or the equivalence E");
  reflect_apply->add_option("--rep", rep_path)->required();
  reflect_apply->add_option("--vertex", vertex)->required();
  reflect_apply->add_option("--functor", functor, "C, K or E");
  reflect_apply->add_option("--out", out_path, "write the image here instead of stdout");
  reflect_apply->callback([&] { rc = cmd_reflect_apply(rep_path, vertex, functor, out_path); });

  auto* braid = app.add_subcommand("braid", "reflection-functor braid relations");
  braid->require_subcommand(1);
  auto* braid_verify = braid->add_subcommand("verify", "verify on a corpus directory");
  braid_verify->add_option("--corpus", corpus_dir)->required();
  braid_verify->add_option("--seed", seed);
  braid_verify->callback([&] { rc = cmd_braid_verify(corpus_dir, seed); });

  auto* extq = app.add_subcommand("extquiver", "Ext-quiver of a simple family");
  extq->require_subcommand(1);
  auto* extq_build = extq->add_subcommand("build", "build from a family directory");
  extq_build->add_option("--family", family_dir)->required();
  extq_build->add_flag("--decompose", decompose, "classify components and check delta");
  extq_build->callback([&] { rc = cmd_extquiver_build(family_dir, decompose); });

  auto* coxeter = app.add_subcommand("coxeter", "Coxeter group of an Ext-quiver");
  coxeter->require_subcommand(1);
  auto* cox_reduce = coxeter->add_subcommand("reduce", "canonical reduced word");
  cox_reduce->add_option("--extquiver", extquiver_path)->required();
  cox_reduce->add_option("--word", word_str, "comma-separated generator indices")->required();
  cox_reduce->callback([&] { rc = cmd_coxeter(extquiver_path, word_str, false); });
  auto* cox_dem = coxeter->add_subcommand("demazure", "0-Hecke product of a word");
  cox_dem->add_option("--extquiver", extquiver_path)->required();
  cox_dem->add_option("--word", word_str)->required();
  cox_dem->callback([&] { rc = cmd_coxeter(extquiver_path, word_str, true); });

  auto* serre = app.add_subcommand("serre", "layered subcategory calculus");
  serre->require_subcommand(1);
  auto* serre_member = serre->add_subcommand("member", "greedy chain membership");
  serre_member->add_option("--rep", rep_path)->required();
  serre_member->add_option("--family", family_dir)->required();
  serre_member->add_option("--chain", chain_str, "comma-separated family labels")->required();
  serre_member->callback([&] { rc = cmd_serre_member(rep_path, family_dir, chain_str); });
  auto* serre_rel = serre->add_subcommand("relations", "idempotent/swap/braid chain relations");
  serre_rel->add_option("--family", family_dir)->required();
  serre_rel->add_option("--bound", bound, "total-dimension bound for the check corpus");
  serre_rel->add_option("--seed", seed);
  serre_rel->callback([&] { rc = cmd_serre_relations(family_dir, bound, seed); });

  auto* corpus = app.add_subcommand("corpus", "deterministic module corpora");
  corpus->require_subcommand(1);
  auto* corpus_gen = corpus->add_subcommand("generate", "generate and write a corpus");
  CorpusConfig cfg;
  corpus_gen->add_option("--quiver", quiver_arg)->required();
  corpus_gen->add_option("--field", field_name);
  corpus_gen->add_option("--lambda", lambda_str)->required();
  corpus_gen->add_option("--seed", cfg.seed);
  corpus_gen->add_option("--size", cfg.target_size, "target corpus size");
  corpus_gen->add_option("--bound", cfg.max_total_dim, "total-dimension bound");
  corpus_gen->add_option("--out", out_path)->required();
  corpus_gen->callback(
      [&] { rc = cmd_corpus_generate(quiver_arg, field_name, lambda_str, cfg, out_path); });

  auto* selftest_cmd = app.add_subcommand("selftest", "property suites");
  std::string suite;
  selftest::Options opt;
  std::string only_quiver;
  selftest_cmd->add_option("suite", suite, "linalg|forms|roots|ext|reflect|braid|serre|coxeter|all")
      ->required();
  selftest_cmd->add_option("--quiver", only_quiver, "restrict to one fixture");
  selftest_cmd->add_option("--seed", opt.seed);
  selftest_cmd->add_option("--jobs", opt.jobs, "thread cap for parallel kernels");
  selftest_cmd->callback([&] {
    if (!only_quiver.empty()) opt.only_quiver = stem_of(only_quiver);
    rc = cmd_selftest(suite, opt);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
