#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dpa/corpus.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace dpa;
namespace fs = std::filesystem;

namespace {

// Scratch directory per process so parallel ctest runs do not collide.
fs::path scratch() {
  fs::path p = fs::temp_directory_path() / ("dpa_json_cli_" + std::to_string(getpid()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the installed CLI binary; DPA_BIN is exported by the test harness.
RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("DPA_BIN");
  REQUIRE(bin != nullptr);
  fs::path errfile = scratch() / "stderr.txt";
  std::string cmd = "\"" + std::string(bin) + "\" " + args + " 2>" + errfile.string();
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(errfile);
  return r;
}

Representation<Rationals> sample_rep() {
  Rationals f;
  DoubleQuiver dq(fixture_by_name("a2tilde").q);
  Weight<Rationals> w = weight_from_ints(f, {1, -1, 0});
  IntVec dims{1, 1, 0};
  std::vector<Matrix<Rationals>> maps;
  for (const DoubleArrow& ar : dq.arrows()) {
    Matrix<Rationals> m(f, static_cast<std::size_t>(dims[ar.head]),
                        static_cast<std::size_t>(dims[ar.tail]));
    if (ar.id == "a0") m.at(0, 0) = f.parse("1/2");
    if (ar.id == "a0*") m.at(0, 0) = -2;
    maps.push_back(std::move(m));
  }
  return make_representation(dq, w, dims, std::move(maps));
}

}  // namespace

TEST_CASE("quiver json roundtrip and validation") {
  const Quiver& q = fixture_by_name("d4tilde").q;
  Json j = quiver_to_json(q);
  CHECK(j["format"] == 1);
  Quiver back = quiver_from_json(j);
  CHECK(quiver_to_json(back) == j);

  Json bad = j;
  bad["format"] = 2;
  CHECK_THROWS_AS(quiver_from_json(bad), ParseError);
  bad = j;
  bad.erase("vertices");
  CHECK_THROWS_AS(quiver_from_json(bad), ParseError);
  bad = j;
  bad["arrows"][0].erase("head");
  CHECK_THROWS_AS(quiver_from_json(bad), ParseError);
  bad = j;
  bad["arrows"][0]["head"] = 99;  // endpoint outside the vertex range
  CHECK_THROWS_AS(quiver_from_json(bad), InvalidQuiver);
}

TEST_CASE("shipped fixture files match the built-in quivers") {
  const char* dir = std::getenv("DPA_FIXTURES");
  REQUIRE(dir != nullptr);
  for (const char* name : {"kronecker", "a2tilde", "d4tilde"}) {
    Json j = load_json_file((fs::path(dir) / (std::string(name) + ".json")).string());
    CHECK(quiver_to_json(quiver_from_json(j)) == quiver_to_json(fixture_by_name(name).q));
  }
}

TEST_CASE("field elements serialize exactly") {
  Rationals q;
  Json half = element_to_json(q, q.parse("-3/4"));
  CHECK(half.is_string());
  CHECK(half.get<std::string>() == "-3/4");
  CHECK(q.eq(element_from_json(q, half), q.parse("-3/4")));
  CHECK(q.eq(element_from_json(q, Json(7)), q.from_int(7)));

  PrimeField f7(7);
  Json e = element_to_json(f7, f7.from_int(12));
  CHECK(e.is_number_integer());
  CHECK(e.get<int>() == 5);
  CHECK(f7.eq(element_from_json(f7, e), f7.from_int(5)));
  CHECK_THROWS_AS(element_from_json(q, Json::object()), ParseError);

  Matrix<Rationals> m(q, 1, 2);
  m.at(0, 0) = q.parse("1/3");
  m.at(0, 1) = q.from_int(2);
  Json mj = matrix_to_json(m);
  CHECK(matrix_from_json(q, mj, 1, 2, "m") == m);
  CHECK_THROWS_AS(matrix_from_json(q, mj, 2, 2, "m"), ParseError);
}

TEST_CASE("representation files are byte-stable and validated") {
  fs::path dir = scratch();
  Representation<Rationals> r = sample_rep();
  Json j = rep_to_json(r);
  CHECK(j["field"] == "Q");
  CHECK(j["maps"]["a0"][0][0] == "1/2");

  fs::path file = dir / "rep.json";
  save_json_file(file.string(), j);
  Json loaded = load_json_file(file.string());
  CHECK(loaded == j);
  save_json_file((dir / "rep2.json").string(), loaded);
  CHECK(slurp(file) == slurp(dir / "rep2.json"));

  Rationals f;
  Representation<Rationals> back = rep_from_json_as(f, loaded);
  CHECK(back.dims == r.dims);
  CHECK(rep_to_json(back) == j);
  CHECK_THROWS_AS(rep_from_json_as(PrimeField(5), loaded, false), FieldMismatch);

  // Breaking the preprojective relation is refused by a validating load but
  // tolerated (and reported) by a non-validating one.
  Json tampered = j;
  tampered["maps"]["a0"][0][0] = "5";
  try {
    rep_from_json_as(f, tampered);
    FAIL("tampered representation passed validation");
  } catch (const InvalidRepresentation& e) {
    CHECK(std::string(e.what()).find("relation check failed: vertex") != std::string::npos);
  }
  Representation<Rationals> loose = rep_from_json_as(f, tampered, false);
  bool all_zero = true;
  for (const auto& res : check_relations(loose)) all_zero = all_zero && res.is_zero();
  CHECK_FALSE(all_zero);

  AnyRep any = rep_from_json(j);
  CHECK(std::holds_alternative<Representation<Rationals>>(any.value));
  CHECK(any.visit([](const auto& rep) { return rep.dims; }) == IntVec{1, 1, 0});
}

TEST_CASE("ext-quiver json carries labels, roots and multiplicities") {
  ExtQuiverData eq;
  eq.labels = {"S0", "S1"};
  eq.roots = {{1, 0}, {0, 1}};
  eq.m = {{0, 2}, {2, 0}};
  Json j = extquiver_to_json(eq);
  ExtQuiverData back = extquiver_from_json(j);
  CHECK(back.labels == eq.labels);
  CHECK(back.roots == eq.roots);
  CHECK(back.m == eq.m);
  CHECK(extquiver_to_json(back) == j);

  Json bad = j;
  bad["m"][0][1] = 3;  // symmetry broken
  CHECK_THROWS_AS(extquiver_from_json(bad), ParseError);
  bad = j;
  bad["m"][0][0] = 1;  // loop
  CHECK_THROWS_AS(extquiver_from_json(bad), ParseError);
}

TEST_CASE("field names parse or are refused") {
  CHECK(std::holds_alternative<Rationals>(field_from_name("Q")));
  auto f = field_from_name("Fp:101");
  REQUIRE(std::holds_alternative<PrimeField>(f));
  CHECK(std::get<PrimeField>(f).name() == "Fp:101");
  CHECK_THROWS_AS(field_from_name("Fp:4"), ParseError);
  CHECK_THROWS_AS(field_from_name("Fp:1"), ParseError);
  CHECK_THROWS_AS(field_from_name("Fp:"), ParseError);
  CHECK_THROWS_AS(field_from_name("Z"), ParseError);
}

TEST_CASE("cli classifies quivers from fixture names and files") {
  RunResult r = run_cli("quiver classify --quiver kronecker");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["kind"] == "ExtendedDynkin");
  CHECK(j["delta"] == Json::array({1, 1}));

  // A copied file under a non-fixture name goes through the JSON loader.
  fs::path dir = scratch();
  save_json_file((dir / "custom.json").string(),
                 quiver_to_json(fixture_by_name("kronecker").q));
  RunResult r2 = run_cli("quiver classify --quiver " + (dir / "custom.json").string());
  REQUIRE(r2.code == 0);
  CHECK(Json::parse(r2.out) == j);

  CHECK(run_cli("quiver classify --quiver nosuch").code == 2);
  CHECK(run_cli("quiver classify --no-such-flag").code == 2);
  CHECK(run_cli("quiver").code == 2);  // subcommand required
}

TEST_CASE("cli validates representation files and reports residuals") {
  fs::path dir = scratch();
  Json good = rep_to_json(sample_rep());
  save_json_file((dir / "good.json").string(), good);
  Json tampered = good;
  tampered["maps"]["a0"][0][0] = "5";
  save_json_file((dir / "tampered.json").string(), tampered);

  RunResult ok = run_cli("rep check --rep " + (dir / "good.json").string());
  REQUIRE(ok.code == 0);
  CHECK(Json::parse(ok.out)["sound"] == true);

  RunResult bad = run_cli("rep check --rep " + (dir / "tampered.json").string());
  CHECK(bad.code == 1);
  Json bj = Json::parse(bad.out);
  CHECK(bj["sound"] == false);
  CHECK(!bj["residuals"].empty());

  // Commands that need a sound module refuse the tampered file as bad input.
  RunResult hom = run_cli("rep hom --left " + (dir / "tampered.json").string() + " --right " +
                          (dir / "good.json").string());
  CHECK(hom.code == 2);
  CHECK(hom.err.find("relation check failed: vertex") != std::string::npos);

  RunResult self = run_cli("rep hom --left " + (dir / "good.json").string() + " --right " +
                           (dir / "good.json").string());
  REQUIRE(self.code == 0);
  CHECK(Json::parse(self.out)["dim"] == 1);

  RunResult refl = run_cli("reflect apply --rep " + (dir / "good.json").string() +
                           " --vertex 2 --functor C");
  REQUIRE(refl.code == 0);
  CHECK(Json::parse(refl.out)["dims"] == Json::array({1, 1, 2}));
}

TEST_CASE("cli corpus generation is deterministic") {
  fs::path dir = scratch();
  std::string common = "corpus generate --quiver kronecker --field Fp:5 --lambda 0,2 --seed 7 ";
  RunResult a = run_cli(common + "--out " + (dir / "corpA").string());
  RunResult b = run_cli(common + "--out " + (dir / "corpB").string());
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  Json ja = Json::parse(a.out), jb = Json::parse(b.out);
  CHECK(ja["count"] == jb["count"]);
  CHECK(ja["count"].get<int>() > 0);
  REQUIRE(ja["files"] == jb["files"]);
  for (const Json& name : ja["files"])
    CHECK(slurp(dir / "corpA" / name.get<std::string>()) ==
          slurp(dir / "corpB" / name.get<std::string>()));
}

TEST_CASE("cli coxeter calculus over a written ext-quiver") {
  fs::path dir = scratch();
  PrimeField f5(5);
  DoubleQuiver dq(fixture_by_name("a2tilde").q);
  Weight<PrimeField> w = weight_from_ints(f5, {0, 0, 0});
  SimpleFamily<PrimeField> fam = make_simple_family<PrimeField>(
      {"S0", "S1", "S2"},
      {simple_rep(dq, w, 0), simple_rep(dq, w, 1), simple_rep(dq, w, 2)});
  fs::path eqfile = dir / "extquiver.json";
  save_json_file(eqfile.string(), extquiver_to_json(build_ext_quiver(fam)));

  RunResult red = run_cli("coxeter reduce --extquiver " + eqfile.string() +
                          " --word 0,1,0,1,0,0,2");
  REQUIRE(red.code == 0);
  Json j = Json::parse(red.out);
  CHECK(j["word"] == Json::array({1, 0, 2}));
  CHECK(j["length"] == 3);
  CHECK(j["identity"] == false);

  RunResult dem = run_cli("coxeter demazure --extquiver " + eqfile.string() +
                          " --word 0,0,1,1,0");
  REQUIRE(dem.code == 0);
  CHECK(Json::parse(dem.out)["word"] == Json::array({0, 1, 0}));

  CHECK(run_cli("coxeter reduce --extquiver " + eqfile.string() + " --word 0,9").code == 2);
}

TEST_CASE("cli selftest runs one suite on one fixture") {
  RunResult r = run_cli("selftest forms --quiver kronecker");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["suite"] == "forms");
  CHECK(j["passed"] == true);
  CHECK(run_cli("selftest nosuchsuite").code == 2);
}
