#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dpa/coxeter.hpp>

#include <memory>
#include <set>
#include <sstream>

using namespace dpa;

namespace {

Quiver kronecker() { return Quiver(2, {{"a", 0, 1}, {"b", 0, 1}}); }
Quiver a2tilde() { return Quiver(3, {{"a0", 0, 1}, {"a1", 1, 2}, {"a2", 2, 0}}); }
Quiver d4tilde() {
  return Quiver(5, {{"a1", 1, 0}, {"a2", 2, 0}, {"a3", 3, 0}, {"a4", 4, 0}});
}

// Coordinate simples at weight zero, one per vertex of q.
template <FieldType F>
SimpleFamily<F> coordinate_family(const Quiver& q, const F& f) {
  DoubleQuiver dq(q);
  Weight<F> w = weight_from_ints(f, IntVec(static_cast<std::size_t>(q.vertices()), 0));
  std::vector<std::string> labels;
  std::vector<Representation<F>> members;
  for (int i = 0; i < q.vertices(); ++i) {
    labels.push_back("S" + std::to_string(i));
    members.push_back(simple_rep(dq, w, i));
  }
  return make_simple_family<F>(std::move(labels), std::move(members));
}

// Abstract two-generator lattice with m arrows between the generators.
ExtQuiverData abstract_rank2(int m) {
  ExtQuiverData eq;
  eq.labels = {"s", "t"};
  eq.m = {{0, m}, {m, 0}};
  return eq;
}

std::shared_ptr<const ClassLattice> lattice_of(const ExtQuiverData& eq) {
  return std::make_shared<const ClassLattice>(class_lattice(eq));
}

std::string matrix_key(const CoxeterElement& w) {
  std::ostringstream os;
  for (const auto& row : w.matrix())
    for (const auto& entry : row) os << entry.get_str() << ',';
  return os.str();
}

}  // namespace

TEST_CASE("ext-quiver of the coordinate simples counts underlying edges") {
  PrimeField f5(5);

  ExtQuiverData kron = build_ext_quiver(coordinate_family(kronecker(), f5));
  REQUIRE(kron.rank() == 2);
  CHECK(kron.labels == std::vector<std::string>{"S0", "S1"});
  CHECK(kron.roots[0] == IntVec{1, 0});
  CHECK(kron.roots[1] == IntVec{0, 1});
  CHECK(kron.m[0][1] == 2);
  CHECK(kron.m[1][0] == 2);
  CHECK(kron.m[0][0] == 0);

  ExtQuiverData a2 = build_ext_quiver(coordinate_family(a2tilde(), f5));
  REQUIRE(a2.rank() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a2.m[i][j] == (i == j ? 0 : 1));

  ExtQuiverData d4 = build_ext_quiver(coordinate_family(d4tilde(), f5));
  REQUIRE(d4.rank() == 5);
  for (int leaf = 1; leaf < 5; ++leaf) {
    CHECK(d4.m[0][leaf] == 1);
    CHECK(d4.m[leaf][0] == 1);
    for (int other = leaf + 1; other < 5; ++other) CHECK(d4.m[leaf][other] == 0);
  }
}

TEST_CASE("ext-quiver refuses a member with self-extensions") {
  // The Kronecker module of dimension (1, 1) at lambda = (1, -1) is simple but
  // not rigid, so it can only enter a family by aggregate construction.
  Rationals f;
  DoubleQuiver dq(kronecker());
  Weight<Rationals> w = weight_from_ints(f, {1, -1});
  std::vector<Matrix<Rationals>> maps;
  for (const DoubleArrow& ar : dq.arrows()) {
    Matrix<Rationals> m(f, 1, 1);
    if (ar.id == "a") m.at(0, 0) = 1;
    if (ar.id == "a*") m.at(0, 0) = -1;
    maps.push_back(std::move(m));
  }
  Representation<Rationals> delta = make_representation(dq, w, {1, 1}, std::move(maps));
  CHECK(ext_complex(delta, delta).h1 == 2);
  SimpleFamily<Rationals> fam{{"D"}, {delta}};
  CHECK_THROWS_AS(build_ext_quiver(fam), InvalidFamily);
}

TEST_CASE("gamma quiver and delta decomposition") {
  PrimeField f3(3);

  ExtQuiverData a2 = build_ext_quiver(coordinate_family(a2tilde(), f3));
  Quiver g = gamma_quiver(a2);
  CHECK(g.vertices() == 3);
  CHECK(g.arrows().size() == 3);

  std::vector<GammaComponent> comps = decompose_gamma(a2);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].vertices == std::vector<int>{0, 1, 2});
  CHECK(comps[0].cls.kind == QuiverClass::ExtendedDynkin);

  DeltaDecomposition dec = delta_decomposition(a2, a2tilde());
  CHECK(dec.ok);
  CHECK(dec.ambient_delta == IntVec{1, 1, 1});
  REQUIRE(dec.components.size() == 1);
  CHECK(dec.components[0].delta_prime == IntVec{1, 1, 1});
  CHECK(dec.components[0].weighted_sum == IntVec{1, 1, 1});
  CHECK(dec.components[0].matches);

  ExtQuiverData d4 = build_ext_quiver(coordinate_family(d4tilde(), f3));
  DeltaDecomposition dec4 = delta_decomposition(d4, d4tilde());
  CHECK(dec4.ok);
  CHECK(dec4.ambient_delta == IntVec{2, 1, 1, 1, 1});
  REQUIRE(dec4.components.size() == 1);
  CHECK(dec4.components[0].weighted_sum == IntVec{2, 1, 1, 1, 1});

  // Two non-adjacent leaves alone decompose into Dynkin points, which cannot
  // recombine into the ambient radical generator.
  DoubleQuiver dq(d4tilde());
  Weight<PrimeField> w = weight_from_ints(f3, {0, 0, 0, 0, 0});
  SimpleFamily<PrimeField> leaves = make_simple_family<PrimeField>(
      {"S1", "S2"}, {simple_rep(dq, w, 1), simple_rep(dq, w, 2)});
  DeltaDecomposition bad = delta_decomposition(build_ext_quiver(leaves), d4tilde());
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.components.size() == 2);
  CHECK(bad.components[0].kind == QuiverClass::Dynkin);
  CHECK_FALSE(bad.components[0].matches);

  // Abstract data carries no root labels; ambient mismatch is also refused.
  CHECK_THROWS_AS(delta_decomposition(abstract_rank2(2), kronecker()), Error);
  CHECK_THROWS_AS(delta_decomposition(a2, Quiver(3, {{"x", 0, 1}, {"y", 1, 2}})),
                  InvalidQuiver);
}

TEST_CASE("class lattice pairing and reflections") {
  ExtQuiverData a2 = build_ext_quiver(coordinate_family(a2tilde(), PrimeField(5)));
  ClassLattice lat = class_lattice(a2);
  REQUIRE(lat.rank == 3);
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t t = 0; t < 3; ++t)
      CHECK(lat.b[s][t] == (s == t ? 2 : -1));

  ClassLattice kron = class_lattice(abstract_rank2(2));
  CHECK(kron.b[0][1] == -2);
  CHECK(kron.b[1][0] == -2);

  // sigma_s is an involution fixing the pairing and negating e_s.
  LatticeVec x = lattice_vec({3, -1, 4});
  LatticeVec y = lattice_vec({1, 5, -9});
  for (int s = 0; s < 3; ++s) {
    LatticeVec sx = sigma_action(lat, s, x);
    LatticeVec sy = sigma_action(lat, s, y);
    CHECK(sigma_action(lat, s, sx) == x);
    CHECK(lattice_pairing(lat, sx, sy) == lattice_pairing(lat, x, y));
    LatticeVec es(3, 0);
    es[static_cast<std::size_t>(s)] = 1;
    LatticeVec minus(3, 0);
    minus[static_cast<std::size_t>(s)] = -1;
    CHECK(sigma_action(lat, s, es) == minus);
  }
  CHECK(lattice_pairing(lat, x, x) == symmetric_form(a2tilde(), {3, -1, 4}, {3, -1, 4}));
}

TEST_CASE("words fold to canonical reduced form") {
  auto lat = lattice_of(abstract_rank2(1));  // finite: the symmetric group S_3
  CoxeterElement e = CoxeterElement::identity(lat);
  CHECK(e.is_identity());
  CHECK(e.length() == 0);

  CHECK(e.times(0).times(0).is_identity());
  CHECK(e.times(0).length() == 1);
  CHECK(e.times(0).times(1).length() == 2);
  CHECK(e.times(0).times(1).times(0).length() == 3);
  CHECK(e.times(0).times(1).times(0).times(0).length() == 2);

  // Both braid words name the longest element; the stored word is lex-least.
  CoxeterElement w0 = element_from_word(lat, {0, 1, 0});
  CHECK(w0.same(element_from_word(lat, {1, 0, 1})));
  CHECK(w0.word() == std::vector<int>{0, 1, 0});
  CHECK(element_from_word(lat, {1, 0}).word() == std::vector<int>{1, 0});
  CHECK(element_from_word(lat, {0, 1, 1, 0}).is_identity());

  // Descent detection through root images.
  CHECK(e.image_nonneg(0));
  CHECK(e.image_nonneg(1));
  CHECK_FALSE(e.times(0).image_nonneg(0));
  CHECK(e.times(0).image_nonneg(1));
  CHECK_FALSE(w0.image_nonneg(0));
  CHECK_FALSE(w0.image_nonneg(1));

  // Folding a long unreduced word over the affine lattice.
  auto alat = lattice_of(build_ext_quiver(coordinate_family(a2tilde(), PrimeField(5))));
  CHECK(element_from_word(alat, {0, 1, 0, 1, 0, 0, 2}).word() == std::vector<int>{1, 0, 2});

  CHECK_THROWS_AS(e.times(7), SizeMismatch);
}

TEST_CASE("demazure product absorbs descents") {
  auto lat = lattice_of(abstract_rank2(1));
  CHECK(demazure_product(lat, {0, 0}).word() == std::vector<int>{0});
  CHECK(demazure_product(lat, {0, 1, 0, 1}).word() == std::vector<int>{0, 1, 0});
  // On reduced input the Demazure and group products agree.
  CHECK(demazure_product(lat, {1, 0}).same(element_from_word(lat, {1, 0})));

  auto alat = lattice_of(build_ext_quiver(coordinate_family(a2tilde(), PrimeField(5))));
  CHECK(demazure_product(alat, {0, 0, 1, 1, 0}).word() == std::vector<int>{0, 1, 0});
}

TEST_CASE("element enumeration by length") {
  // Rank two: commuting generators give the Klein four-group, one shared braid
  // gives S_3, and a double bond gives the infinite dihedral group.
  CHECK(elements_up_to_length(lattice_of(abstract_rank2(0)), 8).size() == 4);
  CHECK(elements_up_to_length(lattice_of(abstract_rank2(1)), 8).size() == 6);
  CHECK(elements_up_to_length(lattice_of(abstract_rank2(2)), 8).size() == 17);

  auto alat = lattice_of(build_ext_quiver(coordinate_family(a2tilde(), PrimeField(5))));
  std::vector<CoxeterElement> ball = elements_up_to_length(alat, 4);
  CHECK(ball.size() == 31);  // growth 1 + 3 + 6 + 9 + 12

  // The enumeration is duplicate-free and the lattice action is faithful on it.
  std::set<std::string> words, matrices;
  for (const CoxeterElement& w : ball) {
    words.insert(w.key());
    matrices.insert(matrix_key(w));
    CHECK(w.length() <= 4);
  }
  CHECK(words.size() == ball.size());
  CHECK(matrices.size() == ball.size());

  CHECK_THROWS_AS(elements_up_to_length(lattice_of(abstract_rank2(2)), 8, 5), Error);
}

TEST_CASE("module classes in the family lattice") {
  PrimeField f2(2);
  SimpleFamily<PrimeField> fam = coordinate_family(a2tilde(), f2);
  Representation<PrimeField> s0 = fam.members[0];
  Representation<PrimeField> s1 = fam.members[1];

  CompositionResult sum = class_of_module(direct_sum(s0, s1), fam);
  REQUIRE(sum.determinate);
  CHECK(sum.mult == IntVec{1, 1, 0});

  // A non-split extension has the same class as the direct sum of its factors.
  CompositionResult ext = class_of_module(build_extension(s0, s1, 0), fam);
  REQUIRE(ext.determinate);
  CHECK(ext.mult == IntVec{1, 1, 0});

  // Factors outside the family closure leave the class indeterminate.
  DoubleQuiver dq(a2tilde());
  Weight<PrimeField> w = weight_from_ints(f2, {0, 0, 0});
  SimpleFamily<PrimeField> pair = make_simple_family<PrimeField>(
      {"S0", "S1"}, {simple_rep(dq, w, 0), simple_rep(dq, w, 1)});
  CompositionResult outside = class_of_module(simple_rep(dq, w, 2), pair);
  CHECK_FALSE(outside.determinate);
  CHECK_FALSE(outside.reason.empty());
}
