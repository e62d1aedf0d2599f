#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dpa/quiver.hpp>
#include <dpa/roots.hpp>

#include <random>

using namespace dpa;

namespace {

Quiver kronecker() { return Quiver(2, {{"a", 0, 1}, {"b", 0, 1}}); }
Quiver a2tilde() { return Quiver(3, {{"a0", 0, 1}, {"a1", 1, 2}, {"a2", 2, 0}}); }
Quiver d4tilde() {
  return Quiver(5, {{"a1", 1, 0}, {"a2", 2, 0}, {"a3", 3, 0}, {"a4", 4, 0}});
}

IntVec rand_vec(std::mt19937_64& rng, std::size_t n) {
  IntVec v(n);
  for (auto& x : v) x = static_cast<std::int64_t>(rng() % 9) - 4;
  return v;
}

}  // namespace

TEST_CASE("quiver validation") {
  CHECK_THROWS_AS(Quiver(2, {{"a", 0, 2}}), Error);  // head out of range
  CHECK_THROWS_AS(Quiver(2, {{"a", -1, 0}}), Error);
  CHECK_THROWS_AS(Quiver(2, {{"a", 0, 1}, {"a", 1, 0}}), Error);  // duplicate id
  CHECK_THROWS_AS(Quiver(0, {}), Error);
  Quiver loop(1, {{"l", 0, 0}});
  CHECK(loop.has_loop_at(0));
  CHECK(kronecker().edges_between(0, 1) == 2);
  CHECK(a2tilde().edges_between(0, 2) == 1);
  CHECK(d4tilde().edges_between(1, 2) == 0);
}

TEST_CASE("double quiver structure") {
  DoubleQuiver dq(a2tilde());
  CHECK(dq.arrows().size() == 6);
  for (std::size_t k = 0; k < dq.arrows().size(); ++k) {
    const DoubleArrow& a = dq.arrow(k);
    const DoubleArrow& p = dq.arrow(a.partner);
    CHECK(p.partner == k);
    CHECK(a.eps == -p.eps);
    CHECK(a.tail == p.head);
    CHECK(a.head == p.tail);
  }
  CHECK(dq.arrow(dq.arrow_index("a0")).eps == 1);
  CHECK(dq.arrow(dq.arrow_index("a0*")).eps == -1);
  CHECK_THROWS_AS(dq.arrow_index("missing"), Error);
  // In-arrows at a vertex are sorted by id; vertex 0 receives a0* and a2.
  const auto& in0 = dq.in_arrows(0);
  REQUIRE(in0.size() == 2);
  CHECK(dq.arrow(in0[0]).id == "a0*");
  CHECK(dq.arrow(in0[1]).id == "a2");
}

TEST_CASE("coordinate matrix of the symmetric form") {
  std::vector<IntVec> c = symmetric_matrix(kronecker());
  CHECK(c[0][0] == 2);
  CHECK(c[1][1] == 2);
  CHECK(c[0][1] == -2);
  CHECK(c[1][0] == -2);
  // A loop drops the diagonal entry to zero.
  std::vector<IntVec> cl = symmetric_matrix(Quiver(1, {{"l", 0, 0}}));
  CHECK(cl[0][0] == 0);
}

TEST_CASE("Ringel form and its symmetrization") {
  std::mt19937_64 rng(5);
  for (const Quiver& q : {kronecker(), a2tilde(), d4tilde()}) {
    std::vector<IntVec> c = symmetric_matrix(q);
    std::size_t n = static_cast<std::size_t>(q.vertices());
    for (int t = 0; t < 40; ++t) {
      IntVec a = rand_vec(rng, n), b = rand_vec(rng, n);
      CHECK(symmetric_form(q, a, b) == ringel_form(q, a, b) + ringel_form(q, b, a));
      CHECK(symmetric_form(q, a, b) == symmetric_form(q, b, a));
      CHECK(2 * quadratic_form(q, a) == symmetric_form(q, a, a));
      // The matrix computes the form.
      std::int64_t via_matrix = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) via_matrix += a[i] * c[i][j] * b[j];
      CHECK(via_matrix == symmetric_form(q, a, b));
    }
  }
  // Hand values on the Kronecker quiver.
  CHECK(ringel_form(kronecker(), {1, 0}, {0, 1}) == -2);
  CHECK(ringel_form(kronecker(), {0, 1}, {1, 0}) == 0);
  CHECK(quadratic_form(kronecker(), {1, 1}) == 0);
  CHECK(quadratic_form(kronecker(), {2, 1}) == 1);
}

TEST_CASE("classification by the symmetric form") {
  Classification k = classify_quiver(kronecker());
  CHECK(k.kind == QuiverClass::ExtendedDynkin);
  CHECK(k.delta == IntVec{1, 1});
  CHECK(classify_quiver(a2tilde()).delta == IntVec{1, 1, 1});
  CHECK(classify_quiver(d4tilde()).delta == IntVec{2, 1, 1, 1, 1});
  // Orientation does not matter.
  CHECK(classify_quiver(Quiver(3, {{"x", 1, 0}, {"y", 1, 2}, {"z", 0, 2}})).kind ==
        QuiverClass::ExtendedDynkin);
  CHECK(classify_quiver(Quiver(2, {{"a", 0, 1}})).kind == QuiverClass::Dynkin);
  CHECK(classify_quiver(Quiver(2, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}})).kind ==
        QuiverClass::Other);
  // The one-loop quiver has identically vanishing form: extended Dynkin with
  // delta = (1).
  Classification jordan = classify_quiver(Quiver(1, {{"l", 0, 0}}));
  CHECK(jordan.kind == QuiverClass::ExtendedDynkin);
  CHECK(jordan.delta == IntVec{1});
  CHECK_THROWS_AS(classify_quiver(Quiver(2, {})), DisconnectedQuiver);
}

TEST_CASE("reflections of dimension vectors") {
  std::mt19937_64 rng(6);
  for (const Quiver& q : {kronecker(), a2tilde(), d4tilde()}) {
    std::size_t n = static_cast<std::size_t>(q.vertices());
    for (int i = 0; i < q.vertices(); ++i) {
      for (int t = 0; t < 25; ++t) {
        IntVec a = rand_vec(rng, n), b = rand_vec(rng, n);
        IntVec ra = reflect_dim(q, i, a);
        CHECK(reflect_dim(q, i, ra) == a);  // involution
        CHECK(symmetric_form(q, ra, reflect_dim(q, i, b)) == symmetric_form(q, a, b));
        CHECK(quadratic_form(q, ra) == quadratic_form(q, a));
      }
      IntVec e = unit_vec(n, static_cast<std::size_t>(i));
      CHECK(reflect_dim(q, i, e) == scale_vec(-1, e));
    }
  }
  CHECK_THROWS_AS(reflect_dim(Quiver(1, {{"l", 0, 0}}), 0, IntVec{1}), LoopAtVertex);
}

TEST_CASE("weight reflection duality") {
  std::mt19937_64 rng(7);
  Rationals f;
  for (const Quiver& q : {kronecker(), a2tilde(), d4tilde()}) {
    std::size_t n = static_cast<std::size_t>(q.vertices());
    for (int t = 0; t < 30; ++t) {
      Weight<Rationals> w = weight_from_ints(f, rand_vec(rng, n));
      IntVec a = rand_vec(rng, n);
      int i = static_cast<int>(rng() % n);
      // r_i(lambda) . alpha = lambda . s_i(alpha)
      CHECK(pair_weight(reflect_weight(q, i, w), a) == pair_weight(w, reflect_dim(q, i, a)));
      CHECK(weights_equal(reflect_weight(q, i, reflect_weight(q, i, w)), w));
    }
  }
}

TEST_CASE("vector helpers") {
  CHECK(add_vec({1, 2}, {3, 4}) == IntVec{4, 6});
  CHECK(sub_vec({1, 2}, {3, 4}) == IntVec{-2, -2});
  CHECK(scale_vec(3, {1, -1}) == IntVec{3, -3});
  CHECK(height(IntVec{1, 2, 3}) == 6);
  CHECK(is_positive_nonzero(IntVec{0, 1}));
  CHECK_FALSE(is_positive_nonzero(IntVec{0, 0}));
  CHECK_FALSE(is_positive_nonzero(IntVec{1, -1}));
  CHECK(leq_vec({1, 1}, {1, 2}));
  CHECK_FALSE(leq_vec({2, 0}, {1, 2}));
  CHECK(support_connected(a2tilde(), {1, 0, 1}));
  CHECK(support_connected(kronecker(), {1, 1}));
  CHECK_FALSE(support_connected(d4tilde(), {0, 1, 1, 0, 0}));
}
