#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dpa/roots.hpp>

#include <algorithm>

using namespace dpa;

namespace {

Quiver kronecker() { return Quiver(2, {{"a", 0, 1}, {"b", 0, 1}}); }
Quiver a2tilde() { return Quiver(3, {{"a0", 0, 1}, {"a1", 1, 2}, {"a2", 2, 0}}); }
Quiver d4tilde() {
  return Quiver(5, {{"a1", 1, 0}, {"a2", 2, 0}, {"a3", 3, 0}, {"a4", 4, 0}});
}

bool contains(const std::vector<IntVec>& vs, const IntVec& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

// Scans the whole box and classifies by the quadratic form: on extended
// Dynkin quivers the positive roots are exactly the nonzero nonnegative
// vectors with q <= 1, split by q = 1 (real) versus q = 0 (imaginary).
void box_oracle(const Quiver& q, const IntVec& box) {
  RootEnumeration roots = enumerate_positive_roots(q, box);
  std::vector<IntVec> want_real, want_imag;
  IntVec v(box.size(), 0);
  while (true) {
    if (is_positive_nonzero(v)) {
      std::int64_t qq = quadratic_form(q, v);
      if (qq == 1) want_real.push_back(v);
      if (qq == 0 && support_connected(q, v)) want_imag.push_back(v);
    }
    std::size_t i = 0;
    while (i < v.size() && v[i] == box[i]) v[i++] = 0;
    if (i == v.size()) break;
    ++v[i];
  }
  std::sort(want_real.begin(), want_real.end());
  std::sort(want_imag.begin(), want_imag.end());
  CHECK(roots.real_roots == want_real);
  CHECK(roots.imaginary_roots == want_imag);
}

}  // namespace

TEST_CASE("box enumeration matches the quadratic-form oracle") {
  box_oracle(kronecker(), {4, 4});
  box_oracle(a2tilde(), {3, 3, 3});
  box_oracle(d4tilde(), {4, 2, 2, 2, 2});
}

TEST_CASE("imaginary roots are the multiples of delta") {
  for (const Quiver& q : {kronecker(), a2tilde(), d4tilde()}) {
    Classification cls = classify_quiver(q);
    RootEnumeration roots = enumerate_positive_roots(q, scale_vec(3, cls.delta));
    std::vector<IntVec> want;
    for (std::int64_t k = 1; k <= 3; ++k) want.push_back(scale_vec(k, cls.delta));
    std::sort(want.begin(), want.end());
    CHECK(roots.imaginary_roots == want);
  }
}

TEST_CASE("real roots are closed under in-box reflections") {
  Quiver q = a2tilde();
  IntVec box{3, 3, 3};
  RootEnumeration roots = enumerate_positive_roots(q, box);
  for (const IntVec& r : roots.real_roots)
    for (int i = 0; i < q.vertices(); ++i) {
      IntVec s = reflect_dim(q, i, r);
      if (is_positive_nonzero(s) && leq_vec(s, box)) CHECK(contains(roots.real_roots, s));
    }
}

TEST_CASE("Dynkin quivers have finitely many roots and no imaginary ones") {
  // A3 path: positive roots are the six interval vectors.
  Quiver a3(3, {{"a", 0, 1}, {"b", 1, 2}});
  RootEnumeration roots = enumerate_positive_roots(a3, {5, 5, 5});
  CHECK(roots.imaginary_roots.empty());
  std::vector<IntVec> want{{0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
  CHECK(roots.real_roots == want);
}

TEST_CASE("minimal orthogonal roots: worked answers") {
  Rationals f;
  Quiver kq = kronecker();
  IntVec kbox{10, 10};
  CHECK(sigma_lambda_re(kq, weight_from_ints(f, {0, 0}), kbox) ==
        std::vector<IntVec>{{0, 1}, {1, 0}});
  CHECK(sigma_lambda_re(kq, weight_from_ints(f, {0, 2}), kbox) ==
        std::vector<IntVec>{{1, 0}});
  CHECK(sigma_lambda_re(kq, weight_from_ints(f, {3, -3}), kbox).empty());

  Quiver aq = a2tilde();
  IntVec abox{5, 5, 5};
  CHECK(sigma_lambda_re(aq, weight_from_ints(f, {1, -1, 0}), abox) ==
        std::vector<IntVec>{{0, 0, 1}, {1, 1, 0}});
  CHECK(sigma_lambda_re(aq, weight_from_ints(f, {0, 2, 0}), abox) ==
        std::vector<IntVec>{{0, 0, 1}, {1, 0, 0}});

  Quiver dq = d4tilde();
  IntVec dbox{6, 3, 3, 3, 3};
  CHECK(sigma_lambda_re(dq, weight_from_ints(f, {0, 1, -1, 2, -2}), dbox) ==
        std::vector<IntVec>{{1, 0, 0, 0, 0}, {1, 0, 0, 1, 1}, {1, 1, 1, 0, 0}, {1, 1, 1, 1, 1}});
  CHECK(sigma_lambda_re(dq, weight_from_ints(f, {-3, 1, 2, -1, 4}), dbox) ==
        std::vector<IntVec>{{1, 0, 0, 1, 1}, {1, 1, 1, 0, 0}});
}

TEST_CASE("minimal orthogonal roots stabilize between boxes") {
  Rationals f;
  for (const Quiver& q : {kronecker(), a2tilde(), d4tilde()}) {
    IntVec delta = classify_quiver(q).delta;
    std::vector<IntVec> weights;
    if (q.vertices() == 2) weights = {{0, 0}, {0, 2}, {3, -3}};
    if (q.vertices() == 3) weights = {{0, 0, 0}, {1, -1, 0}, {1, 2, -3}};
    if (q.vertices() == 5) weights = {{0, 0, 0, 0, 0}, {0, 1, -1, 2, -2}};
    for (const IntVec& wv : weights) {
      Weight<Rationals> w = weight_from_ints(f, wv);
      auto small = sigma_lambda_re(q, w, scale_vec(3, delta));
      auto large = sigma_lambda_re(q, w, scale_vec(10, delta));
      CHECK(small == large);
      // When lambda pairs to zero with delta, every member sits below delta.
      if (f.is_zero(pair_weight(w, delta)))
        for (const IntVec& m : small) {
          CHECK(leq_vec(m, delta));
          CHECK(m != delta);
        }
    }
  }
}

TEST_CASE("zero weight gives the loop-free coordinate vectors") {
  Rationals f;
  for (const Quiver& q : {kronecker(), a2tilde(), d4tilde()}) {
    std::size_t n = static_cast<std::size_t>(q.vertices());
    auto got = sigma_lambda_re(q, weight_from_ints(f, IntVec(n, 0)),
                               scale_vec(3, classify_quiver(q).delta));
    std::vector<IntVec> want;
    for (std::size_t i = 0; i < n; ++i) want.push_back(unit_vec(n, i));
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("fundamental region membership") {
  Quiver q = kronecker();
  CHECK(in_fundamental_region(q, {1, 1}));
  CHECK_FALSE(in_fundamental_region(q, {2, 1}));   // (alpha, e_0) = 2 > 0
  CHECK_FALSE(in_fundamental_region(q, {1, 0}));   // (alpha, e_0) = 2 > 0
  CHECK(in_fundamental_region(a2tilde(), {1, 1, 1}));
  CHECK_FALSE(in_fundamental_region(d4tilde(), {1, 1, 0, 0, 0}));
}
