#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <dpa/linalg.hpp>

#include <random>

using namespace dpa;

namespace {

template <FieldType F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = f.from_int(static_cast<std::int64_t>(rng() % 13) - 6);
  return m;
}

template <FieldType F>
void rref_properties(const F& f, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix<F> m = random_matrix(f, rng, r, c);
    RrefResult<F> rr = rref(m);
    // Pivot columns are strictly increasing and elementary.
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
      if (k > 0) CHECK(rr.pivots[k] > rr.pivots[k - 1]);
      for (std::size_t i = 0; i < r; ++i)
        CHECK(rr.r.at(i, rr.pivots[k]) == (i == k ? f.one() : f.zero()));
    }
    CHECK(rref(rr.r).r == rr.r);
    Matrix<F> kb = kernel_basis(m);
    CHECK((m * kb).is_zero());
    CHECK(rr.rank + kb.cols() == c);
    CHECK(rank(m) == rank(m.transpose()));
  }
}

}  // namespace

TEST_CASE("rref on a singular integer matrix") {
  Rationals q;
  auto m = Matrix<Rationals>::from_rows(q, {{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
  RrefResult<Rationals> rr = rref(m);
  CHECK(rr.rank == 2);
  CHECK(rr.pivots == std::vector<std::size_t>{0, 1});
  Matrix<Rationals> kb = kernel_basis(m);
  CHECK(kb.cols() == 1);
  // Kernel spanned by (1, -2, 1).
  mpq_class ratio = kb.at(0, 0);
  CHECK(kb.at(1, 0) == -2 * ratio);
  CHECK(kb.at(2, 0) == ratio);
}

TEST_CASE("rref properties over several fields") {
  rref_properties(Rationals(), 21, 80);
  rref_properties(PrimeField(5), 22, 80);
  rref_properties(PrimeField(2), 23, 80);
}

TEST_CASE("parallel rref agrees with the serial reference") {
  std::mt19937_64 rng(31);
  PrimeField f7(7);
  for (int t = 0; t < 6; ++t) {
    std::size_t r = 20 + rng() % 25, c = 20 + rng() % 25;
    Matrix<PrimeField> m = random_matrix(f7, rng, r, c);
    auto a = reference::rref(m);
    auto b = kernels::rref(m);
    CHECK(a.r == b.r);
    CHECK(a.pivots == b.pivots);
    CHECK(a.rank == b.rank);
  }
  Rationals q;
  Matrix<Rationals> m = random_matrix(q, rng, 12, 30);
  CHECK(reference::rref(m).r == kernels::rref(m).r);
}

TEST_CASE("solve_right") {
  Rationals q;
  auto m = Matrix<Rationals>::from_rows(q, {{1, 2}, {3, 4}, {4, 6}});
  // Consistent: rhs = m * (1, 1).
  auto rhs = Matrix<Rationals>::from_rows(q, {{3}, {7}, {10}});
  auto sol = solve_right(m, rhs);
  REQUIRE(sol.has_value());
  CHECK(m * *sol == rhs);
  // Inconsistent: tweak one entry.
  rhs.at(2, 0) = 11;
  CHECK_FALSE(solve_right(m, rhs).has_value());
  // Underdetermined systems still produce a particular solution.
  auto wide = Matrix<Rationals>::from_rows(q, {{1, 1, 1}});
  auto one = Matrix<Rationals>::from_rows(q, {{5}});
  auto psol = solve_right(wide, one);
  REQUIRE(psol.has_value());
  CHECK(wide * *psol == one);
}

TEST_CASE("inverse") {
  Rationals q;
  auto a = Matrix<Rationals>::from_rows(q, {{2, 3}, {5, 7}});
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK((a * *inv).is_identity());
  CHECK((*inv * a).is_identity());
  auto sing = Matrix<Rationals>::from_rows(q, {{1, 2}, {2, 4}});
  CHECK_FALSE(inverse(sing).has_value());
  CHECK_THROWS_AS(inverse(Matrix<Rationals>(q, 2, 3)), SizeMismatch);
}

TEST_CASE("cokernel projection and section") {
  std::mt19937_64 rng(41);
  for (const int fp : {0, 5}) {
    auto run = [&](const auto& f) {
      for (int t = 0; t < 30; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        auto m = random_matrix(f, rng, r, c);
        auto cd = cokernel_projection(m);
        CHECK((cd.projection * m).is_zero());
        CHECK(cd.projection.rows() == r - rank(m));
        if (cd.projection.rows() > 0) {
          CHECK((cd.projection * cd.section).is_identity());
        }
      }
    };
    if (fp == 0)
      run(Rationals());
    else
      run(PrimeField(5));
  }
}

TEST_CASE("row span insertion") {
  Rationals q;
  RowSpan<Rationals> span(q, 3);
  std::vector<mpq_class> v1{1, 2, 3}, v2{2, 4, 6}, v3{0, 1, 1};
  CHECK(span.insert(std::move(v1)));
  CHECK_FALSE(span.insert(std::move(v2)));  // dependent
  CHECK(span.insert(std::move(v3)));
  CHECK(span.size() == 2);
}
