// Compares the OpenMP kernels against the serial reference on identical
// inputs.  Exact arithmetic means the two must agree bit for bit; the bench
// asserts that while it times them.  --smoke shrinks the sizes so the run
// doubles as a cheap regression test.
#include <dpa/linalg.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace dpa;

template <FieldType F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.at(i, j) = f.from_int(static_cast<std::int64_t>(rng() % 19) - 9);
  return m;
}

template <typename Fn>
double time_once(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct Outcome {
  bool ok = true;
};

template <FieldType F>
void bench_field(const char* name, const F& f, std::size_t mult_n, std::size_t rref_r,
                 std::size_t rref_c, int reps, Outcome& out) {
  std::mt19937_64 rng(4242);
  Matrix<F> a = random_matrix(f, rng, mult_n, mult_n);
  Matrix<F> b = random_matrix(f, rng, mult_n, mult_n);
  Matrix<F> g = random_matrix(f, rng, rref_r, rref_c);

  double t_mul_ref = 0, t_mul_par = 0, t_rref_ref = 0, t_rref_par = 0;
  bool ok = true;
  for (int i = 0; i < reps; ++i) {
    Matrix<F> m_ref(f, 0, 0), m_par(f, 0, 0);
    t_mul_ref += time_once([&] { m_ref = reference::multiply(a, b); });
    t_mul_par += time_once([&] { m_par = kernels::multiply(a, b); });
    ok = ok && m_ref == m_par;

    RrefResult<F> r_ref{Matrix<F>(f, 0, 0), {}, 0}, r_par{Matrix<F>(f, 0, 0), {}, 0};
    t_rref_ref += time_once([&] { r_ref = reference::rref(g); });
    t_rref_par += time_once([&] { r_par = kernels::rref(g); });
    ok = ok && r_ref.r == r_par.r && r_ref.pivots == r_par.pivots && r_ref.rank == r_par.rank;
  }
  out.ok = out.ok && ok;
  std::printf("%-8s multiply %3zux%-3zu  serial %8.2f ms  parallel %8.2f ms  x%.2f\n", name,
              mult_n, mult_n, t_mul_ref / reps, t_mul_par / reps,
              t_mul_par > 0 ? t_mul_ref / t_mul_par : 0.0);
  std::printf("%-8s rref     %3zux%-3zu  serial %8.2f ms  parallel %8.2f ms  x%.2f\n", name,
              rref_r, rref_c, t_rref_ref / reps, t_rref_par / reps,
              t_rref_par > 0 ? t_rref_ref / t_rref_par : 0.0);
  std::printf("%-8s agreement: %s\n", name, ok ? "exact" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  Outcome out;
  if (smoke) {
    bench_field("F_9973", dpa::PrimeField(9973), 48, 48, 64, 2, out);
    bench_field("Q", dpa::Rationals(), 24, 24, 32, 2, out);
  } else {
    bench_field("F_9973", dpa::PrimeField(9973), 160, 192, 256, 3, out);
    bench_field("Q", dpa::Rationals(), 72, 72, 96, 3, out);
  }
  std::printf("overall: %s\n", out.ok ? "ok" : "MISMATCH");
  return out.ok ? 0 : 1;
}
