#include "dpa/selftest.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dpa/corpus.hpp"
#include "dpa/coxeter.hpp"

namespace dpa::selftest {

namespace {

struct Ctx {
  Options opt;
  std::map<std::pair<std::string, std::size_t>, std::vector<Representation<Rationals>>> cache;
};

std::vector<const Fixture*> picked(const Options& o) {
  std::vector<const Fixture*> out;
  for (const Fixture& f : fixtures())
    if (o.only_quiver.empty() || o.only_quiver == f.name) out.push_back(&f);
  if (out.empty()) throw ParseError("no fixture named '" + o.only_quiver + "'");
  return out;
}

const std::vector<Representation<Rationals>>& corpus_of(Ctx& c, const Fixture& fx,
                                                        std::size_t wi) {
  auto key = std::make_pair(fx.name, wi);
  auto it = c.cache.find(key);
  if (it != c.cache.end()) return it->second;
  Rationals f;
  CorpusConfig cfg;
  cfg.seed = c.opt.seed;
  auto corp = generate_corpus(DoubleQuiver(fx.q), weight_from_ints(f, fx.weights[wi]), cfg);
  return c.cache.emplace(std::move(key), std::move(corp)).first->second;
}

bool weight_pairs_delta_zero(const Fixture& fx, const IntVec& w) {
  Classification cls = classify_quiver(fx.q);
  if (cls.kind != QuiverClass::ExtendedDynkin) return false;
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * cls.delta[i];
  return dot == 0;
}

void fail(Check& ck, const std::string& why) {
  ck.passed = false;
  if (ck.detail.size() < 400) ck.detail += (ck.detail.empty() ? "" : "; ") + why;
}

// ---------------------------------------------------------------------------
// linalg

template <FieldType F>
Matrix<F> random_matrix(const F& f, std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if constexpr (std::is_same_v<F, Rationals>) {
        std::int64_t num = static_cast<std::int64_t>(rng() % 19) - 9;
        std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 4);
        m.at(i, j) = mpq_class(static_cast<long>(num), static_cast<long>(den));
        m.at(i, j).canonicalize();
      } else {
        m.at(i, j) = f.from_int(static_cast<std::int64_t>(rng() % f.modulus()));
      }
    }
  return m;
}

template <FieldType F>
void rref_trial(const F& f, std::mt19937_64& rng, Check& ck) {
  std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
  Matrix<F> m = random_matrix(f, rng, r, c);
  RrefResult<F> rr = rref(m);
  ++ck.instances;
  for (std::size_t k = 1; k < rr.pivots.size(); ++k)
    if (rr.pivots[k] <= rr.pivots[k - 1]) fail(ck, "pivots not increasing");
  for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      const auto want = i == k ? f.one() : f.zero();
      if (rr.r.at(i, rr.pivots[k]) != want) fail(ck, "pivot column not elementary");
    }
  }
  RrefResult<F> again = rref(rr.r);
  if (again.r != rr.r || again.rank != rr.rank) fail(ck, "rref not idempotent");
  Matrix<F> kb = kernel_basis(m);
  if (!(m * kb).is_zero()) fail(ck, "kernel not annihilated");
  if (rr.rank + kb.cols() != c) fail(ck, "rank-nullity broken");
  // Consistent system: solve m x = m y.
  Matrix<F> y = random_matrix(f, rng, c, 1);
  auto sol = solve_right(m, m * y);
  if (!sol || m * *sol != m * y) fail(ck, "solve_right failed on consistent system");
  // Square case: inverse round-trip when regular.
  Matrix<F> sq = random_matrix(f, rng, r, r);
  if (rank(sq) == r) {
    auto inv = inverse(sq);
    if (!inv || sq * *inv != Matrix<F>::identity(f, r)) fail(ck, "inverse round-trip failed");
  }
  // Cokernel data: c m = 0, c s = id, gamma-free exactness dimensions.
  CokernelData<F> cd = cokernel_projection(m);
  if (!(cd.projection * m).is_zero()) fail(ck, "cokernel projection does not kill the image");
  if (cd.projection * cd.section != Matrix<F>::identity(f, cd.projection.rows()))
    fail(ck, "cokernel section is not a section");
  if (cd.projection.rows() != r - rr.rank) fail(ck, "cokernel dimension wrong");
}

Check check_linalg_random(Ctx& c) {
  Check ck{"rref, kernels, solves and cokernels on random matrices", 0, true, ""};
  std::mt19937_64 rng(c.opt.seed);
  Rationals q;
  PrimeField f5(5), f2(2);
  for (int t = 0; t < 60; ++t) rref_trial(q, rng, ck);
  for (int t = 0; t < 60; ++t) rref_trial(f5, rng, ck);
  for (int t = 0; t < 40; ++t) rref_trial(f2, rng, ck);
  return ck;
}

Check check_linalg_parallel_agreement(Ctx& c) {
  Check ck{"parallel kernels agree with the serial reference", 0, true, ""};
  std::mt19937_64 rng(c.opt.seed + 1);
  PrimeField f7(7);
  Rationals q;
  for (int t = 0; t < 8; ++t) {
    std::size_t n = 20 + rng() % 30, k = 20 + rng() % 30, m2 = 20 + rng() % 30;
    Matrix<PrimeField> a = random_matrix(f7, rng, n, k), b = random_matrix(f7, rng, k, m2);
    ++ck.instances;
    if (reference::multiply(a, b) != kernels::multiply(a, b)) fail(ck, "multiply mismatch");
    Matrix<PrimeField> g = random_matrix(f7, rng, n, k);
    RrefResult<PrimeField> s = reference::rref(g), p = kernels::rref(g);
    ++ck.instances;
    if (s.r != p.r || s.pivots != p.pivots) fail(ck, "rref mismatch");
  }
  for (int t = 0; t < 3; ++t) {
    Matrix<Rationals> a = random_matrix(q, rng, 12, 40), b = random_matrix(q, rng, 40, 13);
    ++ck.instances;
    if (reference::multiply(a, b) != kernels::multiply(a, b)) fail(ck, "rational multiply mismatch");
    RrefResult<Rationals> s = reference::rref(a), p = kernels::rref(a);
    ++ck.instances;
    if (s.r != p.r || s.pivots != p.pivots) fail(ck, "rational rref mismatch");
  }
  return ck;
}

// ---------------------------------------------------------------------------
// forms

Check check_form_identities(Ctx& c) {
  Check ck{"Ringel form, symmetrization and the coordinate matrix", 0, true, ""};
  std::mt19937_64 rng(c.opt.seed + 2);
  for (const Fixture* fx : picked(c.opt)) {
    const Quiver& q = fx->q;
    const int n = q.vertices();
    std::vector<IntVec> cm = symmetric_matrix(q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ++ck.instances;
        std::int64_t expect = i == j ? 2 - 2 * q.loops_at(i) : -q.edges_between(i, j);
        if (cm[i][j] != expect) fail(ck, "coordinate matrix entry wrong");
        if (symmetric_form(q, unit_vec(n, i), unit_vec(n, j)) != cm[i][j])
          fail(ck, "matrix does not represent the form");
      }
    for (int t = 0; t < 40; ++t) {
      IntVec a(n), b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = static_cast<std::int64_t>(rng() % 9) - 4;
        b[i] = static_cast<std::int64_t>(rng() % 9) - 4;
      }
      ++ck.instances;
      std::int64_t direct = 0;
      for (int i = 0; i < n; ++i) direct += a[i] * b[i];
      for (const Arrow& ar : q.arrows()) direct -= a[ar.tail] * b[ar.head];
      if (ringel_form(q, a, b) != direct) fail(ck, "Ringel form mismatch");
      if (symmetric_form(q, a, b) != ringel_form(q, a, b) + ringel_form(q, b, a))
        fail(ck, "symmetrization mismatch");
      if (2 * quadratic_form(q, a) != symmetric_form(q, a, a))
        fail(ck, "quadratic form mismatch");
      if (symmetric_form(q, a, b) != symmetric_form(q, b, a)) fail(ck, "form not symmetric");
    }
  }
  return ck;
}

Check check_reflection_duality(Ctx& c) {
  Check ck{"reflections are involutive isometries dual to the weight action", 0, true, ""};
  std::mt19937_64 rng(c.opt.seed + 3);
  Rationals qf;
  PrimeField f7(7);
  for (const Fixture* fx : picked(c.opt)) {
    const Quiver& q = fx->q;
    const int n = q.vertices();
    for (int t = 0; t < 30; ++t) {
      IntVec a(n), b(n), wv(n);
      for (int i = 0; i < n; ++i) {
        a[i] = static_cast<std::int64_t>(rng() % 9) - 4;
        b[i] = static_cast<std::int64_t>(rng() % 9) - 4;
        wv[i] = static_cast<std::int64_t>(rng() % 11) - 5;
      }
      for (int i = 0; i < n; ++i) {
        if (q.has_loop_at(i)) continue;
        ++ck.instances;
        if (reflect_dim(q, i, reflect_dim(q, i, a)) != a) fail(ck, "s_i not involutive");
        if (symmetric_form(q, reflect_dim(q, i, a), reflect_dim(q, i, b)) !=
            symmetric_form(q, a, b))
          fail(ck, "s_i not an isometry");
        if (quadratic_form(q, reflect_dim(q, i, a)) != quadratic_form(q, a))
          fail(ck, "q not reflection invariant");
        auto wq = weight_from_ints(qf, wv);
        auto wp = weight_from_ints(f7, wv);
        if (reflect_weight(q, i, reflect_weight(q, i, wq)).coords != wq.coords)
          fail(ck, "r_i not involutive");
        // Duality: (r_i w) . a = w . (s_i a), over both fields.
        if (pair_weight(reflect_weight(q, i, wq), a) != pair_weight(wq, reflect_dim(q, i, a)))
          fail(ck, "duality fails over Q");
        if (pair_weight(reflect_weight(q, i, wp), a) != pair_weight(wp, reflect_dim(q, i, a)))
          fail(ck, "duality fails over F7");
      }
    }
  }
  return ck;
}

// ---------------------------------------------------------------------------
// roots

Check check_root_enumeration(Ctx& c) {
  Check ck{"box enumeration matches the quadratic-form characterization", 0, true, ""};
  for (const Fixture* fx : picked(c.opt)) {
    const Quiver& q = fx->q;
    Classification cls = classify_quiver(q);
    if (cls.kind != QuiverClass::ExtendedDynkin) continue;
    IntVec bound = scale_vec(3, cls.delta);
    RootEnumeration en = enumerate_positive_roots(q, bound);
    std::set<IntVec> real(en.real_roots.begin(), en.real_roots.end());
    std::set<IntVec> imag(en.imaginary_roots.begin(), en.imaginary_roots.end());
    // For an affine quiver the positive roots are exactly the nonzero
    // nonnegative vectors with q <= 1; q = 1 real, q = 0 imaginary.
    IntVec v(bound.size(), 0);
    std::size_t scanned = 0;
    while (true) {
      if (is_positive_nonzero(v)) {
        ++scanned;
        std::int64_t qv = quadratic_form(q, v);
        bool expect_real = qv == 1;
        bool expect_imag = qv <= 0;
        if (expect_real != (real.count(v) > 0)) fail(ck, "real root set wrong at " + vec_to_string(v));
        if (expect_imag != (imag.count(v) > 0))
          fail(ck, "imaginary root set wrong at " + vec_to_string(v));
        if (expect_imag && qv != 0) fail(ck, "affine imaginary root with q < 0");
      }
      std::size_t at = 0;
      while (at < v.size() && ++v[at] > bound[at]) v[at++] = 0;
      if (at == v.size()) break;
    }
    ck.instances += scanned;
    for (const IntVec& r : en.real_roots) {
      ++ck.instances;
      if (!support_connected(q, r)) fail(ck, "real root with disconnected support");
    }
    for (const IntVec& r : en.imaginary_roots) {
      ++ck.instances;
      bool multiple = false;
      for (std::int64_t k = 1; k * height(cls.delta) <= height(r) + 1; ++k)
        if (scale_vec(k, cls.delta) == r) multiple = true;
      if (!multiple) fail(ck, "imaginary root is not a multiple of delta");
    }
    // Reflection closure inside the box.
    for (const IntVec& r : en.real_roots)
      for (int i = 0; i < q.vertices(); ++i) {
        if (q.has_loop_at(i)) continue;
        IntVec s = reflect_dim(q, i, r);
        if (is_positive_nonzero(s) && leq_vec(s, bound)) {
          ++ck.instances;
          if (real.count(s) == 0) fail(ck, "real roots not closed under reflection");
        }
      }
  }
  return ck;
}

Check check_sigma(Ctx& c) {
  Check ck{"minimal orthogonal roots: stabilization, bound, worked examples", 0, true, ""};
  Rationals qf;
  for (const Fixture* fx : picked(c.opt)) {
    Classification cls = classify_quiver(fx->q);
    if (cls.kind != QuiverClass::ExtendedDynkin) continue;
    for (const IntVec& wv : fx->weights) {
      if (!weight_pairs_delta_zero(*fx, wv)) continue;
      auto w = weight_from_ints(qf, wv);
      auto small = sigma_lambda_re(fx->q, w, scale_vec(3, cls.delta));
      auto large = sigma_lambda_re(fx->q, w, scale_vec(10, cls.delta));
      ++ck.instances;
      if (small != large) fail(ck, fx->name + " sigma not stable between 3delta and 10delta");
      for (const IntVec& a : small) {
        ++ck.instances;
        if (!(leq_vec(a, cls.delta) && a != cls.delta))
          fail(ck, fx->name + " sigma member not below delta");
      }
    }
  }
  // Worked examples, fixed answers.
  auto expect = [&](const Quiver& q, const IntVec& wv, std::vector<IntVec> want) {
    Classification cls = classify_quiver(q);
    auto got = sigma_lambda_re(q, weight_from_ints(qf, wv), scale_vec(3, cls.delta));
    std::sort(want.begin(), want.end());
    ++ck.instances;
    if (got != want) fail(ck, "sigma answer wrong for weight " + vec_to_string(wv));
  };
  if (c.opt.only_quiver.empty() || c.opt.only_quiver == "kronecker") {
    const Quiver& kq = fixture_by_name("kronecker").q;
    expect(kq, {0, 0}, {{1, 0}, {0, 1}});
    expect(kq, {0, 2}, {{1, 0}});
    expect(kq, {3, -3}, {});
  }
  if (c.opt.only_quiver.empty() || c.opt.only_quiver == "a2tilde") {
    const Quiver& aq = fixture_by_name("a2tilde").q;
    expect(aq, {1, -1, 0}, {{0, 0, 1}, {1, 1, 0}});
    expect(aq, {0, 2, 0}, {{1, 0, 0}, {0, 0, 1}});
  }
  if (c.opt.only_quiver.empty() || c.opt.only_quiver == "d4tilde") {
    const Quiver& dq = fixture_by_name("d4tilde").q;
    expect(dq, {0, 1, -1, 2, -2},
           {{1, 0, 0, 0, 0}, {1, 1, 1, 0, 0}, {1, 0, 0, 1, 1}, {1, 1, 1, 1, 1}});
    expect(dq, {-3, 1, 2, -1, 4}, {{1, 1, 1, 0, 0}, {1, 0, 0, 1, 1}});
  }
  return ck;
}

// ---------------------------------------------------------------------------
// ext

Check check_corpus_relations(Ctx& c) {
  Check ck{"every corpus representation satisfies the relations exactly", 0, true, ""};
  for (const Fixture* fx : picked(c.opt))
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi)
      for (const auto& m : corpus_of(c, *fx, wi)) {
        ++ck.instances;
        for (const auto& res : check_relations(m))
          if (!res.is_zero()) fail(ck, fx->name + " corpus member fails relations");
      }
  return ck;
}

Check check_ext_formula(Ctx& c) {
  Check ck{"Ext dimensions: complex ranks, Euler pairing, dimension formula", 0, true, ""};
  for (const Fixture* fx : picked(c.opt)) {
    bool dynkin = classify_quiver(fx->q).kind == QuiverClass::Dynkin;
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi) {
      const auto& corpus = corpus_of(c, *fx, wi);
      std::size_t done = 0;
      for (std::size_t a = 0; a < corpus.size() && done < 12; ++a)
        for (std::size_t b = 0; b < corpus.size() && done < 12; ++b) {
          const auto& m = corpus[a];
          const auto& n = corpus[(a + b) % corpus.size()];
          ++ck.instances;
          ++done;
          ExtComplex<Rationals> e = ext_complex(m, n);
          if (e.h0 != hom_dim(m, n)) fail(ck, "h0 is not Hom");
          if (e.h2 != hom_dim(n, m)) fail(ck, "h2 is not the reverse Hom");
          if (e.euler != e.c0 - e.c1 + e.c2) fail(ck, "euler bookkeeping");
          if (e.euler != symmetric_form(fx->q, m.dims, n.dims))
            fail(ck, "Euler characteristic differs from the pairing");
          if (e.h0 - e.h1 + e.h2 != e.euler) fail(ck, "alternating cohomology sum");
          if (!dynkin && ext1_dim_formula(m, n) != e.h1)
            fail(ck, "dimension formula disagrees with the complex");
          if (static_cast<std::int64_t>(e.cocycle_basis.size()) != e.h1)
            fail(ck, "cocycle basis size");
        }
    }
  }
  return ck;
}

Check check_ext_symmetry(Ctx& c) {
  Check ck{"Ext^1 symmetry between swapped arguments", 0, true, ""};
  for (const Fixture* fx : picked(c.opt))
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi) {
      const auto& corpus = corpus_of(c, *fx, wi);
      for (std::size_t a = 0; a < corpus.size() && a < 6; ++a)
        for (std::size_t b = a; b < corpus.size() && b < 6; ++b) {
          ++ck.instances;
          if (ext_complex(corpus[a], corpus[b]).h1 != ext_complex(corpus[b], corpus[a]).h1)
            fail(ck, "Ext^1 not symmetric");
        }
    }
  return ck;
}

// ---------------------------------------------------------------------------
// reflect

Check check_functor_dims(Ctx& c) {
  Check ck{"cokernel functor reflects dimension vectors at nonzero weights", 0, true, ""};
  Rationals qf;
  for (const Fixture* fx : picked(c.opt))
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi) {
      auto w = weight_from_ints(qf, fx->weights[wi]);
      for (const auto& m : corpus_of(c, *fx, wi))
        for (int i = 0; i < fx->q.vertices(); ++i) {
          if (fx->q.has_loop_at(i) || qf.is_zero(w.coords[i])) continue;
          ++ck.instances;
          auto img = cokernel_functor_obj(m, i).image;
          if (img.dims != reflect_dim(fx->q, i, m.dims))
            fail(ck, "dimension vector not reflected");
          if (!weights_equal(img.lambda, reflect_weight(fx->q, i, m.lambda)))
            fail(ck, "weight not reflected");
        }
    }
  return ck;
}

Check check_adjunction(Ctx& c) {
  Check ck{"cokernel-kernel adjunction with its explicit bijection", 0, true, ""};
  for (const Fixture* fx : picked(c.opt))
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi) {
      const auto& corpus = corpus_of(c, *fx, wi);
      for (int i = 0; i < fx->q.vertices(); ++i) {
        if (fx->q.has_loop_at(i)) continue;
        for (std::size_t a = 0; a < corpus.size() && a < 2; ++a)
          for (std::size_t b = 0; b < corpus.size() && b < 2; ++b) {
            ++ck.instances;
            auto w = cokernel_functor_obj(corpus[b], i).image;
            auto rep = verify_adjunction(corpus[a], w, i);
            if (!rep.ok) fail(ck, fx->name + " adjunction failed at vertex " + std::to_string(i));
          }
      }
    }
  return ck;
}

Check check_roundtrip(Ctx& c) {
  Check ck{"equivalence round-trip and cokernel/kernel agreement", 0, true, ""};
  Rationals qf;
  for (const Fixture* fx : picked(c.opt))
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi) {
      auto w = weight_from_ints(qf, fx->weights[wi]);
      for (const auto& m : corpus_of(c, *fx, wi))
        for (int i = 0; i < fx->q.vertices(); ++i) {
          if (fx->q.has_loop_at(i) || qf.is_zero(w.coords[i])) continue;
          ++ck.instances;
          auto rep = verify_equivalence_roundtrip(m, i, c.opt.seed + ck.instances);
          if (!rep.ok) fail(ck, fx->name + " round-trip failed at vertex " + std::to_string(i));
        }
    }
  return ck;
}

Check check_construct(Ctx& c) {
  Check ck{"rigid simple construction reaches every minimal orthogonal root", 0, true, ""};
  Rationals qf;
  for (const Fixture* fx : picked(c.opt)) {
    Classification cls = classify_quiver(fx->q);
    if (cls.kind != QuiverClass::ExtendedDynkin) continue;
    DoubleQuiver dq(fx->q);
    for (const IntVec& wv : fx->weights) {
      auto w = weight_from_ints(qf, wv);
      for (const IntVec& alpha : sigma_lambda_re(fx->q, w, scale_vec(3, cls.delta))) {
        ++ck.instances;
        ConstructResult<Rationals> r = construct_rigid_simple(dq, w, alpha);
        if (r.status != ConstructStatus::Reached) {
          fail(ck, fx->name + " did not reach " + vec_to_string(alpha));
          continue;
        }
        if (r.rep->dims != alpha) fail(ck, "built module has wrong dimension vector");
        auto chk = is_rigid_simple_candidate(*r.rep);
        if (!chk.candidate) fail(ck, "built module is not rigid with scalar endomorphisms");
      }
    }
  }
  return ck;
}

// ---------------------------------------------------------------------------
// braid

Check check_braid(Ctx& c) {
  Check ck{"commutation and braid isomorphisms of functor composites", 0, true, ""};
  std::size_t reps_used = 0;
  std::set<std::string> weights_used;
  for (const Fixture* fx : picked(c.opt)) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < fx->q.vertices(); ++i)
      for (int j = i + 1; j < fx->q.vertices(); ++j)
        if (!fx->q.has_loop_at(i) && !fx->q.has_loop_at(j) && fx->q.edges_between(i, j) <= 1)
          pairs.emplace_back(i, j);
    if (pairs.empty()) continue;
    for (std::size_t wi = 0; wi < fx->weights.size(); ++wi) {
      const auto& corpus = corpus_of(c, *fx, wi);
      weights_used.insert(fx->name + vec_to_string(fx->weights[wi]));
      for (std::size_t k = 0; k < corpus.size() && k < 4; ++k) {
        ++reps_used;
        for (auto [i, j] : pairs) {
          ++ck.instances;
          auto rep = verify_braid_relation(corpus[k], i, j, c.opt.seed + ck.instances);
          if (!rep.applicable) fail(ck, "pair unexpectedly inapplicable");
          else if (!rep.ok)
            fail(ck, fx->name + " braid failed at (" + std::to_string(i) + "," +
                         std::to_string(j) + ") dims " + vec_to_string(corpus[k].dims));
        }
      }
    }
  }
  ck.detail = "reps=" + std::to_string(reps_used) +
              " weights=" + std::to_string(weights_used.size()) + (ck.detail.empty() ? "" : "; ") +
              ck.detail;
  return ck;
}

// ---------------------------------------------------------------------------
// serre

// All representations supported on the arrow pair between a2tilde vertices 0
// and 1 with both composites zero: the exhaustive dimension <= 4 slice.
std::vector<Representation<PrimeField>> exhaustive_slice_f2() {
  PrimeField f2(2);
  const Fixture& fx = fixture_by_name("a2tilde");
  DoubleQuiver dq(fx.q);
  auto lam = weight_from_ints(f2, {0, 0, 0});
  std::size_t a_idx = dq.arrow_index("a0");
  std::size_t as_idx = dq.arrow_index("a0*");
  std::vector<Representation<PrimeField>> out;
  for (std::int64_t d0 = 0; d0 <= 4; ++d0)
    for (std::int64_t d1 = 0; d1 <= 4 - d0; ++d1) {
      if (d0 + d1 == 0) continue;
      std::size_t bits_a = static_cast<std::size_t>(d0 * d1);
      for (std::uint64_t ca = 0; ca < (1ull << bits_a); ++ca)
        for (std::uint64_t cb = 0; cb < (1ull << bits_a); ++cb) {
          Matrix<PrimeField> ma(f2, static_cast<std::size_t>(d1), static_cast<std::size_t>(d0));
          Matrix<PrimeField> mb(f2, static_cast<std::size_t>(d0), static_cast<std::size_t>(d1));
          for (std::size_t t = 0; t < bits_a; ++t) {
            if (ca >> t & 1) ma.at(t / ma.cols(), t % ma.cols()) = 1;
            if (cb >> t & 1) mb.at(t / mb.cols(), t % mb.cols()) = 1;
          }
          if (!(ma * mb).is_zero() || !(mb * ma).is_zero()) continue;
          IntVec dims{d0, d1, 0};
          std::vector<Matrix<PrimeField>> maps;
          for (std::size_t k = 0; k < dq.arrows().size(); ++k) {
            const DoubleArrow& ar = dq.arrow(k);
            if (k == a_idx) maps.push_back(ma);
            else if (k == as_idx) maps.push_back(mb);
            else
              maps.push_back(Matrix<PrimeField>(f2, static_cast<std::size_t>(dims[ar.head]),
                                                static_cast<std::size_t>(dims[ar.tail])));
          }
          Representation<PrimeField> r =
              make_representation(dq, lam, dims, std::move(maps));
          if (relations_hold(r)) out.push_back(std::move(r));
        }
    }
  return out;
}

Check check_serre_oracle(Ctx& c) {
  Check ck{"greedy chain membership equals brute-force submodule search", 0, true, ""};
  if (!c.opt.only_quiver.empty() && c.opt.only_quiver != "a2tilde" &&
      c.opt.only_quiver != "d4tilde") {
    ck.detail = "needs the a2tilde/d4tilde fixtures";
    return ck;
  }
  PrimeField f2(2);
  std::vector<std::vector<int>> chains{{},       {0},       {1},       {0, 0},    {1, 1},
                                       {0, 1},   {1, 0},    {0, 1, 0}, {1, 0, 1}, {0, 0, 1},
                                       {1, 1, 0}, {0, 1, 1}, {1, 0, 0}};
  auto run_pair = [&](const SimpleFamily<PrimeField>& fam,
                      const std::vector<Representation<PrimeField>>& modules) {
    for (const auto& m : modules)
      for (const auto& chain : chains) {
        ++ck.instances;
        bool g = chain_member(m, fam, chain);
        bool b = chain_member_bruteforce(m, fam, chain, c.opt.seed);
        if (g != b) fail(ck, "oracle disagreement on dims " + vec_to_string(m.dims));
      }
  };
  if (c.opt.only_quiver.empty() || c.opt.only_quiver == "a2tilde") {
    const Fixture& fx = fixture_by_name("a2tilde");
    DoubleQuiver dq(fx.q);
    auto lam = weight_from_ints(f2, {0, 0, 0});
    auto fam = make_simple_family<PrimeField>(
        {"S", "T"}, {simple_rep(dq, lam, 0), simple_rep(dq, lam, 1)}, c.opt.seed);
    run_pair(fam, exhaustive_slice_f2());
    CorpusConfig cfg;
    cfg.seed = c.opt.seed;
    cfg.target_size = 10;
    auto mixed = generate_corpus(dq, lam, cfg);
    run_pair(fam, mixed);
    auto star = verify_star_relations(fam, 4, c.opt.seed);
    ++ck.instances;
    if (!star.ok || !star.braid_applicable) fail(ck, "star relations failed (braid family)");
  }
  if (c.opt.only_quiver.empty() || c.opt.only_quiver == "d4tilde") {
    const Fixture& fx = fixture_by_name("d4tilde");
    DoubleQuiver dq(fx.q);
    auto lam = weight_from_ints(f2, {0, 0, 0, 0, 0});
    auto fam = make_simple_family<PrimeField>(
        {"S", "T"}, {simple_rep(dq, lam, 1), simple_rep(dq, lam, 2)}, c.opt.seed);
    CorpusConfig cfg;
    cfg.seed = c.opt.seed;
    cfg.target_size = 8;
    cfg.max_total_dim = 4;
    auto corpus = generate_corpus(dq, lam, cfg);
    run_pair(fam, corpus);
    auto star = verify_star_relations(fam, 4, c.opt.seed);
    ++ck.instances;
    if (!star.ok || !star.swap_applicable) fail(ck, "star relations failed (commuting family)");
  }
  return ck;
}

// ---------------------------------------------------------------------------
// coxeter

ExtQuiverData rank2_extquiver(int m) {
  ExtQuiverData eq;
  eq.labels = {"s", "t"};
  eq.m = {{0, m}, {m, 0}};
  return eq;
}

ExtQuiverData fixture_zero_extquiver(const std::string& name) {
  PrimeField f2(2);
  const Fixture& fx = fixture_by_name(name);
  DoubleQuiver dq(fx.q);
  auto lam = weight_from_ints(f2, IntVec(static_cast<std::size_t>(fx.q.vertices()), 0));
  std::vector<std::string> labels;
  std::vector<Representation<PrimeField>> members;
  for (int i = 0; i < fx.q.vertices(); ++i) {
    labels.push_back("S" + std::to_string(i));
    members.push_back(simple_rep(dq, lam, i));
  }
  return build_ext_quiver(make_simple_family<PrimeField>(labels, members));
}

Check check_ext_quiver(Ctx& c) {
  Check ck{"Ext-quiver structure, components and the pulled-back form", 0, true, ""};
  std::mt19937_64 rng(c.opt.seed + 4);
  Rationals qf;
  for (const Fixture* fx : picked(c.opt)) {
    Classification cls = classify_quiver(fx->q);
    if (cls.kind != QuiverClass::ExtendedDynkin) continue;
    DoubleQuiver dq(fx->q);
    for (const IntVec& wv : fx->weights) {
      if (!weight_pairs_delta_zero(*fx, wv)) continue;
      auto w = weight_from_ints(qf, wv);
      auto sigma = sigma_lambda_re(fx->q, w, scale_vec(3, cls.delta));
      if (sigma.empty()) continue;
      std::vector<std::string> labels;
      std::vector<Representation<Rationals>> members;
      for (const IntVec& alpha : sigma) {
        ConstructResult<Rationals> r = construct_rigid_simple(dq, w, alpha);
        if (r.status != ConstructStatus::Reached) {
          fail(ck, "family member unreachable");
          continue;
        }
        labels.push_back("R" + std::to_string(labels.size()));
        members.push_back(std::move(*r.rep));
      }
      SimpleFamily<Rationals> fam = make_simple_family(labels, members, c.opt.seed);
      ExtQuiverData eq = build_ext_quiver(fam);
      bool zero_weight = is_zero_vec(wv);
      if (zero_weight) {
        // At weight zero the family is the coordinate simples and the
        // Ext-quiver is the doubled quiver itself; map family indices to
        // vertices through the root labels.
        auto vertex_of = [&](std::size_t s) {
          for (std::size_t v = 0; v < eq.roots[s].size(); ++v)
            if (eq.roots[s][v] == 1) return static_cast<int>(v);
          return -1;
        };
        for (std::size_t i = 0; i < eq.rank(); ++i)
          for (std::size_t j = i + 1; j < eq.rank(); ++j) {
            ++ck.instances;
            if (eq.m[i][j] != fx->q.edges_between(vertex_of(i), vertex_of(j)))
              fail(ck, "zero-weight Ext-quiver differs from the doubled quiver");
          }
      }
      for (const GammaComponent& gc : decompose_gamma(eq)) {
        ++ck.instances;
        if (gc.cls.kind != QuiverClass::ExtendedDynkin)
          fail(ck, fx->name + " component not extended Dynkin");
      }
      DeltaDecomposition dd = delta_decomposition(eq, fx->q);
      ++ck.instances;
      if (!dd.ok) fail(ck, fx->name + " delta recombination failed");
      Quiver gamma = gamma_quiver(eq);
      for (int t = 0; t < 100; ++t) {
        IntVec d(eq.rank());
        for (std::size_t s = 0; s < eq.rank(); ++s)
          d[s] = static_cast<std::int64_t>(rng() % 5);
        IntVec pushed(static_cast<std::size_t>(fx->q.vertices()), 0);
        for (std::size_t s = 0; s < eq.rank(); ++s)
          pushed = add_vec(pushed, scale_vec(d[s], eq.roots[s]));
        ++ck.instances;
        if (quadratic_form(gamma, d) != quadratic_form(fx->q, pushed))
          fail(ck, "pulled-back quadratic form mismatch");
      }
    }
  }
  return ck;
}

std::vector<int> random_word(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
  std::vector<int> w(len);
  for (auto& s : w) s = static_cast<int>(rng() % rank);
  return w;
}

// One commutation or braid rewrite at a random applicable position; false if
// none applies.
bool random_move(std::mt19937_64& rng, const ClassLattice& lat, std::vector<int>& w) {
  std::vector<std::pair<std::size_t, int>> spots;  // position, kind 0=swap 1=braid
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    int s = w[k], t = w[k + 1];
    if (s != t && lat.b[s][t] == 0) spots.emplace_back(k, 0);
  }
  for (std::size_t k = 0; k + 2 < w.size(); ++k) {
    int s = w[k], t = w[k + 1];
    if (s != t && w[k + 2] == s && lat.b[s][t] == -1) spots.emplace_back(k, 1);
  }
  if (spots.empty()) return false;
  auto [k, kind] = spots[rng() % spots.size()];
  if (kind == 0) {
    std::swap(w[k], w[k + 1]);
  } else {
    int s = w[k], t = w[k + 1];
    w[k] = t;
    w[k + 1] = s;
    w[k + 2] = t;
  }
  return true;
}

Check check_coxeter_moves(Ctx& c) {
  Check ck{"braid and commutation moves preserve canonical elements", 0, true, ""};
  std::mt19937_64 rng(c.opt.seed + 5);
  std::vector<std::shared_ptr<const ClassLattice>> lats;
  lats.push_back(std::make_shared<ClassLattice>(class_lattice(rank2_extquiver(1))));
  lats.push_back(std::make_shared<ClassLattice>(class_lattice(fixture_zero_extquiver("a2tilde"))));
  lats.push_back(std::make_shared<ClassLattice>(class_lattice(fixture_zero_extquiver("d4tilde"))));
  std::size_t sequences = 0;
  std::size_t attempts = 0;
  while (sequences < 1000 && attempts < 100000) {
    for (const auto& lat : lats) {
      if (sequences >= 1000) break;
      ++attempts;
      std::vector<int> w = random_word(rng, lat->rank, 2 + rng() % 9);
      CoxeterElement base = element_from_word(lat, w);
      bool moved = false;
      for (int t = 0; t < 12; ++t)
        if (random_move(rng, *lat, w)) moved = true;
      if (!moved) continue;
      ++sequences;
      ++ck.instances;
      CoxeterElement after = element_from_word(lat, w);
      if (!base.same(after)) fail(ck, "moved word changed the element");
    }
  }
  if (sequences < 1000) fail(ck, "could not assemble enough move sequences");
  ck.detail = "sequences=" + std::to_string(sequences) + (ck.detail.empty() ? "" : "; ") + ck.detail;
  return ck;
}

Check check_coxeter_words(Ctx& c) {
  Check ck{"canonical words: faithfulness, positivity, folds", 0, true, ""};
  struct Case {
    std::string name;
    ExtQuiverData eq;
    std::size_t expect = 0;  // element count up to length 8; 0 skips the check
  };
  // Rank-2 orders: commuting pair gives 4 elements, the single bond gives the
  // 6 permutations, the double bond is infinite with 2 per length.
  std::vector<Case> cases;
  cases.push_back({"rank2-m0", rank2_extquiver(0), 4});
  cases.push_back({"rank2-m1", rank2_extquiver(1), 6});
  cases.push_back({"rank2-m2", rank2_extquiver(2), 17});
  cases.push_back({"a2tilde", fixture_zero_extquiver("a2tilde"), 0});
  cases.push_back({"d4tilde", fixture_zero_extquiver("d4tilde"), 0});
  std::mt19937_64 rng(c.opt.seed + 6);
  for (Case& cs : cases) {
    auto lat = std::make_shared<ClassLattice>(class_lattice(cs.eq));
    auto elements = elements_up_to_length(lat, 8);
    if (cs.expect != 0) {
      ++ck.instances;
      if (elements.size() != cs.expect)
        fail(ck, cs.name + " has " + std::to_string(elements.size()) + " elements, expected " +
                     std::to_string(cs.expect));
    }
    std::unordered_set<std::string> mats;
    for (const CoxeterElement& e : elements) {
      ++ck.instances;
      std::string mk;
      for (const auto& col : e.forward())
        for (const mpz_class& v : col) mk += v.get_str() + ",";
      mats.insert(mk);
      // Positivity along the canonical word: every prefix sends the next
      // generator to a nonnegative vector.
      CoxeterElement prefix = CoxeterElement::identity(lat);
      for (int s : e.word()) {
        if (!prefix.image_nonneg(s)) fail(ck, cs.name + " prefix root went negative");
        prefix = prefix.times(s);
      }
      if (!prefix.same(e)) fail(ck, cs.name + " canonical word does not refold");
      // Canonical words are lexicographically least: no smaller left descent.
      if (!e.word().empty()) {
        int first = e.word().front();
        for (int t = 0; t < first; ++t) {
          LatticeVec img = e.inverse()[static_cast<std::size_t>(t)];
          bool neg = true;
          for (const mpz_class& v : img)
            if (v > 0) neg = false;
          if (neg) fail(ck, cs.name + " canonical word misses a smaller descent");
        }
      }
    }
    if (mats.size() != elements.size()) fail(ck, cs.name + " action is not faithful here");
    // Demazure folds: absorbing repeats, agreeing with plain folds on reduced
    // words.
    for (int t = 0; t < 40; ++t) {
      std::vector<int> w = random_word(rng, lat->rank, 1 + rng() % 8);
      CoxeterElement d = demazure_product(lat, w);
      ++ck.instances;
      if (d.length() > w.size()) fail(ck, "Demazure product got too long");
      std::vector<int> doubled = w;
      doubled.insert(doubled.end(), w.rbegin(), w.rend());
      CoxeterElement d2 = demazure_product(lat, doubled);
      if (d2.length() < d.length()) fail(ck, "Demazure fold lost letters");
      CoxeterElement folded = element_from_word(lat, w);
      if (folded.length() == w.size() && !folded.same(d))
        fail(ck, "Demazure disagrees with the fold on a reduced word");
    }
    // sigma_action: involution, pairing invariance.
    for (int t = 0; t < 30; ++t) {
      LatticeVec x(lat->rank), y(lat->rank);
      for (std::size_t s = 0; s < lat->rank; ++s) {
        x[s] = static_cast<long>(rng() % 11) - 5;
        y[s] = static_cast<long>(rng() % 11) - 5;
      }
      for (std::size_t s = 0; s < lat->rank; ++s) {
        ++ck.instances;
        if (sigma_action(*lat, static_cast<int>(s), sigma_action(*lat, static_cast<int>(s), x)) !=
            x)
          fail(ck, "sigma not involutive");
        if (lattice_pairing(*lat, sigma_action(*lat, static_cast<int>(s), x),
                            sigma_action(*lat, static_cast<int>(s), y)) !=
            lattice_pairing(*lat, x, y))
          fail(ck, "sigma not an isometry");
      }
    }
  }
  return ck;
}

Check summarize(std::vector<Check> parts, const std::string& name) {
  Check out{name, 0, true, ""};
  for (Check& p : parts) {
    out.instances += p.instances;
    if (!p.passed) {
      out.passed = false;
      fail(out, p.name + ": " + p.detail);
    }
  }
  out.passed = out.instances > 0 && out.passed;
  return out;
}

void apply_jobs(const Options& opt) {
#ifdef _OPENMP
  if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
#else
  (void)opt;
#endif
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"linalg", "forms", "roots",  "ext",
                                             "reflect", "braid", "serre", "coxeter"};
  return names;
}

Report run_suite(const std::string& name, const Options& opt) {
  apply_jobs(opt);
  Ctx c{opt, {}};
  Report r;
  r.suite = name;
  if (name == "linalg") {
    r.checks = {check_linalg_random(c), check_linalg_parallel_agreement(c)};
  } else if (name == "forms") {
    r.checks = {check_form_identities(c), check_reflection_duality(c)};
  } else if (name == "roots") {
    r.checks = {check_root_enumeration(c), check_sigma(c)};
  } else if (name == "ext") {
    r.checks = {check_corpus_relations(c), check_ext_formula(c), check_ext_symmetry(c)};
  } else if (name == "reflect") {
    r.checks = {check_functor_dims(c), check_adjunction(c), check_roundtrip(c),
                check_construct(c)};
  } else if (name == "braid") {
    r.checks = {check_braid(c)};
  } else if (name == "serre") {
    r.checks = {check_serre_oracle(c)};
  } else if (name == "coxeter") {
    r.checks = {check_ext_quiver(c), check_coxeter_moves(c), check_coxeter_words(c)};
  } else {
    throw ParseError("unknown suite '" + name + "'");
  }
  for (const Check& ck : r.checks)
    if (!ck.passed) r.passed = false;
  return r;
}

std::vector<Report> run_all(const Options& opt) {
  std::vector<Report> out;
  for (const std::string& name : suite_names()) out.push_back(run_suite(name, opt));
  return out;
}

std::vector<Check> acceptance(const Options& opt) {
  apply_jobs(opt);
  Ctx c{opt, {}};
  std::vector<Check> out;
  out.push_back(check_corpus_relations(c));
  out.push_back(check_ext_formula(c));
  out.push_back(check_functor_dims(c));
  out.push_back(check_adjunction(c));
  out.push_back(check_roundtrip(c));
  out.push_back(check_braid(c));
  out.push_back(check_sigma(c));
  out.push_back(check_ext_quiver(c));
  out.push_back(check_serre_oracle(c));
  out.push_back(summarize({check_coxeter_moves(c), check_coxeter_words(c)},
                          "Coxeter words: moves, faithfulness, canonical forms"));
  out.push_back(check_construct(c));
  return out;
}

Json report_to_json(const Report& r) {
  Json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed;
  Json checks = Json::array();
  for (const Check& ck : r.checks)
    checks.push_back(Json{{"name", ck.name},
                          {"instances", ck.instances},
                          {"passed", ck.passed},
                          {"detail", ck.detail}});
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace dpa::selftest
