#pragma once

#include "dpa/json_io.hpp"
#include "dpa/reflect.hpp"
#include "dpa/roots.hpp"
#include "dpa/serre.hpp"

namespace dpa {

namespace detail {

// The preprojective relation is linear in the unreversed arrow maps once the
// reversal maps are fixed.  Sampling reversals and solving the resulting
// system yields modules in dimension vectors that pair to zero with the
// weight; the solve is exact, so any result is sound by construction.
template <FieldType F>
std::optional<Representation<F>> moment_solve(const DoubleQuiver& dq, const Weight<F>& lambda,
                                              const IntVec& d, std::mt19937_64& rng) {
  const F& f = lambda.field;
  const int n = dq.vertices();
  std::vector<std::size_t> orig, offs;
  std::size_t unknowns = 0;
  for (std::size_t k = 0; k < dq.arrows().size(); ++k)
    if (dq.arrow(k).eps == 1) {
      orig.push_back(k);
      offs.push_back(unknowns);
      unknowns += static_cast<std::size_t>(d[dq.arrow(k).head]) *
                  static_cast<std::size_t>(d[dq.arrow(k).tail]);
    }
  std::vector<Matrix<F>> maps;
  for (const DoubleArrow& a : dq.arrows())
    maps.emplace_back(f, static_cast<std::size_t>(d[a.head]), static_cast<std::size_t>(d[a.tail]));
  for (std::size_t k = 0; k < dq.arrows().size(); ++k)
    if (dq.arrow(k).eps == -1)
      for (std::size_t r = 0; r < maps[k].rows(); ++r)
        for (std::size_t c = 0; c < maps[k].cols(); ++c)
          maps[k].at(r, c) = f.from_int(sample_coeff(rng, 3));

  std::vector<std::size_t> base(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i)
    base[i + 1] = base[i] + static_cast<std::size_t>(d[i]) * static_cast<std::size_t>(d[i]);
  Matrix<F> sys(f, base[n], unknowns);
  Matrix<F> rhs(f, base[n], 1);
  for (int i = 0; i < n; ++i)
    for (std::size_t r = 0; r < static_cast<std::size_t>(d[i]); ++r)
      rhs.at(base[i] + r * d[i] + r, 0) = lambda.coords[i];
  for (std::size_t u = 0; u < orig.size(); ++u) {
    const DoubleArrow& a = dq.arrow(orig[u]);
    const Matrix<F>& rev = maps[a.partner];  // d[tail] x d[head]
    std::size_t dh = static_cast<std::size_t>(d[a.head]);
    std::size_t dt = static_cast<std::size_t>(d[a.tail]);
    // At the head: +(V_a V_{a*})_{rc} contributes rev(t,c) per unknown (r,t).
    for (std::size_t r = 0; r < dh; ++r)
      for (std::size_t c = 0; c < dh; ++c)
        for (std::size_t t = 0; t < dt; ++t) {
          auto& cell = sys.at(base[a.head] + r * dh + c, offs[u] + r * dt + t);
          cell = f.add(cell, rev.at(t, c));
        }
    // At the tail: -(V_{a*} V_a)_{rc} contributes -rev(r,t) per unknown (t,c).
    for (std::size_t r = 0; r < dt; ++r)
      for (std::size_t c = 0; c < dt; ++c)
        for (std::size_t t = 0; t < dh; ++t) {
          auto& cell = sys.at(base[a.tail] + r * dt + c, offs[u] + t * dt + c);
          cell = f.sub(cell, rev.at(r, t));
        }
  }
  auto sol = solve_right(sys, rhs);
  if (!sol) return std::nullopt;
  for (std::size_t u = 0; u < orig.size(); ++u) {
    Matrix<F>& m = maps[orig[u]];
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = sol->at(offs[u] + r * m.cols() + c, 0);
  }
  Representation<F> rep = make_representation(dq, lambda, d, std::move(maps));
  if (!relations_hold(rep)) return std::nullopt;
  return rep;
}

}  // namespace detail

// Shipped example quivers with their standard weight menus (integer weights,
// usable over any field through from_int).
struct Fixture {
  std::string name;
  Quiver q;
  std::vector<IntVec> weights;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture_by_name(const std::string& name);

struct CorpusConfig {
  std::uint64_t seed = 12345;
  std::int64_t max_total_dim = 6;
  std::size_t target_size = 24;
  int reflection_depth = 3;
  std::int64_t sigma_multiple = 3;
};

// Deterministic module corpus over one weight: coordinate simples where the
// weight vanishes, the rigid simples of the minimal orthogonal roots,
// weight-preserving reflection images, then direct sums and extensions up to
// the dimension bound, deduplicated up to certified isomorphism.
template <FieldType F>
std::vector<Representation<F>> generate_corpus(const DoubleQuiver& dq, const Weight<F>& lambda,
                                               const CorpusConfig& cfg = {}) {
  const Quiver& q = dq.base();
  const F& f = lambda.field;
  std::vector<Representation<F>> pool;
  auto add = [&](Representation<F> r) {
    if (pool.size() >= cfg.target_size) return;
    if (r.total_dim() == 0 || r.total_dim() > cfg.max_total_dim) return;
    for (const auto& old : pool)
      if (old.dims == r.dims && is_isomorphic(old, r, cfg.seed).kind == IsoKind::Yes) return;
    pool.push_back(std::move(r));
  };

  for (int i = 0; i < q.vertices(); ++i)
    if (f.is_zero(lambda.coords[i])) add(simple_rep(dq, lambda, i));

  // Rigid simples of the minimal lambda-orthogonal roots.
  Classification cls = classify_quiver(q);
  IntVec box(static_cast<std::size_t>(q.vertices()), cfg.max_total_dim);
  if (cls.kind == QuiverClass::ExtendedDynkin) box = scale_vec(cfg.sigma_multiple, cls.delta);
  for (const IntVec& alpha : sigma_lambda_re(q, lambda, box)) {
    if (height(alpha) > cfg.max_total_dim) continue;
    ConstructResult<F> cr = construct_rigid_simple(dq, lambda, alpha);
    if (cr.status == ConstructStatus::Reached) add(std::move(*cr.rep));
  }

  // Moment-map solves in the imaginary-root dimensions kept by the weight;
  // this is the only source of modules when the weight vanishes nowhere.
  if (cls.kind == QuiverClass::ExtendedDynkin) {
    std::mt19937_64 rng(cfg.seed ^ 0x5eedu);
    for (std::int64_t k = 1; k * height(cls.delta) <= cfg.max_total_dim; ++k) {
      IntVec dim = scale_vec(k, cls.delta);
      if (!f.is_zero(pair_weight(lambda, dim))) continue;
      std::size_t added = 0;
      for (int attempt = 0; attempt < 6 && added < 2; ++attempt)
        if (auto m = detail::moment_solve(dq, lambda, dim, rng)) {
          std::size_t before = pool.size();
          add(std::move(*m));
          added += pool.size() - before;
        }
    }
  }

  // Weight-preserving reflection images of the seeds.
  std::size_t seeds = pool.size();
  for (std::size_t k = 0; k < seeds; ++k) {
    struct Item {
      Representation<F> rep;
      int depth;
    };
    std::deque<Item> queue;
    queue.push_back(Item{pool[k], 0});
    while (!queue.empty()) {
      Item it = std::move(queue.front());
      queue.pop_front();
      if (it.depth >= cfg.reflection_depth) continue;
      for (int i = 0; i < q.vertices(); ++i) {
        if (q.has_loop_at(i)) continue;
        Representation<F> img = cokernel_functor_obj(it.rep, i).image;
        if (weights_equal(img.lambda, lambda)) add(img);
        if (img.total_dim() <= 2 * cfg.max_total_dim)
          queue.push_back(Item{std::move(img), it.depth + 1});
      }
    }
  }

  // Sums and extensions until the pool stops growing or reaches its target.
  bool grew = true;
  while (grew && pool.size() < cfg.target_size) {
    grew = false;
    std::size_t sz = pool.size();
    for (std::size_t a = 0; a < sz && pool.size() < cfg.target_size; ++a)
      for (std::size_t b = 0; b < sz && pool.size() < cfg.target_size; ++b) {
        if (pool[a].total_dim() + pool[b].total_dim() > cfg.max_total_dim) continue;
        std::size_t before = pool.size();
        if (a <= b) add(direct_sum(pool[a], pool[b]));
        ExtComplex<F> e = ext_complex(pool[a], pool[b]);
        for (std::size_t c = 0; c < e.cocycle_basis.size() && c < 2; ++c)
          add(build_extension_cocycle(pool[a], pool[b], e.cocycle_basis[c]));
        if (pool.size() != before) grew = true;
      }
  }
  for (const auto& r : pool)
    if (!relations_hold(r)) throw Error("corpus member violates the relations");
  return pool;
}

// Weight-changing companions for cross-weight tests: images of the corpus
// under one cokernel functor application at the given vertex.
template <FieldType F>
std::vector<Representation<F>> reflected_corpus(const std::vector<Representation<F>>& corpus,
                                                int vertex) {
  std::vector<Representation<F>> out;
  for (const auto& r : corpus) out.push_back(cokernel_functor_obj(r, vertex).image);
  return out;
}

// item_NNN.json files inside dir (created if needed); returns the file names.
std::vector<std::string> write_rep_files(const std::string& dir,
                                         const std::vector<Json>& payloads);

template <FieldType F>
std::vector<std::string> write_corpus_dir(const std::string& dir,
                                          const std::vector<Representation<F>>& reps) {
  std::vector<Json> payloads;
  for (const auto& r : reps) payloads.push_back(rep_to_json(r));
  return write_rep_files(dir, payloads);
}

// All *.json files in dir, sorted by name; labels are the stems.
std::vector<std::pair<std::string, AnyRep>> load_rep_dir(const std::string& dir,
                                                         bool validate_relations = true);

}  // namespace dpa
