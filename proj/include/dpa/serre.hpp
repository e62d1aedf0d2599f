#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "dpa/rep.hpp"

namespace dpa {

// A finite family of pairwise non-isomorphic rigid simples over one weight.
template <FieldType F>
struct SimpleFamily {
  std::vector<std::string> labels;
  std::vector<Representation<F>> members;

  int index_of(const std::string& label) const {
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == label) return static_cast<int>(k);
    throw SizeMismatch("unknown family label '" + label + "'");
  }
};

template <FieldType F>
SimpleFamily<F> make_simple_family(std::vector<std::string> labels,
                                   std::vector<Representation<F>> members,
                                   std::uint64_t seed = 20240) {
  if (labels.size() != members.size()) throw SizeMismatch("family label/member mismatch");
  if (members.empty()) throw InvalidFamily("empty family");
  for (std::size_t k = 1; k < members.size(); ++k) {
    if (!same_shape(members[0].dq, members[k].dq) ||
        !weights_equal(members[0].lambda, members[k].lambda))
      throw InvalidFamily("family members live over different data");
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (hom_dim(members[k], members[k]) != 1)
      throw NotSimple("family member '" + labels[k] + "' has non-scalar endomorphisms");
    if (ext_complex(members[k], members[k]).h1 != 0)
      throw InvalidFamily("family member '" + labels[k] + "' is not rigid");
  }
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (is_isomorphic(members[a], members[b], seed).kind == IsoKind::Yes)
        throw InvalidFamily("family members '" + labels[a] + "' and '" + labels[b] +
                            "' are isomorphic");
  return SimpleFamily<F>{std::move(labels), std::move(members)};
}

template <FieldType F>
struct TraceResult {
  Representation<F> sub;       // the trace submodule, isomorphic to s^multiplicity
  Morphism<F> inclusion;       // sub -> m
  Representation<F> quotient;  // m / sub
  Morphism<F> projection;      // m -> quotient
  std::int64_t multiplicity = 0;
};

// Largest submodule of m generated by images of maps from the simple s:
// the common image of a Hom(s, m) basis. Requires End(s) = k.
template <FieldType F>
TraceResult<F> trace_submodule(const Representation<F>& s, const Representation<F>& m) {
  if (hom_dim(s, s) != 1) throw NotSimple("trace_submodule: End(s) is not scalar");
  const F& f = s.lambda.field;
  const int n = s.dq.vertices();
  std::vector<Morphism<F>> basis = hom_basis(s, m);

  // Per-vertex span of all image columns; keep the accepted raw columns as a
  // deterministic basis of the trace.
  std::vector<std::vector<std::vector<typename F::Element>>> cols(n);
  for (int i = 0; i < n; ++i) {
    RowSpan<F> span(f, static_cast<std::size_t>(m.dims[i]));
    for (const Morphism<F>& h : basis) {
      const Matrix<F>& b = h.blocks[i];
      for (std::size_t j = 0; j < b.cols(); ++j) {
        std::vector<typename F::Element> col(b.rows(), f.zero());
        for (std::size_t r = 0; r < b.rows(); ++r) col[r] = b.at(r, j);
        if (span.insert(col)) cols[i].push_back(std::move(col));
      }
    }
  }
  std::vector<Matrix<F>> u(n, Matrix<F>(f, 0, 0));
  IntVec sub_dims(n, 0);
  for (int i = 0; i < n; ++i) {
    Matrix<F> ui(f, static_cast<std::size_t>(m.dims[i]), cols[i].size());
    for (std::size_t j = 0; j < cols[i].size(); ++j)
      for (std::size_t r = 0; r < ui.rows(); ++r) ui.at(r, j) = cols[i][j][r];
    u[i] = std::move(ui);
    sub_dims[i] = static_cast<std::int64_t>(cols[i].size());
  }

  std::vector<Matrix<F>> sub_maps, quot_maps;
  std::vector<Matrix<F>> proj(n, Matrix<F>(f, 0, 0)), sect(n, Matrix<F>(f, 0, 0));
  IntVec quot_dims(n, 0);
  for (int i = 0; i < n; ++i) {
    CokernelData<F> ck = cokernel_projection(u[i]);
    quot_dims[i] = static_cast<std::int64_t>(ck.projection.rows());
    proj[i] = std::move(ck.projection);
    sect[i] = std::move(ck.section);
  }
  for (std::size_t k = 0; k < m.dq.arrows().size(); ++k) {
    const DoubleArrow& a = m.dq.arrow(k);
    auto restricted = solve_right(u[a.head], m.maps[k] * u[a.tail]);
    if (!restricted) throw Error("trace is not map-closed");  // cannot happen
    sub_maps.push_back(std::move(*restricted));
    Matrix<F> qmap = proj[a.head] * m.maps[k] * sect[a.tail];
    if (qmap * proj[a.tail] != proj[a.head] * m.maps[k])
      throw Error("quotient map not constant on cosets");  // cannot happen
    quot_maps.push_back(std::move(qmap));
  }
  TraceResult<F> out{
      make_representation(m.dq, m.lambda, std::move(sub_dims), std::move(sub_maps)),
      Morphism<F>{std::move(u)},
      make_representation(m.dq, m.lambda, std::move(quot_dims), std::move(quot_maps)),
      Morphism<F>{std::move(proj)},
      static_cast<std::int64_t>(basis.size())};
  if (!is_morphism(out.sub, m, out.inclusion)) throw Error("trace inclusion broken");
  if (!is_morphism(m, out.quotient, out.projection)) throw Error("trace projection broken");
  if (out.sub.total_dim() != out.multiplicity * s.total_dim())
    throw Error("trace is not s-isotypic");
  return out;
}

// Membership in add S_1 * add S_2 * ... * add S_r (filtrations with the
// isotypic layer S_1 at the bottom), decided greedily: m belongs iff
// m / trace(S_1, m) belongs to the tail chain.
template <FieldType F>
bool chain_member(const Representation<F>& m, const SimpleFamily<F>& fam,
                  const std::vector<int>& chain) {
  Representation<F> cur = m;
  for (int idx : chain) {
    if (idx < 0 || idx >= static_cast<int>(fam.members.size()))
      throw SizeMismatch("chain index out of range");
    if (cur.total_dim() == 0) return true;
    cur = trace_submodule(fam.members[static_cast<std::size_t>(idx)], cur).quotient;
  }
  return cur.total_dim() == 0;
}

// Extension of `top` by `socle` determined by a 1-cocycle: block maps
// [[socle_a, phi_a], [0, top_a]] on spaces socle_i (+) top_i.
template <FieldType F>
Representation<F> build_extension_cocycle(const Representation<F>& top,
                                          const Representation<F>& socle,
                                          const std::vector<Matrix<F>>& phi) {
  if (!same_shape(top.dq, socle.dq) || !weights_equal(top.lambda, socle.lambda))
    throw InvalidRepresentation("build_extension: incompatible summands");
  if (phi.size() != top.dq.arrows().size()) throw SizeMismatch("cocycle has wrong arity");
  const F& f = top.lambda.field;
  IntVec dims(top.dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = socle.dims[i] + top.dims[i];
  std::vector<Matrix<F>> maps;
  for (std::size_t k = 0; k < top.dq.arrows().size(); ++k) {
    const DoubleArrow& a = top.dq.arrow(k);
    std::size_t sh = static_cast<std::size_t>(socle.dims[a.head]);
    std::size_t st = static_cast<std::size_t>(socle.dims[a.tail]);
    if (phi[k].rows() != sh || phi[k].cols() != static_cast<std::size_t>(top.dims[a.tail]))
      throw SizeMismatch("cocycle block has wrong shape");
    Matrix<F> blk(f, static_cast<std::size_t>(dims[a.head]),
                  static_cast<std::size_t>(dims[a.tail]));
    blk.paste(0, 0, socle.maps[k]);
    blk.paste(0, st, phi[k]);
    blk.paste(sh, st, top.maps[k]);
    maps.push_back(std::move(blk));
  }
  return make_representation(top.dq, top.lambda, std::move(dims), std::move(maps));
}

// Extension along the index-th element of the cocycle basis of
// Ext^1(top, socle).
template <FieldType F>
Representation<F> build_extension(const Representation<F>& top, const Representation<F>& socle,
                                  std::size_t cocycle_index) {
  ExtComplex<F> e = ext_complex(top, socle);
  if (cocycle_index >= e.cocycle_basis.size())
    throw SizeMismatch("cocycle index " + std::to_string(cocycle_index) + " out of range (h1=" +
                       std::to_string(e.h1) + ")");
  return build_extension_cocycle(top, socle, e.cocycle_basis[cocycle_index]);
}

// A short exact sequence 0 -> socle -> e -> top -> 0 in block form splits iff
// some morphism e -> socle restricts to the identity on the socle block.
template <FieldType F>
bool extension_splits(const Representation<F>& e, const Representation<F>& socle) {
  const F& f = e.lambda.field;
  std::vector<Morphism<F>> basis = hom_basis(e, socle);
  std::size_t rows = 0;
  for (std::int64_t d : socle.dims) rows += static_cast<std::size_t>(d * d);
  Matrix<F> sys(f, rows, basis.size());
  Matrix<F> rhs(f, rows, 1);
  std::size_t off = 0;
  for (std::size_t i = 0; i < socle.dims.size(); ++i) {
    std::size_t sd = static_cast<std::size_t>(socle.dims[i]);
    for (std::size_t r = 0; r < sd; ++r)
      for (std::size_t c = 0; c < sd; ++c) {
        for (std::size_t k = 0; k < basis.size(); ++k)
          sys.at(off, k) = basis[k].blocks[i].at(r, c);  // block columns 0..sd of e_i
        rhs.at(off, 0) = r == c ? f.one() : f.zero();
        ++off;
      }
  }
  return solve_right(sys, rhs).has_value();
}

// ---------------------------------------------------------------------------
// Brute-force membership oracle over a prime field: enumerate every submodule.

namespace detail {

// All subspaces of F^d as column matrices with canonical reduced echelon
// row-space; p^d stays tiny for oracle use.
template <FieldType F>
std::vector<Matrix<F>> all_subspaces(const F& f, std::size_t d);

template <>
inline std::vector<Matrix<PrimeField>> all_subspaces<PrimeField>(const PrimeField& f,
                                                                 std::size_t d) {
  using M = Matrix<PrimeField>;
  const std::uint64_t p = f.modulus();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (total > 100000) throw SizeMismatch("subspace enumeration too large");
    total *= p;
  }
  std::vector<std::vector<std::uint64_t>> vectors;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint64_t> v(d);
    std::uint64_t c = code;
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = c % p;
      c /= p;
    }
    vectors.push_back(std::move(v));
  }
  auto canon = [&](const M& cols) {
    M t = cols.transpose();
    RrefResult<PrimeField> r = rref(t);
    std::string key;
    for (std::size_t i = 0; i < r.rank; ++i)
      for (std::size_t j = 0; j < r.r.cols(); ++j) key += f.to_string(r.r.at(i, j)) + ",";
    return key;
  };
  std::map<std::string, M> found;
  M zero(f, d, 0);
  found.emplace(canon(zero), zero);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<M> snapshot;
    for (auto& kv : found) snapshot.push_back(kv.second);
    for (const M& u : snapshot)
      for (const auto& vec : vectors) {
        std::vector<typename PrimeField::Element> col(d);
        for (std::size_t k = 0; k < d; ++k) col[k] = vec[k];
        M cand(f, d, u.cols() + 1);
        cand.paste(0, 0, u);
        for (std::size_t k = 0; k < d; ++k) cand.at(k, u.cols()) = col[k];
        if (rank(cand) != u.cols() + 1) continue;
        if (found.emplace(canon(cand), cand).second) grew = true;
      }
  }
  std::vector<M> out;
  for (auto& kv : found) out.push_back(kv.second);
  return out;
}

template <FieldType F>
struct SubmoduleData {
  Representation<F> sub;
  Representation<F> quotient;
};

// Every submodule of m, as subspace tuples closed under all doubled arrows.
template <FieldType F>
std::vector<SubmoduleData<F>> all_submodules(const Representation<F>& m) {
  const F& f = m.lambda.field;
  const int n = m.dq.vertices();
  std::vector<std::vector<Matrix<F>>> choices(n);
  for (int i = 0; i < n; ++i)
    choices[i] = all_subspaces<F>(f, static_cast<std::size_t>(m.dims[i]));
  std::vector<SubmoduleData<F>> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<Matrix<F>> u;
    for (int i = 0; i < n; ++i) u.push_back(choices[i][pick[i]]);
    bool closed = true;
    std::vector<Matrix<F>> sub_maps;
    for (std::size_t k = 0; k < m.dq.arrows().size() && closed; ++k) {
      const DoubleArrow& a = m.dq.arrow(k);
      auto rest = solve_right(u[a.head], m.maps[k] * u[a.tail]);
      if (!rest) closed = false;
      else sub_maps.push_back(std::move(*rest));
    }
    if (closed) {
      IntVec sdims(n), qdims(n);
      std::vector<Matrix<F>> proj(n, Matrix<F>(f, 0, 0)), sect(n, Matrix<F>(f, 0, 0));
      for (int i = 0; i < n; ++i) {
        sdims[i] = static_cast<std::int64_t>(u[i].cols());
        CokernelData<F> ck = cokernel_projection(u[i]);
        qdims[i] = static_cast<std::int64_t>(ck.projection.rows());
        proj[i] = std::move(ck.projection);
        sect[i] = std::move(ck.section);
      }
      std::vector<Matrix<F>> quot_maps;
      for (std::size_t k = 0; k < m.dq.arrows().size(); ++k) {
        const DoubleArrow& a = m.dq.arrow(k);
        quot_maps.push_back(proj[a.head] * m.maps[k] * sect[a.tail]);
      }
      out.push_back(SubmoduleData<F>{
          make_representation(m.dq, m.lambda, std::move(sdims), std::move(sub_maps)),
          make_representation(m.dq, m.lambda, std::move(qdims), std::move(quot_maps))});
    }
    int at = 0;
    while (at < n && ++pick[at] == choices[at].size()) pick[at++] = 0;
    if (at == n) break;
  }
  return out;
}

template <FieldType F>
bool iso_to_power(const Representation<F>& n, const Representation<F>& s, std::uint64_t seed) {
  if (n.total_dim() == 0) return true;
  if (s.total_dim() == 0) return false;
  if (n.total_dim() % s.total_dim() != 0) return false;
  std::int64_t k = n.total_dim() / s.total_dim();
  Representation<F> power = s;
  for (std::int64_t j = 1; j < k; ++j) power = direct_sum(power, s);
  if (power.dims != n.dims) return false;
  return is_isomorphic(n, power, seed).kind == IsoKind::Yes;
}

}  // namespace detail

// Exhaustive chain membership: some submodule isomorphic to a power of the
// first chain simple has a quotient in the tail chain. Prime fields only.
template <FieldType F>
bool chain_member_bruteforce(const Representation<F>& m, const SimpleFamily<F>& fam,
                             const std::vector<int>& chain, std::uint64_t seed = 424242) {
  static_assert(std::is_same_v<F, PrimeField>, "brute-force oracle needs a finite field");
  if (chain.empty()) return m.total_dim() == 0;
  const Representation<F>& s = fam.members[static_cast<std::size_t>(chain[0])];
  std::vector<int> tail(chain.begin() + 1, chain.end());
  for (const auto& sm : detail::all_submodules(m)) {
    if (!detail::iso_to_power(sm.sub, s, seed)) continue;
    if (chain_member_bruteforce(sm.quotient, fam, tail, seed)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Star-relation verdicts on a generated module corpus.

// Deterministic corpus of chain-closure members: direct sums and iterated
// extensions of the family simples up to a total-dimension bound.
template <FieldType F>
std::vector<Representation<F>> serre_corpus(const SimpleFamily<F>& fam, std::int64_t bound,
                                            std::uint64_t seed = 777) {
  std::vector<Representation<F>> pool;
  auto add = [&](Representation<F> r) {
    if (r.total_dim() > bound) return;
    for (const auto& old : pool)
      if (old.dims == r.dims && is_isomorphic(old, r, seed).kind == IsoKind::Yes) return;
    pool.push_back(std::move(r));
  };
  add(zero_representation(fam.members[0].dq, fam.members[0].lambda));
  for (const auto& s : fam.members) add(s);
  bool grew = true;
  while (grew && pool.size() < 64) {
    grew = false;
    std::size_t sz = pool.size();
    for (std::size_t a = 0; a < sz; ++a)
      for (std::size_t b = 0; b < sz; ++b) {
        if (pool[a].total_dim() + pool[b].total_dim() > bound) continue;
        std::size_t before = pool.size();
        if (a <= b) add(direct_sum(pool[a], pool[b]));
        ExtComplex<F> e = ext_complex(pool[a], pool[b]);
        for (std::size_t c = 0; c < e.cocycle_basis.size() && c < 2; ++c)
          add(build_extension_cocycle(pool[a], pool[b], e.cocycle_basis[c]));
        if (pool.size() != before) grew = true;
      }
  }
  return pool;
}

struct StarReport {
  std::int64_t ext_st = 0;  // dim Ext^1 between the two simples
  std::size_t corpus_size = 0;
  std::size_t idempotent_instances = 0;
  std::size_t swap_instances = 0;
  bool idempotent_ok = true;          // [S,S] = [S] for each simple
  bool swap_ok = true;                // Ext = 0: [S,T] = [T,S]
  bool braid_ok = true;               // Ext = 1: [S,T,S] = [T,S,T]
  bool swap_applicable = false;
  bool braid_applicable = false;
  std::vector<std::string> counterexamples;
  bool ok = true;
};

// Relations between layered subcategory classes for a two-simple family:
// idempotence always, commutation when Ext^1 vanishes both ways, the braid
// relation when both Ext^1 spaces are one-dimensional.
template <FieldType F>
StarReport verify_star_relations(const SimpleFamily<F>& fam, std::int64_t bound,
                                 std::uint64_t seed = 777) {
  if (fam.members.size() != 2) throw InvalidFamily("star relations need exactly two simples");
  StarReport rep;
  std::int64_t e01 = ext_complex(fam.members[0], fam.members[1]).h1;
  std::int64_t e10 = ext_complex(fam.members[1], fam.members[0]).h1;
  rep.ext_st = e01;
  rep.swap_applicable = e01 == 0 && e10 == 0;
  rep.braid_applicable = e01 == 1 && e10 == 1;
  std::vector<Representation<F>> corpus = serre_corpus(fam, bound, seed);
  rep.corpus_size = corpus.size();
  for (std::size_t mi = 0; mi < corpus.size(); ++mi) {
    const Representation<F>& m = corpus[mi];
    for (int s = 0; s < 2; ++s) {
      bool lhs = chain_member(m, fam, {s, s});
      bool rhs = chain_member(m, fam, {s});
      ++rep.idempotent_instances;
      if (lhs != rhs) {
        rep.idempotent_ok = false;
        rep.counterexamples.push_back("idempotent s=" + std::to_string(s) + " module #" +
                                      std::to_string(mi));
      }
    }
    if (rep.swap_applicable) {
      bool lhs = chain_member(m, fam, {0, 1});
      bool rhs = chain_member(m, fam, {1, 0});
      ++rep.swap_instances;
      if (lhs != rhs) {
        rep.swap_ok = false;
        rep.counterexamples.push_back("swap module #" + std::to_string(mi));
      }
    }
    if (rep.braid_applicable) {
      bool lhs = chain_member(m, fam, {0, 1, 0});
      bool rhs = chain_member(m, fam, {1, 0, 1});
      ++rep.swap_instances;
      if (lhs != rhs) {
        rep.braid_ok = false;
        rep.counterexamples.push_back("braid module #" + std::to_string(mi));
      }
    }
  }
  rep.ok = rep.idempotent_ok && rep.swap_ok && rep.braid_ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Composition multiplicities.

struct CompositionResult {
  bool determinate = false;
  IntVec mult;
  std::string reason;
};

// Multiplicity vector of m in the family simples: the unique nonnegative
// integer solution of Dim m = sum c_i Dim S_i, provided the dimension vectors
// are independent and m lies in the chain closure (checked by iterated trace
// peeling, which reaches zero exactly on members).
template <FieldType F>
CompositionResult composition_vector(const Representation<F>& m, const SimpleFamily<F>& fam) {
  Rationals q;
  const int n = m.dq.vertices();
  const std::size_t k = fam.members.size();
  Matrix<Rationals> d(q, static_cast<std::size_t>(n), k);
  for (std::size_t c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) d.at(static_cast<std::size_t>(r), c) =
        mpq_class(static_cast<long>(fam.members[c].dims[r]));
  if (rank(d) != k) return CompositionResult{false, {}, "dependent dimension vectors"};
  Matrix<Rationals> rhs(q, static_cast<std::size_t>(n), 1);
  for (int r = 0; r < n; ++r)
    rhs.at(static_cast<std::size_t>(r), 0) = mpq_class(static_cast<long>(m.dims[r]));
  auto sol = solve_right(d, rhs);
  if (!sol) return CompositionResult{false, {}, "dimension vector not in the family span"};
  IntVec mult(k, 0);
  for (std::size_t c = 0; c < k; ++c) {
    mpq_class v = sol->at(c, 0);
    if (v.get_den() != 1 || v < 0)
      return CompositionResult{false, {}, "no nonnegative integer solution"};
    mult[c] = static_cast<std::int64_t>(v.get_num().get_si());
  }
  Representation<F> cur = m;
  while (cur.total_dim() > 0) {
    bool peeled = false;
    for (const auto& s : fam.members) {
      TraceResult<F> t = trace_submodule(s, cur);
      if (t.multiplicity > 0) {
        cur = t.quotient;
        peeled = true;
      }
    }
    if (!peeled) return CompositionResult{false, {}, "module is not in the chain closure"};
  }
  return CompositionResult{true, std::move(mult), ""};
}

// ---------------------------------------------------------------------------
// Indecomposability by idempotent search over a finite field.

// Over a finite field a module is decomposable iff End contains a nonscalar
// idempotent; enumerate all coefficient combinations when the search space is
// small enough.
template <FieldType F>
std::optional<bool> is_indecomposable_exhaustive(const Representation<F>& m,
                                                 std::size_t budget = 1u << 20) {
  static_assert(std::is_same_v<F, PrimeField>, "idempotent search needs a finite field");
  const F& f = m.lambda.field;
  if (m.total_dim() == 0) return false;
  std::vector<Morphism<F>> basis = hom_basis(m, m);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    total *= f.modulus();
    if (total > budget) return std::nullopt;
  }
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    Morphism<F> cand = zero_morphism(m, m);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::uint64_t coef = c % f.modulus();
      c /= f.modulus();
      if (coef == 0) continue;
      for (std::size_t i = 0; i < cand.blocks.size(); ++i)
        cand.blocks[i] = add(cand.blocks[i], scale(coef, basis[k].blocks[i]));
    }
    bool idem = true, scalarish = true, zero = true, ident = true;
    for (std::size_t i = 0; i < cand.blocks.size() && idem; ++i) {
      if (cand.blocks[i] * cand.blocks[i] != cand.blocks[i]) idem = false;
      if (!cand.blocks[i].is_zero()) zero = false;
      if (!cand.blocks[i].is_identity()) ident = false;
    }
    scalarish = zero || ident;
    if (idem && !scalarish) return false;
  }
  return true;
}

}  // namespace dpa
