#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dpa/linalg.hpp"
#include "dpa/roots.hpp"

namespace dpa {

// Representation of the deformed preprojective algebra attached to the double
// quiver and weight: vector spaces V_i of the given dimensions and one matrix
// per doubled arrow, V_a : V_tail -> V_head stored as dims[head] x dims[tail].
// Construction checks shapes only; check_relations decides soundness.
template <FieldType F>
struct Representation {
  DoubleQuiver dq;
  Weight<F> lambda;
  IntVec dims;
  std::vector<Matrix<F>> maps;  // aligned with dq.arrows()

  std::int64_t total_dim() const { return height(dims); }
};

inline bool same_shape(const DoubleQuiver& a, const DoubleQuiver& b) {
  if (a.vertices() != b.vertices() || a.arrows().size() != b.arrows().size())
    return false;
  for (std::size_t k = 0; k < a.arrows().size(); ++k) {
    const DoubleArrow &x = a.arrows()[k], &y = b.arrows()[k];
    if (x.id != y.id || x.tail != y.tail || x.head != y.head || x.eps != y.eps)
      return false;
  }
  return true;
}

template <FieldType F>
Representation<F> make_representation(DoubleQuiver dq, Weight<F> lambda, IntVec dims,
                                      std::vector<Matrix<F>> maps) {
  const int n = dq.vertices();
  if (static_cast<int>(dims.size()) != n)
    throw InvalidRepresentation("dimension vector length != vertex count");
  if (static_cast<int>(lambda.coords.size()) != n)
    throw InvalidRepresentation("weight length != vertex count");
  for (std::int64_t d : dims)
    if (d < 0) throw InvalidRepresentation("negative dimension");
  if (maps.size() != dq.arrows().size())
    throw InvalidRepresentation("map count != doubled arrow count");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const DoubleArrow& a = dq.arrows()[k];
    if (maps[k].rows() != static_cast<std::size_t>(dims[a.head]) ||
        maps[k].cols() != static_cast<std::size_t>(dims[a.tail]))
      throw InvalidRepresentation("map " + a.id + " has wrong shape");
    if (!maps[k].field().same(lambda.field))
      throw FieldMismatch("map " + a.id + " over a different field");
  }
  return Representation<F>{std::move(dq), std::move(lambda), std::move(dims),
                           std::move(maps)};
}

template <FieldType F>
Representation<F> zero_representation(const DoubleQuiver& dq, const Weight<F>& lambda) {
  IntVec dims(dq.vertices(), 0);
  std::vector<Matrix<F>> maps;
  for (std::size_t k = 0; k < dq.arrows().size(); ++k)
    maps.emplace_back(lambda.field, 0, 0);
  return make_representation(dq, lambda, dims, std::move(maps));
}

// One-dimensional representation at vertex i; exists only when lambda_i = 0.
template <FieldType F>
Representation<F> simple_rep(const DoubleQuiver& dq, const Weight<F>& lambda, int i) {
  if (!lambda.field.is_zero(lambda.coords[i]))
    throw InvalidRepresentation("simple at vertex " + std::to_string(i) +
                                " needs weight 0 there");
  IntVec dims(dq.vertices(), 0);
  dims[i] = 1;
  std::vector<Matrix<F>> maps;
  for (const DoubleArrow& a : dq.arrows())
    maps.emplace_back(lambda.field, dims[a.head], dims[a.tail]);
  return make_representation(dq, lambda, dims, std::move(maps));
}

// Residual of the moment-map relation at each vertex:
//   sum_{head(a)=i} eps(a) V_a V_{a*}  -  lambda_i id.
// All residuals zero means the representation is sound.
template <FieldType F>
std::vector<Matrix<F>> check_relations(const Representation<F>& v) {
  const F& f = v.lambda.field;
  std::vector<Matrix<F>> res;
  for (int i = 0; i < v.dq.vertices(); ++i) {
    std::size_t d = static_cast<std::size_t>(v.dims[i]);
    Matrix<F> acc(f, d, d);
    for (std::size_t k : v.dq.in_arrows(i)) {
      const DoubleArrow& a = v.dq.arrow(k);
      Matrix<F> prod = v.maps[k] * v.maps[a.partner];
      acc = a.eps > 0 ? add(acc, prod) : sub(acc, prod);
    }
    acc = sub(acc, Matrix<F>::scalar(f, d, v.lambda.coords[i]));
    res.push_back(std::move(acc));
  }
  return res;
}

template <FieldType F>
bool relations_hold(const Representation<F>& v) {
  for (const Matrix<F>& r : check_relations(v))
    if (!r.is_zero()) return false;
  return true;
}

template <FieldType F>
Representation<F> direct_sum(const Representation<F>& a, const Representation<F>& b) {
  if (!same_shape(a.dq, b.dq)) throw InvalidRepresentation("direct_sum: different quivers");
  if (!weights_equal(a.lambda, b.lambda))
    throw IncompatibleWeights("direct_sum: different weights");
  IntVec dims = add_vec(a.dims, b.dims);
  std::vector<Matrix<F>> maps;
  for (std::size_t k = 0; k < a.maps.size(); ++k)
    maps.push_back(block_diag(a.lambda.field, {a.maps[k], b.maps[k]}));
  return make_representation(a.dq, a.lambda, std::move(dims), std::move(maps));
}

// Morphism as one block per vertex, f_i : U_i -> V_i of shape
// target.dims[i] x source.dims[i].
template <FieldType F>
struct Morphism {
  std::vector<Matrix<F>> blocks;
};

template <FieldType F>
Morphism<F> identity_morphism(const Representation<F>& v) {
  Morphism<F> m;
  for (int i = 0; i < v.dq.vertices(); ++i)
    m.blocks.push_back(Matrix<F>::identity(v.lambda.field, static_cast<std::size_t>(v.dims[i])));
  return m;
}

template <FieldType F>
Morphism<F> zero_morphism(const Representation<F>& u, const Representation<F>& v) {
  Morphism<F> m;
  for (int i = 0; i < v.dq.vertices(); ++i)
    m.blocks.emplace_back(v.lambda.field, static_cast<std::size_t>(v.dims[i]),
                          static_cast<std::size_t>(u.dims[i]));
  return m;
}

template <FieldType F>
bool is_morphism(const Representation<F>& u, const Representation<F>& v,
                 const Morphism<F>& f) {
  if (!same_shape(u.dq, v.dq) || !weights_equal(u.lambda, v.lambda)) return false;
  if (f.blocks.size() != static_cast<std::size_t>(u.dq.vertices())) return false;
  for (int i = 0; i < u.dq.vertices(); ++i)
    if (f.blocks[i].rows() != static_cast<std::size_t>(v.dims[i]) ||
        f.blocks[i].cols() != static_cast<std::size_t>(u.dims[i]))
      return false;
  for (std::size_t k = 0; k < u.dq.arrows().size(); ++k) {
    const DoubleArrow& a = u.dq.arrow(k);
    if (f.blocks[a.head] * u.maps[k] != v.maps[k] * f.blocks[a.tail]) return false;
  }
  return true;
}

template <FieldType F>
Morphism<F> compose(const Morphism<F>& g, const Morphism<F>& f) {
  Morphism<F> r;
  if (g.blocks.size() != f.blocks.size()) throw SizeMismatch("compose: block count");
  for (std::size_t i = 0; i < g.blocks.size(); ++i)
    r.blocks.push_back(g.blocks[i] * f.blocks[i]);
  return r;
}

// Operator matrix of X |-> A X on row-major vectorized X (p x q), A : s x p.
template <FieldType F>
Matrix<F> left_mul_op(const Matrix<F>& a, std::size_t q) {
  const F& f = a.field();
  Matrix<F> op(f, a.rows() * q, a.cols() * q);
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t i = 0; i < a.cols(); ++i)
      for (std::size_t j = 0; j < q; ++j) op.at(k * q + j, i * q + j) = a.at(k, i);
  return op;
}

// Operator matrix of X |-> X B on row-major vectorized X (p x q), B : q x r.
template <FieldType F>
Matrix<F> right_mul_op(const Matrix<F>& b, std::size_t p) {
  const F& f = b.field();
  Matrix<F> op(f, p * b.cols(), p * b.rows());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t l = 0; l < b.cols(); ++l)
      for (std::size_t j = 0; j < b.rows(); ++j)
        op.at(i * b.cols() + l, i * b.rows() + j) = b.at(j, l);
  return op;
}

namespace detail {

template <FieldType F>
void paste_add(Matrix<F>& dst, std::size_t r0, std::size_t c0, const Matrix<F>& b) {
  const F& f = dst.field();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      dst.at(r0 + i, c0 + j) = f.add(dst.at(r0 + i, c0 + j), b.at(i, j));
}

// Layout of the Hom/Ext complex
//   C0 = (+)_i Hom(M_i, N_i) -> C1 = (+)_a Hom(M_tail(a), N_head(a)) -> C2 = (+)_i Hom(M_i, N_i)
// with blocks enumerated in vertex order resp. doubled-arrow order.
template <FieldType F>
struct ComplexLayout {
  std::vector<std::size_t> vert_off, vert_sz;    // C0 and C2 blocks
  std::vector<std::size_t> arrow_off, arrow_sz;  // C1 blocks
  std::size_t c0 = 0, c1 = 0;

  ComplexLayout(const Representation<F>& m, const Representation<F>& n) {
    const int nv = m.dq.vertices();
    for (int i = 0; i < nv; ++i) {
      vert_off.push_back(c0);
      std::size_t sz = static_cast<std::size_t>(n.dims[i]) *
                       static_cast<std::size_t>(m.dims[i]);
      vert_sz.push_back(sz);
      c0 += sz;
    }
    for (const DoubleArrow& a : m.dq.arrows()) {
      arrow_off.push_back(c1);
      std::size_t sz = static_cast<std::size_t>(n.dims[a.head]) *
                       static_cast<std::size_t>(m.dims[a.tail]);
      arrow_sz.push_back(sz);
      c1 += sz;
    }
  }
};

// d0(f)_a = f_head(a) M_a - N_a f_tail(a); kernel = Hom(M, N).
template <FieldType F>
Matrix<F> build_d0(const Representation<F>& m, const Representation<F>& n,
                   const ComplexLayout<F>& L) {
  const F& f = m.lambda.field;
  Matrix<F> d0(f, L.c1, L.c0);
  for (std::size_t k = 0; k < m.dq.arrows().size(); ++k) {
    const DoubleArrow& a = m.dq.arrow(k);
    std::size_t nh = static_cast<std::size_t>(n.dims[a.head]);
    std::size_t mt = static_cast<std::size_t>(m.dims[a.tail]);
    if (nh * mt == 0) continue;
    Matrix<F> t1 = right_mul_op(m.maps[k], nh);           // f_head |-> f_head M_a
    Matrix<F> t2 = neg(left_mul_op(n.maps[k], mt));       // f_tail |-> -N_a f_tail
    paste_add(d0, L.arrow_off[k], L.vert_off[a.head], t1);
    paste_add(d0, L.arrow_off[k], L.vert_off[a.tail], t2);
  }
  return d0;
}

// d1(phi)_i = sum_{head(a)=i} eps(a) (N_a phi_{a*} + phi_a M_{a*}).
template <FieldType F>
Matrix<F> build_d1(const Representation<F>& m, const Representation<F>& n,
                   const ComplexLayout<F>& L) {
  const F& f = m.lambda.field;
  Matrix<F> d1(f, L.c0, L.c1);
  for (int i = 0; i < m.dq.vertices(); ++i) {
    std::size_t ni = static_cast<std::size_t>(n.dims[i]);
    std::size_t mi = static_cast<std::size_t>(m.dims[i]);
    if (ni * mi == 0) continue;
    for (std::size_t k : m.dq.in_arrows(i)) {
      const DoubleArrow& a = m.dq.arrow(k);
      Matrix<F> t1 = left_mul_op(n.maps[k], mi);                  // phi_{a*} |-> N_a phi_{a*}
      Matrix<F> t2 = right_mul_op(m.maps[a.partner], ni);         // phi_a |-> phi_a M_{a*}
      if (a.eps < 0) {
        t1 = neg(t1);
        t2 = neg(t2);
      }
      paste_add(d1, L.vert_off[i], L.arrow_off[a.partner], t1);
      paste_add(d1, L.vert_off[i], L.arrow_off[k], t2);
    }
  }
  return d1;
}

}  // namespace detail

template <FieldType F>
std::vector<Morphism<F>> hom_basis(const Representation<F>& m, const Representation<F>& n) {
  if (!same_shape(m.dq, n.dq)) throw InvalidRepresentation("hom_basis: different quivers");
  if (!weights_equal(m.lambda, n.lambda))
    throw IncompatibleWeights("hom_basis: weights differ");
  const F& f = m.lambda.field;
  detail::ComplexLayout<F> L(m, n);
  Matrix<F> d0 = detail::build_d0(m, n, L);
  Matrix<F> k = kernel_basis(d0);
  std::vector<Morphism<F>> out;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Morphism<F> mor;
    std::vector<typename F::Element> v(L.c0, f.zero());
    for (std::size_t i = 0; i < L.c0; ++i) v[i] = k.at(i, j);
    for (int i = 0; i < m.dq.vertices(); ++i)
      mor.blocks.push_back(mat_of(f, v, static_cast<std::size_t>(n.dims[i]),
                                  static_cast<std::size_t>(m.dims[i]), L.vert_off[i]));
    out.push_back(std::move(mor));
  }
  return out;
}

template <FieldType F>
std::int64_t hom_dim(const Representation<F>& m, const Representation<F>& n) {
  if (!same_shape(m.dq, n.dq)) throw InvalidRepresentation("hom_dim: different quivers");
  if (!weights_equal(m.lambda, n.lambda))
    throw IncompatibleWeights("hom_dim: weights differ");
  detail::ComplexLayout<F> L(m, n);
  Matrix<F> d0 = detail::build_d0(m, n, L);
  return static_cast<std::int64_t>(L.c0 - rank(d0));
}

template <FieldType F>
struct ExtComplex {
  std::int64_t c0 = 0, c1 = 0, c2 = 0;  // chain dimensions
  std::int64_t h0 = 0, h1 = 0, h2 = 0;  // cohomology dimensions
  std::int64_t euler = 0;               // c0 - c1 + c2
  // Basis of H1 as cocycles, one matrix per doubled arrow.
  std::vector<std::vector<Matrix<F>>> cocycle_basis;
};

// Hom/Ext complex of the pair (M, N). Ranks are exact; h1 equals dim Ext^1
// and h2 equals dim Hom(N, M) whenever the algebra's standard bimodule
// resolution applies (connected non-Dynkin quiver).
template <FieldType F>
ExtComplex<F> ext_complex(const Representation<F>& m, const Representation<F>& n) {
  if (!same_shape(m.dq, n.dq)) throw InvalidRepresentation("ext_complex: different quivers");
  if (!weights_equal(m.lambda, n.lambda))
    throw IncompatibleWeights("ext_complex: weights differ");
  const F& f = m.lambda.field;
  detail::ComplexLayout<F> L(m, n);
  Matrix<F> d0 = detail::build_d0(m, n, L);
  Matrix<F> d1 = detail::build_d1(m, n, L);
  if (!(d1 * d0).is_zero())
    throw Error("ext_complex: d1 d0 != 0 (input violates the relations)");
  std::size_t r0 = rank(d0);
  std::size_t r1 = rank(d1);
  ExtComplex<F> out;
  out.c0 = static_cast<std::int64_t>(L.c0);
  out.c1 = static_cast<std::int64_t>(L.c1);
  out.c2 = out.c0;
  out.h0 = out.c0 - static_cast<std::int64_t>(r0);
  out.h1 = static_cast<std::int64_t>(L.c1 - r1 - r0);
  out.h2 = out.c2 - static_cast<std::int64_t>(r1);
  out.euler = out.c0 - out.c1 + out.c2;

  // Cocycle representatives of H1: kernel vectors of d1 kept when independent
  // modulo the coboundary columns of d0.
  Matrix<F> kb = kernel_basis(d1);
  RowSpan<F> span(f, L.c1);
  span.insert_columns_of(d0);
  for (std::size_t j = 0; j < kb.cols(); ++j) {
    std::vector<typename F::Element> v(L.c1, f.zero());
    for (std::size_t i = 0; i < L.c1; ++i) v[i] = kb.at(i, j);
    if (!span.insert(v)) continue;
    std::vector<Matrix<F>> mats;
    for (std::size_t k = 0; k < m.dq.arrows().size(); ++k) {
      const DoubleArrow& a = m.dq.arrow(k);
      mats.push_back(mat_of(f, v, static_cast<std::size_t>(n.dims[a.head]),
                            static_cast<std::size_t>(m.dims[a.tail]), L.arrow_off[k]));
    }
    out.cocycle_basis.push_back(std::move(mats));
  }
  if (static_cast<std::int64_t>(out.cocycle_basis.size()) != out.h1)
    throw Error("ext_complex: cocycle basis size mismatch");
  return out;
}

// dim Ext^1(M, N) from Hom dimensions and the symmetrized Euler form. Valid
// for connected non-Dynkin quivers only; anything else is refused.
template <FieldType F>
std::int64_t ext1_dim_formula(const Representation<F>& m, const Representation<F>& n) {
  const Quiver& q = m.dq.base();
  Classification cls = classify_quiver(q);  // throws DisconnectedQuiver
  if (cls.kind == QuiverClass::Dynkin)
    throw DynkinQuiver("ext1_dim_formula needs a non-Dynkin quiver");
  std::int64_t ab = hom_dim(m, n);
  std::int64_t ba = hom_dim(n, m);
  return ab + ba - symmetric_form(q, m.dims, n.dims);
}

enum class IsoKind { Yes, No, ProbablyNo };

template <FieldType F>
struct IsoOutcome {
  IsoKind kind = IsoKind::ProbablyNo;
  std::optional<Morphism<F>> witness;  // verified isomorphism when kind == Yes
};

template <FieldType F>
bool is_isomorphism_witness(const Representation<F>& u, const Representation<F>& v,
                            const Morphism<F>& f) {
  if (!is_morphism(u, v, f)) return false;
  for (const Matrix<F>& b : f.blocks) {
    if (b.rows() != b.cols()) return false;
    if (!inverse(b)) return false;
  }
  return true;
}

namespace detail {

template <FieldType F>
Morphism<F> combine(const std::vector<Morphism<F>>& basis,
                    const std::vector<typename F::Element>& coeff, const F& f) {
  Morphism<F> r;
  for (std::size_t i = 0; i < basis[0].blocks.size(); ++i) {
    Matrix<F> acc(f, basis[0].blocks[i].rows(), basis[0].blocks[i].cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      acc = add(acc, scale(coeff[k], basis[k].blocks[i]));
    r.blocks.push_back(std::move(acc));
  }
  return r;
}

template <FieldType F>
bool blocks_invertible(const Morphism<F>& m) {
  for (const Matrix<F>& b : m.blocks)
    if (!inverse(b)) return false;
  return true;
}

inline std::int64_t sample_coeff(std::mt19937_64& rng, std::int64_t range) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
}

}  // namespace detail

// Isomorphism test. Dimension or Hom-dimension mismatches certify No. A
// verified invertible Hom-space element certifies Yes. Otherwise: over a small
// prime field the whole Hom space is enumerated (certified No); over large
// fields a seeded search over at least `samples` elements with coordinates
// from an integer range wider than the total dimension returns ProbablyNo.
template <FieldType F>
IsoOutcome<F> is_isomorphic(const Representation<F>& u, const Representation<F>& v,
                            std::uint64_t seed, std::size_t samples = 32) {
  if (!same_shape(u.dq, v.dq)) throw InvalidRepresentation("is_isomorphic: different quivers");
  if (!weights_equal(u.lambda, v.lambda))
    throw IncompatibleWeights("is_isomorphic: weights differ");
  const F& f = u.lambda.field;
  IsoOutcome<F> out;
  if (u.dims != v.dims) {
    out.kind = IsoKind::No;
    return out;
  }
  if (u.total_dim() == 0) {
    out.kind = IsoKind::Yes;
    out.witness = identity_morphism(u);
    return out;
  }
  if (hom_dim(u, v) != hom_dim(v, u) || hom_dim(u, u) != hom_dim(v, v)) {
    out.kind = IsoKind::No;
    return out;
  }
  std::vector<Morphism<F>> basis = hom_basis(u, v);
  if (basis.empty()) {
    out.kind = IsoKind::No;
    return out;
  }
  for (const Morphism<F>& b : basis)
    if (detail::blocks_invertible(b) && is_isomorphism_witness(u, v, b)) {
      out.kind = IsoKind::Yes;
      out.witness = b;
      return out;
    }

  const std::size_t dim = basis.size();
  if constexpr (std::is_same_v<F, PrimeField>) {
    // Exhaustive search when the Hom space is small enough to sweep.
    double total = 1;
    for (std::size_t i = 0; i < dim; ++i) total *= f.modulus();
    if (total <= 65536.0) {
      std::vector<typename F::Element> coeff(dim, 0);
      while (true) {
        Morphism<F> cand = detail::combine(basis, coeff, f);
        if (detail::blocks_invertible(cand) && is_isomorphism_witness(u, v, cand)) {
          out.kind = IsoKind::Yes;
          out.witness = cand;
          return out;
        }
        std::size_t pos = 0;
        while (pos < dim && ++coeff[pos] == f.modulus()) coeff[pos++] = 0;
        if (pos == dim) break;
      }
      out.kind = IsoKind::No;
      return out;
    }
  }

  std::mt19937_64 rng(seed);
  std::int64_t range = std::max<std::int64_t>(2 * u.total_dim() + 1, 16);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<typename F::Element> coeff;
    coeff.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
      coeff.push_back(f.from_int(detail::sample_coeff(rng, range)));
    Morphism<F> cand = detail::combine(basis, coeff, f);
    if (detail::blocks_invertible(cand) && is_isomorphism_witness(u, v, cand)) {
      out.kind = IsoKind::Yes;
      out.witness = cand;
      return out;
    }
  }
  out.kind = IsoKind::ProbablyNo;
  return out;
}

template <FieldType F>
struct RigidSimpleCheck {
  std::int64_t end_dim = 0;
  std::int64_t ext1_dim = 0;
  bool candidate = false;  // end_dim == 1 and ext1_dim == 0
};

template <FieldType F>
RigidSimpleCheck<F> is_rigid_simple_candidate(const Representation<F>& m) {
  RigidSimpleCheck<F> r;
  r.end_dim = hom_dim(m, m);
  r.ext1_dim = ext_complex(m, m).h1;
  r.candidate = r.end_dim == 1 && r.ext1_dim == 0;
  return r;
}

}  // namespace dpa
