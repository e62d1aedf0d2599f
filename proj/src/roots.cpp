#include "dpa/roots.hpp"

#include <algorithm>
#include <cstddef>
#include <set>

namespace dpa {

namespace {

// Mixed-radix indexing for the box 0 <= v <= bound.
struct Box {
  IntVec bound;
  std::vector<std::size_t> stride;
  std::size_t cells = 1;

  explicit Box(const IntVec& b) : bound(b) {
    stride.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < 0) throw SizeMismatch("negative box bound");
      stride[i] = cells;
      std::size_t w = static_cast<std::size_t>(b[i]) + 1;
      if (cells > (std::size_t{50'000'000} / w))
        throw Error("enumeration box too large");
      cells *= w;
    }
  }

  std::size_t index(const IntVec& v) const {
    std::size_t ix = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      ix += stride[i] * static_cast<std::size_t>(v[i]);
    return ix;
  }

  IntVec vector_at(std::size_t ix) const {
    IntVec v(bound.size());
    for (std::size_t i = 0; i < bound.size(); ++i) {
      std::size_t w = static_cast<std::size_t>(bound[i]) + 1;
      v[i] = static_cast<std::int64_t>(ix % w);
      ix /= w;
    }
    return v;
  }

  bool inside(const IntVec& v) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 0 || v[i] > bound[i]) return false;
    return true;
  }
};

// Orbit closure of the seed set under loop-free reflections, restricted to
// nonnegative vectors inside the box.
std::set<IntVec> reflection_closure(const Quiver& q, const Box& box,
                                    std::set<IntVec> seeds) {
  std::vector<int> free_vertices;
  for (int i = 0; i < q.vertices(); ++i)
    if (!q.has_loop_at(i)) free_vertices.push_back(i);
  std::vector<IntVec> frontier(seeds.begin(), seeds.end());
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const IntVec& v : frontier)
      for (int i : free_vertices) {
        IntVec r = reflect_dim(q, i, v);
        if (!is_nonneg_vec(r) || !box.inside(r)) continue;
        if (seeds.insert(r).second) next.push_back(r);
      }
    frontier = std::move(next);
  }
  return seeds;
}

}  // namespace

RootEnumeration enumerate_positive_roots(const Quiver& q, const IntVec& bound) {
  if (static_cast<int>(bound.size()) != q.vertices())
    throw SizeMismatch("enumerate_positive_roots: bound length");
  Box box(bound);

  std::set<IntVec> real_seeds;
  for (int i = 0; i < q.vertices(); ++i)
    if (!q.has_loop_at(i)) {
      IntVec e = unit_vec(q.vertices(), i);
      if (box.inside(e)) real_seeds.insert(e);
    }
  std::set<IntVec> reals = reflection_closure(q, box, std::move(real_seeds));

  // Fundamental-region vectors found by a scan of the whole box. The scan is
  // embarrassingly parallel; hits are collected per thread and merged.
  std::vector<IntVec> fund;
#pragma omp parallel
  {
    std::vector<IntVec> local;
#pragma omp for schedule(static)
    for (std::size_t ix = 1; ix < box.cells; ++ix) {
      IntVec v = box.vector_at(ix);
      if (in_fundamental_region(q, v)) local.push_back(v);
    }
#pragma omp critical
    fund.insert(fund.end(), local.begin(), local.end());
  }
  std::set<IntVec> imag_seeds(fund.begin(), fund.end());
  std::set<IntVec> imags = reflection_closure(q, box, std::move(imag_seeds));

  RootEnumeration out;
  out.real_roots.assign(reals.begin(), reals.end());
  out.imaginary_roots.assign(imags.begin(), imags.end());
  return out;
}

std::vector<IntVec> enumerate_positive_real_roots(const Quiver& q, const IntVec& bound) {
  if (static_cast<int>(bound.size()) != q.vertices())
    throw SizeMismatch("enumerate_positive_real_roots: bound length");
  Box box(bound);
  std::set<IntVec> seeds;
  for (int i = 0; i < q.vertices(); ++i)
    if (!q.has_loop_at(i)) {
      IntVec e = unit_vec(q.vertices(), i);
      if (box.inside(e)) seeds.insert(e);
    }
  std::set<IntVec> reals = reflection_closure(q, box, std::move(seeds));
  return std::vector<IntVec>(reals.begin(), reals.end());
}

std::vector<IntVec> sigma_core(const Quiver& q, const std::vector<IntVec>& orth_all,
                               const std::vector<IntVec>& orth_real, const IntVec& bound) {
  Box box(bound);
  // reach[ix] marks vectors expressible as a sum of one or more orthogonal
  // positive roots. Summands are componentwise smaller, hence have smaller
  // mixed-radix index, so one ascending sweep suffices.
  std::vector<std::size_t> root_ix;
  root_ix.reserve(orth_all.size());
  for (const IntVec& r : orth_all) {
    if (!box.inside(r)) throw SizeMismatch("orthogonal root outside box");
    root_ix.push_back(box.index(r));
  }
  std::vector<char> reach(box.cells, 0);
  for (std::size_t ix = 1; ix < box.cells; ++ix) {
    IntVec v = box.vector_at(ix);
    for (std::size_t k = 0; k < orth_all.size() && !reach[ix]; ++k) {
      if (!leq_vec(orth_all[k], v)) continue;
      std::size_t rest = ix - root_ix[k];
      if (rest == 0 || reach[rest]) reach[ix] = 1;
    }
  }
  std::vector<IntVec> out;
  for (const IntVec& alpha : orth_real) {
    bool decomposable = false;
    std::size_t aix = box.index(alpha);
    for (std::size_t k = 0; k < orth_all.size() && !decomposable; ++k) {
      if (!leq_vec(orth_all[k], alpha)) continue;
      std::size_t rest = aix - root_ix[k];
      if (rest != 0 && reach[rest]) decomposable = true;
    }
    if (!decomposable) out.push_back(alpha);
  }
  std::sort(out.begin(), out.end());
  (void)q;
  return out;
}

}  // namespace dpa
