#pragma once

#include <vector>

#include "dpa/field.hpp"
#include "dpa/quiver.hpp"

namespace dpa {

// Weight vector lambda in K^vertices.
template <FieldType F>
struct Weight {
  F field;
  std::vector<typename F::Element> coords;
};

template <FieldType F>
Weight<F> make_weight(F field, std::vector<typename F::Element> coords) {
  return Weight<F>{std::move(field), std::move(coords)};
}

template <FieldType F>
Weight<F> weight_from_ints(F field, const IntVec& v) {
  Weight<F> w{std::move(field), {}};
  w.coords.reserve(v.size());
  for (std::int64_t x : v) w.coords.push_back(w.field.from_int(x));
  return w;
}

template <FieldType F>
bool weights_equal(const Weight<F>& a, const Weight<F>& b) {
  if (!a.field.same(b.field) || a.coords.size() != b.coords.size()) return false;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    if (!a.field.eq(a.coords[i], b.coords[i])) return false;
  return true;
}

// lambda . alpha = sum_i lambda_i alpha_i.
template <FieldType F>
typename F::Element pair_weight(const Weight<F>& w, const IntVec& a) {
  if (w.coords.size() != a.size()) throw SizeMismatch("pair_weight: length mismatch");
  typename F::Element s = w.field.zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    s = w.field.add(s, w.field.mul(w.coords[i], w.field.from_int(a[i])));
  return s;
}

// Dual reflection r_i on weights: (r_i lambda)_j = lambda_j - (eps_i, eps_j) lambda_i,
// so that r_i(lambda) . alpha = lambda . s_i(alpha). Throws LoopAtVertex.
template <FieldType F>
Weight<F> reflect_weight(const Quiver& q, int i, const Weight<F>& w) {
  if (static_cast<int>(w.coords.size()) != q.vertices())
    throw SizeMismatch("reflect_weight: length mismatch");
  if (i < 0 || i >= q.vertices()) throw SizeMismatch("reflect_weight: bad vertex");
  if (q.has_loop_at(i))
    throw LoopAtVertex("weight reflection at a loop vertex " + std::to_string(i));
  std::vector<IntVec> c = symmetric_matrix(q);
  Weight<F> r = w;
  for (int j = 0; j < q.vertices(); ++j)
    r.coords[j] = w.field.sub(
        w.coords[j], w.field.mul(w.field.from_int(c[i][j]), w.coords[i]));
  return r;
}

template <FieldType F>
Weight<F> apply_word_weight(const Quiver& q, const std::vector<int>& word, const Weight<F>& w) {
  Weight<F> r = w;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = reflect_weight(q, *it, r);
  return r;
}

struct RootEnumeration {
  std::vector<IntVec> real_roots;       // positive real roots within the box
  std::vector<IntVec> imaginary_roots;  // positive imaginary roots within the box
};

// All positive roots alpha with 0 <= alpha <= bound componentwise, each list
// sorted lexicographically. Real roots are the reflection orbit of the
// loop-free coordinate vectors; imaginary roots are the orbit of the
// fundamental region. Height-monotone descent keeps both searches inside the
// box, so the box enumeration is complete.
RootEnumeration enumerate_positive_roots(const Quiver& q, const IntVec& bound);

std::vector<IntVec> enumerate_positive_real_roots(const Quiver& q, const IntVec& bound);

// Minimal lambda-orthogonal positive real roots within the box: orthogonal
// positive real roots admitting no splitting into two or more lambda-orthogonal
// positive roots (imaginary summands allowed). Knapsack reachability over the
// box decides decomposability exactly.
std::vector<IntVec> sigma_core(const Quiver& q, const std::vector<IntVec>& orth_all,
                               const std::vector<IntVec>& orth_real, const IntVec& bound);

template <FieldType F>
std::vector<IntVec> sigma_lambda_re(const Quiver& q, const Weight<F>& w, const IntVec& bound) {
  RootEnumeration roots = enumerate_positive_roots(q, bound);
  std::vector<IntVec> orth_all, orth_real;
  for (const IntVec& r : roots.real_roots)
    if (w.field.is_zero(pair_weight(w, r))) {
      orth_all.push_back(r);
      orth_real.push_back(r);
    }
  for (const IntVec& r : roots.imaginary_roots)
    if (w.field.is_zero(pair_weight(w, r))) orth_all.push_back(r);
  return sigma_core(q, orth_all, orth_real, bound);
}

}  // namespace dpa
