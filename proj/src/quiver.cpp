#include "dpa/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "dpa/linalg.hpp"

namespace dpa {

Quiver::Quiver(int vertices, std::vector<Arrow> arrows)
    : n_(vertices), arrows_(std::move(arrows)) {
  if (n_ < 1) throw InvalidQuiver("quiver needs at least one vertex");
  std::set<std::string> ids;
  for (const Arrow& a : arrows_) {
    if (a.id.empty()) throw InvalidQuiver("empty arrow id");
    if (a.id.back() == '*')
      throw InvalidQuiver("arrow id may not end in '*': " + a.id);
    if (!ids.insert(a.id).second) throw InvalidQuiver("duplicate arrow id: " + a.id);
    if (a.tail < 0 || a.tail >= n_ || a.head < 0 || a.head >= n_)
      throw InvalidQuiver("arrow endpoint out of range: " + a.id);
  }
}

bool Quiver::has_loop_at(int i) const {
  for (const Arrow& a : arrows_)
    if (a.tail == i && a.head == i) return true;
  return false;
}

bool Quiver::is_loop_free() const {
  for (const Arrow& a : arrows_)
    if (a.tail == a.head) return false;
  return true;
}

int Quiver::edges_between(int i, int j) const {
  int c = 0;
  for (const Arrow& a : arrows_)
    if ((a.tail == i && a.head == j) || (a.tail == j && a.head == i)) ++c;
  return c;
}

int Quiver::loops_at(int i) const {
  int c = 0;
  for (const Arrow& a : arrows_)
    if (a.tail == i && a.head == i) ++c;
  return c;
}

DoubleQuiver::DoubleQuiver(Quiver base) : base_(std::move(base)) {
  const auto& orig = base_.arrows();
  const std::size_t b = orig.size();
  arrows_.reserve(2 * b);
  for (std::size_t k = 0; k < b; ++k)
    arrows_.push_back(DoubleArrow{orig[k].id, orig[k].tail, orig[k].head, +1, k + b});
  for (std::size_t k = 0; k < b; ++k)
    arrows_.push_back(DoubleArrow{orig[k].id + "*", orig[k].head, orig[k].tail, -1, k});
  in_.assign(base_.vertices(), {});
  for (std::size_t k = 0; k < arrows_.size(); ++k) in_[arrows_[k].head].push_back(k);
  for (auto& lst : in_)
    std::sort(lst.begin(), lst.end(), [&](std::size_t x, std::size_t y) {
      return arrows_[x].id < arrows_[y].id;
    });
}

std::size_t DoubleQuiver::arrow_index(const std::string& id) const {
  for (std::size_t k = 0; k < arrows_.size(); ++k)
    if (arrows_[k].id == id) return k;
  throw InvalidQuiver("unknown arrow id: " + id);
}

static void check_dim(const Quiver& q, const IntVec& a, const char* what) {
  if (static_cast<int>(a.size()) != q.vertices())
    throw SizeMismatch(std::string(what) + ": vector length != vertex count");
}

std::int64_t ringel_form(const Quiver& q, const IntVec& a, const IntVec& b) {
  check_dim(q, a, "ringel_form");
  check_dim(q, b, "ringel_form");
  std::int64_t s = 0;
  for (int i = 0; i < q.vertices(); ++i) s += a[i] * b[i];
  for (const Arrow& ar : q.arrows()) s -= a[ar.tail] * b[ar.head];
  return s;
}

std::int64_t symmetric_form(const Quiver& q, const IntVec& a, const IntVec& b) {
  return ringel_form(q, a, b) + ringel_form(q, b, a);
}

std::int64_t quadratic_form(const Quiver& q, const IntVec& a) {
  return ringel_form(q, a, a);
}

std::vector<IntVec> symmetric_matrix(const Quiver& q) {
  const int n = q.vertices();
  std::vector<IntVec> c(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2 - 2 * q.loops_at(i);
  for (const Arrow& a : q.arrows())
    if (a.tail != a.head) {
      c[a.tail][a.head] -= 1;
      c[a.head][a.tail] -= 1;
    }
  return c;
}

bool is_connected(const Quiver& q) {
  IntVec all(q.vertices(), 1);
  return support_connected(q, all);
}

bool support_connected(const Quiver& q, const IntVec& v) {
  check_dim(q, v, "support_connected");
  const int n = q.vertices();
  std::vector<bool> in_supp(n, false), seen(n, false);
  int start = -1, count = 0;
  for (int i = 0; i < n; ++i)
    if (v[i] != 0) {
      in_supp[i] = true;
      ++count;
      if (start < 0) start = i;
    }
  if (count == 0) return false;
  std::vector<int> stack{start};
  seen[start] = true;
  int reached = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (const Arrow& a : q.arrows()) {
      int other = -1;
      if (a.tail == i) other = a.head;
      else if (a.head == i) other = a.tail;
      if (other >= 0 && in_supp[other] && !seen[other]) {
        seen[other] = true;
        ++reached;
        stack.push_back(other);
      }
    }
  }
  return reached == count;
}

Classification classify_quiver(const Quiver& q) {
  if (!is_connected(q)) throw DisconnectedQuiver("classify_quiver needs a connected quiver");
  const int n = q.vertices();
  std::vector<IntVec> c = symmetric_matrix(q);
  Rationals qq;
  Matrix<Rationals> cm(qq, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cm.at(i, j) = qq.from_int(c[i][j]);

  // Positive semidefiniteness by symmetric elimination: a negative pivot or
  // a zero diagonal entry with nonzero residual row refutes it.
  Matrix<Rationals> w = cm;
  std::vector<bool> done(n, false);
  bool psd = true;
  for (int step = 0; step < n && psd; ++step) {
    int piv = -1;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (w.at(i, i) < 0) {
        psd = false;
        break;
      }
      if (w.at(i, i) > 0 && piv < 0) piv = i;
    }
    if (!psd) break;
    if (piv < 0) {
      // remaining diagonal all zero: PSD iff remaining block is zero
      for (int i = 0; i < n && psd; ++i) {
        if (done[i]) continue;
        for (int j = 0; j < n; ++j)
          if (!done[j] && !(w.at(i, j) == 0)) {
            psd = false;
            break;
          }
      }
      break;
    }
    mpq_class d = w.at(piv, piv);
    for (int i = 0; i < n; ++i) {
      if (done[i] || i == piv) continue;
      mpq_class f = w.at(i, piv) / d;
      for (int j = 0; j < n; ++j) {
        if (done[j] || j == piv) continue;
        w.at(i, j) -= f * w.at(piv, j);
      }
    }
    done[piv] = true;
    for (int j = 0; j < n; ++j) {
      w.at(piv, j) = 0;
      w.at(j, piv) = 0;
    }
  }

  Classification out;
  if (!psd) {
    out.kind = QuiverClass::Other;
    return out;
  }
  std::size_t rk = rank(cm);
  if (rk == static_cast<std::size_t>(n)) {
    out.kind = QuiverClass::Dynkin;
    return out;
  }
  if (rk != static_cast<std::size_t>(n) - 1)
    throw Error("connected semidefinite form with corank > 1");
  Matrix<Rationals> ker = kernel_basis(cm);
  // Scale the rational kernel vector to the primitive integer generator.
  mpz_class lcm_den = 1;
  for (int i = 0; i < n; ++i) {
    mpz_class den = ker.at(i, 0).get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
    lcm_den = lcm_den / g * den;
  }
  std::vector<mpz_class> ints(n);
  mpz_class gcd_all = 0;
  for (int i = 0; i < n; ++i) {
    mpq_class scaled = ker.at(i, 0) * mpq_class(lcm_den);
    scaled.canonicalize();
    ints[i] = scaled.get_num();
    mpz_gcd(gcd_all.get_mpz_t(), gcd_all.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (gcd_all == 0) throw Error("zero radical generator");
  int sign = 0;
  for (int i = 0; i < n && sign == 0; ++i)
    if (ints[i] != 0) sign = ints[i] > 0 ? 1 : -1;
  out.delta.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    mpz_class v = ints[i] * sign / gcd_all;
    out.delta[i] = v.get_si();
    if (out.delta[i] <= 0)
      throw Error("radical generator of a connected semidefinite quiver must be positive");
  }
  out.kind = QuiverClass::ExtendedDynkin;
  return out;
}

IntVec add_vec(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw SizeMismatch("add_vec");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec sub_vec(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw SizeMismatch("sub_vec");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec scale_vec(std::int64_t c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool is_zero_vec(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

bool is_nonneg_vec(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v >= 0; });
}

bool is_positive_nonzero(const IntVec& a) {
  return is_nonneg_vec(a) && !is_zero_vec(a);
}

bool leq_vec(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw SizeMismatch("leq_vec");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::int64_t height(const IntVec& a) {
  return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

IntVec unit_vec(int n, int i) {
  IntVec r(n, 0);
  r[i] = 1;
  return r;
}

std::string vec_to_string(const IntVec& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

IntVec reflect_dim(const Quiver& q, int i, const IntVec& a) {
  check_dim(q, a, "reflect_dim");
  if (i < 0 || i >= q.vertices()) throw SizeMismatch("reflect_dim: bad vertex");
  if (q.has_loop_at(i)) throw LoopAtVertex("reflection at a loop vertex " + std::to_string(i));
  std::vector<IntVec> c = symmetric_matrix(q);
  std::int64_t pairing = 0;
  for (int j = 0; j < q.vertices(); ++j) pairing += c[i][j] * a[j];
  IntVec r = a;
  r[i] -= pairing;
  return r;
}

IntVec apply_word(const Quiver& q, const std::vector<int>& word, const IntVec& a) {
  IntVec r = a;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = reflect_dim(q, *it, r);
  return r;
}

bool in_fundamental_region(const Quiver& q, const IntVec& a) {
  check_dim(q, a, "in_fundamental_region");
  if (!is_positive_nonzero(a)) return false;
  if (!support_connected(q, a)) return false;
  std::vector<IntVec> c = symmetric_matrix(q);
  for (int i = 0; i < q.vertices(); ++i) {
    std::int64_t pairing = 0;
    for (int j = 0; j < q.vertices(); ++j) pairing += c[i][j] * a[j];
    if (pairing > 0) return false;
  }
  return true;
}

}  // namespace dpa
