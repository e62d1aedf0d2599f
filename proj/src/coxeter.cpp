#include "dpa/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace dpa {

Quiver gamma_quiver(const ExtQuiverData& eq) {
  std::vector<Arrow> arrows;
  int counter = 0;
  for (std::size_t i = 0; i < eq.rank(); ++i)
    for (std::size_t j = i + 1; j < eq.rank(); ++j)
      for (int c = 0; c < eq.m[i][j]; ++c)
        arrows.push_back(Arrow{"g" + std::to_string(counter++), static_cast<int>(i),
                               static_cast<int>(j)});
  return Quiver(static_cast<int>(eq.rank()), std::move(arrows));
}

std::vector<GammaComponent> decompose_gamma(const ExtQuiverData& eq) {
  const int n = static_cast<int>(eq.rank());
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> queue{s};
    comp[s] = nc;
    while (!queue.empty()) {
      int at = queue.front();
      queue.pop_front();
      for (int t = 0; t < n; ++t)
        if (comp[t] < 0 && eq.m[at][t] > 0) {
          comp[t] = nc;
          queue.push_back(t);
        }
    }
    ++nc;
  }
  std::vector<GammaComponent> out(nc);
  for (int v = 0; v < n; ++v) out[comp[v]].vertices.push_back(v);
  for (GammaComponent& gc : out) {
    std::vector<int> local(n, -1);
    for (std::size_t k = 0; k < gc.vertices.size(); ++k) local[gc.vertices[k]] = static_cast<int>(k);
    std::vector<Arrow> arrows;
    int counter = 0;
    for (std::size_t a = 0; a < gc.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < gc.vertices.size(); ++b)
        for (int c = 0; c < eq.m[gc.vertices[a]][gc.vertices[b]]; ++c)
          arrows.push_back(Arrow{"g" + std::to_string(counter++), static_cast<int>(a),
                                 static_cast<int>(b)});
    gc.cls = classify_quiver(Quiver(static_cast<int>(gc.vertices.size()), std::move(arrows)));
  }
  return out;
}

DeltaDecomposition delta_decomposition(const ExtQuiverData& eq, const Quiver& ambient) {
  if (eq.roots.empty()) throw Error("delta_decomposition needs root labels");
  Classification ac = classify_quiver(ambient);
  if (ac.kind != QuiverClass::ExtendedDynkin)
    throw InvalidQuiver("delta_decomposition: ambient quiver is not extended Dynkin");
  DeltaDecomposition out;
  out.ambient_delta = ac.delta;
  out.ok = true;
  for (const GammaComponent& gc : decompose_gamma(eq)) {
    DeltaCertificate cert;
    cert.vertices = gc.vertices;
    cert.kind = gc.cls.kind;
    IntVec sum(static_cast<std::size_t>(ambient.vertices()), 0);
    if (gc.cls.kind == QuiverClass::ExtendedDynkin) {
      cert.delta_prime = gc.cls.delta;
      for (std::size_t k = 0; k < gc.vertices.size(); ++k)
        sum = add_vec(sum, scale_vec(gc.cls.delta[k], eq.roots[gc.vertices[k]]));
    }
    cert.weighted_sum = sum;
    cert.matches = gc.cls.kind == QuiverClass::ExtendedDynkin && sum == ac.delta;
    if (!cert.matches) out.ok = false;
    out.components.push_back(std::move(cert));
  }
  return out;
}

ClassLattice class_lattice(const ExtQuiverData& eq) {
  ClassLattice lat;
  lat.rank = eq.rank();
  lat.b.assign(lat.rank, std::vector<std::int64_t>(lat.rank, 0));
  for (std::size_t s = 0; s < lat.rank; ++s)
    for (std::size_t t = 0; t < lat.rank; ++t)
      lat.b[s][t] = s == t ? 2 : -static_cast<std::int64_t>(eq.m[s][t]);
  return lat;
}

LatticeVec lattice_vec(const IntVec& v) {
  LatticeVec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = static_cast<long>(v[k]);
  return out;
}

LatticeVec sigma_action(const ClassLattice& lat, int s, const LatticeVec& x) {
  if (s < 0 || static_cast<std::size_t>(s) >= lat.rank || x.size() != lat.rank)
    throw SizeMismatch("sigma_action: bad arguments");
  mpz_class pair = 0;
  for (std::size_t t = 0; t < lat.rank; ++t) pair += lat.b[s][t] * x[t];
  LatticeVec y = x;
  y[static_cast<std::size_t>(s)] -= pair;
  return y;
}

mpz_class lattice_pairing(const ClassLattice& lat, const LatticeVec& x, const LatticeVec& y) {
  if (x.size() != lat.rank || y.size() != lat.rank)
    throw SizeMismatch("lattice_pairing: bad arguments");
  mpz_class out = 0;
  for (std::size_t s = 0; s < lat.rank; ++s)
    for (std::size_t t = 0; t < lat.rank; ++t) out += x[s] * lat.b[s][t] * y[t];
  return out;
}

namespace {

std::vector<LatticeVec> identity_columns(std::size_t rank) {
  std::vector<LatticeVec> cols(rank, LatticeVec(rank, 0));
  for (std::size_t t = 0; t < rank; ++t) cols[t][t] = 1;
  return cols;
}

bool columns_identity(const std::vector<LatticeVec>& cols) {
  for (std::size_t t = 0; t < cols.size(); ++t)
    for (std::size_t u = 0; u < cols.size(); ++u)
      if (cols[t][u] != (t == u ? 1 : 0)) return false;
  return true;
}

bool vec_nonneg(const LatticeVec& v) {
  for (const mpz_class& e : v)
    if (e < 0) return false;
  return true;
}

bool vec_nonpos_nonzero(const LatticeVec& v) {
  bool nonzero = false;
  for (const mpz_class& e : v) {
    if (e > 0) return false;
    if (e != 0) nonzero = true;
  }
  return nonzero;
}

// Right multiplication by sigma_s: columns w(e_t) and w^{-1}(e_t).
void right_mult(const ClassLattice& lat, std::vector<LatticeVec>& fwd,
                std::vector<LatticeVec>& inv, int s) {
  const LatticeVec ws = fwd[static_cast<std::size_t>(s)];
  for (std::size_t t = 0; t < lat.rank; ++t) {
    if (lat.b[s][t] == 0 && static_cast<std::size_t>(s) != t) continue;
    for (std::size_t u = 0; u < lat.rank; ++u)
      fwd[t][u] -= lat.b[s][t] * ws[u];
  }
  for (std::size_t t = 0; t < lat.rank; ++t) inv[t] = sigma_action(lat, s, inv[t]);
}

// Left multiplication by sigma_t.
void left_mult(const ClassLattice& lat, std::vector<LatticeVec>& fwd,
               std::vector<LatticeVec>& inv, int t) {
  for (std::size_t u = 0; u < lat.rank; ++u) fwd[u] = sigma_action(lat, t, fwd[u]);
  const LatticeVec it = inv[static_cast<std::size_t>(t)];
  for (std::size_t u = 0; u < lat.rank; ++u) {
    if (lat.b[t][u] == 0 && static_cast<std::size_t>(u) != static_cast<std::size_t>(t)) continue;
    for (std::size_t r = 0; r < lat.rank; ++r)
      inv[u][r] -= lat.b[t][u] * it[r];
  }
}

void fold_word(const ClassLattice& lat, const std::vector<int>& word,
               std::vector<LatticeVec>& fwd, std::vector<LatticeVec>& inv) {
  fwd = identity_columns(lat.rank);
  inv = identity_columns(lat.rank);
  for (int s : word) right_mult(lat, fwd, inv, s);
}

// Canonical reduced word: repeatedly extract the smallest left descent; t is
// a left descent of w exactly when w^{-1}(e_t) is negative.
std::vector<int> extract_canonical(const ClassLattice& lat, std::vector<LatticeVec> fwd,
                                   std::vector<LatticeVec> inv) {
  std::vector<int> out;
  std::size_t guard = 0;
  while (!columns_identity(fwd)) {
    if (++guard > 100000) throw Error("canonical word extraction did not terminate");
    int descent = -1;
    for (std::size_t t = 0; t < lat.rank; ++t) {
      if (vec_nonpos_nonzero(inv[t])) {
        descent = static_cast<int>(t);
        break;
      }
      if (!vec_nonneg(inv[t]) && !vec_nonpos_nonzero(inv[t]))
        throw Error("root image with mixed signs; pairing is not of Coxeter type here");
    }
    if (descent < 0) throw Error("nonidentity element without a left descent");
    out.push_back(descent);
    left_mult(lat, fwd, inv, descent);
  }
  return out;
}

bool columns_equal(const std::vector<LatticeVec>& a, const std::vector<LatticeVec>& b) {
  for (std::size_t t = 0; t < a.size(); ++t)
    if (a[t] != b[t]) return false;
  return true;
}

}  // namespace

CoxeterElement::CoxeterElement(std::shared_ptr<const ClassLattice> lat, std::vector<int> word,
                               std::vector<LatticeVec> fwd, std::vector<LatticeVec> inv)
    : lat_(std::move(lat)), word_(std::move(word)), fwd_(std::move(fwd)), inv_(std::move(inv)) {}

CoxeterElement CoxeterElement::identity(std::shared_ptr<const ClassLattice> lat) {
  std::size_t rank = lat->rank;
  return CoxeterElement(std::move(lat), {}, identity_columns(rank), identity_columns(rank));
}

bool CoxeterElement::image_nonneg(int s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= lat_->rank)
    throw SizeMismatch("generator index out of range");
  const LatticeVec& v = fwd_[static_cast<std::size_t>(s)];
  if (vec_nonneg(v)) return true;
  if (!vec_nonpos_nonzero(v))
    throw Error("root image with mixed signs; pairing is not of Coxeter type here");
  return false;
}

CoxeterElement CoxeterElement::times(int s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= lat_->rank)
    throw SizeMismatch("generator index out of range");
  // Matrix side.
  std::vector<LatticeVec> fwd = fwd_, inv = inv_;
  right_mult(*lat_, fwd, inv, s);

  // Word side: append, or delete the strong-exchange letter.
  std::vector<int> draft;
  if (image_nonneg(s)) {
    draft = word_;
    draft.push_back(s);
  } else {
    LatticeVec target = fwd_[static_cast<std::size_t>(s)];
    for (mpz_class& e : target) e = -e;
    std::vector<LatticeVec> pf = identity_columns(lat_->rank);
    std::vector<LatticeVec> pi = identity_columns(lat_->rank);
    std::size_t hit = SIZE_MAX;
    for (std::size_t j = 0; j < word_.size(); ++j) {
      // beta_j = sigma_{s_1} ... sigma_{s_{j-1}} (e_{s_j})
      if (pf[static_cast<std::size_t>(word_[j])] == target) {
        hit = j;
        break;
      }
      right_mult(*lat_, pf, pi, word_[j]);
    }
    if (hit == SIZE_MAX) throw Error("strong exchange found no letter to delete");
    draft = word_;
    draft.erase(draft.begin() + static_cast<std::ptrdiff_t>(hit));
  }

  // Double entry: the draft word must reproduce the matrices, and the
  // canonical word extracted from the matrices must have the same length.
  std::vector<LatticeVec> cf, ci;
  fold_word(*lat_, draft, cf, ci);
  if (!columns_equal(cf, fwd) || !columns_equal(ci, inv))
    throw Error("word and matrix bookkeeping disagree after multiplication");
  std::vector<int> canonical = extract_canonical(*lat_, fwd, inv);
  if (canonical.size() != draft.size())
    throw Error("canonical word length disagrees with the exchange bookkeeping");
  fold_word(*lat_, canonical, cf, ci);
  if (!columns_equal(cf, fwd) || !columns_equal(ci, inv))
    throw Error("canonical word does not reproduce the matrices");
  return CoxeterElement(lat_, std::move(canonical), std::move(fwd), std::move(inv));
}

std::vector<std::vector<mpz_class>> CoxeterElement::matrix() const {
  std::vector<std::vector<mpz_class>> rows(lat_->rank, std::vector<mpz_class>(lat_->rank));
  for (std::size_t u = 0; u < lat_->rank; ++u)
    for (std::size_t t = 0; t < lat_->rank; ++t) rows[u][t] = fwd_[t][u];
  return rows;
}

bool CoxeterElement::same(const CoxeterElement& o) const {
  if (lat_->b != o.lat_->b) throw SizeMismatch("comparing elements over different lattices");
  bool words = word_ == o.word_;
  bool mats = columns_equal(fwd_, o.fwd_) && columns_equal(inv_, o.inv_);
  if (words != mats) throw Error("double-entry mismatch: words and matrices disagree");
  return words;
}

std::string CoxeterElement::key() const {
  std::string k;
  for (int s : word_) k += std::to_string(s) + ".";
  return k;
}

CoxeterElement element_from_word(std::shared_ptr<const ClassLattice> lat,
                                 const std::vector<int>& word) {
  CoxeterElement e = CoxeterElement::identity(std::move(lat));
  for (int s : word) e = e.times(s);
  return e;
}

CoxeterElement demazure_product(std::shared_ptr<const ClassLattice> lat,
                                const std::vector<int>& word) {
  CoxeterElement e = CoxeterElement::identity(std::move(lat));
  for (int s : word)
    if (e.image_nonneg(s)) e = e.times(s);
  return e;
}

std::vector<CoxeterElement> elements_up_to_length(std::shared_ptr<const ClassLattice> lat,
                                                  std::size_t bound, std::size_t max_count) {
  std::vector<CoxeterElement> out;
  std::unordered_set<std::string> seen;
  out.push_back(CoxeterElement::identity(lat));
  seen.insert(out.back().key());
  std::size_t frontier_begin = 0;
  for (std::size_t len = 0; len < bound; ++len) {
    std::size_t frontier_end = out.size();
    for (std::size_t at = frontier_begin; at < frontier_end; ++at)
      for (std::size_t s = 0; s < lat->rank; ++s) {
        if (!out[at].image_nonneg(static_cast<int>(s))) continue;  // stay length-increasing
        CoxeterElement next = out[at].times(static_cast<int>(s));
        if (next.length() != len + 1) throw Error("length bookkeeping broke during enumeration");
        if (seen.insert(next.key()).second) {
          if (out.size() >= max_count) throw Error("element enumeration exceeded its budget");
          out.push_back(std::move(next));
        }
      }
    frontier_begin = frontier_end;
    if (frontier_begin == out.size()) break;  // finite group exhausted
  }
  return out;
}

}  // namespace dpa
