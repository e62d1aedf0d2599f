#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "dpa/serre.hpp"

namespace dpa {

// Ext-quiver of a simple family: symmetric, loop-free arrow counts
// m[i][j] = dim Ext^1(S_i, S_j), with the members' dimension vectors kept as
// root labels.
struct ExtQuiverData {
  std::vector<std::string> labels;
  std::vector<IntVec> roots;  // empty when labels are abstract
  std::vector<std::vector<int>> m;

  std::size_t rank() const { return labels.size(); }
};

template <FieldType F>
ExtQuiverData build_ext_quiver(const SimpleFamily<F>& fam) {
  const std::size_t k = fam.members.size();
  ExtQuiverData eq;
  eq.labels = fam.labels;
  for (const auto& s : fam.members) eq.roots.push_back(s.dims);
  eq.m.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    if (ext_complex(fam.members[i], fam.members[i]).h1 != 0)
      throw InvalidFamily("Ext-quiver would have a loop at '" + fam.labels[i] + "'");
    for (std::size_t j = i + 1; j < k; ++j) {
      std::int64_t eij = ext_complex(fam.members[i], fam.members[j]).h1;
      std::int64_t eji = ext_complex(fam.members[j], fam.members[i]).h1;
      if (eij != eji)
        throw InvalidFamily("asymmetric Ext between '" + fam.labels[i] + "' and '" +
                            fam.labels[j] + "'");
      eq.m[i][j] = eq.m[j][i] = static_cast<int>(eij);
      // With no homomorphisms either way the arrow count must match the root
      // pairing: m_ij = -(alpha_i, alpha_j).
      if (hom_dim(fam.members[i], fam.members[j]) == 0 &&
          hom_dim(fam.members[j], fam.members[i]) == 0) {
        std::int64_t pairing =
            -symmetric_form(fam.members[i].dq.base(), fam.members[i].dims, fam.members[j].dims);
        if (eij != pairing)
          throw InvalidFamily("Ext count between '" + fam.labels[i] + "' and '" +
                              fam.labels[j] + "' disagrees with the root pairing");
      }
    }
  }
  return eq;
}

// The Ext-quiver as a plain quiver: m[i][j] arrows i -> j for i < j.
Quiver gamma_quiver(const ExtQuiverData& eq);

struct GammaComponent {
  std::vector<int> vertices;  // ascending indices into the Ext-quiver
  Classification cls;
};

// Connected components of the Ext-quiver, each classified by its symmetric
// form.
std::vector<GammaComponent> decompose_gamma(const ExtQuiverData& eq);

struct DeltaCertificate {
  std::vector<int> vertices;
  QuiverClass kind = QuiverClass::Other;
  IntVec delta_prime;   // radical generator of the component (if extended Dynkin)
  IntVec weighted_sum;  // sum delta'_v * root_v in the ambient quiver
  bool matches = false;
};

struct DeltaDecomposition {
  IntVec ambient_delta;
  std::vector<DeltaCertificate> components;
  bool ok = false;
};

// For an ambient extended Dynkin quiver: every component of the Ext-quiver
// must be extended Dynkin and its radical generator must recombine the
// member roots into the ambient delta.
DeltaDecomposition delta_decomposition(const ExtQuiverData& eq, const Quiver& ambient);

// ---------------------------------------------------------------------------
// The Coxeter machinery on the class lattice Z^rank with the pairing
// (e_s, e_t) = b[s][t], b[s][s] = 2, b[s][t] = -m_st.

struct ClassLattice {
  std::size_t rank = 0;
  std::vector<std::vector<std::int64_t>> b;
};

ClassLattice class_lattice(const ExtQuiverData& eq);

using LatticeVec = std::vector<mpz_class>;

LatticeVec lattice_vec(const IntVec& v);
LatticeVec sigma_action(const ClassLattice& lat, int s, const LatticeVec& x);
mpz_class lattice_pairing(const ClassLattice& lat, const LatticeVec& x, const LatticeVec& y);

// Group element carried in double entry: the canonical (lexicographically
// least) reduced word plus the matrices of w and w^{-1} acting on the class
// lattice. Every operation recomputes both sides and aborts on disagreement.
class CoxeterElement {
 public:
  static CoxeterElement identity(std::shared_ptr<const ClassLattice> lat);

  // Right multiplication by the generator s, with length bookkeeping via the
  // strong exchange condition when s is a descent.
  CoxeterElement times(int s) const;

  const std::vector<int>& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }
  const ClassLattice& lattice() const { return *lat_; }
  std::shared_ptr<const ClassLattice> lattice_ptr() const { return lat_; }

  // Column t equals w(e_t) resp. w^{-1}(e_t).
  const std::vector<LatticeVec>& forward() const { return fwd_; }
  const std::vector<LatticeVec>& inverse() const { return inv_; }

  // Matrix of the forward action, row-major.
  std::vector<std::vector<mpz_class>> matrix() const;

  // True when all coordinates of w(e_s) are nonnegative, i.e. s is not a
  // right descent.
  bool image_nonneg(int s) const;

  // Equality with double-entry enforcement: canonical words and matrices must
  // agree with each other or the comparison aborts.
  bool same(const CoxeterElement& o) const;

  std::string key() const;  // canonical word as a string

 private:
  CoxeterElement(std::shared_ptr<const ClassLattice> lat, std::vector<int> word,
                 std::vector<LatticeVec> fwd, std::vector<LatticeVec> inv);

  std::shared_ptr<const ClassLattice> lat_;
  std::vector<int> word_;
  std::vector<LatticeVec> fwd_, inv_;
};

// Fold of a word left to right; handles non-reduced input.
CoxeterElement element_from_word(std::shared_ptr<const ClassLattice> lat,
                                 const std::vector<int>& word);

// 0-Hecke (Demazure) product: length-decreasing letters are absorbed.
CoxeterElement demazure_product(std::shared_ptr<const ClassLattice> lat,
                                const std::vector<int>& word);

// All elements of length at most `bound` (BFS over right multiplication).
std::vector<CoxeterElement> elements_up_to_length(std::shared_ptr<const ClassLattice> lat,
                                                  std::size_t bound,
                                                  std::size_t max_count = 2000000);

// Class of a module in the lattice spanned by the family simples, when its
// composition multiplicities are determinate.
template <FieldType F>
CompositionResult class_of_module(const Representation<F>& m, const SimpleFamily<F>& fam) {
  return composition_vector(m, fam);
}

}  // namespace dpa
