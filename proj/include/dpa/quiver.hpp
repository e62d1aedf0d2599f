#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpa/errors.hpp"

namespace dpa {

using IntVec = std::vector<std::int64_t>;

struct Arrow {
  std::string id;
  int tail = 0;
  int head = 0;
};

// Finite quiver on vertices 0..n-1. Loops and parallel arrows are allowed;
// arrow ids are distinct and may not end in '*' (that suffix is reserved for
// the doubled arrows).
class Quiver {
 public:
  Quiver(int vertices, std::vector<Arrow> arrows);

  int vertices() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  bool has_loop_at(int i) const;
  bool is_loop_free() const;

  // Number of arrows between i and j in either direction (i != j), counting
  // multiplicity.
  int edges_between(int i, int j) const;
  int loops_at(int i) const;

 private:
  int n_;
  std::vector<Arrow> arrows_;
};

struct DoubleArrow {
  std::string id;
  int tail = 0;
  int head = 0;
  int eps = 1;              // +1 on original arrows, -1 on reversals
  std::size_t partner = 0;  // index of the opposite arrow
};

// Double quiver: every arrow a gets a reversal a* with eps(a*) = -eps(a).
class DoubleQuiver {
 public:
  explicit DoubleQuiver(Quiver base);

  const Quiver& base() const { return base_; }
  int vertices() const { return base_.vertices(); }
  const std::vector<DoubleArrow>& arrows() const { return arrows_; }
  const DoubleArrow& arrow(std::size_t idx) const { return arrows_[idx]; }
  std::size_t arrow_index(const std::string& id) const;

  // Indices of arrows with head i, sorted by arrow id lexicographically.
  // This fixed order defines the block layout of every construction that
  // sums over in-arrows.
  const std::vector<std::size_t>& in_arrows(int i) const { return in_[i]; }

 private:
  Quiver base_;
  std::vector<DoubleArrow> arrows_;
  std::vector<std::vector<std::size_t>> in_;
};

// Bilinear forms on Z^vertices attached to the quiver.
std::int64_t ringel_form(const Quiver& q, const IntVec& a, const IntVec& b);
std::int64_t symmetric_form(const Quiver& q, const IntVec& a, const IntVec& b);
std::int64_t quadratic_form(const Quiver& q, const IntVec& a);

// Matrix of the symmetric form in the coordinate basis.
std::vector<IntVec> symmetric_matrix(const Quiver& q);

bool is_connected(const Quiver& q);
// Connectivity of the full subquiver on the support of v.
bool support_connected(const Quiver& q, const IntVec& v);

enum class QuiverClass { Dynkin, ExtendedDynkin, Other };

struct Classification {
  QuiverClass kind = QuiverClass::Other;
  IntVec delta;  // primitive positive radical generator; only for ExtendedDynkin
};

// Classifies a connected quiver by the signature of its symmetric form:
// positive definite (Dynkin), positive semidefinite with one-dimensional
// radical (ExtendedDynkin, radical generated by delta > 0), anything else
// (Other). Throws DisconnectedQuiver otherwise.
Classification classify_quiver(const Quiver& q);

// Vector helpers shared by the root-system code.
IntVec add_vec(const IntVec& a, const IntVec& b);
IntVec sub_vec(const IntVec& a, const IntVec& b);
IntVec scale_vec(std::int64_t c, const IntVec& a);
bool is_zero_vec(const IntVec& a);
bool is_nonneg_vec(const IntVec& a);
bool is_positive_nonzero(const IntVec& a);  // >= 0 and != 0
bool leq_vec(const IntVec& a, const IntVec& b);
std::int64_t height(const IntVec& a);
IntVec unit_vec(int n, int i);
std::string vec_to_string(const IntVec& a);

// Applies s_i; throws LoopAtVertex when i carries a loop.
IntVec reflect_dim(const Quiver& q, int i, const IntVec& a);

// Word of vertex indices applied right to left, as in composition.
IntVec apply_word(const Quiver& q, const std::vector<int>& word, const IntVec& a);

bool in_fundamental_region(const Quiver& q, const IntVec& a);

}  // namespace dpa
