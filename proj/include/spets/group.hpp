#pragma once
// Finite groups as explicit multiplication tables, with conjugacy classes
// and an exact character table builder.  Element 0 is the identity.

#include <cstdint>
#include <vector>

#include "spets/cyclo.hpp"

namespace spets {

inline constexpr long kGroupOrderCap = 10000;

class FiniteGroup {
 public:
  FiniteGroup() = default;
  // table is n*n row-major with table[a*n+b] = a*b, element 0 the identity
  static FiniteGroup from_table(long n, std::vector<uint16_t> table);
  // closure of permutations of {0..points-1}; element order is BFS order
  static FiniteGroup from_perms(long points, const std::vector<std::vector<int>>& gens);

  long size() const { return n_; }
  long mult(long x, long y) const { return mul_[static_cast<size_t>(x * n_ + y)]; }
  long inverse(long x) const { return inv_[static_cast<size_t>(x)]; }
  long element_order(long x) const { return order_[static_cast<size_t>(x)]; }

  long class_count() const { return static_cast<long>(classes_.size()); }
  long class_of(long x) const { return class_of_[static_cast<size_t>(x)]; }
  const std::vector<std::vector<long>>& classes() const { return classes_; }
  long class_rep(long c) const { return classes_[static_cast<size_t>(c)].front(); }
  long class_size(long c) const { return static_cast<long>(classes_[static_cast<size_t>(c)].size()); }
  long centralizer_order(long x) const { return n_ / class_size(class_of(x)); }

  // sorted element list of the subgroup generated by gens
  std::vector<long> closure(const std::vector<long>& gens) const;
  std::vector<long> centralizer_of(long x) const;
  // sorted element list of the derived subgroup
  std::vector<long> commutator_subgroup() const;
  bool is_abelian() const;

  // permutation data when built from perms (empty otherwise)
  const std::vector<std::vector<int>>& perms() const { return perms_; }

 private:
  void finish();  // inverses, orders, classes

  long n_ = 0;
  std::vector<uint16_t> mul_;
  std::vector<long> inv_, order_, class_of_;
  std::vector<std::vector<long>> classes_;
  std::vector<std::vector<int>> perms_;
};

// a subgroup packaged with its own table; to_parent maps local indices out
struct Subgroup {
  std::vector<long> to_parent;
  FiniteGroup grp;
};

Subgroup make_subgroup(const FiniteGroup& g, const std::vector<long>& gens);

// quotient by a normal subgroup; coset_of maps parent elements to quotient
// elements, with the coset of the identity at index 0
struct Quotient {
  FiniteGroup grp;
  std::vector<long> coset_of;
};
Quotient make_quotient(const FiniteGroup& g, const std::vector<long>& normal);

// every character of an abelian group, one value per element, built by
// extending along a chain of cyclic steps
std::vector<std::vector<CycloNum>> abelian_chars(const FiniteGroup& q);

// rows indexed by irreducible, columns by conjugacy class of g
class CharTable {
 public:
  static CharTable build(const FiniteGroup& g);

  long rows() const { return static_cast<long>(table_.size()); }
  const std::vector<CycloNum>& row(long i) const { return table_[static_cast<size_t>(i)]; }
  long degree(long i) const { return degrees_[static_cast<size_t>(i)]; }
  const FiniteGroup& group() const { return *g_; }

  CycloNum value(long i, long element) const {
    return table_[static_cast<size_t>(i)][static_cast<size_t>(g_->class_of(element))];
  }
  // <f, h> over the group, conjugating the second argument
  CycloNum inner(const std::vector<CycloNum>& f, const std::vector<CycloNum>& h) const;
  // index of the row with all values 1
  long trivial_row() const;
  // multiplicity vector of parent row i restricted to a subgroup, indexed
  // by the subgroup's own irreducible rows
  std::vector<long> restriction_mults(long i, const Subgroup& h, const CharTable& ht) const;

 private:
  const FiniteGroup* g_ = nullptr;
  std::vector<std::vector<CycloNum>> table_;
  std::vector<long> degrees_;
};

}  // namespace spets
