#pragma once
// Finite complex reflection groups given by generating matrices over a
// cyclotomic field: closure, root-line permutation action, invariant
// degrees, fake degrees, and the character table of the abstract group.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spets/group.hpp"
#include "spets/laurent.hpp"
#include "spets/linalg.hpp"
#include "spets/residue.hpp"

namespace spets {

struct CatalogEntry {
  std::string name;
  long rank = 0;
  long cyclo_order = 1;
  std::vector<CMat> generators;
  std::vector<std::string> flags;
};

// directory holding catalog.json and friends; SPETS_DATA_DIR wins
std::string default_data_dir();
std::vector<CatalogEntry> load_catalog(const std::string& dir = "");
CatalogEntry load_group_entry(const std::string& name,
                              const std::string& dir = "");
// canonical serialization; the shipped file is byte-identical to this
std::string catalog_to_json(const std::vector<CatalogEntry>& entries);

class ReflectionGroup {
 public:
  static ReflectionGroup build(const CatalogEntry& entry);

  const std::string& name() const { return name_; }
  long rank() const { return rank_; }
  long cyclo_order() const { return order_m_; }
  long size() const { return static_cast<long>(mats_.size()); }
  const CMat& matrix(long i) const { return mats_[static_cast<size_t>(i)]; }
  long element_of(const CMat& m) const;  // -1 when absent
  const std::vector<long>& generator_elements() const { return gen_idx_; }
  const FiniteGroup& group() const { return *grp_; }
  const CharTable& chars() const { return *chars_; }

  const std::vector<long>& reflections() const { return reflections_; }
  long reflection_count() const {
    return static_cast<long>(reflections_.size());
  }
  const std::vector<long>& degrees() const { return degrees_; }
  // prod_i (x^{d_i} - 1) / (x - 1)^rank
  LaurentX poincare() const;
  const LaurentX& fake_degree(long row) const {
    return fake_[static_cast<size_t>(row)];
  }
  long det_row() const { return det_row_; }
  std::vector<CycloNum> det_values() const;  // per conjugacy class

  // basis of the common fixed space of a set of elements
  std::vector<std::vector<CycloNum>> fixed_space(
      const std::vector<long>& elems) const;
  // all elements fixing every vector of the given basis pointwise
  std::vector<long> pointwise_stabilizer(
      const std::vector<std::vector<CycloNum>>& basis) const;
  // a subgroup is parabolic when it equals the pointwise stabilizer of
  // its own fixed space
  bool is_parabolic(const std::vector<long>& subgroup) const;

 private:
  ReflectionGroup() = default;
  std::vector<CycloNum> det_values_init() const;

  std::string name_;
  long rank_ = 0;
  long order_m_ = 1;
  std::vector<CMat> mats_;
  std::map<std::string, long> index_;
  std::vector<long> gen_idx_;
  std::shared_ptr<const FiniteGroup> grp_;  // heap-stable, CharTable points in
  std::shared_ptr<const CharTable> chars_;
  std::vector<long> reflections_;
  std::vector<long> degrees_;
  std::vector<LaurentX> fake_;
  long det_row_ = -1;
};

// stacked (w - 1) over all group elements has rank equal to the rank of
// the group modulo ell; the embedding must cover every matrix entry
bool full_rank_mod_ell(const ReflectionGroup& w, ResidueEmbedding& emb);

}  // namespace spets
