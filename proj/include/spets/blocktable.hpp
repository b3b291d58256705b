#pragma once
// Partial character tables of principal blocks in the coprime case: the
// values gamma_{theta,phi}(t) on torus orbit representatives, the x = 1
// specialisation cross-check, column orthogonality, Frobenius divisibility
// sums, and integrality of restriction coefficients at x = q.

#include <string>
#include <utility>
#include <vector>

#include "spets/hecke.hpp"
#include "spets/laurent.hpp"
#include "spets/ratfun.hpp"
#include "spets/torus.hpp"

namespace spets {

// the bar involution matching t -> t^{-1}: inverts the ell-power roots of
// unity and fixes both x and the coefficients of coprime order
CycloNum bar_ell(const CycloNum& c, long ell);
LaurentX bar_ell(const LaurentX& f, long ell);

// one block character value computed from scratch: theta is the character
// identified with theta_point, phi a character row of its stabiliser, and
// at is an arbitrary point, not necessarily an orbit representative
LaurentX block_value(const Torus& t, long theta_point, long phi_row,
                     const std::vector<long>& at,
                     const std::string& data_dir = "");

// sum of squared block character degrees of the sub-spets on the
// stabiliser of the point; the full dim B_0 when the point is central
RatFun dim_block_at(const Torus& t, const std::vector<long>& at,
                    const std::string& data_dir = "");

class PartialTable {
 public:
  // needs an odd ell, level >= 1 and the coprime identification
  static PartialTable build(const Torus& t, const std::string& data_dir = "");

  const Torus& torus() const { return t_; }
  const std::string& data_dir() const { return dir_; }
  long rows() const { return static_cast<long>(labels_.size()); }
  long cols() const { return t_.orbit_count(); }
  // (dual orbit, character row of its stabiliser), ordered as the block
  // character degrees
  const std::vector<std::pair<long, long>>& labels() const { return labels_; }
  const std::vector<RatFun>& degrees() const { return degrees_; }
  long col_rep(long c) const { return t_.orbit(c).points[0]; }
  const LaurentX& entry(long row, long col) const {
    return entries_[static_cast<size_t>(row)][static_cast<size_t>(col)];
  }
  // value at any point, through its orbit
  const LaurentX& value(long row, long point_idx) const {
    return entry(row, t_.orbit_of(point_idx));
  }
  long row_of(long dual_orbit, long phi_row) const;  // -1 when absent
  long steinberg_row() const;
  long trivial_char_row() const;

 private:
  PartialTable(Torus t, std::string dir)
      : t_(std::move(t)), dir_(std::move(dir)) {}

  Torus t_;
  std::string dir_;
  std::vector<std::pair<long, long>> labels_;
  std::vector<RatFun> degrees_;
  std::vector<std::vector<LaurentX>> entries_;

  friend PartialTable table_from_json(const std::string& text, const Torus& t,
                                      const std::string& data_dir);
  friend PartialTable table_from_csv(const std::string& text, const Torus& t,
                                     const std::string& data_dir);
};

// specialises every entry at x = 1 and compares with the permutation
// character sum phi(1)/|W(theta)| * sum_w theta(t^w)
struct X1Report {
  long checked = 0;
  std::vector<std::pair<long, long>> mismatches;  // (row, col)
  bool pass() const { return mismatches.empty(); }
};
X1Report specialise_x1_check(const PartialTable& table);

// sum over the block of value(t) * bar(value(t')); zero for points in
// different orbits, the block dimension of the stabiliser sub-spets for
// conjugate points
struct OrthogonalityResult {
  RatFun sum;
  bool conjugate = false;
  RatFun expected;
  bool conventions_agree = false;  // bar form equals the t'^{-1} form
  bool pass = false;
};
OrthogonalityResult orthogonality_check(const PartialTable& table,
                                        const std::vector<long>& t,
                                        const std::vector<long>& tp);

// sum over orbit representatives of |G : C(t)| * chi(t) at x = q, checked
// against ell-valuation a * rank; the orbit-size weighted sum is carried
// alongside for the audit trail
struct FrobeniusRow {
  long row = 0;
  CycloNum sum;
  CycloNum weighted_sum;
  long val = 0;
  bool pass = false;
};
struct FrobeniusReport {
  mpq_class q;
  long needed = 0;
  std::vector<FrobeniusRow> rows;
  bool pass = true;
};
FrobeniusReport frobenius_check(const PartialTable& table, const mpq_class& q);

// coefficients |T|^{-1} sum_t chi(t)|_{x=q} psi(t^{-1}) over all of
// Irr(T), one stored value per dual orbit representative; a coefficient
// is good when it lies in Z_ell[zeta], the ell-valuation test.  Every
// psi in a dual orbit shares its coefficient, so bad counts weight by
// orbit size
struct RestrictionRow {
  long row = 0;
  std::vector<CycloNum> coeff;
  long bad = 0;
};
struct RestrictionReport {
  mpq_class q;
  std::vector<RestrictionRow> rows;
  long bad = 0;
  bool pass = true;
};
RestrictionReport restriction_check(const PartialTable& table,
                                    const mpq_class& q);

// serialisation; both formats round-trip through their parser
std::string table_to_json(const PartialTable& table);
PartialTable table_from_json(const std::string& text, const Torus& t,
                             const std::string& data_dir = "");
std::string table_to_csv(const PartialTable& table);
PartialTable table_from_csv(const std::string& text, const Torus& t,
                            const std::string& data_dir = "");

}  // namespace spets
