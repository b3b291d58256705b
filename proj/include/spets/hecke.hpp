#pragma once
// Spetsial Hecke parameters and Schur elements for the catalog groups:
// a closed form for the cyclic types, fake-degree quotients for the
// reflection types (computed live for type A, loaded from bundled data
// files otherwise), and the block character degrees they induce.

#include <string>
#include <utility>
#include <vector>

#include "spets/ratfun.hpp"
#include "spets/reflgroup.hpp"
#include "spets/torus.hpp"

namespace spets {

// one parameter family per orbit of reflecting hyperplanes: u_0 = x and
// u_j = zeta_e^j for 0 < j < e, with e the pointwise stabiliser order
struct SpecialisationMap {
  long z = 1;  // scalar matrices in W, the exponent denominator
  std::vector<std::vector<LaurentX>> params;
};

SpecialisationMap spetsial_specialisation(const ReflectionGroup& w);

// rows follow the character table; degree[r] * schur[r] is Poincare
struct SchurSet {
  std::vector<RatFun> schur;
  std::vector<RatFun> degree;
};

// full catalog group, dispatched by name; NoProvider when neither a
// closed form nor a bundled data file covers the type
SchurSet schur_elements(const ReflectionGroup& w,
                        const std::string& data_dir = "");

// a reflection subgroup acting on the full ambient space; rows follow
// subct, which must be the table of sub.grp
SchurSet subgroup_schur(const ReflectionGroup& w, const Subgroup& sub,
                        const CharTable& subct);

// invariant degrees of the subgroup on the ambient space, ones included
std::vector<long> subgroup_degrees(const ReflectionGroup& w,
                                   const Subgroup& sub);

// prod (x^{d_i}-1) over the ambient degrees divided by the same product
// over subdeg: the x-prime part of the index of a full-rank centraliser
RatFun index_xprime(const ReflectionGroup& w,
                    const std::vector<long>& subdeg);

// block characters gamma_{theta,phi} of the principal block: one label
// per (dual orbit, character row of its stabiliser), with the degree
struct BlockLabels {
  std::vector<std::pair<long, long>> labels;
  std::vector<RatFun> degree;
};

BlockLabels block_degrees(const Torus& t, const std::string& data_dir = "");

// sum of squared degrees over the block labels
RatFun dim_block(const Torus& t, const std::string& data_dir = "");

}  // namespace spets
