#include "spets/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "spets/errors.hpp"

namespace spets {

FiniteGroup FiniteGroup::from_table(long n, std::vector<uint16_t> table) {
  if (static_cast<long>(table.size()) != n * n) throw ParseError("bad multiplication table size");
  FiniteGroup g;
  g.n_ = n;
  g.mul_ = std::move(table);
  for (long x = 0; x < n; ++x)
    if (g.mult(0, x) != x || g.mult(x, 0) != x) throw ParseError("element 0 is not the identity");
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_perms(long points, const std::vector<std::vector<int>>& gens) {
  std::vector<int> idperm(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) idperm[static_cast<size_t>(i)] = i;
  std::map<std::vector<int>, long> index;
  std::vector<std::vector<int>> elems{idperm};
  index[idperm] = 0;
  for (size_t head = 0; head < elems.size(); ++head) {
    std::vector<int> cur = elems[head];
    for (const auto& gp : gens) {
      std::vector<int> nxt(static_cast<size_t>(points));
      for (long i = 0; i < points; ++i) nxt[static_cast<size_t>(i)] = gp[static_cast<size_t>(cur[static_cast<size_t>(i)])];
      if (index.emplace(nxt, static_cast<long>(elems.size())).second) {
        elems.push_back(nxt);
        if (static_cast<long>(elems.size()) > kGroupOrderCap)
          throw OrderCapExceeded("group closure exceeds cap");
      }
    }
  }
  long n = static_cast<long>(elems.size());
  FiniteGroup g;
  g.n_ = n;
  g.mul_.assign(static_cast<size_t>(n * n), 0);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      std::vector<int> prod(static_cast<size_t>(points));
      for (long i = 0; i < points; ++i)
        prod[static_cast<size_t>(i)] = elems[static_cast<size_t>(a)][static_cast<size_t>(elems[static_cast<size_t>(b)][static_cast<size_t>(i)])];
      auto it = index.find(prod);
      if (it == index.end()) throw ParseError("permutation closure not closed");
      g.mul_[static_cast<size_t>(a * n + b)] = static_cast<uint16_t>(it->second);
    }
  g.perms_ = std::move(elems);
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  inv_.assign(static_cast<size_t>(n_), -1);
  order_.assign(static_cast<size_t>(n_), 0);
  for (long x = 0; x < n_; ++x) {
    long y = x, ord = 1;
    while (y != 0) {
      if (mult(y, x) == 0) inv_[static_cast<size_t>(x)] = y;
      y = mult(y, x);
      ++ord;
      if (ord > n_ + 1) throw ParseError("non-group table");
    }
    if (x == 0) inv_[0] = 0;
    order_[static_cast<size_t>(x)] = x == 0 ? 1 : ord;
  }
  class_of_.assign(static_cast<size_t>(n_), -1);
  for (long x = 0; x < n_; ++x) {
    if (class_of_[static_cast<size_t>(x)] >= 0) continue;
    long c = static_cast<long>(classes_.size());
    std::vector<long> cls;
    std::vector<long> stack{x};
    class_of_[static_cast<size_t>(x)] = c;
    while (!stack.empty()) {
      long y = stack.back();
      stack.pop_back();
      cls.push_back(y);
      for (long gidx = 0; gidx < n_; ++gidx) {
        long z = mult(mult(gidx, y), inverse(gidx));
        if (class_of_[static_cast<size_t>(z)] < 0) {
          class_of_[static_cast<size_t>(z)] = c;
          stack.push_back(z);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

std::vector<long> FiniteGroup::closure(const std::vector<long>& gens) const {
  std::set<long> seen{0};
  std::vector<long> frontier{0};
  while (!frontier.empty()) {
    std::vector<long> next;
    for (long x : frontier)
      for (long gidx : gens) {
        long y = mult(x, gidx);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return std::vector<long>(seen.begin(), seen.end());
}

std::vector<long> FiniteGroup::centralizer_of(long x) const {
  std::vector<long> out;
  for (long y = 0; y < n_; ++y)
    if (mult(y, x) == mult(x, y)) out.push_back(y);
  return out;
}

std::vector<long> FiniteGroup::commutator_subgroup() const {
  std::vector<long> comms;
  std::set<long> seen;
  for (long a = 0; a < n_; ++a)
    for (long b = a + 1; b < n_; ++b) {
      long c = mult(mult(inverse(a), inverse(b)), mult(a, b));
      if (seen.insert(c).second) comms.push_back(c);
    }
  return closure(comms.empty() ? std::vector<long>{0} : comms);
}

bool FiniteGroup::is_abelian() const { return class_count() == n_; }

Quotient make_quotient(const FiniteGroup& g, const std::vector<long>& normal) {
  Quotient q;
  q.coset_of.assign(static_cast<size_t>(g.size()), -1);
  std::vector<long> reps;
  for (long x = 0; x < g.size(); ++x) {
    if (q.coset_of[static_cast<size_t>(x)] >= 0) continue;
    long c = static_cast<long>(reps.size());
    reps.push_back(x);
    for (long d : normal) {
      long e = g.mult(d, x);
      long& slot = q.coset_of[static_cast<size_t>(e)];
      if (slot >= 0 && slot != c) throw ParseError("quotient by a non-normal subgroup");
      slot = c;
    }
  }
  long m = static_cast<long>(reps.size());
  std::vector<uint16_t> table(static_cast<size_t>(m * m));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j)
      table[static_cast<size_t>(i * m + j)] = static_cast<uint16_t>(
          q.coset_of[static_cast<size_t>(g.mult(reps[static_cast<size_t>(i)],
                                                reps[static_cast<size_t>(j)]))]);
  q.grp = FiniteGroup::from_table(m, std::move(table));
  return q;
}

std::vector<std::vector<CycloNum>> abelian_chars(const FiniteGroup& q) {
  if (!q.is_abelian()) throw SplitFailure("abelian_chars needs an abelian group");
  long E = 1;
  for (long x = 0; x < q.size(); ++x) E = std::lcm(E, q.element_order(x));

  // grow a subgroup chain, carrying each character as a zeta_E exponent
  // per subgroup element
  std::vector<long> sub{0};
  std::map<long, long> pos{{0, 0}};
  std::vector<std::vector<long>> expo{{0}};
  while (static_cast<long>(sub.size()) < q.size()) {
    long y = 0;
    while (pos.count(y)) ++y;
    long k = 1, p = y;
    while (!pos.count(p)) {
      p = q.mult(p, y);
      ++k;
    }
    long tpos = pos.at(p);  // y^k lands here
    std::vector<long> nsub;
    std::map<long, long> npos;
    std::vector<std::pair<long, long>> shape;  // (old position, j)
    long yl = 0;  // y^j
    for (long j = 0; j < k; ++j) {
      for (size_t i = 0; i < sub.size(); ++i) {
        long e = q.mult(sub[i], yl);
        npos[e] = static_cast<long>(nsub.size());
        nsub.push_back(e);
        shape.emplace_back(static_cast<long>(i), j);
      }
      yl = q.mult(yl, y);
    }
    std::vector<std::vector<long>> nexpo;
    for (const auto& a : expo) {
      long t = a[static_cast<size_t>(tpos)];
      long count = 0;
      for (long s = 0; s < E; ++s) {
        if ((k * s - t) % E != 0) continue;
        ++count;
        std::vector<long> b(nsub.size());
        for (size_t i = 0; i < nsub.size(); ++i)
          b[i] = (a[static_cast<size_t>(shape[i].first)] + s * shape[i].second) % E;
        nexpo.push_back(std::move(b));
      }
      if (count != k) throw SplitFailure("abelian character extension failed");
    }
    sub = std::move(nsub);
    pos = std::move(npos);
    expo = std::move(nexpo);
  }

  std::vector<std::vector<CycloNum>> out;
  for (const auto& a : expo) {
    std::vector<CycloNum> vals(static_cast<size_t>(q.size()));
    for (long x = 0; x < q.size(); ++x)
      vals[static_cast<size_t>(x)] =
          CycloNum::root_of_unity(E, a[static_cast<size_t>(pos.at(x))]).shrink();
    out.push_back(std::move(vals));
  }
  return out;
}

Subgroup make_subgroup(const FiniteGroup& g, const std::vector<long>& gens) {
  Subgroup s;
  s.to_parent = g.closure(gens);
  long m = static_cast<long>(s.to_parent.size());
  std::map<long, long> local;
  for (long i = 0; i < m; ++i) local[s.to_parent[static_cast<size_t>(i)]] = i;
  std::vector<uint16_t> table(static_cast<size_t>(m * m));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      long p = g.mult(s.to_parent[static_cast<size_t>(i)], s.to_parent[static_cast<size_t>(j)]);
      auto it = local.find(p);
      if (it == local.end()) throw ParseError("subgroup closure not closed");
      table[static_cast<size_t>(i * m + j)] = static_cast<uint16_t>(it->second);
    }
  s.grp = FiniteGroup::from_table(m, std::move(table));
  return s;
}

CycloNum CharTable::inner(const std::vector<CycloNum>& f, const std::vector<CycloNum>& h) const {
  CycloNum acc;
  for (long c = 0; c < g_->class_count(); ++c) {
    const CycloNum& fv = f[static_cast<size_t>(c)];
    const CycloNum& hv = h[static_cast<size_t>(c)];
    if (fv.is_zero() || hv.is_zero()) continue;
    acc += CycloNum(g_->class_size(c)) * fv * hv.conj();
  }
  return acc / CycloNum(g_->size());
}

long CharTable::trivial_row() const {
  for (long i = 0; i < rows(); ++i) {
    bool all1 = true;
    for (const auto& v : table_[static_cast<size_t>(i)])
      if (v != CycloNum(1L)) {
        all1 = false;
        break;
      }
    if (all1) return i;
  }
  throw SplitFailure("missing trivial character");
}

std::vector<long> CharTable::restriction_mults(long i, const Subgroup& h, const CharTable& ht) const {
  std::vector<CycloNum> res(static_cast<size_t>(h.grp.class_count()));
  for (long c = 0; c < h.grp.class_count(); ++c)
    res[static_cast<size_t>(c)] = value(i, h.to_parent[static_cast<size_t>(h.grp.class_rep(c))]);
  std::vector<long> out(static_cast<size_t>(ht.rows()));
  for (long j = 0; j < ht.rows(); ++j) {
    CycloNum m = ht.inner(res, ht.row(j));
    if (!m.is_rational() || m.rational_value().get_den() != 1)
      throw SplitFailure("non-integral restriction multiplicity");
    out[static_cast<size_t>(j)] = static_cast<long>(m.rational_value().get_num().get_si());
  }
  return out;
}

namespace {

// total order on cyclotomic values via the canonical display
int cyclo_cmp(const CycloNum& x, const CycloNum& y) {
  if (x == y) return 0;
  return x.str() < y.str() ? -1 : 1;
}

struct Saturator {
  const FiniteGroup& g;
  long k;                       // target class count
  std::vector<std::vector<CycloNum>> found;
  std::vector<std::vector<CycloNum>> leftovers;
  std::vector<long> sqmap;      // class of rep^2 per class

  explicit Saturator(const FiniteGroup& grp) : g(grp), k(grp.class_count()) {
    sqmap.resize(static_cast<size_t>(k));
    for (long c = 0; c < k; ++c) {
      long r = g.class_rep(c);
      sqmap[static_cast<size_t>(c)] = g.class_of(g.mult(r, r));
    }
  }

  CycloNum inner(const std::vector<CycloNum>& f, const std::vector<CycloNum>& h) const {
    CycloNum acc;
    for (long c = 0; c < k; ++c) {
      if (f[static_cast<size_t>(c)].is_zero() || h[static_cast<size_t>(c)].is_zero()) continue;
      acc += CycloNum(g.class_size(c)) * f[static_cast<size_t>(c)] * h[static_cast<size_t>(c)].conj();
    }
    return acc / CycloNum(g.size());
  }

  // subtract known irreducible constituents; returns remaining norm
  mpq_class reduce(std::vector<CycloNum>& f) {
    for (const auto& chi : found) {
      CycloNum m = inner(f, chi);
      if (m.is_zero()) continue;
      for (long c = 0; c < k; ++c) f[static_cast<size_t>(c)] -= m * chi[static_cast<size_t>(c)];
    }
    CycloNum nrm = inner(f, f);
    if (!nrm.is_rational()) throw SplitFailure("non-rational norm");
    return nrm.rational_value();
  }

  // returns true if f yielded a new irreducible
  bool offer(std::vector<CycloNum> f) {
    mpq_class nrm = reduce(f);
    if (nrm == 0) return false;
    if (nrm == 1) {
      // normalise sign so the degree is positive
      if (f[0].is_rational() && f[0].rational_value() < 0)
        for (auto& v : f) v = -v;
      found.push_back(std::move(f));
      return true;
    }
    if (leftovers.size() < 600) leftovers.push_back(std::move(f));
    return false;
  }

  // linear character of a subgroup induced up, via class sums
  std::vector<CycloNum> induce_linear(const Subgroup& s, const std::vector<CycloNum>& vals) const {
    std::vector<CycloNum> out(static_cast<size_t>(k));
    for (size_t i = 0; i < s.to_parent.size(); ++i)
      out[static_cast<size_t>(g.class_of(s.to_parent[i]))] += vals[i];
    for (long c = 0; c < k; ++c) {
      mpq_class scale(g.size() / g.class_size(c), s.grp.size());
      scale.canonicalize();
      out[static_cast<size_t>(c)] *= CycloNum(scale);
    }
    return out;
  }

  std::vector<CycloNum> tensor(const std::vector<CycloNum>& f, const std::vector<CycloNum>& h) const {
    std::vector<CycloNum> out(static_cast<size_t>(k));
    for (long c = 0; c < k; ++c) out[static_cast<size_t>(c)] = f[static_cast<size_t>(c)] * h[static_cast<size_t>(c)];
    return out;
  }

  std::vector<CycloNum> wedge(const std::vector<CycloNum>& f, int sign) const {
    // (f(x)^2 +- f(x^2))/2
    std::vector<CycloNum> out(static_cast<size_t>(k));
    for (long c = 0; c < k; ++c) {
      CycloNum sq = f[static_cast<size_t>(c)] * f[static_cast<size_t>(c)];
      CycloNum pw = f[static_cast<size_t>(sqmap[static_cast<size_t>(c)])];
      out[static_cast<size_t>(c)] = (sign > 0 ? sq + pw : sq - pw) / CycloNum(2L);
    }
    return out;
  }

  // all linear characters of a group, via its derived quotient
  static std::vector<std::vector<CycloNum>> linear_chars(const FiniteGroup& h) {
    Quotient q = make_quotient(h, h.commutator_subgroup());
    std::vector<std::vector<CycloNum>> out;
    for (const auto& qc : abelian_chars(q.grp)) {
      std::vector<CycloNum> vals(static_cast<size_t>(h.size()));
      for (long x = 0; x < h.size(); ++x)
        vals[static_cast<size_t>(x)] = qc[static_cast<size_t>(q.coset_of[static_cast<size_t>(x)])];
      out.push_back(std::move(vals));
    }
    return out;
  }

  void run() {
    for (const auto& lin : linear_chars(g)) {
      std::vector<CycloNum> f(static_cast<size_t>(k));
      for (long c = 0; c < k; ++c)
        f[static_cast<size_t>(c)] = lin[static_cast<size_t>(g.class_rep(c))];
      offer(std::move(f));
    }
    if (static_cast<long>(found.size()) == k) return;

    // induced linear characters of every proper subgroup generated by a
    // class representative and one further element
    std::set<std::vector<long>> seen_sub;
    for (long c = 0; c < k && static_cast<long>(found.size()) < k; ++c) {
      long r = g.class_rep(c);
      for (long y = 0; y < g.size() && static_cast<long>(found.size()) < k; ++y) {
        std::vector<long> elems = g.closure({r, y});
        if (static_cast<long>(elems.size()) == g.size()) continue;
        if (!seen_sub.insert(elems).second) continue;
        Subgroup s = make_subgroup(g, elems);
        for (const auto& vals : linear_chars(s.grp))
          if (offer(induce_linear(s, vals)) && static_cast<long>(found.size()) == k) break;
      }
    }

    for (int round = 0; round < 12 && static_cast<long>(found.size()) < k; ++round) {
      // re-reduce stashed remainders against the grown irreducible set
      std::vector<std::vector<CycloNum>> stash = std::move(leftovers);
      leftovers.clear();
      bool progress = false;
      for (auto& f : stash) progress |= offer(std::move(f));
      std::vector<std::vector<CycloNum>> snap_found = found;
      std::vector<std::vector<CycloNum>> snap_left = leftovers;
      std::vector<std::vector<CycloNum>> cands;
      for (size_t i = 0; i < snap_found.size(); ++i) {
        cands.push_back(wedge(snap_found[i], -1));
        cands.push_back(wedge(snap_found[i], +1));
        for (size_t j = i; j < snap_found.size(); ++j)
          cands.push_back(tensor(snap_found[i], snap_found[j]));
        for (size_t j = 0; j < snap_left.size(); ++j)
          cands.push_back(tensor(snap_found[i], snap_left[j]));
      }
      for (size_t i = 0; i < snap_left.size(); ++i) {
        cands.push_back(wedge(snap_left[i], -1));
        cands.push_back(wedge(snap_left[i], +1));
        for (size_t j = i; j < snap_left.size(); ++j)
          cands.push_back(tensor(snap_left[i], snap_left[j]));
      }
      for (auto& f : cands) {
        if (static_cast<long>(found.size()) == k) break;
        progress |= offer(std::move(f));
      }
      if (!progress) throw SplitFailure("character ring saturation stalled");
    }
    if (static_cast<long>(found.size()) != k)
      throw SplitFailure("character ring saturation incomplete");
  }
};

}  // namespace

CharTable CharTable::build(const FiniteGroup& g) {
  Saturator s(g);
  s.run();
  // deterministic row order: by degree, then canonical values
  std::sort(s.found.begin(), s.found.end(),
            [](const std::vector<CycloNum>& x, const std::vector<CycloNum>& y) {
              mpq_class dx = x[0].rational_value(), dy = y[0].rational_value();
              if (dx != dy) return dx < dy;
              for (size_t i = 1; i < x.size(); ++i) {
                int c = cyclo_cmp(x[i], y[i]);
                if (c) return c < 0;
              }
              return false;
            });
  CharTable t;
  t.g_ = &g;
  for (auto& row : s.found) {
    if (!row[0].is_rational() || row[0].rational_value().get_den() != 1 || row[0].rational_value() <= 0)
      throw SplitFailure("bad degree in character table");
    t.degrees_.push_back(static_cast<long>(row[0].rational_value().get_num().get_si()));
    t.table_.push_back(std::move(row));
  }
  // orthonormality safeguard
  for (long i = 0; i < t.rows(); ++i)
    for (long j = i; j < t.rows(); ++j) {
      CycloNum ip = t.inner(t.row(i), t.row(j));
      if (ip != CycloNum(i == j ? 1L : 0L)) throw SplitFailure("character rows not orthonormal");
    }
  long sum = 0;
  for (long d : t.degrees_) sum += d * d;
  if (sum != g.size()) throw SplitFailure("degree squares do not sum to the order");
  return t;
}

}  // namespace spets
