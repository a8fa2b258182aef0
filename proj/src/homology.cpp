#include "locind/homology.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace locind {

const char* homology_variant_name(HomologyVariant v) {
  switch (v) {
    case HomologyVariant::hochschild: return "hochschild";
    case HomologyVariant::cyclic_bprime: return "cyclic_bprime";
    case HomologyVariant::cyclic_quotient: return "cyclic_quotient";
  }
  fail_internal("unknown homology variant");
}

HomologyVariant homology_variant_from_name(const std::string& name) {
  if (name == "hochschild") return HomologyVariant::hochschild;
  if (name == "cyclic_bprime") return HomologyVariant::cyclic_bprime;
  if (name == "cyclic_quotient") return HomologyVariant::cyclic_quotient;
  fail_validation("unknown homology variant '" + name + "'");
}

namespace {

using Tensor = std::vector<int>;  // unit ids, one per tensor slot

struct UnitTable {
  std::vector<AlgebraUnit> units;
  std::vector<Radius> props;        // propagation per unit
  std::vector<char> row_side;       // separable side of the row index
  std::vector<char> col_side;       //  "  of the column index
  bool has_sides = false;

  // merge two units: zero unless same block and inner indices meet
  int merged(int x, int y) const {
    const AlgebraUnit& a = units[size_t(x)];
    const AlgebraUnit& b = units[size_t(y)];
    if (a.block != b.block || a.col != b.row) return -1;
    return id_of(AlgebraUnit{a.block, a.row, b.col});
  }

  int id_of(const AlgebraUnit& u) const {
    auto it = std::lower_bound(units.begin(), units.end(), u);
    check_internal(it != units.end() && *it == u, "unknown algebra unit");
    return int(it - units.begin());
  }
};

UnitTable make_unit_table(const AlgPtr& alg, const HomologyOptions& opt) {
  UnitTable t;
  t.units = alg->unit_basis();  // ordered lexicographically by construction
  t.props.reserve(t.units.size());
  for (const auto& u : t.units) t.props.push_back(alg->unit_propagation(u));
  if (opt.sring_side) {
    const auto& side = *opt.sring_side;
    require(int(side.size()) == alg->block_count(),
            "separable idempotent data must cover every block");
    for (int b = 0; b < alg->block_count(); ++b)
      require(int(side[size_t(b)].size()) == alg->block_size(b),
              "separable idempotent data has wrong length");
    t.has_sides = true;
    for (const auto& u : t.units) {
      t.row_side.push_back(side[size_t(u.block)][size_t(u.row)]);
      t.col_side.push_back(side[size_t(u.block)][size_t(u.col)]);
    }
  }
  if (opt.epsilon && !opt.epsilon->infinite)
    require(alg->has_space(),
            "support filtering needs an algebra with a space attached");
  return t;
}

bool eps_active(const HomologyOptions& opt) {
  return opt.epsilon.has_value() && !opt.epsilon->infinite;
}

// all basis tensors of the given arity surviving the filters, emitted in
// lexicographic order; the budget bounds the emitted count
void enumerate_tensors(const UnitTable& t, const HomologyOptions& opt,
                       int arity, long budget, long& spent,
                       std::vector<Tensor>& out) {
  int n = int(t.units.size());
  Tensor cur;
  BigRat eps = eps_active(opt) ? opt.epsilon->value : BigRat(0);
  std::vector<BigRat> prefix{BigRat(0)};

  auto rec = [&](auto&& self, int depth) -> void {
    if (opt.cancel && *opt.cancel)
      fail_validation("basis enumeration cancelled");
    if (depth == arity) {
      // cyclic compatibility of the wrap-around junction
      if (t.has_sides && t.col_side[size_t(cur.back())] !=
                             t.row_side[size_t(cur.front())])
        return;
      if (++spent > budget)
        fail_budget("tensor basis exceeds the budget of " +
                    std::to_string(budget) + " elements at arity " +
                    std::to_string(arity));
      out.push_back(cur);
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (t.has_sides && depth > 0 &&
          t.col_side[size_t(cur.back())] != t.row_side[size_t(u)])
        continue;
      if (eps_active(opt)) {
        if (t.props[size_t(u)].infinite) continue;
        if (opt.support_mode == SupportMode::max) {
          if (t.props[size_t(u)].value > eps) continue;
        } else {
          BigRat s = prefix.back() + t.props[size_t(u)].value;
          if (s > eps) continue;
          prefix.push_back(std::move(s));
        }
      }
      cur.push_back(u);
      self(self, depth + 1);
      cur.pop_back();
      if (eps_active(opt) && opt.support_mode == SupportMode::sum)
        prefix.pop_back();
    }
  };
  rec(rec, 0);
}

// --- rotation orbits ---------------------------------------------------------

Tensor rotate_once(const Tensor& v) {
  Tensor r;
  r.reserve(v.size());
  r.push_back(v.back());
  r.insert(r.end(), v.begin(), v.end() - 1);
  return r;
}

struct OrbitInfo {
  Tensor rep;
  int steps_to_rep = 0;  // rotations applied to reach the representative
  int orbit_size = 0;
  bool dead = false;     // some rotation fixes the tensor with sign -1
};

// signed-rotation orbit data of a degree-(arity-1) tensor
OrbitInfo orbit_of(const Tensor& v) {
  int arity = int(v.size());
  int sign_step = (arity - 1) % 2 == 0 ? 1 : -1;  // sign of one rotation
  OrbitInfo info;
  info.rep = v;
  Tensor cur = v;
  int sign = 1;
  for (int j = 1; j <= arity; ++j) {
    cur = rotate_once(cur);
    sign *= sign_step;
    if (j < arity && cur < info.rep) {
      info.rep = cur;
      info.steps_to_rep = j;
    }
    if (j < arity && cur == v && sign < 0) info.dead = true;
    if (info.orbit_size == 0 && cur == v) info.orbit_size = j;
  }
  return info;
}

int rotation_sign(int degree, int steps) {
  return (degree % 2 == 0 || steps % 2 == 0) ? 1 : -1;
}

// --- boundary faces ----------------------------------------------------------

struct Face {
  Tensor tensor;
  int sign = 1;
};

// inner faces (bar differential); with wrap also the cyclic face
std::vector<Face> faces_of(const UnitTable& t, const Tensor& v, bool wrap) {
  int degree = int(v.size()) - 1;
  std::vector<Face> out;
  for (int s = 0; s < degree; ++s) {
    int m = t.merged(v[size_t(s)], v[size_t(s) + 1]);
    if (m < 0) continue;
    Tensor w;
    w.reserve(v.size() - 1);
    for (int i = 0; i < s; ++i) w.push_back(v[size_t(i)]);
    w.push_back(m);
    for (int i = s + 2; i <= degree; ++i) w.push_back(v[size_t(i)]);
    out.push_back(Face{std::move(w), s % 2 == 0 ? 1 : -1});
  }
  if (wrap && degree >= 1) {
    int m = t.merged(v[size_t(degree)], v[0]);
    if (m >= 0) {
      Tensor w;
      w.reserve(v.size() - 1);
      w.push_back(m);
      for (int i = 1; i < degree; ++i) w.push_back(v[size_t(i)]);
      out.push_back(Face{std::move(w), degree % 2 == 0 ? 1 : -1});
    }
  }
  return out;
}

struct DegreeBasis {
  std::vector<Tensor> tensors;              // orbit reps for cyclic variants
  std::map<Tensor, int> index;
  std::map<Tensor, std::pair<int, int>> orbit_lookup;  // tensor -> (row, sign)
};

DegreeBasis build_basis(const UnitTable& t, const HomologyOptions& opt,
                        int arity, long& spent) {
  DegreeBasis basis;
  std::vector<Tensor> all;
  enumerate_tensors(t, opt, arity, opt.budget, spent, all);
  if (opt.variant == HomologyVariant::hochschild) {
    basis.tensors = std::move(all);
    for (size_t i = 0; i < basis.tensors.size(); ++i)
      basis.index[basis.tensors[i]] = int(i);
    return basis;
  }
  for (const auto& v : all) {
    OrbitInfo info = orbit_of(v);
    if (info.rep != v) continue;  // keep only representatives
    if (info.dead) continue;
    basis.index[v] = int(basis.tensors.size());
    basis.tensors.push_back(v);
  }
  int degree = arity - 1;
  for (const auto& v : all) {
    OrbitInfo info = orbit_of(v);
    auto it = basis.index.find(info.rep);
    if (it == basis.index.end()) {
      basis.orbit_lookup[v] = {-1, 0};  // dead orbit: zero in the complex
    } else {
      basis.orbit_lookup[v] = {it->second,
                               rotation_sign(degree, info.steps_to_rep)};
    }
  }
  return basis;
}

// column of the boundary matrix for one domain basis vector
std::map<int, int> boundary_column(const UnitTable& t,
                                   const HomologyOptions& opt,
                                   const Tensor& domain,
                                   const DegreeBasis& target) {
  std::map<int, int> col;
  auto add = [&](int row, int c) {
    if (row < 0 || c == 0) return;
    auto [it, fresh] = col.emplace(row, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) col.erase(it);
    }
  };

  if (opt.variant == HomologyVariant::hochschild) {
    for (const auto& f : faces_of(t, domain, /*wrap=*/true)) {
      auto it = target.index.find(f.tensor);
      check_internal(it != target.index.end(),
                     "boundary left the filtered basis");
      add(it->second, f.sign);
    }
    return col;
  }

  if (opt.variant == HomologyVariant::cyclic_quotient) {
    for (const auto& f : faces_of(t, domain, /*wrap=*/true)) {
      auto it = target.orbit_lookup.find(f.tensor);
      check_internal(it != target.orbit_lookup.end(),
                     "boundary left the filtered basis");
      add(it->second.first, f.sign * it->second.second);
    }
    return col;
  }

  // cyclic_bprime: apply the bar differential to the invariant vector
  // N(domain) = sum of signed rotations, then read off coordinates in the
  // invariant basis
  int degree = int(domain.size()) - 1;
  std::map<Tensor, int> raw;
  Tensor cur = domain;
  for (int j = 0; j <= degree; ++j) {
    if (j > 0) cur = rotate_once(cur);
    int rsign = rotation_sign(degree, j);
    for (const auto& f : faces_of(t, cur, /*wrap=*/false)) {
      auto [it, fresh] = raw.emplace(f.tensor, rsign * f.sign);
      if (!fresh) it->second += rsign * f.sign;
    }
  }
  for (const auto& [tensor, c] : raw) {
    if (c == 0) continue;
    OrbitInfo info = orbit_of(tensor);
    if (tensor != info.rep) continue;  // read coordinates at representatives
    auto it = target.index.find(info.rep);
    if (it == target.index.end()) {
      check_internal(info.dead, "bar boundary left the invariant basis");
      continue;
    }
    int stab = int(tensor.size()) / info.orbit_size;
    check_internal(c % stab == 0, "invariant coordinate must be integral");
    add(it->second, c / stab);
  }
  // the raw image must be exactly the claimed invariant combination
  std::map<Tensor, int> rebuilt;
  for (const auto& [row, c] : col) {
    const Tensor& rep = target.tensors[size_t(row)];
    Tensor rot = rep;
    int deg = int(rep.size()) - 1;
    for (int j = 0; j < int(rep.size()); ++j) {
      if (j > 0) rot = rotate_once(rot);
      auto [it, fresh] = rebuilt.emplace(rot, c * rotation_sign(deg, j));
      if (!fresh) it->second += c * rotation_sign(deg, j);
    }
  }
  for (auto& [tensor, c] : raw) {
    auto it = rebuilt.find(tensor);
    int want = it == rebuilt.end() ? 0 : it->second;
    check_internal(c == want, "bar boundary is not rotation invariant");
    if (it != rebuilt.end()) rebuilt.erase(it);
  }
  for (const auto& [tensor, c] : rebuilt)
    check_internal(c == 0, "bar boundary is not rotation invariant");
  return col;
}

int matrix_rank(const UnitTable& t, const HomologyOptions& opt,
                const std::vector<Tensor>& domain, const DegreeBasis& target) {
  if (domain.empty() || target.tensors.empty()) return 0;
  if (opt.kind == ScalarKind::rational) {
    SparseRankAccum<Rat> accum(opt.cancel);
    for (const auto& v : domain) {
      std::map<int, Rat> col;
      for (const auto& [row, c] : boundary_column(t, opt, v, target))
        col[row] = Rat(long(c));
      accum.add_column(std::move(col));
    }
    return accum.rank();
  }
  if (long(domain.size()) > 4000 || long(target.tensors.size()) > 4000)
    fail_budget("float-mode boundary matrix exceeds 4000 columns or rows; "
                "use rational mode");
  Mat<Cplx> m(int(target.tensors.size()), int(domain.size()));
  for (size_t j = 0; j < domain.size(); ++j)
    for (const auto& [row, c] : boundary_column(t, opt, domain[j], target))
      m.at(row, int(j)) = Cplx(double(c), 0.0);
  return svd_rank(m);
}

}  // namespace

HomologyResult homology_ranks(const AlgPtr& alg, const HomologyOptions& opt) {
  require(alg != nullptr, "homology needs an algebra");
  require(opt.degree_lo >= 0 && opt.degree_hi >= opt.degree_lo,
          "degree range must satisfy 0 <= lo <= hi");
  alg->validate();
  UnitTable table = make_unit_table(alg, opt);

  // fast budget refusal before any enumeration: the unfiltered basis of one
  // degree already exceeds the budget
  if (!eps_active(opt) && !opt.sring_side) {
    long dim = long(table.units.size());
    double size = 1.0;
    for (int q = 0; q <= opt.degree_hi + 1; ++q) {
      size *= double(dim);
      if (q >= opt.degree_lo && size > double(opt.budget)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.0f", size);
        fail_budget("tensor basis at degree " + std::to_string(q) + " has " +
                    std::string(buf) + " elements, over the budget of " +
                    std::to_string(opt.budget));
      }
    }
  }

  long spent = 0;
  std::vector<DegreeBasis> bases;  // arity lo+1 .. hi+2
  for (int q = opt.degree_lo; q <= opt.degree_hi + 1; ++q)
    bases.push_back(build_basis(table, opt, q + 1, spent));

  HomologyResult res;
  res.variant = opt.variant;
  res.degree_lo = opt.degree_lo;
  res.degree_hi = opt.degree_hi;
  for (int q = opt.degree_lo; q <= opt.degree_hi; ++q) {
    const DegreeBasis& here = bases[size_t(q - opt.degree_lo)];
    const DegreeBasis& above = bases[size_t(q - opt.degree_lo) + 1];
    long dim = long(here.tensors.size());
    int out_rank = 0;
    if (q > 0) {
      // boundary out of degree q, into degree q-1
      long probe = 0;
      DegreeBasis below = q == opt.degree_lo
                              ? build_basis(table, opt, q, probe)
                              : DegreeBasis{};
      const DegreeBasis& target =
          q == opt.degree_lo ? below : bases[size_t(q - opt.degree_lo) - 1];
      out_rank = matrix_rank(table, opt, here.tensors, target);
    }
    int in_rank = matrix_rank(table, opt, above.tensors, here);
    res.dims.push_back(dim);
    res.ranks.push_back(int(dim) - out_rank - in_rank);
  }
  return res;
}

LocalHochschildReport local_hochschild_experiment(
    const SpacePtr& space, int max_degree, std::vector<BigRat> grid,
    SupportMode mode, long budget, const bool* cancel) {
  require(space != nullptr, "experiment needs a space");
  require(max_degree >= 0 && max_degree <= 2,
          "kernel experiment degrees are capped at 2");
  LocalHochschildReport rep;
  rep.space_label = space->label;
  rep.max_degree = max_degree;
  rep.mode = mode;

  BigRat d = space->has_simplices() ? space->max_simplex_diameter()
                                    : space->max_finite_distance();
  if (grid.empty()) grid = {BigRat(0), d, 2 * d, 3 * d};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  rep.grid = grid;
  rep.selected_eps = 2 * d;

  AlgPtr alg = FiniteAlgebra::kernel_algebra(space, 1);
  auto ranks_for = [&](const BigRat& eps) {
    HomologyOptions opt;
    opt.variant = HomologyVariant::hochschild;
    opt.degree_lo = 0;
    opt.degree_hi = max_degree;
    opt.epsilon = Radius::finite(eps);
    opt.support_mode = mode;
    opt.budget = budget;
    opt.cancel = cancel;
    return homology_ranks(alg, opt).ranks;
  };
  for (const BigRat& eps : grid) {
    rep.ranks_at.push_back(ranks_for(eps));
    if (eps == rep.selected_eps) rep.selected_ranks = rep.ranks_at.back();
  }
  // selected radius might not sit on a custom grid: compute it directly
  if (rep.selected_ranks.empty())
    rep.selected_ranks = ranks_for(rep.selected_eps);
  rep.oracle_ranks = simplicial_cohomology_ranks(*space, max_degree);
  rep.matches_oracle = rep.selected_ranks == rep.oracle_ranks;
  return rep;
}

}  // namespace locind
