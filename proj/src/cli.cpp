#include "locind/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locind/json_io.hpp"

namespace locind {

namespace {

// pinned tolerances and limits for the acceptance gate
constexpr double kFloatAnchorTol = 1e-9;
constexpr long kNormalFormZeroBudget = 80'000'000;

// --- seeded random material ---------------------------------------------

AlgElem<Rat> random_elem(const AlgPtr& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3);
  AlgElem<Rat> v = AlgElem<Rat>::zero(alg);
  for (auto& blk : v.blocks)
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) blk.at(i, j) = Rat(num(rng));
  return v;
}

TensorChain<Rat> random_chain(const AlgPtr& alg, int degree, int terms,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-2, 2);
  TensorChain<Rat> c = TensorChain<Rat>::zero(alg, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<AlgElem<Rat>> f;
    for (int i = 0; i <= degree; ++i) f.push_back(random_elem(alg, rng));
    c.add_term(Rat(num(rng)), std::move(f));
  }
  return c;
}

ASCochain<Rat> random_cochain(const FinitePointSpace& space, int degree,
                              int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> point(0, space.n_points - 1);
  std::uniform_int_distribution<int> numer(-9, 9);
  ASCochain<Rat> f;
  f.degree = degree;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> tuple(size_t(degree) + 1);
    for (auto& x : tuple) x = point(rng);
    int nu = numer(rng);
    f.add(tuple, Rat(nu == 0 ? 1 : nu));
  }
  f.prune_zeros();
  return f;
}

AlgMat<Rat> random_invertible(const AlgPtr& alg, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    AlgMat<Rat> u = AlgMat<Rat>::from_elem(random_elem(alg, rng));
    try {
      (void)u.inverse();
      return u;
    } catch (const Error&) {
      // singular draw, try again
    }
  }
  fail_internal("could not draw an invertible element in 100 attempts");
}

// conjugate of the (1,0) diagonal idempotent by a random invertible
AlgMat<Rat> random_idempotent(const AlgPtr& alg, std::mt19937_64& rng) {
  AlgMat<Rat> p0 = AlgMat<Rat>::from_elem(
      AlgElem<Rat>::diagonal_idempotent(alg, {{1, 0}}));
  AlgMat<Rat> g = random_invertible(alg, rng);
  return g * p0 * g.inverse();
}

// --- formatting -----------------------------------------------------------

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2fs", s);
  return buf;
}

std::string ranks_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

// --- criterion runner -------------------------------------------------------

CriterionOutcome run_criterion(int id, std::string title, double limit_s,
                               const std::function<bool(std::string&)>& body) {
  CriterionOutcome row;
  row.id = id;
  row.title = std::move(title);
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  try {
    row.pass = body(detail);
  } catch (const Error& e) {
    row.pass = false;
    detail = std::string(e.kind_name()) + ": " + e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (limit_s > 0 && secs > limit_s) {
    row.pass = false;
    detail += " (over the " + fmt_seconds(limit_s) + " limit)";
  }
  row.detail =
      detail.empty() ? fmt_seconds(secs) : detail + " [" + fmt_seconds(secs) + "]";
  return row;
}

OperatorModel shift_model(int w, ScalarKind kind = ScalarKind::rational) {
  return make_operator_model(LaurentPoly::monomial(w, Rat(1)), 8, kind);
}

// --- the twelve criteria ------------------------------------------------

bool crit_full_complex(std::string& detail) {
  const std::vector<int> want = {1, 0, 0};
  auto a = as_cohomology(*circle_space(3), 2, Radius::inf(),
                         ScalarKind::rational);
  auto tri = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto b = as_cohomology(*tri, 2, Radius::inf(), ScalarKind::rational);
  detail = "circle(3) " + ranks_str(a.ranks) + ", triangle " +
           ranks_str(b.ranks) + ", exact";
  return a.ranks == want && b.ranks == want;
}

bool crit_localized_oracle(std::string& detail) {
  auto tri = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto tscan = localized_cohomology_scan(*tri, 1, ScalarKind::rational);
  auto toracle = simplicial_cohomology_ranks(*tri, 1);
  auto sphere = simplicial_space({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto sscan = localized_cohomology_scan(*sphere, 2, ScalarKind::rational);
  auto soracle = simplicial_cohomology_ranks(*sphere, 2);
  detail = "circle " + ranks_str(tscan.final_ranks) + ", sphere " +
           ranks_str(sscan.final_ranks) + ", both match the simplicial oracle";
  return tscan.stabilized && sscan.stabilized &&
         tscan.final_ranks == toracle && sscan.final_ranks == soracle &&
         tscan.final_ranks == std::vector<int>{1, 1} &&
         sscan.final_ranks == std::vector<int>{1, 0, 1};
}

bool crit_connecting(std::string& detail) {
  for (int w = -3; w <= 3; ++w) {
    // the construction cross-checks invertibility, idempotency, the block
    // form, and the quadratic remainder identity internally
    auto data = hardy_connecting(shift_model(w));
    if (!(residue_trace(data) == Rat(w))) {
      detail = "trace mismatch at winding " + std::to_string(w);
      return false;
    }
  }
  detail = "windings -3..3 at K=8: block identities hold, trace = winding";
  return true;
}

bool crit_index_oracle(std::string& detail) {
  for (int w = -3; w <= 3; ++w) {
    Rat rt = residue_trace(hardy_connecting(shift_model(w)));
    if (rect_shift_index(w, 8) != w || !(rt == Rat(w))) {
      detail = "oracle mismatch at winding " + std::to_string(w);
      return false;
    }
  }
  detail =
      "rank-nullity index = remainder trace = winding; classical index is "
      "the negative";
  return true;
}

bool crit_boundaries_square_to_zero(std::string& detail) {
  std::mt19937_64 rng(505);
  std::vector<SpacePtr> spaces = {circle_space(5),
                                  simplicial_space({{0, 1}, {1, 2}, {0, 2}})};
  for (int t = 0; t < 200; ++t) {
    const auto& sp = spaces[size_t(t % 2)];
    int deg = 1 + int(rng() % 3);
    auto f = random_cochain(*sp, deg, 4, rng);
    bool ok;
    if (t % 2 == 0) {
      ok = free_coboundary(*sp, free_coboundary(*sp, f)).is_zero();
    } else {
      Radius eps = Radius::finite(BigRat(1));
      ok = coboundary(*sp, coboundary(*sp, f, eps), eps).is_zero();
    }
    if (!ok) {
      detail = "d^2 != 0 at cochain trial " + std::to_string(t);
      return false;
    }
  }
  std::vector<AlgPtr> algebras = {FiniteAlgebra::matrix_algebra(2),
                                  FiniteAlgebra::matrix_algebra(3),
                                  FiniteAlgebra::two_scalars()};
  for (const auto& alg : algebras)
    for (int t = 0; t < 200; ++t) {
      auto c = random_chain(alg, 1 + int(rng() % 3), 3, rng);
      if (!hochschild_b(hochschild_b(c)).is_zero() ||
          !bar_bprime(bar_bprime(c)).is_zero()) {
        detail = "boundary square nonzero over " + alg->label;
        return false;
      }
    }
  detail = "200 cochains (two spaces) + 600 chains (M2, M3, C+C), exact";
  return true;
}

bool crit_character_closedness(std::string& detail) {
  std::mt19937_64 rng(606);
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  for (int t = 0; t < 20; ++t) {
    AlgMat<Rat> p = random_idempotent(m2, rng);
    if (!p.is_idempotent()) {
      detail = "conjugation did not give an idempotent";
      return false;
    }
    for (int q = 1; q <= 2; ++q) {
      auto ch = chern_even(p, q);
      if (!bar_bprime(ch).is_zero() ||
          !cyclic_symmetrize(hochschild_b(ch)).is_zero() ||
          !(lambda_rotate(ch) - ch).is_zero()) {
        detail = "even chain not closed at trial " + std::to_string(t);
        return false;
      }
    }
  }
  for (int t = 0; t < 20; ++t) {
    AlgMat<Rat> u = random_invertible(m2, rng);
    for (int q = 1; q <= 2; ++q) {
      // odd chains are cycles of the quotient by 1 - lambda: over the
      // rationals that kernel is exactly where the cyclic average of b dies.
      // Neither b' nor lambda-invariance of the chain itself holds for a
      // general invertible, so neither is asserted.
      auto ch = chern_odd(u, q);
      if (!cyclic_symmetrize(hochschild_b(ch)).is_zero()) {
        detail = "odd chain not closed at trial " + std::to_string(t);
        return false;
      }
    }
  }
  detail =
      "20 seeded idempotents + 20 invertibles over M2, q <= 2: even chains "
      "kill b' and averaged b and are rotation-fixed; odd chains kill the "
      "averaged b";
  return true;
}

bool crit_residue_normal_form(std::string& detail) {
  for (int w : {1, 2}) {
    auto R = remainder_position_kernel(shift_model(w));
    auto alg = FiniteAlgebra::kernel_algebra(R.space, 2);
    auto Rm = AlgMat<Cyclo>::from_elem(kernel_algebra_element(R, alg));
    auto sep = position_separable_context(R, alg);
    auto ch = chern_residue(Rm, sep, 1);
    if (!s_normal_form(bar_bprime(ch), sep).is_zero(kNormalFormZeroBudget) ||
        !s_normal_form(cyclic_symmetrize(hochschild_b(ch)), sep)
             .is_zero(kNormalFormZeroBudget)) {
      detail = "residue boundary survives normal form at winding " +
               std::to_string(w);
      return false;
    }
  }
  std::mt19937_64 rng(707);
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  auto e = AlgElem<Rat>::diagonal_idempotent(m2, {{1, 0}});
  auto ctx = SeparableContext<Rat>::make(e, AlgElem<Rat>::one(m2));
  for (int t = 0; t < 100; ++t) {
    auto c = random_chain(m2, 1 + int(rng() % 3), 2, rng);
    auto nf = s_normal_form(c, ctx);
    if (!(s_normal_form(nf, ctx) - nf).is_zero()) {
      detail = "normal form is not idempotent at trial " + std::to_string(t);
      return false;
    }
    auto x = random_elem(m2, rng);
    auto y = random_elem(m2, rng);
    TensorChain<Rat> slide = TensorChain<Rat>::zero(m2, 1);
    slide.add_term(Rat(1), {x * e, y});
    slide.add_term(Rat(-1), {x, e * y});
    if (!s_normal_form(slide, ctx).is_zero()) {
      detail = "idempotent does not slide across slots at trial " +
               std::to_string(t);
      return false;
    }
  }
  detail =
      "u=z and u=z^2 kernels at q=1, exact; 100-chain idempotency + slide "
      "audit";
  return true;
}

bool crit_matrix_extension(std::string& detail) {
  HomologyOptions opt;
  opt.variant = HomologyVariant::hochschild;
  opt.degree_lo = 0;
  opt.degree_hi = 2;
  auto r1 = homology_ranks(FiniteAlgebra::scalars(), opt);
  auto r2 = homology_ranks(FiniteAlgebra::matrix_algebra(2), opt);
  auto r3 = homology_ranks(FiniteAlgebra::two_scalars(), opt);
  auto r4 = homology_ranks(FiniteAlgebra::direct_sum({2, 2}), opt);
  detail = "C " + ranks_str(r1.ranks) + " vs M2(C) " + ranks_str(r2.ranks) +
           "; C+C " + ranks_str(r3.ranks) + " vs M2(C+C) " +
           ranks_str(r4.ranks);
  return r1.ranks == r2.ranks && r3.ranks == r4.ranks;
}

bool crit_local_kernel_ranks(std::string& detail) {
  auto rep = local_hochschild_experiment(
      simplicial_space({{0, 1}, {1, 2}, {0, 2}}), 1);
  detail = "selected eps " + rep.selected_eps.get_str() + ", ranks " +
           ranks_str(rep.selected_ranks) + ", oracle " +
           ranks_str(rep.oracle_ranks);
  return rep.matches_oracle &&
         rep.selected_ranks == std::vector<int>{1, 1};
}

bool crit_pairing_anchor_and_cycle(std::string& detail) {
  for (int w = -3; w <= 3; ++w) {
    auto R = remainder_position_kernel(shift_model(w));
    Cyclo tau = tau_pairing(R, R.space, constant_cochain(*R.space, 0), 0);
    if (!(tau == Cyclo::from_rat(R.ctx, Rat(w)))) {
      detail = "rational anchor fails at winding " + std::to_string(w);
      return false;
    }
  }
  for (int w : {-2, 3}) {
    auto R = remainder_position_kernel_float(
        shift_model(w, ScalarKind::floating));
    Cplx tau = tau_pairing(R, R.space, constant_cochain(*R.space, 0), 0);
    if (std::abs(tau - Cplx(double(w), 0.0)) > kFloatAnchorTol) {
      detail = "float anchor drifts at winding " + std::to_string(w);
      return false;
    }
  }
  auto cyc = as_cycle_check(remainder_position_kernel(shift_model(1)), 2, 50,
                            /*seed=*/1);
  detail =
      "7 rational anchors exact; float anchors within 1e-9; 50 coboundary "
      "trials pair to exactly zero";
  return cyc.exact_zero && cyc.max_abs == 0.0;
}

bool crit_route_coherence(std::string& detail) {
  std::mt19937_64 rng(1111);
  for (int w : {1, 2}) {
    auto R = remainder_position_kernel(shift_model(w));
    auto alg = FiniteAlgebra::kernel_algebra(R.space, 2);
    auto Rm = AlgMat<Cyclo>::from_elem(kernel_algebra_element(R, alg));
    auto sep = position_separable_context(R, alg);
    for (int q = 0; q <= 1; ++q) {
      auto f = restrict_to_diagonal(chern_residue(Rm, sep, q));
      if (!(f.apply_constant() ==
            tau_pairing(R, R.space, constant_cochain(*R.space, 2 * q),
                        2 * q))) {
        detail = "constant-cochain routes differ at w=" + std::to_string(w) +
                 " q=" + std::to_string(q);
        return false;
      }
      for (int t = 0; t < 2; ++t) {
        auto phi = random_cochain(*R.space, 2 * q, 5, rng);
        if (!(f.apply(phi) == tau_pairing(R, R.space, phi, 2 * q))) {
          detail = "sparse-cochain routes differ at w=" + std::to_string(w) +
                   " q=" + std::to_string(q);
          return false;
        }
      }
    }
  }
  detail =
      "u=z, u=z^2, q in {0,1}: restriction of the residue chain equals the "
      "pairing, 1/q! normalization inside the chain, exact";
  return true;
}

bool crit_probe_reports(std::string& detail) {
  for (int w : {0, 1, 2}) {
    auto rep = conjecture_probe(shift_model(w), 1);
    bool ok = rep.label.find("conjecture probe") != std::string::npos &&
              rep.rows.size() == 2 && rep.rows[0].q == 0 &&
              rep.rows[0].q0_equal &&
              rep.rows[0].residue_tau == std::to_string(w);
    if (!ok) {
      detail = "probe row disagrees at winding " + std::to_string(w);
      return false;
    }
  }
  detail =
      "u in {1, z, z^2}: degree-zero trace columns agree; higher rows "
      "reported side by side, never asserted";
  return true;
}

}  // namespace

std::string criterion_line(const CriterionOutcome& row) {
  char head[32];
  std::snprintf(head, sizeof(head), "criterion %2d: ", row.id);
  return std::string(head) + (row.pass ? "PASS" : "FAIL") + "  " + row.title +
         "  -- " + row.detail;
}

std::vector<CriterionOutcome> acceptance_suite(std::ostream* live) {
  struct Row {
    int id;
    const char* title;
    double limit_s;
    bool (*body)(std::string&);
  };
  const Row rows_def[] = {
      {1, "full-complex cohomology ranks (1,0,0)", 5.0, crit_full_complex},
      {2, "localized cohomology matches the simplicial oracle", 60.0,
       crit_localized_oracle},
      {3, "connecting construction holds exactly, trace = winding", 5.0,
       crit_connecting},
      {4, "rectangular-shift rank oracle agrees with the trace", 0.0,
       crit_index_oracle},
      {5, "coboundary and boundary operators square to zero", 60.0,
       crit_boundaries_square_to_zero},
      {6, "character chains of idempotents/invertibles are closed", 0.0,
       crit_character_closedness},
      {7, "residue chain boundary dies in separable normal form", 0.0,
       crit_residue_normal_form},
      {8, "matrix extension leaves Hochschild ranks unchanged", 0.0,
       crit_matrix_extension},
      {9, "localized kernel-algebra ranks stabilize to the circle", 600.0,
       crit_local_kernel_ranks},
      {10, "degree-zero pairing equals the trace; coboundaries pair to zero",
       0.0, crit_pairing_anchor_and_cycle},
      {11, "cyclic-route and pairing-route residue values agree", 0.0,
       crit_route_coherence},
      {12, "probe reports: trace columns agree at degree zero", 0.0,
       crit_probe_reports},
  };
  std::vector<CriterionOutcome> rows;
  for (const auto& s : rows_def) {
    rows.push_back(run_criterion(s.id, s.title, s.limit_s, s.body));
    if (live) {
      *live << criterion_line(rows.back()) << "\n";
      live->flush();
    }
  }
  return rows;
}

// --- CLI ----------------------------------------------------------------

namespace {

struct CliOptions {
  std::string config;
  std::string scalar = "rational";
  std::string out;
  std::string format = "json";
  unsigned long seed = 1;
  int degree_cap = 4;
  long budget = kDefaultBasisBudget;

  ScalarKind kind() const {
    return scalar == "float" ? ScalarKind::floating : ScalarKind::rational;
  }
};

void emit_report(const Json& report, const CliOptions& o) {
  std::string text =
      o.format == "csv" ? csv_from_report(report) : dump_report(report);
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  require(bool(f), "cannot open output file: " + o.out);
  f << text;
  f.flush();
  require(bool(f), "failed writing output file: " + o.out);
}

int config_int(const Json& j, const char* key, int fallback,
               const std::string& what) {
  if (!j.contains(key)) return fallback;
  require(j.at(key).is_number_integer(),
          what + " \"" + key + "\" must be an integer");
  return j.at(key).get<int>();
}

int do_as_cohomology(const CliOptions& o) {
  Json cfg = load_json_file(o.config);
  check_fields(cfg, "as-cohomology config", {"space", "max_degree", "epsilon"});
  require(cfg.contains("space"), "as-cohomology config needs \"space\"");
  SpacePtr space = space_from_json(cfg.at("space"));
  int maxd = config_int(cfg, "max_degree", std::min(2, o.degree_cap),
                        "as-cohomology config");
  require(maxd >= 0, "max_degree must be nonnegative");
  require(maxd <= o.degree_cap,
          "max_degree exceeds --degree-cap (" + std::to_string(o.degree_cap) +
              ")");
  if (cfg.contains("epsilon") && cfg.at("epsilon").is_string() &&
      cfg.at("epsilon").get<std::string>() == "scan") {
    auto scan = localized_cohomology_scan(*space, maxd, o.kind(), o.budget);
    emit_report(scan_report(*space, o.kind(), scan), o);
    return 0;
  }
  Radius eps = cfg.contains("epsilon")
                   ? radius_from_json(cfg.at("epsilon"), "epsilon")
                   : Radius::inf();
  auto profile = as_cohomology(*space, maxd, eps, o.kind(), o.budget);
  emit_report(profile_report(*space, eps, o.kind(), profile), o);
  return 0;
}

int do_cyclic(const CliOptions& o) {
  Json cfg = load_json_file(o.config);
  if (cfg.is_object() && cfg.contains("experiment")) {
    check_fields(cfg, "cyclic experiment config",
                 {"experiment", "space", "max_degree"});
    require(cfg.at("experiment").is_string() &&
                cfg.at("experiment").get<std::string>() == "local_hochschild",
            "the only cyclic experiment is \"local_hochschild\"");
    require(cfg.contains("space"), "the experiment needs \"space\"");
    SpacePtr space = space_from_json(cfg.at("space"));
    int maxd = config_int(cfg, "max_degree", 1, "cyclic experiment config");
    require(maxd >= 0 && maxd <= o.degree_cap,
            "max_degree must lie in [0, --degree-cap]");
    auto rep = local_hochschild_experiment(space, maxd, {}, SupportMode::sum,
                                           o.budget);
    emit_report(local_experiment_report(rep), o);
    return 0;
  }

  check_fields(cfg, "cyclic config",
               {"algebra", "variant", "degrees", "epsilon", "support_mode",
                "separable_e"});
  require(cfg.contains("algebra"), "cyclic config needs \"algebra\"");
  const Json& aj = cfg.at("algebra");
  require(aj.is_object() && aj.contains("kind"),
          "algebra config needs a \"kind\" field");
  std::string kind = aj.at("kind").get<std::string>();
  AlgPtr alg;
  if (kind == "matrix") {
    check_fields(aj, "matrix algebra", {"kind", "k"});
    alg = FiniteAlgebra::matrix_algebra(
        config_int(aj, "k", 2, "matrix algebra"));
  } else if (kind == "direct_sum") {
    check_fields(aj, "direct-sum algebra", {"kind", "ks"});
    require(aj.contains("ks") && aj.at("ks").is_array(),
            "direct-sum algebra needs \"ks\"");
    std::vector<int> ks;
    for (const auto& v : aj.at("ks")) {
      require(v.is_number_integer(), "\"ks\" entries must be integers");
      ks.push_back(v.get<int>());
    }
    alg = FiniteAlgebra::direct_sum(ks);
  } else if (kind == "kernel") {
    check_fields(aj, "kernel algebra", {"kind", "space", "fiber"});
    require(aj.contains("space"), "kernel algebra needs \"space\"");
    alg = FiniteAlgebra::kernel_algebra(
        space_from_json(aj.at("space")),
        config_int(aj, "fiber", 1, "kernel algebra"));
  } else {
    fail_validation("unknown algebra kind '" + kind + "'");
  }

  HomologyOptions opt;
  opt.kind = o.kind();
  opt.budget = o.budget;
  if (cfg.contains("variant"))
    opt.variant =
        homology_variant_from_name(cfg.at("variant").get<std::string>());
  opt.degree_lo = 0;
  opt.degree_hi = std::min(2, o.degree_cap);
  if (cfg.contains("degrees")) {
    const Json& dj = cfg.at("degrees");
    require(dj.is_array() && dj.size() == 2 && dj[0].is_number_integer() &&
                dj[1].is_number_integer(),
            "\"degrees\" must be [lo, hi]");
    opt.degree_lo = dj[0].get<int>();
    opt.degree_hi = dj[1].get<int>();
  }
  require(0 <= opt.degree_lo && opt.degree_lo <= opt.degree_hi,
          "\"degrees\" must satisfy 0 <= lo <= hi");
  require(opt.degree_hi <= o.degree_cap,
          "degree range exceeds --degree-cap (" +
              std::to_string(o.degree_cap) + ")");
  if (cfg.contains("epsilon"))
    opt.epsilon = radius_from_json(cfg.at("epsilon"), "epsilon");
  if (cfg.contains("support_mode")) {
    std::string m = cfg.at("support_mode").get<std::string>();
    require(m == "sum" || m == "max", "support_mode must be sum or max");
    opt.support_mode = m == "sum" ? SupportMode::sum : SupportMode::max;
  }
  if (cfg.contains("separable_e")) {
    const Json& ej = cfg.at("separable_e");
    require(ej.is_array(), "\"separable_e\" must be per-block 0/1 arrays");
    std::vector<std::vector<char>> side;
    for (const auto& blk : ej) {
      require(blk.is_array(), "\"separable_e\" must be per-block 0/1 arrays");
      std::vector<char> flags;
      for (const auto& v : blk) {
        require(v.is_number_integer() &&
                    (v.get<int>() == 0 || v.get<int>() == 1),
                "\"separable_e\" entries must be 0 or 1");
        flags.push_back(char(v.get<int>()));
      }
      side.push_back(std::move(flags));
    }
    opt.sring_side = std::move(side);
  }
  auto res = homology_ranks(alg, opt);
  emit_report(homology_report(alg->label, opt, res), o);
  return 0;
}

int do_index(const CliOptions& o) {
  Json cfg = load_json_file(o.config);
  check_fields(cfg, "index config", {"model", "phi", "q"});
  require(cfg.contains("model") && cfg.contains("phi"),
          "index config needs \"model\" and \"phi\"");
  OperatorModel model = model_from_json(cfg.at("model"), o.kind());
  int q = config_int(cfg, "q", 0, "index config");
  require(q >= 0, "q must be nonnegative");
  SpacePtr space = circle_space(model.K);
  auto phi = cochain_from_json(cfg.at("phi"), space, q);
  emit_report(index_report_json(index_class(model, phi, o.budget)), o);
  return 0;
}

int do_pair(const CliOptions& o) {
  Json cfg = load_json_file(o.config);
  check_fields(cfg, "pair config", {"model", "phi", "q", "cycle_trials"});
  require(cfg.contains("model") && cfg.contains("phi"),
          "pair config needs \"model\" and \"phi\"");
  OperatorModel model = model_from_json(cfg.at("model"), o.kind());
  int q = config_int(cfg, "q", 0, "pair config");
  require(q >= 0, "q must be nonnegative");
  SpacePtr space = circle_space(model.K);
  auto phi = cochain_from_json(cfg.at("phi"), space, q);
  Json report = pair_report_json(pair_value(model, phi, q));
  if (cfg.contains("cycle_trials")) {
    int trials = config_int(cfg, "cycle_trials", 0, "pair config");
    require(trials > 0, "cycle_trials must be positive");
    CycleCheckReport c =
        model.kind == ScalarKind::rational
            ? as_cycle_check(remainder_position_kernel(model), q, trials,
                             o.seed, Radius::inf(), o.budget)
            : as_cycle_check(remainder_position_kernel_float(model), q, trials,
                             o.seed, Radius::inf(), o.budget);
    report["cycle_check"] = cycle_report_json(c);
  }
  emit_report(report, o);
  return 0;
}

int do_probe(const CliOptions& o) {
  Json cfg = load_json_file(o.config);
  check_fields(cfg, "probe config", {"model", "q_max"});
  require(cfg.contains("model"), "probe config needs \"model\"");
  OperatorModel model = model_from_json(cfg.at("model"), o.kind());
  int q_max = config_int(cfg, "q_max", 1, "probe config");
  emit_report(probe_report_json(conjecture_probe(model, q_max)), o);
  return 0;
}

Json suite_report_json(const std::vector<CriterionOutcome>& rows) {
  Json j;
  j["report"] = "acceptance-suite";
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json rj;
    rj["id"] = r.id;
    rj["title"] = r.title;
    rj["pass"] = r.pass;
    rj["detail"] = r.detail;
    arr.push_back(std::move(rj));
    all = all && r.pass;
  }
  j["criteria"] = std::move(arr);
  j["all_pass"] = all;
  return j;
}

int do_suite(const CliOptions& o) {
  auto rows = acceptance_suite(&std::cout);
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  std::cout << (all ? "suite: all criteria pass\n"
                    : "suite: failing criteria present\n");
  if (!o.out.empty()) emit_report(suite_report_json(rows), o);
  return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CliOptions o;
  CLI::App app{
      "locind: exact localized-index experiments -- tuple-complex "
      "cohomology, cyclic homology of finite algebras, Toeplitz-type "
      "operator models, and trace pairings"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", o.config, "JSON config file");
    if (config_required) c->required();
    sub->add_option("--scalar", o.scalar, "scalar field")
        ->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--out", o.out, "report file (default: stdout)");
    sub->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "seed for randomized trials");
    sub->add_option("--degree-cap", o.degree_cap, "maximal degree accepted");
    sub->add_option("--budget", o.budget, "basis/work budget");
  };

  auto* sc_as = app.add_subcommand(
      "as-cohomology", "cohomology of the diagonal-localized tuple complex");
  auto* sc_cy = app.add_subcommand(
      "cyclic", "homology ranks of tensor complexes over a finite algebra");
  auto* sc_ix =
      app.add_subcommand("index", "full index pipeline report for a model");
  auto* sc_pr = app.add_subcommand(
      "pair", "raw trace pairing of a remainder kernel with a cochain");
  auto* sc_pb = app.add_subcommand(
      "probe", "side-by-side symbol/remainder report (nothing asserted)");
  auto* sc_su = app.add_subcommand(
      "suite", "run the acceptance criteria and print the pass/fail table");
  for (CLI::App* sub : {sc_as, sc_cy, sc_ix, sc_pr, sc_pb})
    add_common(sub, true);
  add_common(sc_su, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    Json j;
    Json inner;
    inner["kind"] = "validation";
    inner["message"] = e.what();
    j["error"] = std::move(inner);
    std::cerr << j.dump() << "\n";
    return 2;
  }

  try {
    if (sc_as->parsed()) return do_as_cohomology(o);
    if (sc_cy->parsed()) return do_cyclic(o);
    if (sc_ix->parsed()) return do_index(o);
    if (sc_pr->parsed()) return do_pair(o);
    if (sc_pb->parsed()) return do_probe(o);
    return do_suite(o);
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    Json j;
    Json inner;
    inner["kind"] = "validation";
    inner["message"] = e.what();
    j["error"] = std::move(inner);
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json j;
    Json inner;
    inner["kind"] = "internal_consistency";
    inner["message"] = e.what();
    j["error"] = std::move(inner);
    std::cerr << j.dump() << "\n";
    return 4;
  }
}

}  // namespace locind
