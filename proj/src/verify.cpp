#include "fanoqh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "fanoqh/errors.hpp"
#include "fanoqh/hessian.hpp"
#include "fanoqh/linalg.hpp"

namespace fanoqh {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Semisimple:
      return "SEMISIMPLE";
    case Verdict::Degenerate:
      return "DEGENERATE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return {};
}

namespace {

constexpr double kTiny = 1e-300;
constexpr double kNoInstances = 300.0;

double upper_margin(double worst, double bound) {
  return std::log10(bound / std::max(worst, kTiny));
}

double lower_margin(double worst, double bound) {
  return std::log10(std::max(worst, kTiny) / bound);
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Check that a maximum stays strictly below a bound.
CheckResult below(std::string name, double worst, double bound) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = worst < bound;
  c.worst_margin = upper_margin(worst, bound);
  c.detail = "max " + format_value(worst) + " < " + format_value(bound);
  return c;
}

// Check that a minimum stays strictly above a bound.
CheckResult above(std::string name, double worst, double bound) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = worst > bound;
  c.worst_margin = worst == std::numeric_limits<double>::infinity() ? kNoInstances
                                                                     : lower_margin(worst, bound);
  c.detail = "min " + format_value(worst) + " > " + format_value(bound);
  return c;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Sub-block of the Hessian for one atom, A-coordinates first.
DenseMatrix block_hessian(const DenseMatrix& h, const BlockInfo& block) {
  const int m = block.atom.dim();
  std::vector<int> order;
  const std::uint64_t mask = block.meta ? block.meta->assignment : 0;
  for (int i = 0; i < m; ++i) {
    if ((mask >> i) & 1U) order.push_back(i);
  }
  for (int i = 0; i < m; ++i) {
    if (!((mask >> i) & 1U)) order.push_back(i);
  }
  DenseMatrix sub(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) sub(i, j) = h(block.offset + order[i], block.offset + order[j]);
  }
  return sub;
}

std::optional<StructuredParams> block_params(const BlockInfo& block) {
  if (!block.meta) return std::nullopt;
  const int n = block.atom.dim();
  switch (block.atom.kind) {
    case AtomKind::DelPezzo:
      return dp_params(block.meta->A, block.meta->L, n);
    case AtomKind::PseudoDelPezzo:
      return pdp_params(block.meta->A, block.meta->L, n);
    case AtomKind::Segment:
      return std::nullopt;
  }
  return std::nullopt;
}

// Closed-form determinant of one block; absent when the block has no
// structured description.
std::optional<Complex> block_structured_det(const BlockInfo& block, const ComplexPoint& coords) {
  if (block.atom.kind == AtomKind::Segment) {
    const Complex x = coords[block.offset];
    return 2.0 / (x * x * x);
  }
  try {
    auto params = block_params(block);
    if (!params) return std::nullopt;
    return structured_det(*params);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Evaluated {
  double residual;
  Complex det;
};

Evaluated evaluate_point(const DerivativeTable& table, const ComplexPoint& coords, Precision precision) {
  Evaluated out{};
  if (precision == Precision::High) {
    using Traits = ScalarTraits<HighComplex>;
    std::vector<HighComplex> x;
    for (const auto& c : coords) x.push_back(Traits::from_complex(c));
    double r = 0.0;
    for (const auto& g : table.gradient<HighComplex>(x)) r = std::max(r, Traits::abs(g));
    out.residual = r;
    out.det = Traits::to_complex(dense_det(table.hessian<HighComplex>(x)));
  } else {
    double r = 0.0;
    for (const auto& g : table.gradient<Complex>(coords)) r = std::max(r, std::abs(g));
    out.residual = r;
    out.det = dense_det(table.hessian<Complex>(coords));
  }
  return out;
}

std::string atom_prefix(const FamilyAtom& atom) { return to_string(atom) + ": "; }

}  // namespace

std::vector<StructuredRoot> structured_roots(const CriticalSet& set) {
  std::vector<StructuredRoot> roots;
  for (const auto& p : set.points) {
    for (const auto& b : p.blocks) {
      if (!b.meta) continue;
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](const StructuredRoot& r) {
        return r.L == b.meta->L && std::abs(r.A - b.meta->A) < 1e-9;
      });
      if (!seen) roots.push_back({b.meta->L, b.meta->A});
    }
  }
  return roots;
}

CheckResult check_dp_chi(std::span<const StructuredRoot> roots, int n) {
  double min_chi = std::numeric_limits<double>::infinity();
  double worst_rel = 0.0;
  for (const auto& r : roots) {
    const Complex chi = chi_dp(r.A, r.L, n);
    min_chi = std::min(min_chi, std::abs(chi));
    if (std::abs(dp_root_residual(r.A, r.L, n)) <= 1e-10) {
      const auto params = dp_params(r.A, r.L, n);
      worst_rel = std::max(worst_rel, relative_difference(chi, structured_quadratic_constant(params)));
    }
  }
  CheckResult c = above("dp_chi_nonzero", min_chi, 1e-6);
  const bool agrees = worst_rel <= 1e-9;
  c.passed = c.passed && agrees;
  c.worst_margin = std::min(c.worst_margin, upper_margin(worst_rel, 1e-9));
  c.detail += "; chi vs quadratic constant rel " + format_value(worst_rel) + " <= 1e-9";
  return c;
}

std::vector<CheckResult> check_dp_identities(int k, const CriticalSet& set) {
  const int n = 2 * k;
  const auto roots = structured_roots(set);
  std::vector<CheckResult> out;

  double unity = 0.0;
  double max_a = 0.0;
  double min_pm_i = std::numeric_limits<double>::infinity();
  double min_diag_gap = std::numeric_limits<double>::infinity();
  bool params_ok = true;
  for (const auto& r : roots) {
    unity = std::max(unity, std::abs(dp_root_residual(r.A, r.L, n)));
    min_pm_i = std::min({min_pm_i, std::abs(r.A - Complex(0, 1)), std::abs(r.A + Complex(0, 1))});
    try {
      const auto p = dp_params(r.A, r.L, n);
      max_a = std::max(max_a, std::abs(p.a));
      min_diag_gap = std::min({min_diag_gap, std::abs(p.a - p.f), std::abs(p.b - p.h)});
    } catch (const std::exception&) {
      params_ok = false;
    }
  }
  out.push_back(below("dp_unity_residual", unity, 1e-12));
  auto a_check = below("dp_a_vanishes", max_a, 1e-10);
  a_check.passed = a_check.passed && params_ok;
  out.push_back(a_check);
  out.push_back(check_dp_chi(roots, n));
  out.push_back(above("dp_not_plus_minus_i", min_pm_i, 1e-6));
  out.push_back(above("dp_a_minus_f_b_minus_h", min_diag_gap, 1e-6));

  // -(X_k - 1/X_k) = Z - 1/Z at every point.
  double eq3 = 0.0;
  for (const auto& p : set.points) {
    Complex z(1);
    for (const auto& x : p.coords) z *= x;
    for (const auto& x : p.coords) eq3 = std::max(eq3, std::abs(-(x - 1.0 / x) - (z - 1.0 / z)));
  }
  out.push_back(below("dp_product_identity", eq3, 1e-10));
  return out;
}

std::vector<CheckResult> check_dp_identities(int k, const Config& cfg) {
  return check_dp_identities(k, crit_del_pezzo(k, cfg));
}

std::vector<CheckResult> check_pdp_cases(int k, const CriticalSet& set) {
  const int n = 2 * k;
  const auto roots = structured_roots(set);
  std::vector<CheckResult> out;

  double rel_a = 0.0;
  double rel_b = 0.0;
  double reflected = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_expr = std::numeric_limits<double>::infinity();
  double min_u = std::numeric_limits<double>::infinity();
  double quartic_rel = 0.0;
  bool params_ok = true;
  for (const auto& r : roots) {
    rel_a = std::max(rel_a, std::abs(pdp_relation_residual(r.A, r.L, n)));
    rel_b = std::max(rel_b, std::abs(pdp_relation_residual_b(-1.0 / r.A, r.L, n)));
    reflected = std::max(reflected, std::abs(pdp_relation_residual(-r.A, r.L, n, PdpRelation::Reflected)));
    const Complex A3 = r.A * r.A * r.A;
    min_expr = std::min({min_expr, std::abs(3.0 / A3 - 1.0 / r.A), std::abs(-3.0 * A3 + r.A)});
    const Quartic u = u_poly_pdp(r.L, n);
    min_u = std::min(min_u, std::abs(u(r.A)));
    try {
      const auto p = pdp_params(r.A, r.L, n);
      min_gap = std::min({min_gap, std::abs(p.a - p.f), std::abs(p.b - p.h)});
      quartic_rel = std::max(quartic_rel,
                             relative_difference(r.A * r.A * structured_quadratic_constant(p), u(r.A)));
    } catch (const std::exception&) {
      params_ok = false;
    }
  }
  out.push_back(below("pdp_relation_a", rel_a, 1e-10));
  out.push_back(below("pdp_relation_b", rel_b, 1e-10));
  out.push_back(below("pdp_reflected_relation_at_negated_root", reflected, 1e-10));
  auto gap = above("pdp_a_minus_f_b_minus_h", min_gap, 1e-6);
  gap.passed = gap.passed && params_ok;
  out.push_back(gap);
  out.push_back(above("pdp_af_bh_expressions", min_expr, 1e-6));

  // Coefficient pattern of both quartics: odd coefficients zero, and
  // congruent to A^4 + 1 modulo 2.
  bool pattern = true;
  for (int L = 0; L <= n; ++L) {
    for (auto rel : {PdpRelation::Critical, PdpRelation::Reflected}) {
      const auto& c = u_poly_pdp(L, n, rel).coeffs;
      pattern = pattern && c[1] == 0 && c[3] == 0 && std::abs(c[0]) % 2 == 1 && c[2] % 2 == 0 &&
                std::abs(c[4]) % 2 == 1;
    }
  }
  out.push_back(CheckResult{"pdp_u_coefficient_pattern", pattern,
                            "zero odd coefficients, congruent to A^4+1 mod 2, both relations",
                            pattern ? kNoInstances : -kNoInstances});

  for (auto rel : {PdpRelation::Critical, PdpRelation::Reflected}) {
    double sep = std::numeric_limits<double>::infinity();
    for (int L = 0; L <= n; ++L) {
      const int m = 2 * L - n;
      if (m != -2 && m != 0 && m != 2) continue;
      for (const auto& ur : u_poly_pdp(L, n, rel).roots()) {
        for (const auto& cr : pdp_roots(L, n, rel)) sep = std::min(sep, std::abs(ur - cr));
      }
    }
    out.push_back(above(rel == PdpRelation::Critical ? "pdp_u_root_separation"
                                                     : "pdp_u_root_separation_reflected",
                        sep, 1e-6));
  }
  out.push_back(above("pdp_u_nonzero_at_roots", min_u, 1e-8));
  out.push_back(below("pdp_quartic_matches_hessian", quartic_rel, 1e-9));
  return out;
}

std::vector<CheckResult> check_pdp_cases(int k, const Config& cfg) {
  return check_pdp_cases(k, crit_pseudo_del_pezzo(k, cfg));
}

CheckResult check_product_block_structure(const FamilyExpr& expr, const CriticalSet& set) {
  const DerivativeTable table(family_superpotential(expr));
  std::vector<int> block_of;
  for (std::size_t a = 0; a < expr.atoms.size(); ++a) {
    for (int i = 0; i < expr.atoms[a].dim(); ++i) block_of.push_back(static_cast<int>(a));
  }
  double cross = 0.0;
  double det_rel = 0.0;
  for (const auto& p : set.points) {
    const DenseMatrix h = table.hessian<Complex>(p.coords);
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (block_of[i] != block_of[j]) cross = std::max(cross, std::abs(h(i, j)));
      }
    }
    Complex product(1);
    int offset = 0;
    for (const auto& atom : expr.atoms) {
      const int m = atom.dim();
      DenseMatrix sub(m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) sub(i, j) = h(offset + i, offset + j);
      }
      product *= dense_det(sub);
      offset += m;
    }
    det_rel = std::max(det_rel, relative_difference(dense_det(h), product));
  }
  CheckResult c;
  c.name = "product_block_structure";
  c.passed = cross < 1e-12 && det_rel <= 1e-9;
  c.worst_margin = std::min(upper_margin(cross, 1e-12), upper_margin(det_rel, 1e-9));
  c.detail = "max cross-block |entry| " + format_value(cross) + " < 1e-12; det vs block product rel " +
             format_value(det_rel) + " <= 1e-9";
  return c;
}

double structured_hessian_mismatch(const FamilyExpr& expr, const CriticalSet& set) {
  const DerivativeTable table(family_superpotential(expr));
  double worst = 0.0;
  for (const auto& p : set.points) {
    const DenseMatrix h = table.hessian<Complex>(p.coords);
    for (const auto& b : p.blocks) {
      std::optional<StructuredParams> params;
      try {
        params = block_params(b);
      } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
      }
      if (!params) continue;
      const DenseMatrix sub = block_hessian(h, b);
      const DenseMatrix model = assemble_structured(*params);
      double scale = 1.0;
      double diff = 0.0;
      for (std::size_t i = 0; i < sub.size(); ++i) {
        for (std::size_t j = 0; j < sub.size(); ++j) {
          scale = std::max(scale, std::abs(model(i, j)));
          diff = std::max(diff, std::abs(sub(i, j) - model(i, j)));
        }
      }
      worst = std::max(worst, diff / scale);
    }
  }
  return worst;
}

SemisimplicityReport analyze(const FamilyExpr& expr, const Config& cfg) {
  cfg.validate();
  SemisimplicityReport report;
  report.input = to_string(expr);
  report.dim = expr.dim();
  if (expr.atoms.empty() || expr.dim() > cfg.max_dim) {
    report.detail = expr.atoms.empty() ? "empty family expression"
                                       : "dimension " + std::to_string(expr.dim()) + " exceeds max_dim " +
                                             std::to_string(cfg.max_dim);
    return report;
  }
  try {
    // Kushnirenko bound per atom; products multiply.
    std::map<std::pair<int, int>, std::int64_t> volumes;
    std::size_t expected = 1;
    for (const auto& atom : expr.atoms) {
      const auto key = std::make_pair(static_cast<int>(atom.kind), atom.k);
      auto it = volumes.find(key);
      if (it == volumes.end()) it = volumes.emplace(key, normalized_volume(realize(atom))).first;
      expected *= static_cast<std::size_t>(it->second);
    }
    report.expected_count = expected;

    const CriticalSet set = crit_for_family(expr, cfg);
    report.critical_count = set.size();
    const DerivativeTable table(family_superpotential(expr));

    report.points.resize(set.size());
    parallel_for(set.size(), cfg.threads, [&](std::size_t i) {
      const auto& cp = set.points[i];
      PointReport& pr = report.points[i];
      pr.coords = cp.coords;
      const Evaluated ev = evaluate_point(table, cp.coords, cfg.precision);
      pr.residual = ev.residual;
      pr.det_hessian = ev.det;
      Complex structured(1);
      bool have_structured = true;
      for (const auto& b : cp.blocks) {
        const auto d = block_structured_det(b, cp.coords);
        if (!d) {
          have_structured = false;
          break;
        }
        structured *= *d;
      }
      if (have_structured && !cp.blocks.empty()) pr.structured_det = structured;
    });

    double max_abs = 0.0;
    double max_residual = 0.0;
    double worst_agreement = 0.0;
    bool structured_complete = true;
    for (const auto& pr : report.points) {
      max_abs = std::max(max_abs, std::abs(pr.det_hessian));
      max_residual = std::max(max_residual, pr.residual);
      if (pr.structured_det) {
        worst_agreement = std::max(worst_agreement, relative_difference(pr.det_hessian, *pr.structured_det));
      } else {
        structured_complete = false;
      }
    }
    const double threshold = cfg.degeneracy_threshold * std::max(1.0, max_abs);
    report.min_abs_det = report.points.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    bool any_degenerate = false;
    for (auto& pr : report.points) {
      const double a = std::abs(pr.det_hessian);
      pr.degenerate = a <= threshold;
      any_degenerate = any_degenerate || pr.degenerate;
      report.min_abs_det = std::min(report.min_abs_det, a);
    }

    CheckResult count_check;
    count_check.name = "critical_count";
    count_check.passed = report.critical_count == report.expected_count;
    count_check.detail = std::to_string(report.critical_count) + " distinct critical points, bound " +
                         std::to_string(report.expected_count);
    count_check.worst_margin = count_check.passed ? kNoInstances : -kNoInstances;
    report.checks.push_back(count_check);
    report.checks.push_back(below("residuals", max_residual, cfg.tol_residual));
    report.checks.push_back(above("min_abs_det", report.min_abs_det, threshold));
    auto agreement = below("structured_vs_dense_det", worst_agreement, 1e-8);
    agreement.passed = agreement.passed && structured_complete;
    report.checks.push_back(agreement);
    report.checks.push_back(below("structured_hessian_entries", structured_hessian_mismatch(expr, set), 1e-9));
    if (expr.atoms.size() >= 2) report.checks.push_back(check_product_block_structure(expr, set));

    std::map<std::pair<int, int>, bool> done;
    for (const auto& atom : expr.atoms) {
      if (atom.kind == AtomKind::Segment) continue;
      if (!done.emplace(std::make_pair(static_cast<int>(atom.kind), atom.k), true).second) continue;
      const CriticalSet atom_set = crit_atom(atom, cfg);
      auto checks = atom.kind == AtomKind::DelPezzo ? check_dp_identities(atom.k, atom_set)
                                                    : check_pdp_cases(atom.k, atom_set);
      for (auto& c : checks) {
        c.name = atom_prefix(atom) + c.name;
        report.checks.push_back(std::move(c));
      }
    }

    const bool counts_ok = report.critical_count == report.expected_count;
    const bool residuals_ok = max_residual < cfg.tol_residual;
    const bool all_checks = std::all_of(report.checks.begin(), report.checks.end(),
                                        [](const CheckResult& c) { return c.passed; });
    if (counts_ok && residuals_ok && !any_degenerate && all_checks) {
      report.verdict = Verdict::Semisimple;
    } else if (counts_ok && residuals_ok && any_degenerate) {
      report.verdict = Verdict::Degenerate;
    } else {
      report.verdict = Verdict::Inconclusive;
      report.detail = "certification incomplete: see failed checks";
    }
  } catch (const std::exception& e) {
    report.verdict = Verdict::Inconclusive;
    report.detail = e.what();
  }
  return report;
}

std::optional<Recognition> recognize_family(const LatticePolytope& p) {
  const int n = p.dim();
  // Union-find over coordinates that share a vertex support.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& v : p.vertices()) {
    int first = -1;
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      if (first < 0) first = i;
      else parent[find(i)] = find(first);
    }
    if (first < 0) return std::nullopt;  // origin as a vertex
  }
  std::map<int, std::vector<int>> components;  // keyed by root; members ascending
  for (int i = 0; i < n; ++i) components[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, members] : components) blocks.push_back(members);
  std::sort(blocks.begin(), blocks.end());

  Recognition out;
  for (const auto& block : blocks) {
    const int m = static_cast<int>(block.size());
    std::vector<LatticeVector> projected;
    for (const auto& v : p.vertices()) {
      bool inside = false;
      for (int i : block) inside = inside || v[i] != 0;
      if (!inside) continue;
      LatticeVector w;
      for (int i : block) w.push_back(v[i]);
      projected.push_back(std::move(w));
    }
    std::sort(projected.begin(), projected.end());
    std::optional<FamilyAtom> match;
    if (m == 1 && projected == make_segment().vertices()) {
      match = FamilyAtom{AtomKind::Segment, 1};
    } else if (m % 2 == 0) {
      const int k = m / 2;
      if (projected == make_del_pezzo(k).vertices()) match = FamilyAtom{AtomKind::DelPezzo, k};
      else if (projected == make_pseudo_del_pezzo(k).vertices()) match = FamilyAtom{AtomKind::PseudoDelPezzo, k};
    }
    if (!match) return std::nullopt;
    out.expr.atoms.push_back(*match);
    out.permutation.insert(out.permutation.end(), block.begin(), block.end());
  }
  return out;
}

SemisimplicityReport analyze_polytope(const LatticePolytope& p, const Config& cfg) {
  cfg.validate();
  SemisimplicityReport report;
  report.dim = p.dim();
  report.input = "polytope";
  try {
    if (!p.has_interior_origin()) throw GeometryError("origin is not in the interior of the polytope");
    if (!is_reflexive(p)) throw GeometryError("polytope is not reflexive");
    if (!is_smooth(p)) throw GeometryError("polytope is not smooth");
  } catch (const std::exception& e) {
    report.detail = e.what();
    return report;
  }
  const auto rec = recognize_family(p);
  if (!rec) {
    report.verdict = Verdict::Inconclusive;
    report.detail = "unrecognized polytope";
    return report;
  }
  report = analyze(rec->expr, cfg);
  bool identity = true;
  for (std::size_t j = 0; j < rec->permutation.size(); ++j) identity = identity && rec->permutation[j] == static_cast<int>(j);
  if (!identity) {
    report.coordinate_permutation = rec->permutation;
    for (auto& pr : report.points) {
      ComplexPoint original(pr.coords.size());
      for (std::size_t j = 0; j < pr.coords.size(); ++j) original[rec->permutation[j]] = pr.coords[j];
      pr.coords = std::move(original);
    }
    std::stable_sort(report.points.begin(), report.points.end(), [&](const PointReport& a, const PointReport& b) {
      return point_less(a.coords, b.coords, cfg.tol_dedupe);
    });
  }
  return report;
}

}  // namespace fanoqh
