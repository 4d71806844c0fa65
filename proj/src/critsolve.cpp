#include "fanoqh/critsolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "fanoqh/errors.hpp"
#include "fanoqh/linalg.hpp"
#include "fanoqh/roots.hpp"

namespace fanoqh {

bool point_less(const ComplexPoint& lhs, const ComplexPoint& rhs, double tol) {
  const std::size_t n = std::min(lhs.size(), rhs.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(lhs[i].real() - rhs[i].real()) > tol) return lhs[i].real() < rhs[i].real();
    if (std::abs(lhs[i].imag() - rhs[i].imag()) > tol) return lhs[i].imag() < rhs[i].imag();
  }
  return lhs.size() < rhs.size();
}

double max_coordinate_distance(const ComplexPoint& lhs, const ComplexPoint& rhs) {
  double d = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) d = std::max(d, std::abs(lhs[i] - rhs[i]));
  return d;
}

template <class T>
NewtonResult newton_refine(const DerivativeTable& table, std::span<const Complex> start,
                           int max_iter, double tol) {
  using Traits = ScalarTraits<T>;
  std::vector<T> x;
  x.reserve(start.size());
  for (const auto& c : start) x.push_back(Traits::from_complex(c));

  auto residual_of = [](const std::vector<T>& g) {
    double r = 0.0;
    for (const auto& gi : g) r = std::max(r, Traits::abs(gi));
    return r;
  };

  NewtonResult out;
  std::vector<T> g = table.gradient<T>(x);
  double residual = residual_of(g);
  while (residual > tol && out.iterations < max_iter) {
    auto step = lu_solve(table.hessian<T>(x), g);
    if (!step) {
      out.singular = true;
      break;
    }
    std::vector<T> trial = x;
    for (std::size_t i = 0; i < x.size(); ++i) trial[i] -= (*step)[i];
    if (std::any_of(trial.begin(), trial.end(), [](const T& v) { return v == T(0); })) {
      out.singular = true;
      break;
    }
    x = std::move(trial);
    g = table.gradient<T>(x);
    residual = residual_of(g);
    ++out.iterations;
  }
  out.converged = !out.singular && residual <= tol;
  if (out.singular) {
    out.point.coords.assign(start.begin(), start.end());
    double r = 0.0;
    for (const auto& gi : table.gradient<Complex>(start)) r = std::max(r, std::abs(gi));
    out.point.residual = r;
  } else {
    out.point.coords.clear();
    for (const auto& v : x) out.point.coords.push_back(Traits::to_complex(v));
    out.point.residual = residual;
  }
  return out;
}

template NewtonResult newton_refine<Complex>(const DerivativeTable&, std::span<const Complex>, int, double);
template NewtonResult newton_refine<HighComplex>(const DerivativeTable&, std::span<const Complex>, int,
                                                 double);

NewtonResult newton_refine(const DerivativeTable& table, std::span<const Complex> start, int max_iter,
                           double tol, Precision precision) {
  if (precision == Precision::High) return newton_refine<HighComplex>(table, start, max_iter, tol);
  return newton_refine<Complex>(table, start, max_iter, tol);
}

std::vector<Complex> dp_roots(int L, int n) {
  // A^e = (-1)^(L-1) with e = 2L-n-1 odd; for e < 0 this is A^|e| = (-1)^(L-1).
  const int e = std::abs(2 * L - n - 1);
  const double base = ((L - 1) % 2 == 0) ? 0.0 : std::numbers::pi;
  std::vector<Complex> roots;
  roots.reserve(e);
  for (int j = 0; j < e; ++j) {
    roots.push_back(std::polar(1.0, (base + 2.0 * std::numbers::pi * j) / e));
  }
  return roots;
}

std::vector<Complex> pdp_critical_polynomial(int L, int n, PdpRelation r) {
  const int m = 2 * L - n;
  const int shift = std::max(1, 1 - m);
  const double s = static_cast<double>(relation_sign(r)) * ((L % 2 == 0) ? 1.0 : -1.0);
  const int degree = std::max(shift + 1, shift + m);
  std::vector<Complex> c(degree + 1, Complex(0));
  c[shift + 1] += 1.0;
  c[shift - 1] -= 1.0;
  c[shift + m] -= s;
  // Factor out A^j: those roots are artifacts of clearing denominators.
  const auto first = std::find_if(c.begin(), c.end(), [](const Complex& v) { return v != Complex(0); });
  c.erase(c.begin(), first);
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  return c;
}

std::vector<Complex> pdp_roots(int L, int n, PdpRelation r) {
  const auto poly = pdp_critical_polynomial(L, n, r);
  std::vector<Complex> roots;
  for (const auto& a : polynomial_roots(poly)) {
    if (std::abs(a) >= 1e-12) roots.push_back(a);
  }
  return roots;
}

namespace {

LaurentPoly atom_superpotential(const FamilyAtom& atom) { return superpotential(realize(atom)); }

// Sort and remove points closer than the dedupe tolerance, keeping the first
// one generated.
CriticalSet finalize(std::vector<CriticalPoint> raw, double tol) {
  std::vector<CriticalPoint> kept;
  for (auto& p : raw) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const CriticalPoint& q) {
      return max_coordinate_distance(p.coords, q.coords) <= tol;
    });
    if (!dup) kept.push_back(std::move(p));
  }
  std::stable_sort(kept.begin(), kept.end(), [tol](const CriticalPoint& a, const CriticalPoint& b) {
    return point_less(a.coords, b.coords, tol);
  });
  return CriticalSet{std::move(kept)};
}

// Emits every assignment of L coordinates to A and n-L to B = -1/A, refined
// against the full gradient.
void emit_assignments(const FamilyAtom& atom, const DerivativeTable& table, int L, Complex A,
                      const Config& cfg, std::vector<CriticalPoint>& out) {
  const int n = atom.dim();
  const Complex B = -1.0 / A;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) != L) continue;
    ComplexPoint start(n);
    for (int i = 0; i < n; ++i) start[i] = ((mask >> i) & 1U) ? A : B;
    NewtonResult nr = newton_refine(table, start, 20, cfg.tol_residual, cfg.precision);
    if (!nr.converged) continue;
    Complex Z(1);
    for (const auto& c : nr.point.coords) Z *= c;
    nr.point.blocks.push_back(BlockInfo{atom, 0, PointMeta{L, A, B, Z, mask}});
    out.push_back(std::move(nr.point));
  }
}

}  // namespace

CriticalSet crit_segment() {
  const FamilyAtom atom{AtomKind::Segment, 1};
  CriticalSet set;
  for (double x : {-1.0, 1.0}) {
    CriticalPoint p;
    p.coords = {Complex(x, 0.0)};
    p.residual = 0.0;
    p.blocks.push_back(BlockInfo{atom, 0, std::nullopt});
    set.points.push_back(std::move(p));
  }
  return set;
}

CriticalSet crit_del_pezzo(int k, const Config& cfg) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const FamilyAtom atom{AtomKind::DelPezzo, k};
  const int n = atom.dim();
  if (n > 62) throw std::invalid_argument("dimension too large for assignment masks");
  const DerivativeTable table(atom_superpotential(atom));
  std::vector<CriticalPoint> raw;
  for (int L = 0; L <= n; ++L) {
    for (const auto& A : dp_roots(L, n)) emit_assignments(atom, table, L, A, cfg, raw);
  }
  return finalize(std::move(raw), cfg.tol_dedupe);
}

CriticalSet crit_pseudo_del_pezzo(int k, const Config& cfg) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const FamilyAtom atom{AtomKind::PseudoDelPezzo, k};
  const int n = atom.dim();
  if (n > 62) throw std::invalid_argument("dimension too large for assignment masks");
  const DerivativeTable table(atom_superpotential(atom));
  std::vector<CriticalPoint> raw;
  for (int L = 0; L <= n; ++L) {
    for (const auto& A : pdp_roots(L, n)) {
      const Complex B = -1.0 / A;
      // The two values are the roots of X^2 + Z X - 1, so A + B = -Z.
      const Complex Z = int_pow(A, L) * int_pow(B, n - L);
      if (std::abs(A + B + Z) > 1e-8 * std::max(1.0, std::abs(Z))) continue;
      emit_assignments(atom, table, L, A, cfg, raw);
    }
  }
  return finalize(std::move(raw), cfg.tol_dedupe);
}

CriticalSet crit_product(std::span<const CriticalSet> sets, std::span<const int> dims) {
  if (sets.size() != dims.size()) throw std::invalid_argument("one dimension per factor required");
  for (const auto& s : sets) {
    if (s.points.empty()) throw std::invalid_argument("empty factor critical set");
  }
  CriticalSet out;
  if (sets.empty()) return out;
  out.points.push_back(CriticalPoint{});
  int offset = 0;
  for (std::size_t f = 0; f < sets.size(); ++f) {
    std::vector<CriticalPoint> next;
    next.reserve(out.points.size() * sets[f].points.size());
    for (const auto& prefix : out.points) {
      for (const auto& q : sets[f].points) {
        if (static_cast<int>(q.coords.size()) != dims[f]) {
          throw std::invalid_argument("factor point dimension mismatch");
        }
        CriticalPoint p = prefix;
        p.coords.insert(p.coords.end(), q.coords.begin(), q.coords.end());
        p.residual = std::max(p.residual, q.residual);
        for (auto b : q.blocks) {
          b.offset += offset;
          p.blocks.push_back(std::move(b));
        }
        next.push_back(std::move(p));
      }
    }
    out.points = std::move(next);
    offset += dims[f];
  }
  return out;
}

CriticalSet crit_atom(const FamilyAtom& atom, const Config& cfg) {
  switch (atom.kind) {
    case AtomKind::Segment:
      return crit_segment();
    case AtomKind::DelPezzo:
      return crit_del_pezzo(atom.k, cfg);
    case AtomKind::PseudoDelPezzo:
      return crit_pseudo_del_pezzo(atom.k, cfg);
  }
  throw std::logic_error("unknown atom kind");
}

CriticalSet crit_for_family(const FamilyExpr& expr, const Config& cfg) {
  if (expr.atoms.empty()) throw std::invalid_argument("empty family expression");
  if (expr.dim() > cfg.max_dim) {
    throw std::invalid_argument("dimension " + std::to_string(expr.dim()) + " exceeds max_dim " +
                                std::to_string(cfg.max_dim));
  }
  // Identical atoms share one solve.
  std::map<std::pair<int, int>, CriticalSet> cache;
  std::vector<CriticalSet> sets;
  std::vector<int> dims;
  for (const auto& atom : expr.atoms) {
    const auto key = std::make_pair(static_cast<int>(atom.kind), atom.k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, crit_atom(atom, cfg)).first;
    sets.push_back(it->second);
    dims.push_back(atom.dim());
  }
  if (sets.size() == 1) return sets.front();
  return crit_product(sets, dims);
}

LaurentPoly family_superpotential(const FamilyExpr& expr) {
  const int total = expr.dim();
  LaurentPoly w(total);
  int offset = 0;
  for (const auto& atom : expr.atoms) {
    w = add(w, embed(atom_superpotential(atom), total, offset));
    offset += atom.dim();
  }
  return w;
}

}  // namespace fanoqh
