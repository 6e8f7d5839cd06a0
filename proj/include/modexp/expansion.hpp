#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "modexp/detail/scaled.hpp"
#include "modexp/graph.hpp"
#include "modexp/limits.hpp"

namespace modexp {

enum class ExpansionKind { conductance, by_products, by_edges };

inline std::string to_string(ExpansionKind k) {
  switch (k) {
    case ExpansionKind::conductance: return "h";
    case ExpansionKind::by_products: return "hh";
    case ExpansionKind::by_edges: return "hprime";
  }
  return "?";
}

struct ExpansionReport {
  ExpansionKind kind = ExpansionKind::conductance;
  ExtendedRatio value;
  // Canonical minimiser: the smallest bitmask among all exact minimisers.
  VertexSet witness;
};

// h_G(A) = e(A, Ā) / min{vol(A), vol(Ā)}
inline Ratio h_set(const Graph& g, const VertexSet& a) {
  Ratio va = volume(g, a);
  Ratio vb = g.volume() - va;
  if (va.is_zero() || vb.is_zero()) throw Error(Errc::zero_volume_side, "set " + a.str() + " has a zero-volume side");
  return cut(g, a) / min(va, vb);
}

// ĥ_G(A) = e(A, Ā) vol(G) / (vol(A) vol(Ā))
inline Ratio hh_set(const Graph& g, const VertexSet& a) {
  Ratio va = volume(g, a);
  Ratio vb = g.volume() - va;
  if (va.is_zero() || vb.is_zero()) throw Error(Errc::zero_volume_side, "set " + a.str() + " has a zero-volume side");
  return cut(g, a) * g.volume() / (va * vb);
}

// h'_G(A) = e(A, Ā) / min{e(A), e(Ā)}; +inf when either side has no internal edge.
inline ExtendedRatio hprime_set(const Graph& g, const VertexSet& a) {
  Ratio ea = internal_edges(g, a);
  Ratio eb = internal_edges(g, a.complement());
  if (ea.is_zero() || eb.is_zero()) return ExtendedRatio::inf();
  return ExtendedRatio::of(cut(g, a) / min(ea, eb));
}

namespace detail {

inline void require_expansion_domain(const Graph& g, const Limits& limits) {
  if (g.n() < 2) throw Error(Errc::too_few_vertices, "expansion needs at least two vertices");
  if (g.has_isolated_vertex()) {
    throw Error(Errc::zero_volume_side, "graph has a zero-degree vertex; expansion is undefined");
  }
  if (g.n() > limits.max_subset_vertices || g.n() > 64) {
    throw Error(Errc::size_limit_exceeded, std::to_string(g.n()) + " vertices exceed the enumeration cap of " +
                                               std::to_string(limits.max_subset_vertices) + " (--max-n)");
  }
}

// Running minimum of num/den with the smallest-mask tie rule.
struct FractionMin {
  wide_int num = 0;
  wide_int den = 0;  // den == 0 means nothing recorded yet
  mask_t mask = 0;

  void offer(wide_int n, wide_int d, mask_t m) {
    if (den == 0) {
      num = n, den = d, mask = m;
      return;
    }
    wide_int lhs = n * den;
    wide_int rhs = num * d;
    if (lhs < rhs || (lhs == rhs && m < mask)) num = n, den = d, mask = m;
  }
};

template <class Candidate>
ExpansionReport minimise_over_cuts(const Graph& g, const Limits& limits, ExpansionKind kind,
                                   Candidate&& candidate) {
  require_expansion_domain(g, limits);
  ScaledGraph sg(g);
  FractionMin best;
  bool any_finite = false;
  scan_cuts(sg, [&](mask_t mask, std::int64_t vol_a, std::int64_t cut) {
    wide_int num = 0, den = 0;
    if (candidate(sg, vol_a, cut, num, den)) {
      any_finite = true;
      best.offer(num, den, mask);
    }
  });
  ExpansionReport report;
  report.kind = kind;
  if (!any_finite) {
    report.value = ExtendedRatio::inf();
    report.witness = VertexSet::from_mask(g.n(), 1);
  } else {
    report.value = ExtendedRatio::of(Ratio::from_wide(best.num, best.den));
    report.witness = VertexSet::from_mask(g.n(), best.mask);
  }
  return report;
}

}  // namespace detail

// Exact conductance h_G by enumerating every cut.
inline ExpansionReport conductance(const Graph& g, const Limits& limits = {}) {
  return detail::minimise_over_cuts(
      g, limits, ExpansionKind::conductance,
      [](const detail::ScaledGraph& sg, std::int64_t vol_a, std::int64_t cut, wide_int& num, wide_int& den) {
        num = cut;
        den = std::min(vol_a, sg.vol - vol_a);
        return true;
      });
}

inline ExpansionReport expansion_by_products(const Graph& g, const Limits& limits = {}) {
  return detail::minimise_over_cuts(
      g, limits, ExpansionKind::by_products,
      [](const detail::ScaledGraph& sg, std::int64_t vol_a, std::int64_t cut, wide_int& num, wide_int& den) {
        num = static_cast<wide_int>(cut) * sg.vol;
        den = static_cast<wide_int>(vol_a) * (sg.vol - vol_a);
        return true;
      });
}

// Cuts with an edgeless side contribute +inf; the value is +inf when all do.
inline ExpansionReport expansion_by_edges(const Graph& g, const Limits& limits = {}) {
  return detail::minimise_over_cuts(
      g, limits, ExpansionKind::by_edges,
      [](const detail::ScaledGraph& sg, std::int64_t vol_a, std::int64_t cut, wide_int& num, wide_int& den) {
        std::int64_t e_a = (vol_a - cut) / 2;
        std::int64_t e_b = (sg.vol - vol_a - cut) / 2;
        if (e_a == 0 || e_b == 0) return false;
        num = cut;
        den = std::min(e_a, e_b);
        return true;
      });
}

inline bool is_delta_expander(const Graph& g, const Ratio& delta, const Limits& limits = {}) {
  if (delta.sign() <= 0) throw Error(Errc::out_of_range, "delta must be positive");
  return conductance(g, limits).value >= delta;
}

// h' = 2h / (1 - h), the edge-count form of the same threshold; +inf at h = 1.
inline ExtendedRatio hprime_from_conductance(const Ratio& h) {
  if (h >= Ratio{1}) return ExtendedRatio::inf();
  return ExtendedRatio::of(h * 2 / (Ratio{1} - h));
}

}  // namespace modexp
