#pragma once

#include "bianchi/torsion.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bianchi {

// Coefficients of the centraliser equations of beta = [[e, f], [g, h]] over
// Z[sqrt(-m)]: g/f = R + wJ and (h - e)/f = rho + w iota.
struct DiophInstance {
  long m = 0;
  MoebiusElt beta;
  Rational R, J, rho, iota;
};

DiophInstance build_instance(long m, const MoebiusElt& beta);

// Real and imaginary part of det [[a, b], [(g/f) b, a + b (h-e)/f]] - 1 for
// a = j + kw, b = l + nw; both vanish exactly on centraliser elements.
Rational re_residual(const DiophInstance& inst, const Integer& j, const Integer& k, const Integer& l, const Integer& n);
Rational im_residual(const DiophInstance& inst, const Integer& j, const Integer& k, const Integer& l, const Integer& n);

struct CentralizerSolution {
  Integer j, k, l, n;
  MoebiusElt matrix;
};

// The matrix [[a, b], [(g/f) b, a + b (h-e)/f]] when it lies in PSL_2(O).
std::optional<MoebiusElt> centraliser_matrix(const DiophInstance& inst, const Integer& j, const Integer& k,
                                              const Integer& l, const Integer& n);

// Integer solutions of j^2 = 3 m k^2 + 1 with |k| <= bound, sorted.
std::vector<std::pair<Integer, Integer>> solve_pell(long m, std::int64_t bound);

// Solutions with n != 2k of the equations for beta = [[0, -1], [1, 1]],
// |k|, |n| <= bound; sorted by (k, n, l).
std::vector<CentralizerSolution> solve_case2(long m, std::int64_t bound);

// Elements X of PSL_2(O) with X beta = beta X in SL_2, found by scanning the
// upper right entry over a coefficient box; works for both ring bases.
std::vector<MoebiusElt> commuting_elements(const MoebiusElt& beta, std::int64_t bound);
// Elements with X beta = -beta X (only for beta of trace zero): they commute
// with beta in PSL_2 and reverse its axis.
std::vector<MoebiusElt> anticommuting_elements(const MoebiusElt& beta, std::int64_t bound);

enum class QuotientStatus { Certified, Inconclusive };

struct AxisQuotient {
  QuotientStatus status = QuotientStatus::Inconclusive;
  ComponentType type = ComponentType::Circle;
  int edge_count = 0;
  std::int64_t translation = 0;  // generator of the translation part, in edges
  bool reflections = false;
  std::vector<int> edge_orbits;  // Gamma-orbits of the fundamental edges
  int generators = 0;
  std::string message;
};

std::string to_string(QuotientStatus s);

// Acts with <S> on the rotation axis of beta, traced through the refined
// complex, and reads off the quotient.  The result is certified when the
// fundamental edges lie in pairwise distinct Gamma-orbits.
AxisQuotient generated_quotient(const EquivComplex& ec, const MoebiusElt& beta, const std::vector<MoebiusElt>& S,
                                int max_steps = 4000);

// Commuting and anti-commuting elements up to the bound, then the quotient.
AxisQuotient centraliser_quotient(const EquivComplex& ec, const MoebiusElt& beta, std::int64_t bound);

// Named elements of the worked examples.
MoebiusElt standard_beta(const RingBasis& r);
MoebiusElt standard_gamma(const RingBasis& r);
MoebiusElt alpha_for_m2(const RingBasis& r);

}  // namespace bianchi
