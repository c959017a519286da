// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "lexval/valuation.hpp"

namespace lexval {

/// Lexicographic conjunction: merge both grade multisets, sort, reduce.
/// A T-norm on valuations: commutative, associative, non-decreasing in each
/// argument, identity (top), annihilator (bottom), and strictly monotone in
/// each argument against a nonzero other operand.
Valuation conj(const Valuation& f, const Valuation& g,
               std::size_t max_len = kDefaultMaxLength);

/// N-ary conjunction as a binary fold (order is immaterial by
/// associativity and commutativity). Requires a nonempty span.
Valuation conj_all(std::span<const Valuation> vs,
                   std::size_t max_len = kDefaultMaxLength);

/// Lexicographic disjunction: the order maximum of the two valuations.
Valuation disj(const Valuation& f, const Valuation& g);

/// Negation: the singleton of the scale-negation of the first grade.
Valuation neg(const Valuation& f);

/// S-implication: neg(f) joined with g.
Valuation s_implication(const Valuation& f, const Valuation& g);

/// Modus ponens generating function for the S-implication: the least h with
/// s_implication(f, h) >= g. Closed form: bottom when neg(f) >= g, else g.
/// Satisfies only non-strict monotonicity; see mpgf_r for the strict one.
Valuation mpgf_s(const Valuation& f, const Valuation& g);

/// R-implication (residuum): the greatest h with conj(f, h) <= g.
///
/// Computed by greedy prefix descent. The satisfying set is downward closed,
/// so "some valuation extending prefix p*c satisfies" is equivalent to
/// "p followed by length(g)+1 copies of c satisfies", and the greatest
/// satisfying valuation can be grown grade by grade, largest candidate
/// first, stopping as soon as the prefix itself satisfies (a prefix is
/// greater than all of its extensions). Throws UnattainedSupError if the
/// result would exceed length(f)+length(g)+1, rather than truncating.
Valuation r_implication(const Valuation& f, const Valuation& g);

/// Modus ponens generating function for the R-implication: conj(f, g).
/// This is the strictly monotone one: strictly increasing in either argument
/// while the other stays above bottom.
Valuation mpgf_r(const Valuation& f, const Valuation& g,
                 std::size_t max_len = kDefaultMaxLength);

}  // namespace lexval
