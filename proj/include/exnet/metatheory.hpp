#pragma once

// Admissibility transformations on derivations.
//
// Position contracts: every function below describes its result relative to
// the stored conclusion of its input, with surviving context roots keeping
// their relative order and any produced roots appended at the end.

#include "exnet/derivation.hpp"

namespace exnet {

// Pseudo-invertibility of the disjunction rules. Given an LKstar derivation
// whose root at pos is A \/ B, produces a derivation of the same context
// followed by A, B, or both (at least one side is always present). The
// result conclusion is (input minus pos) ++ [A if has_left] ++ [B if has_right].
struct OrInversion {
  Deriv d;
  bool has_left = false;
  bool has_right = false;
};
OrInversion invert_or(const Deriv& d, int pos);

// Removes a T root from an LKstar derivation whose conclusion has at least
// one other root. Result conclusion: input minus pos.
Deriv eliminate_top(const Deriv& d, int pos);

// Contraction on an arbitrary formula, admissible in LKstar. The roots at
// pos_a and pos_b must be equal; the result conclusion is
// (input minus both) ++ [that formula].
Deriv contract_admissible(const Deriv& d, int pos_a, int pos_b);

// Translates an LK derivation of G into an LKstar derivation of a
// subsequent of G (the roots that the translation keeps strong).
Deriv lk_to_lkstar(const Deriv& d);

}  // namespace exnet
