#pragma once

#include "multcalc/nilpotent.hpp"

namespace multcalc {

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
/// Relative error is at rounding level for norms up to about 10.
MatD exp_general(const MatD& x);

/// Principal logarithm for matrices close to the identity.
///
/// Unipotent inputs go through the exact Mercator polynomial. Otherwise the
/// input must satisfy ||g - I||_F < 1; repeated square roots bring it close
/// to I before the series is summed. Throws DomainError outside that set.
MatD log_near_identity(const MatD& g);

/// Real power of a general matrix. Only defined for unipotent matrices,
/// where the one-parameter subgroup through g is unique.
MatD power_real(const MatD& g, double r);

}  // namespace multcalc
