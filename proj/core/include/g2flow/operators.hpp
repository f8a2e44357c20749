#pragma once

#include "g2flow/profile.hpp"
#include "g2flow/spectral.hpp"

namespace g2flow {

// Canonical antiderivative Q(f) = F + C1 with C1 chosen so that
// \int u^{-1} Q(f) = 0.  Satisfies Q(f)' = f.
Profile canonical_Q(const TangentProfile& f, const PositiveProfile& u);

// Q_u(f) = Q(f)/u, zero-mean by the C1 normalization.
Profile canonical_Q_u(const TangentProfile& f, const PositiveProfile& u);

// Transport residual K(f) = f - Q(f) u'/u; vanishes iff f = 0 for the
// canonical normalization (see geometry.hpp for the rotation gauge).
Profile transport_K(const TangentProfile& f, const PositiveProfile& u);

}  // namespace g2flow
