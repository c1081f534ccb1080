#pragma once

// Serial nested-loop evaluators of every term, written directly from the
// defining sums: all tuples in the band are visited, multipliers and phases
// are evaluated literally, and e^{itPhi} is applied per tuple. Slow by design;
// the fast kernels are tested and benchmarked against these.

#include "pbo/fourier.hpp"
#include "pbo/multiplier.hpp"
#include "pbo/omega.hpp"

namespace pbo::reference {

Sequence N(const OmegaState& w);
Sequence R(const SpectralField& u, const OmegaState& w);

Sequence N_R(const OmegaState& w, double M);
Sequence N_NR(const OmegaState& w, double M);
Sequence N0(const OmegaState& w, double M);
Sequence N1(const OmegaState& w, double M);
Sequence N2(const OmegaState& w, double M);
/// Expanded over n3 = n456 with the three conjugated inner multipliers.
Sequence N3(const OmegaState& w, double M);
Sequence R1(const SpectralField& u, const OmegaState& w, double M);

Sequence N1R(const OmegaState& w, double M, const mult::ComparabilityConstant& K);
Sequence N1NR(const OmegaState& w, double M, const mult::ComparabilityConstant& K);
Sequence N10(const OmegaState& w, double M, const mult::ComparabilityConstant& K);
Sequence N11(const OmegaState& w, const Sequence& dt_w, double M, const mult::ComparabilityConstant& K);
Sequence N3R(const OmegaState& w, double M, const mult::ComparabilityConstant& K);
Sequence N3NR(const OmegaState& w, double M, const mult::ComparabilityConstant& K);
Sequence N30(const OmegaState& w, double M, const mult::ComparabilityConstant& K);
Sequence N31(const OmegaState& w, const Sequence& dt_w, double M, const mult::ComparabilityConstant& K);

}  // namespace pbo::reference
