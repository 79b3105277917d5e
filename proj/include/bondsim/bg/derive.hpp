#pragma once

#include <string>

#include "bondsim/bg/causality.hpp"
#include "bondsim/bg/state_space.hpp"

namespace bondsim::bg {

/// Compiles a causal graph into an evaluator over its bonds.
///
/// States: one generalized displacement q per C/MC, then one momentum p per I,
/// each group in element insertion order. Inputs: one per SE, SF and unlinked MSE, in
/// insertion order, with the source constants as nominal values. Observables:
/// effort and flow of every bond, labelled "effort:<bond>" and "flow:<bond>",
/// at indices effort_index()/flow_index().
///
/// Sign convention: a bond's effort and flow are shared by both ends; power
/// e*f flows along the bond direction. Storage uses the flow entering the
/// element, so dq/dt = f and dp/dt = e for a bond pointing into C or I.
///
/// Throws AlgebraicLoop when the causal graph has a zero-order loop, and
/// MissingConstitutiveLaw when an MR is given a causality its law lacks.
StateSpaceModel derive_state_equations(const CausalGraph& causal);

inline std::size_t effort_index(BondId bond) { return 2 * (bond.value - 1); }
inline std::size_t flow_index(BondId bond) { return 2 * (bond.value - 1) + 1; }

std::string effort_label(BondId bond);
std::string flow_label(BondId bond);

}  // namespace bondsim::bg
