#pragma once

#include <memory>
#include <vector>

#include "bondsim/bg/bond_graph.hpp"

namespace bondsim::bg {

/// A bond graph with one causal stroke per bond. Immutable once built.
class CausalGraph {
public:
    CausalGraph(BondGraph graph, std::vector<ElementId> effort_setters);

    const BondGraph& graph() const noexcept { return *graph_; }

    /// Element at the end of `bond` that imposes effort on it; the other end imposes flow.
    ElementId effort_setter(BondId bond) const;
    ElementId flow_setter(BondId bond) const;
    bool imposes_effort(ElementId element, BondId bond) const { return effort_setter(bond) == element; }

    /// True when a C/MC imposes effort on its bond, or an I imposes flow on it.
    bool has_integral_causality(ElementId storage) const;

private:
    std::shared_ptr<const BondGraph> graph_;
    std::vector<ElementId> effort_setters_;
};

/// Sequential causality assignment. Order of passes: sources, storage elements
/// with integral preference, resistors, then any remaining junction-to-junction
/// bonds. Each choice is propagated through junction, TF and GY constraints
/// before the next one; ties break by element (then bond) insertion order.
///
/// Throws BondGraphError with CausalConflict when source or junction
/// constraints cannot be met, DerivativeCausality when a storage element is
/// forced out of integral causality, and MalformedGraph when validate() fails.
CausalGraph assign_causality(const BondGraph& graph);

}  // namespace bondsim::bg
