#include "bondsim/bg/causality.hpp"

#include <utility>

namespace bondsim::bg {

CausalGraph::CausalGraph(BondGraph graph, std::vector<ElementId> effort_setters)
    : graph_(std::make_shared<const BondGraph>(std::move(graph))), effort_setters_(std::move(effort_setters)) {
    if (effort_setters_.size() != graph_->bond_count())
        throw BondGraphError(BondGraphErrc::MalformedGraph, "one causal stroke per bond is required");
    for (const Bond& b : graph_->bonds()) {
        const ElementId s = effort_setters_[b.id.value - 1];
        if (s != b.from.element && s != b.to.element)
            throw BondGraphError(BondGraphErrc::MalformedGraph,
                                 "stroke of bond " + std::to_string(b.id.value) + " names a foreign element");
    }
}

ElementId CausalGraph::effort_setter(BondId bond) const {
    graph_->bond(bond);
    return effort_setters_[bond.value - 1];
}

ElementId CausalGraph::flow_setter(BondId bond) const {
    const Bond& b = graph_->bond(bond);
    return effort_setters_[bond.value - 1] == b.from.element ? b.to.element : b.from.element;
}

bool CausalGraph::has_integral_causality(ElementId storage) const {
    const Element& e = graph_->element(storage);
    const BondId bond = *e.ports.at(0);
    switch (e.kind) {
        case ElementKind::Capacitor:
        case ElementKind::ModulatedCapacitor:
            return imposes_effort(storage, bond);
        case ElementKind::Inertia:
            return !imposes_effort(storage, bond);
        default:
            return false;
    }
}

namespace {

class Assigner {
public:
    explicit Assigner(const BondGraph& graph) : graph_(graph), setters_(graph.bond_count()) {}

    CausalGraph run() {
        const auto& elements = graph_.elements();

        for (const Element& e : elements) {
            if (!is_source(e.kind)) continue;
            const BondId bond = *e.ports[0];
            const bool imposes = e.kind != ElementKind::FlowSource;
            if (!commit(bond, imposes ? e.id : other_end(bond, e.id)))
                throw BondGraphError(BondGraphErrc::CausalConflict,
                                     "source " + e.label() + " cannot impose its causality on bond " +
                                         std::to_string(bond.value));
        }

        for (const Element& e : elements) {
            if (!is_storage(e.kind)) continue;
            const BondId bond = *e.ports[0];
            const bool imposes = e.kind != ElementKind::Inertia;
            if (!commit(bond, imposes ? e.id : other_end(bond, e.id)))
                throw BondGraphError(BondGraphErrc::DerivativeCausality,
                                     e.label() + " is forced into derivative causality on bond " +
                                         std::to_string(bond.value));
        }

        for (const Element& e : elements) {
            if (!is_resistive(e.kind)) continue;
            const BondId bond = *e.ports[0];
            if (setters_[index(bond)]) continue;
            // Conductance form (effort in, flow out) unless an MR only knows e = f(flow).
            const bool prefer_imposing =
                e.kind == ElementKind::ModulatedResistor && !e.params.resistive.flow_of_effort;
            const ElementId first = prefer_imposing ? e.id : other_end(bond, e.id);
            if (!try_either(bond, first))
                throw BondGraphError(BondGraphErrc::CausalConflict,
                                     "no causality for resistor " + e.label() + " satisfies its junctions");
        }

        for (const Bond& b : graph_.bonds()) {
            if (setters_[index(b.id)]) continue;
            if (!try_either(b.id, b.from.element))
                throw BondGraphError(BondGraphErrc::CausalConflict,
                                     "bond " + std::to_string(b.id.value) + " admits no consistent stroke");
        }

        if (!consistent(/*complete=*/true))
            throw BondGraphError(BondGraphErrc::CausalConflict, "junction constraints unsatisfiable");

        std::vector<ElementId> strokes;
        strokes.reserve(setters_.size());
        for (const auto& s : setters_) strokes.push_back(*s);
        return CausalGraph(graph_, std::move(strokes));
    }

private:
    static std::size_t index(BondId b) { return b.value - 1; }

    ElementId other_end(BondId bond, ElementId self) const {
        const Bond& b = graph_.bond(bond);
        return b.from.element == self ? b.to.element : b.from.element;
    }

    // Sets a stroke and propagates it. Returns false, leaving state undefined, on conflict.
    bool commit(BondId bond, ElementId setter) {
        auto& slot = setters_[index(bond)];
        if (slot) return *slot == setter && propagate();
        slot = setter;
        return propagate();
    }

    bool try_either(BondId bond, ElementId first) {
        const auto snapshot = setters_;
        if (commit(bond, first)) return true;
        setters_ = snapshot;
        if (commit(bond, other_end(bond, first))) return true;
        setters_ = snapshot;
        return false;
    }

    struct Counts {
        std::size_t self = 0;     // bonds on which the element imposes effort
        std::size_t other = 0;    // bonds on which the neighbour imposes effort
        std::size_t unknown = 0;
    };

    Counts count(const Element& e) const {
        Counts c;
        for (const auto& port : e.ports) {
            const auto& s = setters_[index(*port)];
            if (!s) {
                ++c.unknown;
            } else if (*s == e.id) {
                ++c.self;
            } else {
                ++c.other;
            }
        }
        return c;
    }

    // Assigns every unknown stroke on `e` to self (true) or neighbour (false).
    void fill_unknown(const Element& e, bool self, bool& changed) {
        for (const auto& port : e.ports) {
            auto& s = setters_[index(*port)];
            if (!s) {
                s = self ? e.id : other_end(*port, e.id);
                changed = true;
            }
        }
    }

    // Fixed-point constraint propagation; false on a violated constraint.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            if (!consistent(/*complete=*/false)) return false;
            for (const Element& e : graph_.elements()) {
                const Counts c = count(e);
                if (c.unknown == 0) continue;
                switch (e.kind) {
                    case ElementKind::ZeroJunction:
                        // Exactly one neighbour sets the common effort.
                        if (c.other == 1) {
                            fill_unknown(e, true, changed);
                        } else if (c.other == 0 && c.unknown == 1) {
                            fill_unknown(e, false, changed);
                        }
                        break;
                    case ElementKind::OneJunction:
                        // Exactly one neighbour sets the common flow, so the junction
                        // imposes effort on exactly one bond.
                        if (c.self == 1) {
                            fill_unknown(e, false, changed);
                        } else if (c.self == 0 && c.unknown == 1) {
                            fill_unknown(e, true, changed);
                        }
                        break;
                    case ElementKind::Transformer:
                        if (c.self == 1) {
                            fill_unknown(e, false, changed);
                        } else if (c.other == 1) {
                            fill_unknown(e, true, changed);
                        }
                        break;
                    case ElementKind::Gyrator:
                        if (c.self == 1) {
                            fill_unknown(e, true, changed);
                        } else if (c.other == 1) {
                            fill_unknown(e, false, changed);
                        }
                        break;
                    default:
                        break;
                }
            }
        }
        return true;
    }

    bool consistent(bool complete) const {
        for (const Element& e : graph_.elements()) {
            const Counts c = count(e);
            if (complete && c.unknown != 0) return false;
            switch (e.kind) {
                case ElementKind::ZeroJunction:
                    if (c.other > 1 || (c.unknown == 0 && c.other != 1)) return false;
                    break;
                case ElementKind::OneJunction:
                    if (c.self > 1 || (c.unknown == 0 && c.self != 1)) return false;
                    break;
                case ElementKind::Transformer:
                    if (c.self > 1 || c.other > 1) return false;
                    break;
                case ElementKind::Gyrator:
                    if (c.self > 0 && c.other > 0) return false;
                    break;
                default:
                    break;
            }
        }
        return true;
    }

    const BondGraph& graph_;
    std::vector<std::optional<ElementId>> setters_;
};

}  // namespace

CausalGraph assign_causality(const BondGraph& graph) {
    graph.validate();
    return Assigner(graph).run();
}

}  // namespace bondsim::bg
