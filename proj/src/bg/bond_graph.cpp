#include "bondsim/bg/bond_graph.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace bondsim::bg {

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::EffortSource: return "SE";
        case ElementKind::FlowSource: return "SF";
        case ElementKind::ModulatedEffortSource: return "MSE";
        case ElementKind::Resistor: return "R";
        case ElementKind::ModulatedResistor: return "MR";
        case ElementKind::Capacitor: return "C";
        case ElementKind::ModulatedCapacitor: return "MC";
        case ElementKind::Inertia: return "I";
        case ElementKind::Transformer: return "TF";
        case ElementKind::Gyrator: return "GY";
        case ElementKind::ZeroJunction: return "J0";
        case ElementKind::OneJunction: return "J1";
    }
    return "?";
}

bool is_source(ElementKind kind) {
    return kind == ElementKind::EffortSource || kind == ElementKind::FlowSource ||
           kind == ElementKind::ModulatedEffortSource;
}

bool is_storage(ElementKind kind) {
    return kind == ElementKind::Capacitor || kind == ElementKind::ModulatedCapacitor ||
           kind == ElementKind::Inertia;
}

bool is_resistive(ElementKind kind) {
    return kind == ElementKind::Resistor || kind == ElementKind::ModulatedResistor;
}

bool is_junction(ElementKind kind) {
    return kind == ElementKind::ZeroJunction || kind == ElementKind::OneJunction;
}

bool is_modulated(ElementKind kind) {
    return kind == ElementKind::ModulatedEffortSource || kind == ElementKind::ModulatedResistor ||
           kind == ElementKind::ModulatedCapacitor;
}

std::string_view to_string(BondGraphErrc code) {
    switch (code) {
        case BondGraphErrc::NonPositiveParameter: return "NonPositiveParameter";
        case BondGraphErrc::InvalidParameter: return "InvalidParameter";
        case BondGraphErrc::UnknownElement: return "UnknownElement";
        case BondGraphErrc::UnknownPort: return "UnknownPort";
        case BondGraphErrc::PortAlreadyBound: return "PortAlreadyBound";
        case BondGraphErrc::MalformedGraph: return "MalformedGraph";
        case BondGraphErrc::CausalConflict: return "CausalConflict";
        case BondGraphErrc::DerivativeCausality: return "DerivativeCausality";
        case BondGraphErrc::AlgebraicLoop: return "AlgebraicLoop";
        case BondGraphErrc::MissingConstitutiveLaw: return "MissingConstitutiveLaw";
    }
    return "?";
}

BondGraphError::BondGraphError(BondGraphErrc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

std::string Element::label() const {
    if (!params.name.empty()) return params.name;
    return std::string(to_string(kind)) + std::to_string(id.value);
}

namespace {

std::size_t power_port_count(ElementKind kind, const ElementParams& params) {
    if (is_junction(kind)) return params.ports;
    if (kind == ElementKind::Transformer || kind == ElementKind::Gyrator) return 2;
    return 1;
}

void check_params(ElementKind kind, const ElementParams& params) {
    auto fail = [&](BondGraphErrc code, const std::string& why) {
        throw BondGraphError(code, std::string(to_string(kind)) + " " + why);
    };
    switch (kind) {
        case ElementKind::EffortSource:
        case ElementKind::FlowSource:
            if (!std::isfinite(params.value)) fail(BondGraphErrc::InvalidParameter, "value must be finite");
            break;
        case ElementKind::Resistor:
        case ElementKind::Capacitor:
        case ElementKind::Inertia:
            if (!(params.value > 0.0) || !std::isfinite(params.value))
                fail(BondGraphErrc::NonPositiveParameter, "coefficient must be positive, got " +
                                                              std::to_string(params.value));
            break;
        case ElementKind::Transformer:
        case ElementKind::Gyrator:
            if (params.value == 0.0 || !std::isfinite(params.value))
                fail(BondGraphErrc::InvalidParameter, "modulus must be finite and non-zero");
            break;
        case ElementKind::ZeroJunction:
        case ElementKind::OneJunction:
            if (params.ports < 2) fail(BondGraphErrc::InvalidParameter, "needs at least 2 ports");
            break;
        case ElementKind::ModulatedEffortSource:
        case ElementKind::ModulatedCapacitor:
            if (!params.law) fail(BondGraphErrc::InvalidParameter, "requires a signal law");
            break;
        case ElementKind::ModulatedResistor:
            if (!params.resistive.flow_of_effort && !params.resistive.effort_of_flow)
                fail(BondGraphErrc::InvalidParameter, "requires a resistive law");
            break;
    }
}

}  // namespace

ElementId BondGraph::add_element(ElementKind kind, ElementParams params) {
    check_params(kind, params);
    Element element{ElementId{elements_.size() + 1}, kind, std::move(params), {}, {}};
    element.ports.resize(power_port_count(kind, element.params));
    elements_.push_back(std::move(element));
    return elements_.back().id;
}

ElementId BondGraph::add_effort_source(double effort, std::string name) {
    return add_element(ElementKind::EffortSource, {.value = effort, .name = std::move(name)});
}

ElementId BondGraph::add_flow_source(double flow, std::string name) {
    return add_element(ElementKind::FlowSource, {.value = flow, .name = std::move(name)});
}

ElementId BondGraph::add_modulated_effort_source(SignalLaw law, std::string name) {
    return add_element(ElementKind::ModulatedEffortSource, {.law = std::move(law), .name = std::move(name)});
}

ElementId BondGraph::add_resistor(double resistance, std::string name) {
    return add_element(ElementKind::Resistor, {.value = resistance, .name = std::move(name)});
}

ElementId BondGraph::add_modulated_resistor(ResistiveLaw law, std::string name) {
    return add_element(ElementKind::ModulatedResistor, {.resistive = std::move(law), .name = std::move(name)});
}

ElementId BondGraph::add_capacitor(double capacitance, std::string name) {
    return add_element(ElementKind::Capacitor, {.value = capacitance, .name = std::move(name)});
}

ElementId BondGraph::add_modulated_capacitor(SignalLaw capacitance, std::string name) {
    return add_element(ElementKind::ModulatedCapacitor, {.law = std::move(capacitance), .name = std::move(name)});
}

ElementId BondGraph::add_inertia(double inertance, std::string name) {
    return add_element(ElementKind::Inertia, {.value = inertance, .name = std::move(name)});
}

ElementId BondGraph::add_transformer(double modulus, std::string name) {
    return add_element(ElementKind::Transformer, {.value = modulus, .name = std::move(name)});
}

ElementId BondGraph::add_gyrator(double modulus, std::string name) {
    return add_element(ElementKind::Gyrator, {.value = modulus, .name = std::move(name)});
}

ElementId BondGraph::add_zero_junction(std::size_t ports, std::string name) {
    return add_element(ElementKind::ZeroJunction, {.ports = ports, .name = std::move(name)});
}

ElementId BondGraph::add_one_junction(std::size_t ports, std::string name) {
    return add_element(ElementKind::OneJunction, {.ports = ports, .name = std::move(name)});
}

const Element& BondGraph::element(ElementId id) const {
    if (id.value == 0 || id.value > elements_.size())
        throw BondGraphError(BondGraphErrc::UnknownElement, "element " + std::to_string(id.value));
    return elements_[id.value - 1];
}

Element& BondGraph::mutable_element(ElementId id) {
    return const_cast<Element&>(std::as_const(*this).element(id));
}

const Bond& BondGraph::bond(BondId id) const {
    if (id.value == 0 || id.value > bonds_.size())
        throw BondGraphError(BondGraphErrc::MalformedGraph, "unknown bond " + std::to_string(id.value));
    return bonds_[id.value - 1];
}

BondId BondGraph::connect(Port from, Port to) {
    auto slot = [&](Port port) -> std::optional<BondId>& {
        if (port.element.value == 0 || port.element.value > elements_.size())
            throw BondGraphError(BondGraphErrc::UnknownPort, "no element " + std::to_string(port.element.value));
        Element& e = elements_[port.element.value - 1];
        if (port.index >= e.ports.size())
            throw BondGraphError(BondGraphErrc::UnknownPort,
                                 e.label() + " has no port " + std::to_string(port.index));
        return e.ports[port.index];
    };
    if (from.element == to.element)
        throw BondGraphError(BondGraphErrc::InvalidParameter, "an element cannot be bonded to itself");
    auto& from_slot = slot(from);
    auto& to_slot = slot(to);
    if (from_slot || to_slot) {
        const Port& bound = from_slot ? from : to;
        throw BondGraphError(BondGraphErrc::PortAlreadyBound, element(bound.element).label() + " port " +
                                                                  std::to_string(bound.index));
    }

    const BondId id{bonds_.size() + 1};
    bonds_.push_back(Bond{id, from, to});
    from_slot = id;
    to_slot = id;
    return id;
}

BondId BondGraph::connect(ElementId from, ElementId to) {
    auto free_port = [&](ElementId id) {
        if (id.value == 0 || id.value > elements_.size())
            throw BondGraphError(BondGraphErrc::UnknownPort, "no element " + std::to_string(id.value));
        const Element& e = elements_[id.value - 1];
        for (std::size_t i = 0; i < e.ports.size(); ++i) {
            if (!e.ports[i]) return Port{id, i};
        }
        throw BondGraphError(BondGraphErrc::PortAlreadyBound, e.label() + " has no unbound port");
    };
    return connect(free_port(from), free_port(to));
}

void BondGraph::link_signal(SignalSource source, ElementId target) {
    Element& e = mutable_element(target);
    if (!is_modulated(e.kind))
        throw BondGraphError(BondGraphErrc::InvalidParameter, e.label() + " does not accept signal inputs");
    e.signals.push_back(source);
}

void BondGraph::validate() const {
    if (elements_.empty()) throw BondGraphError(BondGraphErrc::MalformedGraph, "graph has no elements");

    for (const Element& e : elements_) {
        for (std::size_t i = 0; i < e.ports.size(); ++i) {
            if (!e.ports[i])
                throw BondGraphError(BondGraphErrc::MalformedGraph,
                                     e.label() + " port " + std::to_string(i) + " is dangling");
        }
        for (const SignalSource& s : e.signals) {
            const bool ok = s.kind == SignalSource::Kind::Storage
                                ? (s.id >= 1 && s.id <= elements_.size() && is_storage(elements_[s.id - 1].kind))
                                : (s.id >= 1 && s.id <= bonds_.size());
            if (!ok)
                throw BondGraphError(BondGraphErrc::MalformedGraph,
                                     e.label() + " reads a signal from a missing bond or storage element");
        }
    }

    // Connectivity over bonds and signal links, via union-find.
    std::vector<std::size_t> parent(elements_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (const Bond& b : bonds_) unite(b.from.element.value - 1, b.to.element.value - 1);
    for (const Element& e : elements_) {
        for (const SignalSource& s : e.signals) {
            if (s.kind == SignalSource::Kind::Storage) {
                unite(e.id.value - 1, s.id - 1);
            } else {
                unite(e.id.value - 1, bonds_[s.id - 1].from.element.value - 1);
            }
        }
    }
    const std::size_t root = find(0);
    for (std::size_t i = 1; i < elements_.size(); ++i) {
        if (find(i) != root)
            throw BondGraphError(BondGraphErrc::MalformedGraph,
                                 "graph is not connected; " + elements_[i].label() + " is isolated from " +
                                     elements_[0].label());
    }
}

}  // namespace bondsim::bg
