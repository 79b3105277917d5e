#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bondsim::bg {

enum class ElementKind {
    EffortSource,        // SE
    FlowSource,          // SF
    ModulatedEffortSource,  // MSE
    Resistor,            // R
    ModulatedResistor,   // MR
    Capacitor,           // C
    ModulatedCapacitor,  // MC
    Inertia,             // I
    Transformer,         // TF
    Gyrator,             // GY
    ZeroJunction,        // J0, common effort
    OneJunction,         // J1, common flow
};

std::string_view to_string(ElementKind kind);

bool is_source(ElementKind kind);
bool is_storage(ElementKind kind);
bool is_resistive(ElementKind kind);
bool is_junction(ElementKind kind);
bool is_modulated(ElementKind kind);

enum class BondGraphErrc {
    NonPositiveParameter,
    InvalidParameter,
    UnknownElement,
    UnknownPort,
    PortAlreadyBound,
    MalformedGraph,
    CausalConflict,
    DerivativeCausality,
    AlgebraicLoop,
    MissingConstitutiveLaw,
};

std::string_view to_string(BondGraphErrc code);

class BondGraphError : public std::runtime_error {
public:
    BondGraphError(BondGraphErrc code, const std::string& detail);

    BondGraphErrc code() const noexcept { return code_; }

private:
    BondGraphErrc code_;
};

// Element and bond ids are 1-based, in insertion order.
struct ElementId {
    std::size_t value = 0;
    auto operator<=>(const ElementId&) const = default;
};

struct BondId {
    std::size_t value = 0;
    auto operator<=>(const BondId&) const = default;
};

struct Port {
    ElementId element;
    std::size_t index = 0;
};

/// Quantity read by a modulated element through a signal link.
struct SignalSource {
    enum class Kind { Effort, Flow, Storage };

    Kind kind = Kind::Effort;
    std::size_t id = 0;  // bond id for Effort/Flow, element id for Storage

    static SignalSource effort_of(BondId bond) { return {Kind::Effort, bond.value}; }
    static SignalSource flow_of(BondId bond) { return {Kind::Flow, bond.value}; }
    /// Generalized displacement (C/MC) or momentum (I) held by a storage element.
    static SignalSource storage_of(ElementId element) { return {Kind::Storage, element.value}; }

    bool operator==(const SignalSource&) const = default;
};

/// Function of the linked signals, in link order.
using SignalLaw = std::function<double(std::span<const double> signals)>;

/// Constitutive law of a modulated resistor. Either direction may be left empty;
/// causality assignment prefers the direction that is provided.
struct ResistiveLaw {
    std::function<double(double effort, std::span<const double> signals)> flow_of_effort;
    std::function<double(double flow, std::span<const double> signals)> effort_of_flow;
};

/// Parameters for add_element. Which fields are read depends on the kind:
///   SE/SF            value = nominal effort/flow (the default input)
///   R, C, I          value = resistance, capacitance, inertance (> 0)
///   TF, GY           value = modulus (finite, non-zero)
///   J0, J1           ports = number of power ports (>= 2)
///   MSE, MC          law = effort (MSE) or capacitance (MC) as a function of signals
///   MR               resistive = flow/effort law
struct ElementParams {
    double value = 0.0;
    std::size_t ports = 0;
    SignalLaw law{};
    ResistiveLaw resistive{};
    std::string name{};
};

struct Element {
    ElementId id;
    ElementKind kind;
    ElementParams params;
    std::vector<std::optional<BondId>> ports;  // bond attached to each power port
    std::vector<SignalSource> signals;          // signal inputs, in link order

    std::string label() const;
};

struct Bond {
    BondId id;
    Port from;  // power flows from -> to
    Port to;
};

/// Acausal bond graph. Construction is single-owner; copies are cheap enough for
/// the model sizes this engine targets.
class BondGraph {
public:
    ElementId add_element(ElementKind kind, ElementParams params = {});

    // Convenience constructors over add_element.
    ElementId add_effort_source(double effort, std::string name = {});
    ElementId add_flow_source(double flow, std::string name = {});
    ElementId add_modulated_effort_source(SignalLaw law, std::string name = {});
    ElementId add_resistor(double resistance, std::string name = {});
    ElementId add_modulated_resistor(ResistiveLaw law, std::string name = {});
    ElementId add_capacitor(double capacitance, std::string name = {});
    ElementId add_modulated_capacitor(SignalLaw capacitance, std::string name = {});
    ElementId add_inertia(double inertance, std::string name = {});
    ElementId add_transformer(double modulus, std::string name = {});
    ElementId add_gyrator(double modulus, std::string name = {});
    ElementId add_zero_junction(std::size_t ports, std::string name = {});
    ElementId add_one_junction(std::size_t ports, std::string name = {});

    BondId connect(Port from, Port to);
    /// Connects the lowest-numbered unbound port of each element.
    BondId connect(ElementId from, ElementId to);

    /// Feeds `source` into the next signal input of the modulated element `target`.
    void link_signal(SignalSource source, ElementId target);

    const Element& element(ElementId id) const;
    const Bond& bond(BondId id) const;
    const std::vector<Element>& elements() const noexcept { return elements_; }
    const std::vector<Bond>& bonds() const noexcept { return bonds_; }

    std::size_t element_count() const noexcept { return elements_.size(); }
    std::size_t bond_count() const noexcept { return bonds_.size(); }

    /// Checks the structural invariants: every port bound, signal sources exist,
    /// graph connected through bonds and signal links. Throws MalformedGraph.
    void validate() const;

private:
    Element& mutable_element(ElementId id);

    std::vector<Element> elements_;
    std::vector<Bond> bonds_;
};

}  // namespace bondsim::bg
