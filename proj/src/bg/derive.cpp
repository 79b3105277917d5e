#include "bondsim/bg/derive.hpp"

#include <memory>
#include <queue>
#include <unordered_map>
#include <stdexcept>
#include <utility>

namespace bondsim::bg {

std::string effort_label(BondId bond) { return "effort:" + std::to_string(bond.value); }
std::string flow_label(BondId bond) { return "flow:" + std::to_string(bond.value); }

namespace {

// Values visible to one evaluation step.
struct Frame {
    std::span<const double> state;
    std::span<const double> inputs;
    std::span<const double> vars;  // effort/flow of every bond, filled in schedule order
};

struct Step {
    std::size_t target = 0;
    std::vector<std::size_t> deps;
    std::function<double(const Frame&)> compute;
};

struct StorageSlot {
    std::size_t var = 0;  // flow (C/MC) or effort (I) of the storage bond
    double sign = 1.0;    // +1 when the bond points into the element
    bool inertia = false;
};

struct Program {
    std::size_t var_count = 0;
    std::vector<Step> steps;  // topologically ordered
    std::vector<StorageSlot> storage;

    void evaluate(std::span<const double> state, std::span<const double> inputs, std::span<double> vars) const {
        const Frame frame{state, inputs, vars};
        for (const Step& s : steps) vars[s.target] = s.compute(frame);
    }
};

// Resolved signal read: either a bond variable or a state entry.
struct SignalRead {
    bool from_state = false;
    std::size_t index = 0;
};

class Compiler {
public:
    explicit Compiler(const CausalGraph& causal) : causal_(causal), graph_(causal.graph()) {
        // Displacements first, then momenta, each in insertion order.
        for (const bool momenta : {false, true}) {
            for (const Element& e : graph_.elements()) {
                if (!is_storage(e.kind) || (e.kind == ElementKind::Inertia) != momenta) continue;
                state_slot_[e.id.value] = state_labels_.size();
                state_labels_.push_back((momenta ? "p:" : "q:") + e.label());
            }
        }
        for (const Element& e : graph_.elements()) {
            const bool takes_input = e.kind == ElementKind::EffortSource || e.kind == ElementKind::FlowSource ||
                                     (e.kind == ElementKind::ModulatedEffortSource && e.signals.empty());
            if (takes_input) {
                input_slot_[e.id.value] = input_labels_.size();
                input_labels_.push_back("u:" + e.label());
                nominal_inputs_.push_back(e.kind == ElementKind::ModulatedEffortSource ? 0.0 : e.params.value);
            }
        }
    }

    StateSpaceModel compile() {
        auto program = std::make_shared<Program>();
        program->var_count = 2 * graph_.bond_count();

        std::vector<Step> unordered;
        unordered.reserve(program->var_count);
        for (const Bond& b : graph_.bonds()) {
            unordered.push_back(effort_step(b.id));
            unordered.push_back(flow_step(b.id));
        }
        program->steps = schedule(std::move(unordered));

        program->storage.resize(state_labels_.size());
        for (const Element& e : graph_.elements()) {
            if (!is_storage(e.kind)) continue;
            const BondId bond = *e.ports[0];
            const bool inertia = e.kind == ElementKind::Inertia;
            program->storage[state_slot_.at(e.id.value)] = {inertia ? effort_index(bond) : flow_index(bond),
                                                            orientation(e.id, bond), inertia};
        }

        std::vector<std::string> observable_labels;
        for (const Bond& b : graph_.bonds()) {
            observable_labels.push_back(effort_label(b.id));
            observable_labels.push_back(flow_label(b.id));
        }

        auto derivatives = [program](double, std::span<const double> state, std::span<const double> inputs,
                                     std::span<double> out) {
            std::vector<double> vars(program->var_count);
            program->evaluate(state, inputs, vars);
            for (std::size_t k = 0; k < program->storage.size(); ++k) {
                const StorageSlot& s = program->storage[k];
                // dp/dt = effort for I; dq/dt = entering flow for C/MC.
                out[k] = s.inertia ? vars[s.var] : s.sign * vars[s.var];
            }
        };
        auto observables = [program](double, std::span<const double> state, std::span<const double> inputs,
                                     std::span<double> out) { program->evaluate(state, inputs, out); };

        return StateSpaceModel(state_labels_, input_labels_, std::move(observable_labels), std::move(derivatives),
                               std::move(observables), nominal_inputs_);
    }

private:
    // +1 if `bond` points into `element`, -1 if it points out of it.
    double orientation(ElementId element, BondId bond) const {
        return graph_.bond(bond).to.element == element ? 1.0 : -1.0;
    }

    std::size_t port_of(const Element& e, BondId bond) const {
        for (std::size_t i = 0; i < e.ports.size(); ++i) {
            if (*e.ports[i] == bond) return i;
        }
        throw std::logic_error("bond not attached to element");
    }

    std::vector<SignalRead> resolve_signals(const Element& e, std::vector<std::size_t>& deps) const {
        std::vector<SignalRead> reads;
        for (const SignalSource& s : e.signals) {
            switch (s.kind) {
                case SignalSource::Kind::Effort:
                    reads.push_back({false, effort_index(BondId{s.id})});
                    deps.push_back(reads.back().index);
                    break;
                case SignalSource::Kind::Flow:
                    reads.push_back({false, flow_index(BondId{s.id})});
                    deps.push_back(reads.back().index);
                    break;
                case SignalSource::Kind::Storage:
                    reads.push_back({true, state_slot_.at(s.id)});
                    break;
            }
        }
        return reads;
    }

    static std::vector<double> gather(const std::vector<SignalRead>& reads, const Frame& f) {
        std::vector<double> values;
        values.reserve(reads.size());
        for (const SignalRead& r : reads) values.push_back(r.from_state ? f.state[r.index] : f.vars[r.index]);
        return values;
    }

    [[noreturn]] void impossible(const Element& e, BondId bond, const char* what) const {
        throw std::logic_error(e.label() + " cannot set the " + what + " of bond " + std::to_string(bond.value) +
                               " in a valid causal graph");
    }

    Step effort_step(BondId bond) {
        const Element& e = graph_.element(causal_.effort_setter(bond));
        Step step;
        step.target = effort_index(bond);
        const double s = orientation(e.id, bond);

        switch (e.kind) {
            case ElementKind::EffortSource: {
                const std::size_t slot = input_slot_.at(e.id.value);
                step.compute = [slot](const Frame& f) { return f.inputs[slot]; };
                break;
            }
            case ElementKind::ModulatedEffortSource: {
                if (e.signals.empty()) {
                    const std::size_t slot = input_slot_.at(e.id.value);
                    step.compute = [slot](const Frame& f) { return f.inputs[slot]; };
                } else {
                    auto reads = resolve_signals(e, step.deps);
                    step.compute = [reads, law = e.params.law](const Frame& f) { return law(gather(reads, f)); };
                }
                break;
            }
            case ElementKind::Capacitor: {
                const std::size_t slot = state_slot_.at(e.id.value);
                const double c = e.params.value;
                step.compute = [slot, c](const Frame& f) { return f.state[slot] / c; };
                break;
            }
            case ElementKind::ModulatedCapacitor: {
                const std::size_t slot = state_slot_.at(e.id.value);
                auto reads = resolve_signals(e, step.deps);
                step.compute = [slot, reads, law = e.params.law](const Frame& f) {
                    return f.state[slot] / law(gather(reads, f));
                };
                break;
            }
            case ElementKind::Resistor: {
                const std::size_t fi = flow_index(bond);
                const double r = e.params.value;
                step.deps.push_back(fi);
                step.compute = [fi, r, s](const Frame& f) { return r * (s * f.vars[fi]); };
                break;
            }
            case ElementKind::ModulatedResistor: {
                if (!e.params.resistive.effort_of_flow)
                    throw BondGraphError(BondGraphErrc::MissingConstitutiveLaw,
                                         e.label() + " imposes effort but has no effort_of_flow law");
                const std::size_t fi = flow_index(bond);
                step.deps.push_back(fi);
                auto reads = resolve_signals(e, step.deps);
                step.compute = [fi, s, reads, law = e.params.resistive.effort_of_flow](const Frame& f) {
                    return law(s * f.vars[fi], gather(reads, f));
                };
                break;
            }
            case ElementKind::ZeroJunction: {
                // Common effort, set by the single bond whose far end imposes effort.
                BondId strong{};
                for (const auto& p : e.ports) {
                    if (!causal_.imposes_effort(e.id, *p)) strong = *p;
                }
                const std::size_t src = effort_index(strong);
                step.deps.push_back(src);
                step.compute = [src](const Frame& f) { return f.vars[src]; };
                break;
            }
            case ElementKind::OneJunction: {
                // Effort balance: sum of signed efforts into the junction is zero.
                std::vector<std::pair<std::size_t, double>> terms;
                for (const auto& p : e.ports) {
                    if (*p == bond) continue;
                    terms.emplace_back(effort_index(*p), orientation(e.id, *p));
                    step.deps.push_back(effort_index(*p));
                }
                step.compute = [terms, s](const Frame& f) {
                    double sum = 0.0;
                    for (const auto& [i, sign] : terms) sum += sign * f.vars[i];
                    return -s * sum;
                };
                break;
            }
            case ElementKind::Transformer: {
                // e0 = m * e1, with the modulus applied from port 1 towards port 0.
                const double m = e.params.value;
                const std::size_t port = port_of(e, bond);
                const std::size_t other = effort_index(*e.ports[1 - port]);
                step.deps.push_back(other);
                if (port == 0) {
                    step.compute = [other, m](const Frame& f) { return m * f.vars[other]; };
                } else {
                    step.compute = [other, m](const Frame& f) { return f.vars[other] / m; };
                }
                break;
            }
            case ElementKind::Gyrator: {
                // e0 = r * g1 and e1 = r * g0, where g0 enters at port 0 and g1 leaves at port 1.
                const double r = e.params.value;
                const std::size_t port = port_of(e, bond);
                const BondId other_bond = *e.ports[1 - port];
                const std::size_t other = flow_index(other_bond);
                const double through = port == 0 ? -orientation(e.id, other_bond) : orientation(e.id, other_bond);
                step.deps.push_back(other);
                step.compute = [other, r, through](const Frame& f) { return r * (through * f.vars[other]); };
                break;
            }
            default:
                impossible(e, bond, "effort");
        }
        return step;
    }

    Step flow_step(BondId bond) {
        const Element& e = graph_.element(causal_.flow_setter(bond));
        Step step;
        step.target = flow_index(bond);
        const double s = orientation(e.id, bond);

        switch (e.kind) {
            case ElementKind::FlowSource: {
                const std::size_t slot = input_slot_.at(e.id.value);
                step.compute = [slot](const Frame& f) { return f.inputs[slot]; };
                break;
            }
            case ElementKind::Inertia: {
                const std::size_t slot = state_slot_.at(e.id.value);
                const double m = e.params.value;
                step.compute = [slot, m, s](const Frame& f) { return s * (f.state[slot] / m); };
                break;
            }
            case ElementKind::Resistor: {
                const std::size_t ei = effort_index(bond);
                const double r = e.params.value;
                step.deps.push_back(ei);
                step.compute = [ei, r, s](const Frame& f) { return s * (f.vars[ei] / r); };
                break;
            }
            case ElementKind::ModulatedResistor: {
                if (!e.params.resistive.flow_of_effort)
                    throw BondGraphError(BondGraphErrc::MissingConstitutiveLaw,
                                         e.label() + " imposes flow but has no flow_of_effort law");
                const std::size_t ei = effort_index(bond);
                step.deps.push_back(ei);
                auto reads = resolve_signals(e, step.deps);
                step.compute = [ei, s, reads, law = e.params.resistive.flow_of_effort](const Frame& f) {
                    return s * law(f.vars[ei], gather(reads, f));
                };
                break;
            }
            case ElementKind::ZeroJunction: {
                // Flow balance: sum of signed flows into the junction is zero.
                std::vector<std::pair<std::size_t, double>> terms;
                for (const auto& p : e.ports) {
                    if (*p == bond) continue;
                    terms.emplace_back(flow_index(*p), orientation(e.id, *p));
                    step.deps.push_back(flow_index(*p));
                }
                step.compute = [terms, s](const Frame& f) {
                    double sum = 0.0;
                    for (const auto& [i, sign] : terms) sum += sign * f.vars[i];
                    return -s * sum;
                };
                break;
            }
            case ElementKind::OneJunction: {
                // Common flow, set by the single bond on which the junction imposes effort.
                BondId strong{};
                for (const auto& p : e.ports) {
                    if (causal_.imposes_effort(e.id, *p)) strong = *p;
                }
                const std::size_t src = flow_index(strong);
                step.deps.push_back(src);
                step.compute = [src](const Frame& f) { return f.vars[src]; };
                break;
            }
            case ElementKind::Transformer: {
                // g1 = m * g0; g0 enters at port 0, g1 leaves at port 1.
                const double m = e.params.value;
                const std::size_t port = port_of(e, bond);
                const BondId other_bond = *e.ports[1 - port];
                const std::size_t other = flow_index(other_bond);
                const double s_other = orientation(e.id, other_bond);
                step.deps.push_back(other);
                if (port == 1) {
                    // f1 = s1_out * m * (s0_in * f0), s1_out = -s
                    step.compute = [other, m, s, s_other](const Frame& f) {
                        return -s * (m * (s_other * f.vars[other]));
                    };
                } else {
                    // f0 = s0_in * (s1_out * f1) / m
                    step.compute = [other, m, s, s_other](const Frame& f) {
                        return s * ((-s_other * f.vars[other]) / m);
                    };
                }
                break;
            }
            case ElementKind::Gyrator: {
                const double r = e.params.value;
                const std::size_t port = port_of(e, bond);
                const std::size_t other = effort_index(*e.ports[1 - port]);
                step.deps.push_back(other);
                if (port == 1) {
                    // g1 = e0 / r, f1 = s1_out * g1
                    step.compute = [other, r, s](const Frame& f) { return -s * (f.vars[other] / r); };
                } else {
                    // g0 = e1 / r, f0 = s0_in * g0
                    step.compute = [other, r, s](const Frame& f) { return s * (f.vars[other] / r); };
                }
                break;
            }
            default:
                impossible(e, bond, "flow");
        }
        return step;
    }

    // Kahn's algorithm, smallest variable index first for a deterministic order.
    std::vector<Step> schedule(std::vector<Step> steps) const {
        const std::size_t n = steps.size();
        std::vector<std::size_t> pending(n, 0);
        std::vector<std::vector<std::size_t>> users(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d : steps[i].deps) {
                users[d].push_back(i);
                ++pending[i];
            }
        }
        std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
        for (std::size_t i = 0; i < n; ++i) {
            if (pending[i] == 0) ready.push(i);
        }
        std::vector<Step> ordered;
        ordered.reserve(n);
        while (!ready.empty()) {
            const std::size_t i = ready.top();
            ready.pop();
            for (std::size_t u : users[i]) {
                if (--pending[u] == 0) ready.push(u);
            }
            ordered.push_back(std::move(steps[i]));
        }
        if (ordered.size() != n) {
            std::string stuck;
            for (std::size_t i = 0; i < n; ++i) {
                if (pending[i] != 0) {
                    stuck = (i % 2 == 0 ? "effort of bond " : "flow of bond ") + std::to_string(i / 2 + 1);
                    break;
                }
            }
            throw BondGraphError(BondGraphErrc::AlgebraicLoop, "zero-order loop through " + stuck);
        }
        return ordered;
    }

    const CausalGraph& causal_;
    const BondGraph& graph_;
    std::unordered_map<std::size_t, std::size_t> state_slot_;  // element id -> state index
    std::unordered_map<std::size_t, std::size_t> input_slot_;  // element id -> input index
    std::vector<std::string> state_labels_;
    std::vector<std::string> input_labels_;
    std::vector<double> nominal_inputs_;
};

}  // namespace

StateSpaceModel derive_state_equations(const CausalGraph& causal) { return Compiler(causal).compile(); }

}  // namespace bondsim::bg
