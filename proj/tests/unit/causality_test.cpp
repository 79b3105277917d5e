#include <gtest/gtest.h>

#include "bondsim/bg/causality.hpp"

using namespace bondsim::bg;

namespace {

BondGraphErrc causality_error(const BondGraph& g) {
    try {
        assign_causality(g);
    } catch (const BondGraphError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected assign_causality to fail";
    return BondGraphErrc::MalformedGraph;
}

struct SeriesLoop {
    BondGraph g;
    ElementId se, j, r, c;
    BondId b_se, b_r, b_c;
};

SeriesLoop series_loop() {
    SeriesLoop s;
    s.se = s.g.add_effort_source(1.0);
    s.j = s.g.add_one_junction(3);
    s.r = s.g.add_resistor(2.0);
    s.c = s.g.add_capacitor(0.5);
    s.b_se = s.g.connect(s.se, s.j);
    s.b_r = s.g.connect(s.j, s.r);
    s.b_c = s.g.connect(s.j, s.c);
    return s;
}

}  // namespace

TEST(Causality, SeriesLoopGivesIntegralCapacitorAndEffortDrivenResistor) {
    const SeriesLoop s = series_loop();
    const CausalGraph cg = assign_causality(s.g);
    EXPECT_TRUE(cg.has_integral_causality(s.c));
    EXPECT_EQ(cg.effort_setter(s.b_se), s.se);
    EXPECT_EQ(cg.effort_setter(s.b_c), s.c);
    // The junction hands the resistor its effort.
    EXPECT_EQ(cg.effort_setter(s.b_r), s.j);
    EXPECT_EQ(cg.flow_setter(s.b_r), s.r);
}

TEST(Causality, TwoCapacitorsOnZeroJunctionAreDependent) {
    BondGraph g;
    const auto se = g.add_effort_source(1.0);
    const auto r = g.add_resistor(1.0);
    const auto j1 = g.add_one_junction(3);
    const auto j0 = g.add_zero_junction(3);
    const auto c1 = g.add_capacitor(1.0);
    const auto c2 = g.add_capacitor(2.0);
    g.connect(se, j1);
    g.connect(j1, r);
    g.connect(j1, j0);
    g.connect(j0, c1);
    g.connect(j0, c2);
    EXPECT_EQ(causality_error(g), BondGraphErrc::DerivativeCausality);
}

TEST(Causality, BareTwoCapacitorsOnZeroJunction) {
    BondGraph g;
    const auto j0 = g.add_zero_junction(2);
    g.connect(j0, g.add_capacitor(1.0));
    g.connect(j0, g.add_capacitor(1.0));
    EXPECT_EQ(causality_error(g), BondGraphErrc::DerivativeCausality);
}

TEST(Causality, TwoEffortSourcesOnZeroJunctionConflict) {
    BondGraph g;
    const auto j0 = g.add_zero_junction(3);
    g.connect(g.add_effort_source(1.0), j0);
    g.connect(g.add_effort_source(2.0), j0);
    g.connect(j0, g.add_resistor(1.0));
    EXPECT_EQ(causality_error(g), BondGraphErrc::CausalConflict);
}

TEST(Causality, TwoFlowSourcesOnOneJunctionConflict) {
    BondGraph g;
    const auto j1 = g.add_one_junction(3);
    g.connect(g.add_flow_source(1.0), j1);
    g.connect(g.add_flow_source(2.0), j1);
    g.connect(j1, g.add_resistor(1.0));
    EXPECT_EQ(causality_error(g), BondGraphErrc::CausalConflict);
}

TEST(Causality, FlowSourceDrivingInertiaIsDerivative) {
    BondGraph g;
    const auto j1 = g.add_one_junction(3);
    g.connect(g.add_flow_source(1.0), j1);
    g.connect(j1, g.add_inertia(1.0));
    g.connect(j1, g.add_resistor(1.0));
    EXPECT_EQ(causality_error(g), BondGraphErrc::DerivativeCausality);
}

TEST(Causality, EffortSourceDirectlyOnCapacitorIsDerivative) {
    BondGraph g;
    g.connect(g.add_effort_source(1.0), g.add_capacitor(1.0));
    EXPECT_EQ(causality_error(g), BondGraphErrc::DerivativeCausality);
}

TEST(Causality, MalformedGraphIsRejected) {
    BondGraph g;
    const auto j1 = g.add_one_junction(3);
    g.connect(g.add_effort_source(1.0), j1);
    g.connect(j1, g.add_resistor(1.0));
    EXPECT_EQ(causality_error(g), BondGraphErrc::MalformedGraph);
}

TEST(Causality, TransformerPropagatesOneEffortAcross) {
    BondGraph g;
    const auto se = g.add_effort_source(1.0);
    const auto tf = g.add_transformer(2.5);
    const auto j1 = g.add_one_junction(3);
    const auto i = g.add_inertia(1.0);
    const auto r = g.add_resistor(1.0);
    const BondId b_in = g.connect(se, tf);
    const BondId b_out = g.connect(tf, j1);
    g.connect(j1, i);
    g.connect(j1, r);
    const CausalGraph cg = assign_causality(g);
    EXPECT_EQ(cg.effort_setter(b_in), se);
    EXPECT_EQ(cg.effort_setter(b_out), tf);
    EXPECT_TRUE(cg.has_integral_causality(i));
}

TEST(Causality, GyratorTurnsEffortIntoFlow) {
    // SE imposes effort on the gyrator's input, so the gyrator imposes flow on
    // its output: a C there holds integral causality, an I cannot.
    BondGraph ok;
    const auto se = ok.add_effort_source(1.0);
    const auto gy = ok.add_gyrator(0.5);
    const auto c = ok.add_capacitor(1.0);
    const BondId b_in = ok.connect(se, gy);
    const BondId b_out = ok.connect(gy, c);
    const CausalGraph cg = assign_causality(ok);
    EXPECT_EQ(cg.effort_setter(b_in), se);
    EXPECT_EQ(cg.flow_setter(b_out), gy);
    EXPECT_TRUE(cg.has_integral_causality(c));

    BondGraph bad;
    const auto gy2 = bad.add_gyrator(0.5);
    bad.connect(bad.add_effort_source(1.0), gy2);
    bad.connect(gy2, bad.add_inertia(1.0));
    EXPECT_EQ(causality_error(bad), BondGraphErrc::DerivativeCausality);
}

TEST(Causality, ResistorOnlyLoopResolvesByInsertionOrder) {
    // SE -> J0 with two parallel resistors: both resistors receive the source effort.
    BondGraph g;
    const auto se = g.add_effort_source(1.0);
    const auto j0 = g.add_zero_junction(3);
    const auto r1 = g.add_resistor(1.0);
    const auto r2 = g.add_resistor(2.0);
    g.connect(se, j0);
    const BondId b1 = g.connect(j0, r1);
    const BondId b2 = g.connect(j0, r2);
    const CausalGraph cg = assign_causality(g);
    EXPECT_EQ(cg.effort_setter(b1), j0);
    EXPECT_EQ(cg.effort_setter(b2), j0);
}

TEST(Causality, ResistorsBesideInertiaReceiveFlow) {
    // Once the I sets the common flow, both R receive flow even though
    // effort-in is the preferred resistor causality.
    BondGraph g;
    const auto j1 = g.add_one_junction(3);
    const auto i = g.add_inertia(1.0);
    const auto r1 = g.add_resistor(1.0);
    const auto r2 = g.add_resistor(1.0);
    g.connect(j1, i);
    const BondId b1 = g.connect(j1, r1);
    const BondId b2 = g.connect(j1, r2);
    const CausalGraph cg = assign_causality(g);
    EXPECT_EQ(cg.effort_setter(b1), r1);
    EXPECT_EQ(cg.effort_setter(b2), r2);
}

TEST(Causality, DeterministicAcrossCalls) {
    const SeriesLoop s = series_loop();
    const CausalGraph a = assign_causality(s.g);
    const CausalGraph b = assign_causality(s.g);
    for (const Bond& bond : s.g.bonds()) EXPECT_EQ(a.effort_setter(bond.id), b.effort_setter(bond.id));
}

TEST(CausalGraph, RejectsStrokeOnForeignElement) {
    const SeriesLoop s = series_loop();
    EXPECT_THROW(CausalGraph(s.g, {s.se, s.j, s.se}), BondGraphError);
    EXPECT_THROW(CausalGraph(s.g, {s.se}), BondGraphError);
}
