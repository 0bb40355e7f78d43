#include "gesem/iconic.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gesem/annotation.hpp"

using namespace gesem;

namespace {

std::string data_file(const char* name) {
  return std::string(GESEM_TEST_DATA) + "/" + name;
}

const KinematicAnnotation& fixture(const char* id) {
  static auto all = load_annotations(data_file("gestures.ann"));
  return find_annotation(all, id);
}

std::vector<OrientingLevel> levels_of(const IconicModel& m) {
  std::vector<OrientingLevel> out;
  for (const TrajAtom& a : m.traj) {
    EXPECT_TRUE(a.level.has_value());
    out.push_back(*a.level);
  }
  return out;
}

}  // namespace

TEST(Vectorize, RoofFixture) {
  IconicModel m = vectorize(fixture("roof"));
  EXPECT_EQ(m.hs.code, "D");
  EXPECT_EQ(levels_of(m), std::vector<OrientingLevel>{OrientingLevel::Rt});
  EXPECT_TRUE(m.connectors.empty());
  EXPECT_EQ(m.closure, Closure::Open);
  EXPECT_EQ(traj_to_string(m), "RT");
}

TEST(Vectorize, WheelFixture) {
  IconicModel m = vectorize(fixture("wheel"));
  EXPECT_EQ(m.hs.code, "D");
  EXPECT_EQ(levels_of(m),
            (std::vector<OrientingLevel>{OrientingLevel::Up, OrientingLevel::Ft,
                                         OrientingLevel::NegUp,
                                         OrientingLevel::NegFt}));
  EXPECT_EQ(m.connectors, (std::vector<Connector>{Connector::Round,
                                                  Connector::Round,
                                                  Connector::Round}));
  EXPECT_EQ(m.closure, Closure::Closed);
}

TEST(Vectorize, UShapeFixtureCopiesHandshapeVerbatim) {
  IconicModel m = vectorize(fixture("u_shape"));
  EXPECT_EQ(m.hs.code, "O");  // copied from the input, rule (a)
  EXPECT_EQ(levels_of(m),
            (std::vector<OrientingLevel>{OrientingLevel::Rt,
                                         OrientingLevel::NegFt,
                                         OrientingLevel::NegRt}));
  EXPECT_EQ(m.connectors,
            (std::vector<Connector>{Connector::Perp, Connector::Perp}));
  EXPECT_EQ(m.closure, Closure::Open);
}

TEST(Vectorize, StaticGestureHasNoTrajectory) {
  try {
    vectorize(fixture("hold"));
    FAIL() << "expected empty-trajectory";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::empty_trajectory);
  }
}

TEST(Vectorize, ConnectorComesFromTheContinuationStroke) {
  auto anns = parse_annotations(
      "hand: right\nhandshape: D\nwrist.path: line>arc\nwrist.dir: MU>MR\n"
      "wrist.extent: small\nsync.config: RHA\nsync.s-loc: CC-M\n"
      "sync.e-loc: CR-M\n");
  IconicModel m = vectorize(anns[0]);
  EXPECT_EQ(m.connectors, std::vector<Connector>{Connector::Round});

  auto anns2 = parse_annotations(
      "hand: right\nhandshape: D\nwrist.path: arc>line\nwrist.dir: MU>MR\n"
      "wrist.extent: small\nsync.config: RHA\nsync.s-loc: CC-M\n"
      "sync.e-loc: CR-M\n");
  EXPECT_EQ(vectorize(anns2[0]).connectors,
            std::vector<Connector>{Connector::Perp});
}

TEST(Vectorize, ModesSetQuotationAndPerspective) {
  IconicModel acting = vectorize(fixture("throw"), Mode::Acting);
  EXPECT_TRUE(acting.quoted_handshape);
  EXPECT_TRUE(acting.perspectival);
  IconicModel drawing = vectorize(fixture("car"), Mode::Drawing, true);
  EXPECT_FALSE(drawing.quoted_handshape);
  EXPECT_TRUE(drawing.perspectival);
  IconicModel molding = vectorize(fixture("u_shape"), Mode::Molding);
  EXPECT_FALSE(molding.quoted_handshape);
  EXPECT_FALSE(molding.perspectival);
}

TEST(Vectorize, DeterministicAndLengthPreserving) {
  for (const char* id : {"roof", "wheel", "u_shape", "squiggle"}) {
    const KinematicAnnotation& a = fixture(id);
    IconicModel m1 = vectorize(a);
    IconicModel m2 = vectorize(a);
    EXPECT_TRUE(same_model(m1, m2));
    EXPECT_EQ(m1.traj.size(), a.wrist_dirs.size());
    EXPECT_EQ(m1.connectors.size(),
              a.wrist_dirs.empty() ? 0 : a.wrist_dirs.size() - 1);
  }
}

TEST(Anisotropy, RoofRotatesHorizontally) {
  IconicModel roof = vectorize(fixture("roof"));
  EXPECT_EQ(allowed_rotation_axes(roof),
            std::set<RotationAxis>{RotationAxis::Z});
}

TEST(Anisotropy, SagittalWheelFreesTheUnusedAxis) {
  IconicModel wheel = vectorize(fixture("wheel"));
  // The wheel moves through FT/UP; RT stays unused.
  EXPECT_EQ(allowed_rotation_axes(wheel),
            std::set<RotationAxis>{RotationAxis::X});
}

TEST(Anisotropy, ThreeDimensionalModelsPreferHorizontalRotation) {
  IconicModel squiggle = vectorize(fixture("squiggle"));
  EXPECT_EQ(allowed_rotation_axes(squiggle),
            std::set<RotationAxis>{RotationAxis::Z});
}

TEST(Anisotropy, PerspectivalModelsAdmitNoRotation) {
  IconicModel car = vectorize(fixture("car"), Mode::Drawing, true);
  EXPECT_TRUE(allowed_rotation_axes(car).empty());
}

TEST(TransformOp, IdentityLeavesModelUnchanged) {
  IconicModel roof = vectorize(fixture("roof"));
  IconicModel same = transform(roof, {1.0, RotationAxis::Z, 0.0});
  EXPECT_TRUE(same_model(roof, same));
}

TEST(TransformOp, HalfTurnSendsRtToNegRt) {
  IconicModel roof = vectorize(fixture("roof"));
  IconicModel turned = transform(roof, {1.0, RotationAxis::Z, M_PI});
  // Oracle: the geometry kernel applied to the single atom.
  Vec3 expected = rotate(Vec3{1, 0, 0}, RotationAxis::Z, M_PI);
  EXPECT_NEAR((turned.traj[0].dir - expected).norm(), 0.0, 1e-12);
  ASSERT_TRUE(turned.traj[0].level.has_value());
  EXPECT_EQ(*turned.traj[0].level, OrientingLevel::NegRt);
}

TEST(TransformOp, ConnectorsAndClosureUntouched) {
  IconicModel wheel = vectorize(fixture("wheel"));
  IconicModel t = transform(wheel, {2.5, RotationAxis::X, 1.1});
  EXPECT_EQ(t.connectors, wheel.connectors);
  EXPECT_EQ(t.closure, wheel.closure);
  EXPECT_EQ(t.hs.code, wheel.hs.code);
}

TEST(TransformOp, DisallowedAxisViolatesAnisotropy) {
  IconicModel roof = vectorize(fixture("roof"));
  try {
    transform(roof, {1.0, RotationAxis::X, 0.25});
    FAIL() << "expected anisotropy-violation";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::anisotropy_violation);
  }
}

TEST(TransformOp, PerspectivalModelsRejectAnyNonzeroRotation) {
  IconicModel car = vectorize(fixture("car"), Mode::Drawing, true);
  for (RotationAxis axis : {RotationAxis::X, RotationAxis::Y, RotationAxis::Z}) {
    try {
      transform(car, {1.0, axis, 0.1});
      FAIL() << "expected anisotropy-violation";
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::anisotropy_violation);
    }
  }
  EXPECT_NO_THROW(transform(car, {2.0, RotationAxis::Z, 0.0}));
}

TEST(TransformOp, NonPositiveScaleRejected) {
  IconicModel roof = vectorize(fixture("roof"));
  EXPECT_THROW(transform(roof, {0.0, RotationAxis::Z, 0.0}), error);
  EXPECT_THROW(transform(roof, {-2.0, RotationAxis::Z, 0.0}), error);
}

TEST(Realize, RoofIsOneUnitSegment) {
  Path3 p = realize(vectorize(fixture("roof")), Point3{0, 0, 0}, 1.0);
  ASSERT_EQ(p.points.size(), 2u);
  EXPECT_NEAR((p.points[1] - Point3{1, 0, 0}).norm(), 0.0, 1e-12);
}

TEST(Realize, WheelClosesOnItself) {
  Path3 p = realize(vectorize(fixture("wheel")), Point3{0, 0, 0}, 1.0);
  EXPECT_EQ(p.segments(), 4u);
  // Oracle: the geometry closure decision.
  EXPECT_EQ(closure_of(p), Closure::Closed);
  EXPECT_EQ(p.joints, (std::vector<JointKind>{JointKind::Arc, JointKind::Arc,
                                              JointKind::Arc}));
}

TEST(Realize, UShapeHasTwoRightAngles) {
  Path3 p = realize(vectorize(fixture("u_shape")), Point3{0, 0, 0}, 1.0);
  ASSERT_EQ(p.segments(), 3u);
  EXPECT_EQ(closure_of(p), Closure::Open);
  // Oracle: angle computation between consecutive segments.
  EXPECT_NEAR(angle_between(p.segment(0), p.segment(1)), M_PI / 2.0, 1e-12);
  EXPECT_NEAR(angle_between(p.segment(1), p.segment(2)), M_PI / 2.0, 1e-12);
}

TEST(Realize, SampledWheelStaysClosed) {
  Path3 wheel = realize(vectorize(fixture("wheel")), Point3{0, 0, 0}, 1.0);
  Path3 rounded = sample_arcs(wheel);
  EXPECT_GT(rounded.points.size(), wheel.points.size());
  EXPECT_EQ(closure_of(rounded), Closure::Closed);
  EXPECT_NEAR((rounded.points.front() - wheel.points.front()).norm(), 0.0,
              1e-12);
}

TEST(Realize, EmptyTrajectoryRejected) {
  IconicModel empty;
  empty.hs.code = "C";
  EXPECT_THROW(realize(empty), error);
}

TEST(Realize, UnitScalesSegments) {
  Path3 p = realize(vectorize(fixture("roof")), Point3{1, 1, 1}, 2.0);
  EXPECT_NEAR((p.points[1] - Point3{3, 1, 1}).norm(), 0.0, 1e-12);
}

TEST(Hsq, QuotesTheActingHandshape) {
  IconicModel throw_model = vectorize(fixture("throw"), Mode::Acting);
  HsqPredicate hsq = hsq_constraint(throw_model);
  EXPECT_TRUE(hsq.matches(HandshapeLabel{"P"}));
  EXPECT_FALSE(hsq.matches(HandshapeLabel{"O"}));
  EXPECT_FALSE(hsq.matches(std::nullopt));
}

TEST(Hsq, NonActingModelsHaveNoQuotation) {
  IconicModel drawing = vectorize(fixture("roof"), Mode::Drawing);
  try {
    hsq_constraint(drawing);
    FAIL() << "expected mode-error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::mode_error);
  }
}

TEST(Extent, MapsToRealizationUnits) {
  EXPECT_DOUBLE_EQ(extent_unit(Extent::Small), 0.5);
  EXPECT_DOUBLE_EQ(extent_unit(Extent::Medium), 1.0);
  EXPECT_DOUBLE_EQ(extent_unit(Extent::Large), 2.0);
}

TEST(ModelText, SymbolicRendering) {
  EXPECT_EQ(traj_to_string(vectorize(fixture("u_shape"))),
            "RT⊥-FT⊥-RT");
  EXPECT_EQ(traj_to_string(vectorize(fixture("wheel"))),
            "UP∘FT∘-UP∘-FT");
}
