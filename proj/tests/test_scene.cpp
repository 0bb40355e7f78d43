#include "gesem/scene.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gesem;

namespace {

std::string data_file(const char* name) {
  return std::string(GESEM_TEST_DATA) + "/" + name;
}

}  // namespace

TEST(SceneLoad, UHouseFixture) {
  Scene s = load_scene(data_file("u_house.scene"));
  EXPECT_EQ(s.speaker, "spk");
  const Entity& house = s.entity("house");
  ASSERT_EQ(house.axes.size(), 1u);
  EXPECT_EQ(house.axes[0].label, "main");
  EXPECT_EQ(house.axes[0].path.segments(), 3u);
  EXPECT_EQ(s.near_tau, 3.0);
}

TEST(SceneLoad, FlatHouseHasStraightAxis) {
  Scene s = load_scene(data_file("flat_house.scene"));
  EXPECT_EQ(s.entity("house").axes[0].path.segments(), 1u);
}

TEST(SceneLoad, DanglingRoleReferenceRejected) {
  try {
    parse_scene(
        "speaker: spk\n"
        "entity { id: spk sort: person position: (0,0,0) }\n"
        "event { id: e1 pred: stand roles { theme: ghost } }\n");
    FAIL() << "expected reference-error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::reference_error);
  }
}

TEST(SceneLoad, NonOrthonormalFrameRejected) {
  try {
    parse_scene(
        "speaker: spk\n"
        "entity { id: spk sort: person position: (0,0,0)\n"
        "  frame { rt: (1,0.5,0)  ft: (0,1,0)  up: (0,0,1) } }\n");
    FAIL() << "expected frame-error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::frame_error);
  }
}

TEST(SceneLoad, DuplicateIdsRejected) {
  EXPECT_THROW(parse_scene("speaker: a\n"
                           "entity { id: a position: (0,0,0) }\n"
                           "entity { id: a position: (1,0,0) }\n"),
               error);
}

TEST(SceneLoad, MissingSpeakerRejected) {
  EXPECT_THROW(parse_scene("entity { id: a position: (0,0,0) }\n"), error);
  EXPECT_THROW(parse_scene("speaker: b\n"
                           "entity { id: a position: (0,0,0) }\n"),
               error);
}

TEST(SceneLoad, ZeroSegmentPathRejected) {
  EXPECT_THROW(parse_scene("speaker: a\n"
                           "entity { id: a position: (0,0,0)\n"
                           "  axis_path { points: (0,0,0) (0,0,0) } }\n"),
               error);
}

TEST(RegionAbove, ThreeReadingsOnFixtureVectors) {
  Scene s = load_scene(data_file("u_house.scene"));
  auto vertical = region_above(s, "house", AboveReading::VerticalOnly);
  auto dominant = region_above(s, "house", AboveReading::Dominant);
  auto positive = region_above(s, "house", AboveReading::AnyPositive);

  Vec3 straight_up{0, 0, 1};
  EXPECT_TRUE(vertical(straight_up));
  EXPECT_TRUE(dominant(straight_up));
  EXPECT_TRUE(positive(straight_up));

  Vec3 mostly_sideways{1, 0, 0.1};
  EXPECT_FALSE(vertical(mostly_sideways));
  EXPECT_FALSE(dominant(mostly_sideways));
  EXPECT_TRUE(positive(mostly_sideways));

  Vec3 below{0, 0, -1};
  EXPECT_FALSE(vertical(below));
  EXPECT_FALSE(dominant(below));
  EXPECT_FALSE(positive(below));
}

TEST(RegionAbove, ReadingsAreNested) {
  Scene s = load_scene(data_file("u_house.scene"));
  auto vertical = region_above(s, "house", AboveReading::VerticalOnly);
  auto dominant = region_above(s, "house", AboveReading::Dominant);
  auto positive = region_above(s, "house", AboveReading::AnyPositive);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    Vec3 v{coord(rng), coord(rng), coord(rng)};
    if (vertical(v)) EXPECT_TRUE(dominant(v));
    if (dominant(v)) EXPECT_TRUE(positive(v));
  }
  // Purely vertical unit samples land in the innermost reading too.
  EXPECT_TRUE(vertical(Vec3{0, 0, 0.3}));
  EXPECT_FALSE(positive(Vec3{0, 0, 0}));  // zero vector is nowhere
}

TEST(RegionAbove, ComponentsTakenInTheEntityFrame) {
  // An entity lying on its side: its UP points along world RT.
  Scene s = parse_scene(
      "speaker: spk\n"
      "entity { id: spk sort: person position: (0,0,0) }\n"
      "entity { id: bottle sort: bottle position: (1,1,0)\n"
      "  frame { rt: (0,0,-1)  ft: (0,1,0)  up: (1,0,0) } }\n");
  auto vertical = region_above(s, "bottle", AboveReading::VerticalOnly);
  EXPECT_TRUE(vertical(Vec3{1, 0, 0}));
  EXPECT_FALSE(vertical(Vec3{0, 0, 1}));
}

TEST(Near, FixtureAndBasicProperties) {
  Scene s = load_scene(data_file("near_demo.scene"));
  // |ambulance - hospital| = sqrt(8) < tau = 4.
  EXPECT_TRUE(near(s, "ambulance", "hospital", s.near_tau));
  EXPECT_FALSE(near(s, "ambulance", "hospital", 1.0));
  // Symmetric and reflexive for positive tau.
  EXPECT_TRUE(near(s, "hospital", "ambulance", s.near_tau));
  EXPECT_TRUE(near(s, "hospital", "hospital", 0.5));
}

TEST(Near, CoincidentAndDistantFixtures) {
  Scene s = parse_scene(
      "speaker: a\n"
      "entity { id: a position: (0,0,0) }\n"
      "entity { id: b position: (0,0,0) }\n"
      "entity { id: c position: (5,0,0) }\n");
  EXPECT_TRUE(near(s, "a", "b", 0.001));
  EXPECT_FALSE(near(s, "a", "c", 3.0));
}

TEST(VecSpace, EntityExposesAxisPaths) {
  Scene s = load_scene(data_file("u_house.scene"));
  VecSpace vs = vecspace_of(s, "house");
  EXPECT_EQ(vs.kind, VecSpace::Kind::Entity);
  EXPECT_EQ(vs.primary_path().segments(), 3u);
}

TEST(VecSpace, EventWrapsPlacePathWithSpeakerFrame) {
  Scene s = load_scene(data_file("car_right.scene"));
  VecSpace vs = vecspace_of(s, "e1");
  EXPECT_EQ(vs.kind, VecSpace::Kind::Event);
  EXPECT_EQ(vs.primary_path().segments(), 1u);
  // Speaker frame is the identity here.
  Vec3 local = vs.frame.to_local(vs.primary_path().segment(0));
  EXPECT_NEAR(local.x, -2.0, 1e-12);
}

TEST(VecSpace, EventWithoutPlacePathHasNoExtension) {
  Scene s = load_scene(data_file("u_house.scene"));
  VecSpace vs = vecspace_of(s, "e1");  // stand event, no place path
  try {
    vs.primary_path();
    FAIL() << "expected no-spatial-extension";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::no_spatial_extension);
  }
}

TEST(VecSpace, RotatedSpeakerFrameReorientsEventPaths) {
  // Speaker turned a quarter to the left: world +x is the speaker's FT.
  Scene s = parse_scene(
      "speaker: spk\n"
      "entity { id: spk sort: person position: (0,0,0)\n"
      "  frame { rt: (0,-1,0)  ft: (1,0,0)  up: (0,0,1) } }\n"
      "event { id: e1 pred: move place_path { points: (2,0,0) (4,0,0) } }\n");
  VecSpace vs = vecspace_of(s, "e1");
  Vec3 local = vs.frame.to_local(vs.primary_path().segment(0));
  EXPECT_NEAR(local.x, 0.0, 1e-12);
  EXPECT_NEAR(local.y, 2.0, 1e-12);  // the movement runs along the FT level
  EXPECT_NEAR(local.z, 0.0, 1e-12);
}

TEST(VecSpace, UnknownReferenceRejected) {
  Scene s = load_scene(data_file("u_house.scene"));
  try {
    vecspace_of(s, "nobody");
    FAIL() << "expected reference-error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::reference_error);
  }
}

TEST(VecSpace, DeterministicOnDeclaredIds) {
  Scene s = load_scene(data_file("throw_fist.scene"));
  for (const Entity& e : s.entities) {
    VecSpace a = vecspace_of(s, e.id);
    VecSpace b = vecspace_of(s, e.id);
    EXPECT_EQ(a.ref, b.ref);
    EXPECT_EQ(a.paths.size(), b.paths.size());
  }
}

TEST(SceneSerialize, CanonicalFormIsStable) {
  for (const char* name :
       {"u_house.scene", "flat_house.scene", "car_right.scene",
        "car_left.scene", "throw_fist.scene", "throw_open.scene",
        "near_demo.scene"}) {
    Scene s = load_scene(data_file(name));
    std::string once = serialize(s);
    std::string twice = serialize(parse_scene(once));
    EXPECT_EQ(once, twice) << name;
  }
}
