#include "gesem/annotation.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace gesem;

namespace {

std::string data_file(const char* name) {
  return std::string(GESEM_TEST_DATA) + "/" + name;
}

std::vector<KinematicAnnotation> fixtures() {
  return load_annotations(data_file("gestures.ann"));
}

const KinematicAnnotation& by_id(const std::vector<KinematicAnnotation>& all,
                                 const char* id) {
  return find_annotation(all, id);
}

}  // namespace

TEST(AnnotationParse, RoofDocument) {
  auto all = parse_annotations(
      "hand: right\n"
      "handshape: D\n"
      "palm.orient: PDN\n"
      "boh.orient: BUP\n"
      "wrist.path: line\n"
      "wrist.dir: MR\n"
      "wrist.extent: small\n"
      "sync.config: RHA\n"
      "sync.rel-mov: none\n"
      "sync.s-loc: CC-M\n"
      "sync.e-loc: CR-M\n");
  ASSERT_EQ(all.size(), 1u);
  const KinematicAnnotation& a = all[0];
  EXPECT_EQ(a.hand, Hand::Right);
  EXPECT_EQ(a.handshape.code, "D");
  ASSERT_EQ(a.wrist_paths.size(), 1u);
  EXPECT_EQ(a.wrist_paths[0], PathLabel::Line);
  ASSERT_EQ(a.wrist_dirs.size(), 1u);
  EXPECT_EQ(a.wrist_dirs[0], DirectionCode::MR);
  EXPECT_EQ(a.s_loc.sector, "CC");
  EXPECT_EQ(a.e_loc.sector, "CR");
  EXPECT_EQ(a.e_loc.depth, 'M');
}

TEST(AnnotationParse, UShapeHasThreeAlignedStrokes) {
  auto all = fixtures();
  const KinematicAnnotation& u = by_id(all, "u_shape");
  ASSERT_EQ(u.wrist_paths.size(), 3u);
  ASSERT_EQ(u.wrist_dirs.size(), 3u);
  EXPECT_EQ(u.wrist_dirs[0], DirectionCode::MR);
  EXPECT_EQ(u.wrist_dirs[1], DirectionCode::MB);
  EXPECT_EQ(u.wrist_dirs[2], DirectionCode::ML);
  EXPECT_EQ(u.handshape.code, "O");
  EXPECT_EQ(u.extent, Extent::Large);
}

TEST(AnnotationParse, WheelUsesBothHandsAndCloses) {
  auto all = fixtures();
  const KinematicAnnotation& w = by_id(all, "wheel");
  EXPECT_EQ(w.sync_config, SyncConfig::BHA);
  EXPECT_EQ(w.wrist_paths.size(), 4u);
  EXPECT_TRUE(w.s_loc == w.e_loc);
}

TEST(AnnotationParse, UnknownDirectionNamesToken) {
  try {
    parse_annotations(
        "hand: right\nhandshape: D\nwrist.path: line\nwrist.dir: MQ\n"
        "wrist.extent: small\nsync.config: RHA\nsync.s-loc: CC-M\n"
        "sync.e-loc: CR-M\n");
    FAIL() << "expected parse-error";
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("MQ"), std::string::npos);
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(AnnotationParse, UnknownHandshapeRejected) {
  EXPECT_THROW(parse_annotations("hand: right\nhandshape: QQ\n"
                                 "wrist.path: line\nwrist.dir: MR\n"
                                 "wrist.extent: small\nsync.config: RHA\n"
                                 "sync.s-loc: CC-M\nsync.e-loc: CR-M\n"),
               parse_error);
}

TEST(AnnotationParse, ConfigurableHandshapeSet) {
  AnnotationOptions opts;
  opts.handshapes.insert("QQ");
  auto all = parse_annotations(
      "hand: right\nhandshape: QQ\nwrist.path: line\nwrist.dir: MR\n"
      "wrist.extent: small\nsync.config: RHA\nsync.s-loc: CC-M\n"
      "sync.e-loc: CR-M\n",
      opts);
  EXPECT_EQ(all[0].handshape.code, "QQ");
}

TEST(AnnotationParse, UnknownSectorAndDepthRejected) {
  EXPECT_THROW(parse_annotations("hand: right\nhandshape: D\n"
                                 "wrist.path: line\nwrist.dir: MR\n"
                                 "wrist.extent: small\nsync.config: RHA\n"
                                 "sync.s-loc: XX-M\nsync.e-loc: CR-M\n"),
               parse_error);
  EXPECT_THROW(parse_annotations("hand: right\nhandshape: D\n"
                                 "wrist.path: line\nwrist.dir: MR\n"
                                 "wrist.extent: small\nsync.config: RHA\n"
                                 "sync.s-loc: CC-Q\nsync.e-loc: CR-M\n"),
               parse_error);
}

TEST(AnnotationParse, PathDirArityMismatch) {
  try {
    parse_annotations(
        "hand: right\nhandshape: D\nwrist.path: line>line\nwrist.dir: MR\n"
        "wrist.extent: small\nsync.config: RHA\nsync.s-loc: CC-M\n"
        "sync.e-loc: CR-M\n");
    FAIL() << "expected arity-error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::arity_error);
  }
}

TEST(AnnotationParse, StaticGestureMustStartAndEndInSameSlot) {
  EXPECT_THROW(parse_annotations("hand: right\nhandshape: C\n"
                                 "wrist.path: none\nwrist.dir: none\n"
                                 "wrist.extent: small\nsync.config: BHA\n"
                                 "sync.s-loc: CC-M\nsync.e-loc: CR-M\n"),
               parse_error);
  auto ok = parse_annotations(
      "hand: right\nhandshape: C\nwrist.path: none\nwrist.dir: none\n"
      "wrist.extent: small\nsync.config: BHA\nsync.s-loc: CC-M\n"
      "sync.e-loc: CC-M\n");
  EXPECT_TRUE(ok[0].wrist_paths.empty());
}

// The V11 AVM lists `dir ML` next to `e-loc CR-M` while its abbreviated
// re-use lists `dir MR`; both variants are accepted as written.
TEST(AnnotationParse, AcceptsBothRoofVariants) {
  auto variant = parse_annotations(
      "hand: right\nhandshape: D\nwrist.path: line\nwrist.dir: ML\n"
      "wrist.extent: medium\nsync.config: RHA\nsync.s-loc: CC-M\n"
      "sync.e-loc: CR-M\n");
  EXPECT_EQ(variant[0].wrist_dirs[0], DirectionCode::ML);
}

TEST(AnnotationRoundTrip, FixturesSurviveParseSerializeParse) {
  auto all = fixtures();
  auto again = parse_annotations(serialize(all));
  EXPECT_EQ(all, again);
  // Byte stability of the canonical form.
  EXPECT_EQ(serialize(all), serialize(again));
}

TEST(AnnotationRoundTrip, RandomRecords) {
  std::mt19937 rng(11);
  const DirectionCode dirs[] = {DirectionCode::ML, DirectionCode::MR,
                                DirectionCode::MU, DirectionCode::MD,
                                DirectionCode::MF, DirectionCode::MB};
  const char* sectors[] = {"CC", "CL", "CR", "CU", "CB",
                           "CUL", "CUR", "CBL", "CBR"};
  const char depths[] = {'N', 'M', 'F'};
  const char* shapes[] = {"B", "C", "D", "F", "G", "K", "L", "O", "P", "S"};
  for (int trial = 0; trial < 50; ++trial) {
    KinematicAnnotation a;
    a.id = "g" + std::to_string(trial);
    a.hand = rng() % 2 ? Hand::Left : Hand::Right;
    a.handshape.code = shapes[rng() % 10];
    a.palm_orient = rng() % 2 ? "PDN" : "PAB";
    a.boh_orient = rng() % 2 ? "BUP" : "BTB";
    std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      a.wrist_paths.push_back(rng() % 2 ? PathLabel::Line : PathLabel::Arc);
      a.wrist_dirs.push_back(dirs[rng() % 6]);
    }
    a.extent = static_cast<Extent>(rng() % 3);
    a.sync_config = static_cast<SyncConfig>(rng() % 3);
    a.s_loc = {sectors[rng() % 9], depths[rng() % 3]};
    a.e_loc = {sectors[rng() % 9], depths[rng() % 3]};
    auto parsed = parse_annotations(serialize(a));
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(parsed[0], a);
  }
}

TEST(Directions, BijectionWithOrientingLevels) {
  const DirectionCode all[] = {DirectionCode::ML, DirectionCode::MR,
                               DirectionCode::MU, DirectionCode::MD,
                               DirectionCode::MF, DirectionCode::MB};
  std::set<OrientingLevel> seen;
  for (DirectionCode d : all) {
    OrientingLevel l = level_of(d);
    EXPECT_TRUE(seen.insert(l).second) << "level hit twice";
    EXPECT_EQ(direction_of(l), d);
  }
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_EQ(level_of(DirectionCode::ML), OrientingLevel::NegRt);
  EXPECT_EQ(level_of(DirectionCode::MU), OrientingLevel::Up);
  EXPECT_EQ(level_of(DirectionCode::MF), OrientingLevel::Ft);
}

TEST(Annotations, FindByIdAndOrdinal) {
  auto all = fixtures();
  EXPECT_EQ(find_annotation(all, "roof").handshape.code, "D");
  EXPECT_EQ(find_annotation(all, "#1").id, "roof");
  EXPECT_THROW(find_annotation(all, "missing"), error);
}
