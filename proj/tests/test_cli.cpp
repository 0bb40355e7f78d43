#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string data_file(const char* name) {
  return std::string(GESEM_TEST_DATA) + "/" + name;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stdout+stderr captured in a temp file.
RunResult run_cli(const std::string& args) {
  std::string tmp = ::testing::TempDir() + "/gesem_cli_out.txt";
  std::string cmd = std::string(GESEM_CLI) + " " + args + " > " + tmp + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(Cli, EvaluateTrueExitsZero) {
  RunResult r = run_cli("evaluate --utterance " + data_file("threw_dagger.utt") +
                        " --annotation " + data_file("gestures.ann") +
                        " --scene " + data_file("throw_fist.scene") +
                        " --lexicon " + data_file("core.lex"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("verdict: true"), std::string::npos);
}

TEST(Cli, EvaluateMismatchExitsOne) {
  RunResult r = run_cli("evaluate --utterance " + data_file("house_stand.utt") +
                        " --annotation " + data_file("gestures.ann") +
                        " --scene " + data_file("flat_house.scene") +
                        " --lexicon " + data_file("core.lex"));
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("verdict: mismatch"), std::string::npos);
}

TEST(Cli, EvaluateFalseExitsOne) {
  RunResult r = run_cli("evaluate --utterance " + data_file("threw_dagger.utt") +
                        " --annotation " + data_file("gestures.ann") +
                        " --scene " + data_file("throw_open.scene") +
                        " --lexicon " + data_file("core.lex"));
  EXPECT_EQ(r.exit_code, 1) << r.output;
  EXPECT_NE(r.output.find("verdict: false"), std::string::npos);
  EXPECT_NE(r.output.find("HSQ"), std::string::npos);
}

TEST(Cli, MissingFileExitsTwoAndNamesThePath) {
  RunResult r = run_cli("parse --annotation /nonexistent/gestures.ann");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("/nonexistent/gestures.ann"), std::string::npos);
}

TEST(Cli, ParseErrorExitsTwoWithLocation) {
  std::string bad = ::testing::TempDir() + "/bad.ann";
  {
    std::ofstream f(bad);
    f << "hand: right\nhandshape: D\nwrist.path: line\nwrist.dir: MQ\n";
  }
  RunResult r = run_cli("parse --annotation " + bad);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("MQ"), std::string::npos);
  EXPECT_NE(r.output.find("line 4"), std::string::npos);
}

TEST(Cli, StructuredParseRoundTripsByteStable) {
  std::string once = ::testing::TempDir() + "/once.txt";
  std::string twice = ::testing::TempDir() + "/twice.txt";
  for (std::string flag_file :
       {"--annotation " + data_file("gestures.ann"),
        "--scene " + data_file("u_house.scene"),
        "--lexicon " + data_file("core.lex")}) {
    RunResult r1 =
        run_cli("parse " + flag_file + " --format structured --out " + once);
    ASSERT_EQ(r1.exit_code, 0) << r1.output;
    std::string flag = flag_file.substr(0, flag_file.find(' '));
    RunResult r2 = run_cli("parse " + flag + " " + once +
                           " --format structured --out " + twice);
    ASSERT_EQ(r2.exit_code, 0) << r2.output;
    EXPECT_EQ(read_file(once), read_file(twice)) << flag_file;
  }
}

TEST(Cli, VectorizeReportsTheGestvecFixtures) {
  RunResult r = run_cli("vectorize --annotation " + data_file("gestures.ann"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("roof: hs D, traj RT, open"), std::string::npos);
  EXPECT_NE(r.output.find("wheel: hs D, traj UP∘FT∘-UP∘-FT, closed"),
            std::string::npos);
  EXPECT_NE(r.output.find("u_shape: hs O, traj RT⊥-FT⊥-RT, open"),
            std::string::npos);
}

TEST(Cli, TransformAppliesRotation) {
  RunResult r = run_cli("transform --annotation " + data_file("gestures.ann") +
                        " --rotate-axis z --rotate-rad 3.14159265358979 "
                        "--scale 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("roof: hs D, traj -RT"), std::string::npos);
}

TEST(Cli, EmbedReportsWitnessAndExitCode) {
  RunResult ok = run_cli("embed --annotation " + data_file("gestures.ann") +
                         " --id u_shape --scene " + data_file("u_house.scene") +
                         " --target house");
  EXPECT_EQ(ok.exit_code, 0) << ok.output;
  EXPECT_NE(ok.output.find("embedding: success"), std::string::npos);
  EXPECT_NE(ok.output.find("witness: rotation z"), std::string::npos);

  RunResult bad = run_cli("embed --annotation " + data_file("gestures.ann") +
                          " --id u_shape --scene " +
                          data_file("flat_house.scene") + " --target house");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.output.find("segment count"), std::string::npos);
}

TEST(Cli, LabelResolvesTheStaircaseDescriptor) {
  RunResult r = run_cli("label --utterance " + data_file("staircase.utt") +
                        " --annotation " + data_file("gestures.ann") +
                        " --lexicon " + data_file("core.lex"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("label: spiral"), std::string::npos);
  EXPECT_NE(r.output.find("R = Descriptor"), std::string::npos);
  EXPECT_NE(r.output.find("y3 = spiral(z)"), std::string::npos);
}

TEST(Cli, LabelKindReadingWithSceneTarget) {
  // Pointed-roof gesture over the flat-roofed referent, hypothesized "roof".
  std::string utt = ::testing::TempDir() + "/pointed.utt";
  {
    std::ofstream f(utt);
    f << "(s (mm (lex house) (gesture pointed_roof drawing)) (lex stand))\n";
  }
  RunResult r = run_cli("label --utterance " + utt + " --annotation " +
                        data_file("gestures.ann") + " --lexicon " +
                        data_file("core.lex") + " --scene " +
                        data_file("flat_house.scene") +
                        " --target house --label roof");
  EXPECT_NE(r.output.find("reading: kind-reading"), std::string::npos)
      << r.output;
}

TEST(Cli, SvgExportDrawsThreePanels) {
  std::string out = ::testing::TempDir() + "/planes.svg";
  RunResult r = run_cli("vectorize --annotation " + data_file("gestures.ann") +
                        " --format svg --out " + out);
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::string svg = read_file(out);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("sagittal"), std::string::npos);
  EXPECT_NE(svg.find("transverse"), std::string::npos);
  EXPECT_NE(svg.find("coronal"), std::string::npos);
}
