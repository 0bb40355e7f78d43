// gesem: gesture semantics toolkit. Parses kinematic annotations, derives
// iconic models, embeds them into scene spaces, evaluates multimodal
// utterances, and informationally labels gestures.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gesem/composition.hpp"
#include "gesem/embed.hpp"
#include "gesem/infeval.hpp"
#include "gesem/svg.hpp"

namespace {

constexpr const char* kReportHeader = "# gesem-report v1\n";

struct CommonOpts {
  std::string annotation, scene, lexicon, utterance;
  std::string mode = "drawing";
  bool perspectival = false;
  double angle_tol = M_PI / 8.0;
  double scale_min = 0.01;
  double scale_max = 1000.0;
  std::string format = "text";
  std::string out;
  std::string target;
  std::string label;
  double scale_k = 1.0;
  std::string rotate_axis = "z";
  double rotate_rad = 0.0;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--annotation", o.annotation, "annotation file");
  cmd->add_option("--scene", o.scene, "scene file");
  cmd->add_option("--lexicon", o.lexicon, "lexicon file");
  cmd->add_option("--utterance", o.utterance, "utterance file");
  cmd->add_option("--mode", o.mode, "gesture mode: acting|drawing|molding")
      ->check(CLI::IsMember({"acting", "drawing", "molding"}));
  cmd->add_flag("--perspectival", o.perspectival,
                "fix speaker perspective (zero rotation)");
  cmd->add_option("--angle-tol", o.angle_tol,
                  "embedding angle tolerance in radians (default pi/8)");
  cmd->add_option("--scale-min", o.scale_min, "scale lower bound (default 0.01)");
  cmd->add_option("--scale-max", o.scale_max, "scale upper bound (default 1000)");
  cmd->add_option("--format", o.format, "output format: text|structured|svg")
      ->check(CLI::IsMember({"text", "structured", "svg"}));
  cmd->add_option("--out", o.out, "write the report to a file instead of stdout");
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw gesem::error(gesem::errc::io_error, "cannot write " + o.out);
  f << text;
}

gesem::Mode mode_of(const CommonOpts& o) {
  return *gesem::mode_from_string(o.mode);
}

gesem::EmbedOptions embed_opts(const CommonOpts& o) {
  gesem::EmbedOptions opts;
  opts.angle_tolerance = o.angle_tol;
  opts.scale_min = o.scale_min;
  opts.scale_max = o.scale_max;
  opts.validate();
  return opts;
}

std::vector<gesem::KinematicAnnotation> need_annotations(const CommonOpts& o) {
  if (o.annotation.empty())
    throw gesem::error(gesem::errc::io_error, "--annotation is required");
  return gesem::load_annotations(o.annotation);
}

// One model per movement record; static records are reported, not fatal.
std::vector<std::optional<gesem::IconicModel>> vectorize_all(
    const std::vector<gesem::KinematicAnnotation>& anns, const CommonOpts& o) {
  std::vector<std::optional<gesem::IconicModel>> models;
  for (const auto& a : anns) {
    try {
      models.push_back(gesem::vectorize(a, mode_of(o), o.perspectival));
    } catch (const gesem::error& e) {
      if (e.code() != gesem::errc::empty_trajectory) throw;
      models.push_back(std::nullopt);
    }
  }
  return models;
}

std::string annotation_summary(const gesem::KinematicAnnotation& a) {
  std::string name = a.id.empty() ? "(unnamed)" : a.id;
  return name + ": " + gesem::to_string(a.hand) + " hand, hs " +
         a.handshape.code + ", " + std::to_string(a.wrist_dirs.size()) +
         " stroke(s), " + gesem::to_string(a.s_loc) + " -> " +
         gesem::to_string(a.e_loc);
}

int run_parse(const CommonOpts& o) {
  std::string report;
  bool structured = o.format == "structured";
  if (structured) report += kReportHeader;
  if (!o.annotation.empty()) {
    auto anns = gesem::load_annotations(o.annotation);
    if (structured) {
      report += gesem::serialize(anns);
    } else {
      for (const auto& a : anns) report += annotation_summary(a) + "\n";
    }
  }
  if (!o.scene.empty()) {
    gesem::Scene scene = gesem::load_scene(o.scene);
    if (structured) {
      report += gesem::serialize(scene);
    } else {
      report += "scene: " + std::to_string(scene.entities.size()) +
                " entities, " + std::to_string(scene.events.size()) +
                " events, speaker " + scene.speaker + "\n";
    }
  }
  if (!o.lexicon.empty()) {
    gesem::Lexicon lex = gesem::load_lexicon(o.lexicon);
    if (structured) {
      report += gesem::serialize(lex);
    } else {
      report += "lexicon: " + std::to_string(lex.entries.size()) +
                " entries, " + std::to_string(lex.frames.size()) + " frames\n";
    }
  }
  if (o.annotation.empty() && o.scene.empty() && o.lexicon.empty())
    throw gesem::error(gesem::errc::io_error,
                       "parse needs --annotation, --scene or --lexicon");
  emit(o, report);
  return 0;
}

int run_vectorize(const CommonOpts& o) {
  auto anns = need_annotations(o);
  auto models = vectorize_all(anns, o);
  if (o.format == "svg") {
    std::vector<gesem::Path3> paths;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < models.size(); ++i) {
      if (!models[i]) continue;
      paths.push_back(gesem::realize(*models[i], {},
                                     gesem::extent_unit(anns[i].extent)));
      labels.push_back(anns[i].id.empty() ? "#" + std::to_string(i + 1)
                                          : anns[i].id);
    }
    emit(o, gesem::render_svg_planes(paths, labels));
    return 0;
  }
  std::string report;
  if (o.format == "structured") report += kReportHeader;
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::string name = anns[i].id.empty() ? "#" + std::to_string(i + 1)
                                          : anns[i].id;
    if (models[i])
      report += name + ": " + gesem::to_string(*models[i]) + "\n";
    else
      report += name + ": empty-trajectory (static gesture)\n";
  }
  emit(o, report);
  return 0;
}

int run_transform(const CommonOpts& o, const std::string& gesture_ref) {
  auto anns = need_annotations(o);
  gesem::Transform t;
  t.scale_k = o.scale_k;
  t.axis = *gesem::axis_from_string(o.rotate_axis);
  t.angle = o.rotate_rad;

  std::string report;
  if (o.format == "structured") report += kReportHeader;

  if (!gesture_ref.empty()) {
    const auto& ann = gesem::find_annotation(anns, gesture_ref);
    gesem::IconicModel m = gesem::transform(
        gesem::vectorize(ann, mode_of(o), o.perspectival), t);
    report += gesture_ref + ": " + gesem::to_string(m) + "\n";
    emit(o, report);
    return 0;
  }

  auto models = vectorize_all(anns, o);
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::string name = anns[i].id.empty() ? "#" + std::to_string(i + 1)
                                          : anns[i].id;
    if (!models[i]) {
      report += name + ": empty-trajectory (static gesture)\n";
      continue;
    }
    try {
      gesem::IconicModel m = gesem::transform(*models[i], t);
      report += name + ": " + gesem::to_string(m) + "\n";
    } catch (const gesem::error& e) {
      if (e.code() != gesem::errc::anisotropy_violation) throw;
      report += name + ": anisotropy-violation (axis " +
                gesem::to_string(t.axis) + " not admissible)\n";
    }
  }
  emit(o, report);
  return 0;
}

const gesem::KinematicAnnotation& pick_annotation(
    const std::vector<gesem::KinematicAnnotation>& anns,
    const std::string& ref) {
  if (ref.empty()) return anns.front();
  return gesem::find_annotation(anns, ref);
}

int run_embed(const CommonOpts& o, const std::string& gesture_ref) {
  auto anns = need_annotations(o);
  if (o.scene.empty() || o.target.empty())
    throw gesem::error(gesem::errc::io_error,
                       "embed needs --scene and --target");
  gesem::Scene scene = gesem::load_scene(o.scene);
  gesem::VecSpace target = gesem::vecspace_of(scene, o.target);
  const auto& ann = pick_annotation(anns, gesture_ref);
  gesem::IconicModel m = gesem::vectorize(ann, mode_of(o), o.perspectival);
  gesem::EmbeddingResult r = gesem::embed(m, target, embed_opts(o));

  std::string report;
  if (o.format == "structured") report += kReportHeader;
  report += "embedding: " + std::string(r.success ? "success" : "failure") + "\n";
  if (r.witness) {
    report += "witness: rotation " + gesem::to_string(r.witness->axis) + " " +
              std::to_string(r.witness->angle) + " rad, scale " +
              std::to_string(r.witness->scale_k) + "\n";
  }
  if (!r.reason.empty()) report += "reason: " + r.reason + "\n";
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    report += "segment " + std::to_string(i + 1) + ": angle " +
              std::to_string(r.residuals[i].angle) + " rad, length " +
              std::to_string(r.residuals[i].length) + "\n";
  emit(o, report);
  return r.success ? 0 : 1;
}

int run_evaluate(const CommonOpts& o) {
  if (o.utterance.empty() || o.scene.empty() || o.lexicon.empty())
    throw gesem::error(gesem::errc::io_error,
                       "evaluate needs --utterance, --scene and --lexicon");
  auto anns = need_annotations(o);
  gesem::Scene scene = gesem::load_scene(o.scene);
  gesem::Lexicon lex = gesem::load_lexicon(o.lexicon);
  gesem::DerivationTree tree = gesem::load_utterance(o.utterance);
  gesem::bind_gestures(tree, anns);
  gesem::LogicalForm lf = gesem::compose(tree, lex);
  gesem::Verdict v = gesem::evaluate(lf, scene, embed_opts(o));

  std::string report;
  if (o.format == "structured") {
    report += kReportHeader;
    report += "verdict: " + gesem::to_string(v.outcome) + "\n";
    for (const auto& [var, id] : v.witness)
      report += "witness: " + var + " = " + id + "\n";
    if (!v.diagnostics.empty()) report += "diagnostics: " + v.diagnostics + "\n";
  } else {
    report += gesem::to_string(lf) + "\n";
    report += "verdict: " + gesem::to_string(v.outcome) + "\n";
    for (const auto& [var, id] : v.witness)
      report += "  witness " + var + " = " + id + "\n";
    if (!v.diagnostics.empty())
      report += "  diagnostics: " + v.diagnostics + "\n";
  }
  emit(o, report);
  return v.outcome == gesem::Outcome::True ? 0 : 1;
}

int run_label(const CommonOpts& o, const std::string& gesture_ref) {
  if (o.utterance.empty() || o.lexicon.empty())
    throw gesem::error(gesem::errc::io_error,
                       "label needs --utterance and --lexicon");
  auto anns = need_annotations(o);
  gesem::Lexicon lex = gesem::load_lexicon(o.lexicon);
  gesem::DerivationTree tree = gesem::load_utterance(o.utterance);
  gesem::bind_gestures(tree, anns);
  (void)gesture_ref;

  const gesem::GestureSpec* g = gesem::find_gesture(tree);
  if (!g || !g->model)
    throw gesem::error(gesem::errc::invalid_argument,
                       "utterance carries no gesture");
  auto affiliate = gesem::affiliate_of(tree);
  if (!affiliate)
    throw gesem::error(gesem::errc::invalid_argument,
                       "utterance has no affiliate for the gesture");

  gesem::ExtemplifyOutcome ext = gesem::extemplify(*g->model, lex);
  std::string report;
  if (o.format == "structured") report += kReportHeader;
  report += "model: " + gesem::to_string(*g->model) + "\n";
  report += "affiliate: " + *affiliate + "\n";
  report += "labels: " + std::to_string(ext.labels.size()) + "\n";

  bool any_success = false;
  for (const gesem::Labeling& l : ext.labels) {
    report += "label: " + l.predicate + " (conventionality " +
              std::to_string(l.conventionality) + ")\n";
    for (const auto& pair : l.bijection.pairs)
      report += "  " + gesem::to_string(pair.feature) + " -> " +
                pair.argument + "\n";
    gesem::ConditionedInterpretation ci =
        gesem::conditioned_interpret(tree, *affiliate, l, lex);
    report += "  " + ci.rendering + "\n";
    if (ci.relation == gesem::RelationKind::Identity) {
      any_success = true;
    } else {
      const gesem::LexEntry& aff = lex.lookup(*affiliate);
      const gesem::LexEntry& pred = lex.lookup(l.predicate);
      if (!aff.frames.empty()) {
        gesem::Resolution res = gesem::evoke_and_resolve(aff, pred, lex);
        switch (res.status) {
          case gesem::Resolution::Status::Resolved:
            report += "  R = " + res.element + "\n";
            report += gesem::render_box(res.drs);
            any_success = true;
            break;
          case gesem::Resolution::Status::Mismatch:
            report += "  R unresolvable: speech-gesture mismatch\n";
            break;
          case gesem::Resolution::Status::Ambiguous: {
            report += "  R ambiguous:";
            for (const auto& c : res.candidates) report += " " + c;
            report += "\n";
            break;
          }
        }
      } else {
        report += "  affiliate evokes no frame; R stays unresolved\n";
      }
    }
  }
  for (const std::string& ex : ext.excluded)
    report += "excluded: " + ex + "\n";

  if (!o.scene.empty() && !o.target.empty()) {
    gesem::Scene scene = gesem::load_scene(o.scene);
    gesem::VecSpace target = gesem::vecspace_of(scene, o.target);
    std::optional<std::string> hypothesis;
    if (!o.label.empty()) hypothesis = o.label;
    else if (!ext.labels.empty()) hypothesis = ext.labels.front().predicate;
    gesem::Reading reading =
        gesem::kind_check(*g->model, hypothesis, target, lex, embed_opts(o));
    report += "reading: " + gesem::to_string(reading) + "\n";
  }

  emit(o, report);
  // A gesture with labels but no workable interpretation is a mismatch;
  // an unlabelable gesture just contributes its iconic model.
  return (!ext.labels.empty() && !any_success) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gesem: vector-space semantics for iconic gestures"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string gesture_ref;

  CLI::App* parse = app.add_subcommand("parse", "validate and echo input files");
  add_common_flags(parse, o);

  CLI::App* vec = app.add_subcommand("vectorize", "derive iconic models");
  add_common_flags(vec, o);

  CLI::App* trans = app.add_subcommand("transform", "rotate/scale iconic models");
  add_common_flags(trans, o);
  trans->add_option("--scale", o.scale_k, "scale factor (positive)");
  trans->add_option("--rotate-axis", o.rotate_axis, "rotation axis: x|y|z")
      ->check(CLI::IsMember({"x", "y", "z"}));
  trans->add_option("--rotate-rad", o.rotate_rad, "rotation angle in radians");
  trans->add_option("--id", gesture_ref, "annotation id (default: all records)");

  CLI::App* emb = app.add_subcommand("embed", "embed a model into a scene space");
  add_common_flags(emb, o);
  emb->add_option("--target", o.target, "entity or event id to embed into");
  emb->add_option("--id", gesture_ref, "annotation id (default: first record)");

  CLI::App* ev = app.add_subcommand("evaluate", "truth-evaluate a multimodal utterance");
  add_common_flags(ev, o);

  CLI::App* lab = app.add_subcommand("label", "informationally evaluate a gesture");
  add_common_flags(lab, o);
  lab->add_option("--target", o.target, "referent for the kind/token reading");
  lab->add_option("--label", o.label, "hypothesized label for the kind reading");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) return run_parse(o);
    if (vec->parsed()) return run_vectorize(o);
    if (trans->parsed()) return run_transform(o, gesture_ref);
    if (emb->parsed()) return run_embed(o, gesture_ref);
    if (ev->parsed()) return run_evaluate(o);
    if (lab->parsed()) return run_label(o, gesture_ref);
  } catch (const gesem::error& e) {
    std::cerr << "error [" << gesem::to_string(e.code()) << "]: " << e.what()
              << "\n";
    return e.code() == gesem::errc::mode_mismatch ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
