#include "gesem/infeval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rotation_search.hpp"

namespace gesem {

std::vector<GestureFeature> available_features(const IconicModel& m) {
  std::vector<GestureFeature> fs{GestureFeature::CvmMatch};
  if (m.quoted_handshape) {
    fs.push_back(GestureFeature::SpeakerAsAgent);
    if (m.traj.empty()) {
      // Static acting posture: a between-hands hold. The held object and its
      // extent come for free.
      fs.push_back(GestureFeature::VirtualObject);
      fs.push_back(GestureFeature::FreeRideDistance);
    } else if (m.closure == Closure::Open) {
      // A stopped movement evokes the virtual continuation and the virtual
      // object it would carry.
      fs.push_back(GestureFeature::VirtualObject);
      fs.push_back(GestureFeature::VirtualTrajectory);
    }
  }
  return fs;
}

ExtemplifyOutcome extemplify(const IconicModel& m, const Lexicon& lex) {
  ExtemplifyOutcome out;
  std::vector<GestureFeature> features = available_features(m);
  auto available = [&](GestureFeature f) {
    return std::find(features.begin(), features.end(), f) != features.end();
  };

  for (const LexEntry& e : lex.entries) {
    if (!e.cvm && e.args.empty()) continue;  // not an extemplification target

    std::vector<std::string> reasons;
    if (!e.cvm) {
      reasons.push_back("there is no " + e.lemma + "-CVM");
    } else if (cvm_score(*e.cvm, m) != 1.0) {
      reasons.push_back(e.cvm->name + " does not classify the model");
    }

    Bijection bij;
    for (const std::string& slot : e.args) {
      auto it = e.arg_map.find(slot);
      if (it == e.arg_map.end()) {
        reasons.push_back("argument '" + slot +
                          "' cannot be witnessed by any gesture feature");
        continue;
      }
      if (!available(it->second)) {
        reasons.push_back("argument '" + slot + "' needs " +
                          to_string(it->second) +
                          ", which this gesture does not provide");
        continue;
      }
      bij.pairs.push_back({it->second, slot});
    }

    if (!reasons.empty()) {
      std::string joined = e.lemma + ": " + reasons.front();
      for (std::size_t i = 1; i < reasons.size(); ++i)
        joined += "; " + reasons[i];
      out.excluded.push_back(std::move(joined));
      continue;
    }

    Labeling label;
    label.predicate = e.lemma;
    label.bijection = std::move(bij);
    out.labels.push_back(std::move(label));
  }

  std::sort(out.labels.begin(), out.labels.end(),
            [](const Labeling& a, const Labeling& b) {
              return a.predicate < b.predicate;
            });
  for (Labeling& l : out.labels)
    l.conventionality = static_cast<int>(out.labels.size());
  return out;
}

namespace {

bool tree_has_lemma(const TreeNode& node, const std::string& lemma) {
  if (node.lemma && *node.lemma == lemma) return true;
  return std::any_of(node.children.begin(), node.children.end(),
                     [&](const TreeNode& c) { return tree_has_lemma(c, lemma); });
}

}  // namespace

ConditionedInterpretation conditioned_interpret(const DerivationTree& tree,
                                                const std::string& affiliate,
                                                const Labeling& label,
                                                const Lexicon& lex) {
  const GestureSpec* g = find_gesture(tree);
  if (!g || !g->model)
    throw error(errc::invalid_argument,
                "utterance carries no bound gesture to interpret");
  if (!tree_has_lemma(tree.root, affiliate))
    throw error(errc::invalid_argument,
                "affiliate '" + affiliate + "' does not occur in the utterance");

  ExtemplifyOutcome current = extemplify(*g->model, lex);
  bool fresh = std::any_of(
      current.labels.begin(), current.labels.end(),
      [&](const Labeling& l) { return l.predicate == label.predicate; });
  if (!fresh)
    throw error(errc::stale_label,
                "'" + label.predicate +
                    "' is not an informational evaluation of this gesture");

  ConditionedInterpretation ci;
  ci.predicate = label.predicate;
  ci.affiliate = affiliate;
  ci.lf = compose(tree, lex);
  if (label.predicate == affiliate) {
    ci.relation = RelationKind::Identity;
    ci.rendering = "R(" + label.predicate + ", " + affiliate +
                   "), R = identity: amounts to the plain utterance";
  } else {
    ci.relation = RelationKind::Unresolved;
    ci.rendering = "R(" + label.predicate + ", " + affiliate + "), R = ?";
  }
  return ci;
}

// ---------------------------------------------------------------------------
// DRS machinery.

const DrsCondition* DrsLite::find_slot(std::string_view var) const {
  for (const DrsCondition& c : conditions)
    if (c.kind == DrsCondition::Kind::Slot && c.a == var) return &c;
  return nullptr;
}

namespace {

std::string condition_text(const DrsCondition& c) {
  switch (c.kind) {
    case DrsCondition::Kind::FrameInstance:
      return c.a + " : " + c.b;
    case DrsCondition::Kind::Atom: {
      std::string out = c.a + "(";
      for (std::size_t i = 0; i < c.vars.size(); ++i)
        out += (i ? ", " : "") + c.vars[i];
      return out + ")";
    }
    case DrsCondition::Kind::Element:
    case DrsCondition::Kind::RoleAtom:
      return c.a + "(" + c.vars[0] + ", " + c.vars[1] + ")";
    case DrsCondition::Kind::Slot:
      return c.a + " = " + (c.b.empty() ? "?" : c.b);
    case DrsCondition::Kind::Equation:
      return c.a + " = " + c.b;
  }
  return "?";
}

}  // namespace

std::string render_box(const DrsLite& drs) {
  std::vector<std::string> lines;
  std::string head;
  for (std::size_t i = 0; i < drs.universe.size(); ++i)
    head += (i ? " " : "") + drs.universe[i];
  if (!drs.implicit.empty()) {
    head += "  |  ";
    for (std::size_t i = 0; i < drs.implicit.size(); ++i)
      head += (i ? " " : "") + drs.implicit[i];
  }

  // Merge an element with the slot condition of its variable, the way the
  // boxes are usually typeset: "Descriptor(e, y2), y2 = spiral(z)".
  std::set<const DrsCondition*> consumed;
  for (std::size_t i = 0; i < drs.conditions.size(); ++i) {
    const DrsCondition& c = drs.conditions[i];
    if (consumed.count(&c)) continue;
    if (c.kind == DrsCondition::Kind::Element) {
      std::string line = condition_text(c);
      if (const DrsCondition* slot = drs.find_slot(c.vars[1])) {
        line += ", " + condition_text(*slot);
        consumed.insert(slot);
      }
      lines.push_back(line);
    } else if (c.kind != DrsCondition::Kind::Slot) {
      lines.push_back(condition_text(c));
    } else if (!consumed.count(&c)) {
      // Slot without a preceding element (should not happen).
      lines.push_back(condition_text(c));
    }
  }

  std::size_t width = head.size();
  for (const std::string& l : lines) width = std::max(width, l.size());
  std::string bar = "+" + std::string(width + 2, '-') + "+\n";
  std::string out = bar;
  out += "| " + head + std::string(width - head.size(), ' ') + " |\n";
  out += bar;
  for (const std::string& l : lines)
    out += "| " + l + std::string(width - l.size(), ' ') + " |\n";
  out += bar;
  return out;
}

namespace {

const char* kVarNames[] = {"x", "y", "w", "v", "u"};

std::string role_var(std::size_t i) {
  return i < std::size(kVarNames) ? kVarNames[i]
                                  : "x" + std::to_string(i + 1);
}

}  // namespace

Resolution evoke_and_resolve(const LexEntry& affiliate, const LexEntry& p,
                             const Lexicon& lex) {
  if (affiliate.frames.empty())
    throw error(errc::frame_error,
                "entry '" + affiliate.lemma + "' evokes no frame");
  const FrameBinding& binding = affiliate.frames.front();
  const FrameDef& frame = lex.frame(binding.frame);

  bool is_verb = affiliate.category == "v";
  std::map<std::string, std::string> role_vars;
  for (std::size_t i = 0; i < affiliate.roles.size(); ++i)
    role_vars[affiliate.roles[i]] = role_var(i);

  Resolution res;
  DrsLite& drs = res.drs;

  // Overt referents in lambda order (innermost last), then the event.
  for (auto it = affiliate.roles.rbegin(); it != affiliate.roles.rend(); ++it)
    drs.universe.push_back(role_vars[*it]);
  std::string referent = is_verb ? "e" : "x";
  if (is_verb) {
    drs.universe.push_back("e");
  } else {
    drs.universe.push_back("x");
    drs.implicit.push_back("e");
  }

  drs.conditions.push_back(
      {DrsCondition::Kind::FrameInstance, "e", frame.name, {}});

  for (const auto& [element, sort] : frame.core) {
    (void)sort;
    auto it = binding.core_map.find(element);
    if (it == binding.core_map.end())
      throw error(errc::frame_error,
                  "entry '" + affiliate.lemma + "' leaves core element '" +
                      element + "' unbound");
    std::string var = it->second == "self" ? referent : role_vars.at(it->second);
    drs.conditions.push_back(
        {DrsCondition::Kind::Element, element, "", {"e", var}});
  }

  drs.conditions.push_back(
      {DrsCondition::Kind::Atom, affiliate.lemma, "", {referent}});

  // Implicit discourse referents for the non-core elements, all unresolved.
  const char* slot_prefix = is_verb ? "z" : "y";
  std::map<std::string, std::string> slot_vars;
  for (std::size_t i = 0; i < frame.non_core.size(); ++i) {
    std::string var = slot_prefix + std::to_string(i + 1);
    slot_vars[frame.non_core[i].first] = var;
    drs.implicit.push_back(var);
    drs.conditions.push_back({DrsCondition::Kind::Element,
                              frame.non_core[i].first,
                              "",
                              {"e", var}});
    drs.conditions.push_back({DrsCondition::Kind::Slot, var, "", {}});
  }

  // R-resolution: the unique non-core element whose sort matches p's.
  for (const auto& [element, sort] : frame.non_core)
    if (!p.sort.empty() && sort == p.sort) res.candidates.push_back(element);

  if (res.candidates.empty()) {
    res.status = Resolution::Status::Mismatch;
    return res;
  }
  if (res.candidates.size() > 1) {
    res.status = Resolution::Status::Ambiguous;
    return res;
  }

  res.status = Resolution::Status::Resolved;
  res.element = res.candidates.front();
  std::string slot = slot_vars.at(res.element);
  auto fill_slot = [&](const std::string& value) {
    for (DrsCondition& c : drs.conditions)
      if (c.kind == DrsCondition::Kind::Slot && c.a == slot) c.b = value;
  };

  if (p.sort == "means-event") {
    // punish by slapping: the means event is the event itself, and shared
    // roles carry over (non-maximal readings stay expressible by dropping
    // the equations).
    drs.universe.push_back("e'");
    fill_slot(p.lemma + "(e')");
    drs.conditions.push_back({DrsCondition::Kind::Equation, "e'", "e", {}});
    for (std::size_t i = 0; i < p.roles.size(); ++i) {
      std::string primed = role_var(i) + "'";
      drs.universe.push_back(primed);
      drs.conditions.push_back(
          {DrsCondition::Kind::RoleAtom, p.roles[i], "", {"e'", primed}});
      auto shared = role_vars.find(p.roles[i]);
      if (shared != role_vars.end())
        drs.conditions.push_back(
            {DrsCondition::Kind::Equation, primed, shared->second, {}});
    }
  } else {
    drs.universe.push_back("z");
    fill_slot(p.lemma + "(z)");
    if (p.sort == "property") {
      // The gesture's property holds of the affiliate's referent itself.
      drs.conditions.push_back(
          {DrsCondition::Kind::Equation, "z", referent, {}});
    }
  }
  return res;
}

std::string to_string(Reading r) {
  switch (r) {
    case Reading::Token: return "token-reading";
    case Reading::Kind: return "kind-reading";
    case Reading::None: return "no-reading";
  }
  return "?";
}

namespace {

// Embedding decision for a CVM template against a target path: wildcards are
// unconstrained, concrete atoms must align under one admissible rotation.
bool template_embeds(const CvmTemplate& c, const VecSpace& target,
                     const EmbedOptions& opts) {
  const Path3* path;
  try {
    path = &target.primary_path();
  } catch (const error&) {
    return false;
  }
  path->validate();
  if (c.traj.size() != path->segments()) return false;
  if (path->segments() == 0) return false;
  if (closure_of(*path) != c.closure) return false;

  std::vector<Vec3> dirs;
  for (std::size_t i = 0; i < path->segments(); ++i) {
    Vec3 seg = target.frame.to_local(path->segment(i));
    if (seg.norm() <= 0.0) return false;
    dirs.push_back(seg.normalized());
  }
  for (std::size_t i = 0; i < c.connectors.size(); ++i) {
    double turn = angle_between(dirs[i], dirs[i + 1]);
    if (c.connectors[i] == Connector::Perp) {
      if (path->joints[i] != JointKind::Line || turn < opts.angle_tolerance)
        return false;
    } else if (path->joints[i] != JointKind::Arc) {
      return false;
    }
  }

  std::vector<detail::DirectionConstraint> cs;
  bool dim[3] = {false, false, false};
  for (std::size_t i = 0; i < c.traj.size(); ++i) {
    if (!c.traj[i]) continue;
    Vec3 d = c.traj[i]->dir.normalized();
    cs.push_back({d, dirs[i]});
    if (std::abs(d.x) > 1e-9) dim[0] = true;
    if (std::abs(d.y) > 1e-9) dim[1] = true;
    if (std::abs(d.z) > 1e-9) dim[2] = true;
  }
  if (cs.empty()) return true;

  if (c.match_mode == MatchMode::Perspectival) {
    return std::all_of(cs.begin(), cs.end(), [&](const auto& dc) {
      return angle_between(dc.from, dc.to) <= opts.angle_tolerance;
    });
  }
  std::vector<Vec3> axes;
  int used = dim[0] + dim[1] + dim[2];
  if (used == 2) {
    if (!dim[0]) axes.push_back({1, 0, 0});
    else if (!dim[1]) axes.push_back({0, 1, 0});
    else axes.push_back({0, 0, 1});
  } else {
    axes.push_back({0, 0, 1});
  }
  for (const Vec3& u : axes)
    if (!detail::feasible_rotations(cs, u, opts.angle_tolerance).empty())
      return true;
  return false;
}

}  // namespace

Reading kind_check(const IconicModel& m,
                   const std::optional<std::string>& label_lemma,
                   const VecSpace& target, const Lexicon& lex,
                   const EmbedOptions& opts) {
  bool token = false;
  try {
    token = embed(m, target, opts).success;
  } catch (const error& e) {
    if (e.code() != errc::no_spatial_extension) throw;
  }
  if (token) return Reading::Token;

  if (label_lemma) {
    const LexEntry* entry = lex.find(*label_lemma);
    if (entry && entry->cvm && template_embeds(*entry->cvm, target, opts))
      return Reading::Kind;
  }
  return Reading::None;
}

}  // namespace gesem
