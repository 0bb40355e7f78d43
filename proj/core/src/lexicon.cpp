#include "gesem/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gesem/textscan.hpp"
#include "rotation_search.hpp"

namespace gesem {

using detail::Scanner;

double cvm_score(const CvmTemplate& c, const IconicModel& m) {
  if (c.requires_quotation && !m.quoted_handshape) return 0.0;
  if (c.traj.size() != m.traj.size()) return 0.0;
  if (c.connectors != m.connectors) return 0.0;
  if (c.closure != m.closure) return 0.0;

  std::vector<detail::DirectionConstraint> cs;
  for (std::size_t i = 0; i < c.traj.size(); ++i) {
    if (!c.traj[i]) continue;  // wildcard atom
    cs.push_back({m.traj[i].dir.normalized(), c.traj[i]->dir.normalized()});
  }
  if (cs.empty()) return 1.0;

  constexpr double kTol = M_PI / 8.0;
  auto fits_at_zero = [&] {
    return std::all_of(cs.begin(), cs.end(), [&](const auto& dc) {
      return angle_between(dc.from, dc.to) <= kTol;
    });
  };

  if (c.match_mode == MatchMode::Perspectival || m.perspectival)
    return fits_at_zero() ? 1.0 : 0.0;

  for (RotationAxis axis : allowed_rotation_axes(m)) {
    Vec3 u = axis == RotationAxis::X   ? Vec3{1, 0, 0}
             : axis == RotationAxis::Y ? Vec3{0, 1, 0}
                                       : Vec3{0, 0, 1};
    if (!detail::feasible_rotations(cs, u, kTol).empty()) return 1.0;
  }
  return fits_at_zero() ? 1.0 : 0.0;
}

std::string to_string(GestureFeature f) {
  switch (f) {
    case GestureFeature::CvmMatch: return "cvm-match";
    case GestureFeature::SpeakerAsAgent: return "speaker-as-agent";
    case GestureFeature::VirtualObject: return "virtual-object";
    case GestureFeature::VirtualTrajectory: return "virtual-trajectory";
    case GestureFeature::FreeRideDistance: return "free-ride-distance";
  }
  return "?";
}

std::optional<GestureFeature> feature_from_string(std::string_view s) {
  if (s == "cvm-match") return GestureFeature::CvmMatch;
  if (s == "speaker-as-agent") return GestureFeature::SpeakerAsAgent;
  if (s == "virtual-object") return GestureFeature::VirtualObject;
  if (s == "virtual-trajectory") return GestureFeature::VirtualTrajectory;
  if (s == "free-ride-distance") return GestureFeature::FreeRideDistance;
  return std::nullopt;
}

std::string to_string(SpaceKind k) {
  return k == SpaceKind::Entity ? "entity" : "event";
}

std::string to_string(VisKind k) {
  return k == VisKind::PlacePath ? "placepath" : "axis";
}

const LexEntry* Lexicon::find(std::string_view lemma) const {
  for (const LexEntry& e : entries)
    if (e.lemma == lemma) return &e;
  return nullptr;
}

const LexEntry& Lexicon::lookup(std::string_view lemma) const {
  if (const LexEntry* e = find(lemma)) return *e;
  throw error(errc::not_found, "no lexical entry '" + std::string(lemma) + "'");
}

const FrameDef* Lexicon::find_frame(std::string_view name) const {
  for (const FrameDef& f : frames)
    if (f.name == name) return &f;
  return nullptr;
}

const FrameDef& Lexicon::frame(std::string_view name) const {
  if (const FrameDef* f = find_frame(name)) return *f;
  throw error(errc::not_found, "no frame '" + std::string(name) + "'");
}

void Lexicon::validate() const {
  std::set<std::string> lemmas;
  for (const LexEntry& e : entries) {
    if (!lemmas.insert(e.lemma).second)
      throw error(errc::invalid_argument, "duplicate entry '" + e.lemma + "'");
    for (const VisConstraint& v : e.vis) {
      if (v.target != "e" && v.target != "self" &&
          std::find(e.roles.begin(), e.roles.end(), v.target) ==
              e.roles.end())
        throw error(errc::invalid_argument,
                    "entry '" + e.lemma + "': vis constraint references undeclared role '" +
                        v.target + "'");
    }
    for (const auto& [slot, feature] : e.arg_map) {
      (void)feature;
      if (std::find(e.args.begin(), e.args.end(), slot) == e.args.end())
        throw error(errc::invalid_argument,
                    "entry '" + e.lemma + "': map names unknown argument '" +
                        slot + "'");
    }
    // The mapping must not reuse a feature: duplicates break bijectivity.
    std::set<GestureFeature> used;
    for (const auto& [slot, feature] : e.arg_map) {
      (void)slot;
      if (!used.insert(feature).second)
        throw error(errc::invalid_argument,
                    "entry '" + e.lemma + "': gesture feature mapped twice");
    }
    if (e.cvm && e.cvm->traj.empty() && !e.cvm->requires_quotation)
      throw error(errc::invalid_argument,
                  "entry '" + e.lemma +
                      "': CVM template needs a trajectory or quotation");
    for (const FrameBinding& fb : e.frames)
      if (!find_frame(fb.frame))
        throw error(errc::not_found,
                    "entry '" + e.lemma + "' evokes unknown frame '" +
                        fb.frame + "'");
  }
  std::set<std::string> fnames;
  for (const FrameDef& f : frames) {
    if (!fnames.insert(f.name).second)
      throw error(errc::invalid_argument, "duplicate frame '" + f.name + "'");
    std::set<std::string> elems;
    for (const auto& [el, sort] : f.core) {
      (void)sort;
      if (!elems.insert(el).second)
        throw error(errc::invalid_argument,
                    "frame '" + f.name + "': duplicate element '" + el + "'");
    }
    for (const auto& [el, sort] : f.non_core) {
      (void)sort;
      if (!elems.insert(el).second)
        throw error(errc::invalid_argument,
                    "frame '" + f.name + "': duplicate element '" + el + "'");
    }
  }
}

namespace {

CvmTemplate parse_cvm(Scanner& sc, const std::string& lemma) {
  CvmTemplate c;
  c.name = lemma + "-CVM";
  sc.expect_punct('{');
  bool joints_given = false;
  while (!sc.accept_punct('}')) {
    std::string key = sc.expect_ident("cvm field");
    sc.expect_punct(':');
    if (key == "traj") {
      sc.expect_punct('[');
      while (!sc.accept_punct(']')) {
        std::string atom = sc.expect_ident("trajectory atom");
        if (atom == "*") {
          c.traj.push_back(std::nullopt);
        } else if (auto level = level_from_string(atom)) {
          c.traj.push_back(TrajAtom::from_level(*level));
        } else {
          sc.fail("unknown trajectory atom '" + atom + "'");
        }
      }
    } else if (key == "joints") {
      joints_given = true;
      sc.expect_punct('[');
      while (!sc.accept_punct(']')) {
        std::string j = sc.expect_ident("perp or round");
        if (j == "perp") c.connectors.push_back(Connector::Perp);
        else if (j == "round") c.connectors.push_back(Connector::Round);
        else sc.fail("joints must be perp or round");
      }
    } else if (key == "closure") {
      std::string v = sc.expect_ident("open or closed");
      if (v == "open") c.closure = Closure::Open;
      else if (v == "closed") c.closure = Closure::Closed;
      else sc.fail("closure must be open or closed");
    } else if (key == "quote") {
      std::string v = sc.expect_ident("true or false");
      c.requires_quotation = (v == "true");
    } else if (key == "match") {
      std::string v = sc.expect_ident("rotation-free or perspectival");
      if (v == "rotation-free") c.match_mode = MatchMode::RotationFree;
      else if (v == "perspectival") c.match_mode = MatchMode::Perspectival;
      else sc.fail("match must be rotation-free or perspectival");
    } else {
      sc.fail("unknown cvm field '" + key + "'");
    }
  }
  if (!joints_given && c.traj.size() > 1)
    c.connectors.assign(c.traj.size() - 1, Connector::Perp);
  if (c.traj.size() > 1 && c.connectors.size() + 1 != c.traj.size())
    sc.fail("cvm template needs " + std::to_string(c.traj.size() - 1) +
            " joints");
  return c;
}

LexEntry parse_entry(Scanner& sc) {
  LexEntry e;
  sc.expect_punct('{');
  bool space_given = false;
  while (!sc.accept_punct('}')) {
    std::string key = sc.expect_ident("entry field");
    if (key == "cvm") {
      e.cvm = parse_cvm(sc, e.lemma);
      continue;
    }
    if (key == "map") {
      sc.expect_punct('{');
      while (!sc.accept_punct('}')) {
        std::string slot = sc.expect_ident("argument slot");
        sc.expect_punct(':');
        std::string fname = sc.expect_ident("gesture feature");
        auto f = feature_from_string(fname);
        if (!f) sc.fail("unknown gesture feature '" + fname + "'");
        e.arg_map[slot] = *f;
      }
      continue;
    }
    sc.expect_punct(':');
    if (key == "lemma") e.lemma = sc.expect_ident("lemma");
    else if (key == "cat") e.category = sc.expect_ident("category");
    else if (key == "sort") e.sort = sc.expect_ident("sort");
    else if (key == "roles") {
      sc.expect_punct('[');
      while (!sc.accept_punct(']')) e.roles.push_back(sc.expect_ident("role"));
    } else if (key == "args") {
      sc.expect_punct('[');
      while (!sc.accept_punct(']'))
        e.args.push_back(sc.expect_ident("argument"));
    } else if (key == "space") {
      std::string v = sc.expect_ident("entity or event");
      if (v == "entity") e.mode_affinity = SpaceKind::Entity;
      else if (v == "event") e.mode_affinity = SpaceKind::Event;
      else sc.fail("space must be entity or event");
      space_given = true;
    } else if (key == "vis") {
      sc.expect_punct('[');
      while (!sc.accept_punct(']')) {
        std::string kind = sc.expect_ident("vis constraint");
        VisConstraint v;
        if (kind == "placepath") v.kind = VisKind::PlacePath;
        else if (kind == "axis") v.kind = VisKind::Axis;
        else sc.fail("unknown vis constraint '" + kind + "'");
        sc.expect_punct('(');
        v.target = sc.expect_ident("constraint target");
        sc.expect_punct(')');
        e.vis.push_back(v);
      }
    } else if (key == "frames") {
      sc.expect_punct('[');
      while (!sc.accept_punct(']')) {
        FrameBinding fb;
        fb.frame = sc.expect_ident("frame name");
        if (sc.accept_punct('{')) {
          while (!sc.accept_punct('}')) {
            std::string el = sc.expect_ident("core element");
            sc.expect_punct(':');
            fb.core_map[el] = sc.expect_ident("role or self");
            sc.accept_punct(',');
          }
        }
        e.frames.push_back(std::move(fb));
      }
    } else {
      sc.fail("unknown entry field '" + key + "'");
    }
  }
  if (e.lemma.empty()) sc.fail("entry without a lemma");
  if (!space_given)
    e.mode_affinity = e.category == "v" ? SpaceKind::Event : SpaceKind::Entity;
  return e;
}

FrameDef parse_frame(Scanner& sc) {
  FrameDef f;
  sc.expect_punct('{');
  while (!sc.accept_punct('}')) {
    std::string key = sc.expect_ident("frame field");
    if (key == "name") {
      sc.expect_punct(':');
      f.name = sc.expect_ident("frame name");
      continue;
    }
    if (key == "core" || key == "non_core") {
      auto& list = key == "core" ? f.core : f.non_core;
      sc.expect_punct('{');
      while (!sc.accept_punct('}')) {
        std::string el = sc.expect_ident("frame element");
        sc.expect_punct(':');
        list.emplace_back(el, sc.expect_ident("sort"));
        sc.accept_punct(',');
      }
      continue;
    }
    sc.fail("unknown frame field '" + key + "'");
  }
  if (f.name.empty()) sc.fail("frame without a name");
  return f;
}

std::string cvm_to_text(const CvmTemplate& c) {
  std::ostringstream out;
  out << "cvm { traj: [";
  for (std::size_t i = 0; i < c.traj.size(); ++i)
    out << (i ? " " : "")
        << (c.traj[i] ? to_string(*c.traj[i]->level) : std::string("*"));
  out << "]";
  bool default_joints = std::all_of(
      c.connectors.begin(), c.connectors.end(),
      [](Connector x) { return x == Connector::Perp; });
  if (!default_joints) {
    out << "  joints: [";
    for (std::size_t i = 0; i < c.connectors.size(); ++i)
      out << (i ? " " : "")
          << (c.connectors[i] == Connector::Perp ? "perp" : "round");
    out << "]";
  }
  out << "  closure: " << to_string(c.closure);
  if (c.requires_quotation) out << "  quote: true";
  if (c.match_mode == MatchMode::Perspectival) out << "  match: perspectival";
  out << " }";
  return out.str();
}

}  // namespace

Lexicon parse_lexicon(std::string_view text) {
  Scanner sc(text);
  Lexicon lex;
  while (!sc.at_end()) {
    std::string key = sc.expect_ident("entry or frame");
    if (key == "entry") lex.entries.push_back(parse_entry(sc));
    else if (key == "frame") lex.frames.push_back(parse_frame(sc));
    else sc.fail("unknown top-level key '" + key + "'");
  }
  lex.validate();
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw error(errc::io_error, "cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon(buf.str());
}

std::string serialize(const Lexicon& lex) {
  std::ostringstream out;
  bool first = true;
  for (const LexEntry& e : lex.entries) {
    if (!first) out << "\n";
    first = false;
    out << "entry {\n";
    out << "  lemma: " << e.lemma << "\n";
    out << "  cat: " << e.category << "\n";
    if (!e.sort.empty()) out << "  sort: " << e.sort << "\n";
    if (!e.roles.empty()) {
      out << "  roles: [";
      for (std::size_t i = 0; i < e.roles.size(); ++i)
        out << (i ? " " : "") << e.roles[i];
      out << "]\n";
    }
    out << "  space: " << to_string(e.mode_affinity) << "\n";
    if (!e.vis.empty()) {
      out << "  vis: [";
      for (std::size_t i = 0; i < e.vis.size(); ++i)
        out << (i ? " " : "") << to_string(e.vis[i].kind) << "("
            << e.vis[i].target << ")";
      out << "]\n";
    }
    if (e.cvm) out << "  " << cvm_to_text(*e.cvm) << "\n";
    if (!e.args.empty()) {
      out << "  args: [";
      for (std::size_t i = 0; i < e.args.size(); ++i)
        out << (i ? " " : "") << e.args[i];
      out << "]\n";
    }
    if (!e.arg_map.empty()) {
      out << "  map {";
      for (const auto& [slot, feature] : e.arg_map)
        out << " " << slot << ": " << to_string(feature);
      out << " }\n";
    }
    if (!e.frames.empty()) {
      out << "  frames: [";
      for (std::size_t i = 0; i < e.frames.size(); ++i) {
        const FrameBinding& fb = e.frames[i];
        out << (i ? " " : "") << fb.frame;
        if (!fb.core_map.empty()) {
          out << " {";
          for (const auto& [el, role] : fb.core_map)
            out << " " << el << ": " << role;
          out << " }";
        }
      }
      out << "]\n";
    }
    out << "}\n";
  }
  for (const FrameDef& f : lex.frames) {
    out << "\nframe {\n  name: " << f.name << "\n";
    if (!f.core.empty()) {
      out << "  core {";
      for (const auto& [el, sort] : f.core) out << " " << el << ": " << sort;
      out << " }\n";
    }
    if (!f.non_core.empty()) {
      out << "  non_core {";
      for (const auto& [el, sort] : f.non_core)
        out << " " << el << ": " << sort;
      out << " }\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace gesem
