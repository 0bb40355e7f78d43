#include "gesem/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gesem/textscan.hpp"

namespace gesem {

using detail::Scanner;

bool Frame::orthonormal(double tol) const {
  auto near1 = [&](double v) { return std::abs(v - 1.0) <= tol; };
  auto near0 = [&](double v) { return std::abs(v) <= tol; };
  return near1(rt.norm()) && near1(ft.norm()) && near1(up.norm()) &&
         near0(rt.dot(ft)) && near0(rt.dot(up)) && near0(ft.dot(up));
}

const Entity* Scene::find_entity(std::string_view id) const {
  for (const Entity& e : entities)
    if (e.id == id) return &e;
  return nullptr;
}

const Event* Scene::find_event(std::string_view id) const {
  for (const Event& e : events)
    if (e.id == id) return &e;
  return nullptr;
}

const Entity& Scene::entity(std::string_view id) const {
  if (const Entity* e = find_entity(id)) return *e;
  throw error(errc::reference_error, "no entity '" + std::string(id) + "'");
}

const Event& Scene::event(std::string_view id) const {
  if (const Event* e = find_event(id)) return *e;
  throw error(errc::reference_error, "no event '" + std::string(id) + "'");
}

void Scene::validate() const {
  std::set<std::string> ids;
  for (const Entity& e : entities) {
    if (!ids.insert(e.id).second)
      throw error(errc::reference_error, "duplicate id '" + e.id + "'");
    if (!e.frame.orthonormal())
      throw error(errc::frame_error,
                  "frame of '" + e.id + "' is not orthonormal");
    for (const NamedPath& np : e.axes) {
      np.path.validate();
      for (std::size_t i = 0; i < np.path.segments(); ++i)
        if (np.path.segment(i).norm() <= 0.0)
          throw error(errc::degenerate_path,
                      "axis path of '" + e.id + "' has a zero segment");
    }
  }
  for (const Event& ev : events) {
    if (!ids.insert(ev.id).second)
      throw error(errc::reference_error, "duplicate id '" + ev.id + "'");
    for (const auto& [role, target] : ev.roles)
      if (!find_entity(target))
        throw error(errc::reference_error,
                    "event '" + ev.id + "' role " + role +
                        " references missing entity '" + target + "'");
    if (ev.place_path) {
      ev.place_path->validate();
      for (std::size_t i = 0; i < ev.place_path->segments(); ++i)
        if (ev.place_path->segment(i).norm() <= 0.0)
          throw error(errc::degenerate_path,
                      "place path of '" + ev.id + "' has a zero segment");
    }
  }
  if (speaker.empty())
    throw error(errc::reference_error, "scene declares no speaker");
  if (!find_entity(speaker))
    throw error(errc::reference_error,
                "speaker '" + speaker + "' is not an entity");
}

namespace {

Point3 parse_point(Scanner& sc) {
  sc.expect_punct('(');
  Point3 p;
  p.x = sc.expect_number("x coordinate");
  sc.accept_punct(',');
  p.y = sc.expect_number("y coordinate");
  sc.accept_punct(',');
  p.z = sc.expect_number("z coordinate");
  sc.expect_punct(')');
  return p;
}

Vec3 parse_vec(Scanner& sc) {
  Point3 p = parse_point(sc);
  return {p.x, p.y, p.z};
}

// points: (..) (..) ...  [joints: line arc ...]
Path3 parse_path_block(Scanner& sc) {
  sc.expect_punct('{');
  Path3 path;
  while (!sc.accept_punct('}')) {
    if (sc.accept_ident("points")) {
      sc.expect_punct(':');
      while (sc.peek().kind == Scanner::Token::Kind::Punct &&
             sc.peek().text == "(")
        path.points.push_back(parse_point(sc));
    } else if (sc.accept_ident("joints")) {
      sc.expect_punct(':');
      while (sc.peek().kind == Scanner::Token::Kind::Ident &&
             (sc.peek().text == "line" || sc.peek().text == "arc"))
        path.joints.push_back(sc.next().text == "line" ? JointKind::Line
                                                       : JointKind::Arc);
    } else {
      sc.fail("expected points: or joints: in path block");
    }
  }
  if (path.points.size() < 2) sc.fail("path needs at least two points");
  if (path.joints.empty() && path.segments() > 1)
    path.joints.assign(path.segments() - 1, JointKind::Line);
  if (path.joints.size() + 2 != path.points.size() && path.segments() > 0)
    sc.fail("path with " + std::to_string(path.segments()) +
            " segments needs " + std::to_string(path.segments() - 1) +
            " joints");
  return path;
}

Entity parse_entity(Scanner& sc) {
  Entity e;
  sc.expect_punct('{');
  while (!sc.accept_punct('}')) {
    std::string key = sc.expect_ident("entity field");
    if (key == "axis_path") {
      NamedPath np;
      if (sc.peek().kind == Scanner::Token::Kind::Ident)
        np.label = sc.next().text;
      np.path = parse_path_block(sc);
      e.axes.push_back(std::move(np));
      continue;
    }
    if (key == "frame") {
      sc.expect_punct('{');
      while (!sc.accept_punct('}')) {
        std::string axis = sc.expect_ident("frame axis (rt/ft/up)");
        sc.expect_punct(':');
        Vec3 v = parse_vec(sc);
        if (axis == "rt") e.frame.rt = v;
        else if (axis == "ft") e.frame.ft = v;
        else if (axis == "up") e.frame.up = v;
        else sc.fail("unknown frame axis '" + axis + "'");
      }
      continue;
    }
    sc.expect_punct(':');
    if (key == "id") e.id = sc.expect_ident("entity id");
    else if (key == "sort") e.sort = sc.expect_ident("sort");
    else if (key == "position") e.position = parse_point(sc);
    else {
      sc.fail("unknown entity field '" + key + "'");
    }
  }
  return e;
}

Event parse_event(Scanner& sc) {
  Event ev;
  sc.expect_punct('{');
  while (!sc.accept_punct('}')) {
    std::string key = sc.expect_ident("event field");
    if (key == "place_path") {
      ev.place_path = parse_path_block(sc);
      continue;
    }
    if (key == "roles") {
      sc.expect_punct('{');
      while (!sc.accept_punct('}')) {
        std::string role = sc.expect_ident("role name");
        sc.expect_punct(':');
        ev.roles[role] = sc.expect_ident("entity id");
        sc.accept_punct(',');
      }
      continue;
    }
    sc.expect_punct(':');
    if (key == "id") ev.id = sc.expect_ident("event id");
    else if (key == "pred") ev.predicate = sc.expect_ident("predicate");
    else if (key == "manner_hs")
      ev.manner_handshape = HandshapeLabel{sc.expect_ident("handshape")};
    else if (key == "cvm_tags") {
      sc.expect_punct('[');
      while (!sc.accept_punct(']')) {
        ev.cvm_tags.insert(sc.expect_ident("cvm tag"));
        sc.accept_punct(',');
      }
    } else {
      sc.fail("unknown event field '" + key + "'");
    }
  }
  return ev;
}

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string fmt(const Point3& p) {
  return "(" + fmt(p.x) + ", " + fmt(p.y) + ", " + fmt(p.z) + ")";
}

std::string fmt(const Vec3& v) {
  return "(" + fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z) + ")";
}

void write_path(std::ostringstream& out, const Path3& p,
                const std::string& indent) {
  out << "{\n" << indent << "  points:";
  for (const Point3& pt : p.points) out << " " << fmt(pt);
  out << "\n";
  bool all_line = true;
  for (JointKind j : p.joints) all_line &= (j == JointKind::Line);
  if (!p.joints.empty() && !all_line) {
    out << indent << "  joints:";
    for (JointKind j : p.joints)
      out << " " << (j == JointKind::Line ? "line" : "arc");
    out << "\n";
  }
  out << indent << "}\n";
}

}  // namespace

Scene parse_scene(std::string_view text) {
  Scanner sc(text);
  Scene s;
  while (!sc.at_end()) {
    std::string key = sc.expect_ident("speaker, near_tau, entity or event");
    if (key == "speaker") {
      sc.expect_punct(':');
      s.speaker = sc.expect_ident("speaker id");
    } else if (key == "near_tau") {
      sc.expect_punct(':');
      s.near_tau = sc.expect_number("threshold");
    } else if (key == "entity") {
      s.entities.push_back(parse_entity(sc));
    } else if (key == "event") {
      s.events.push_back(parse_event(sc));
    } else {
      sc.fail("unknown top-level key '" + key + "'");
    }
  }
  s.validate();
  return s;
}

Scene load_scene(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw error(errc::io_error, "cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

std::string serialize(const Scene& s) {
  std::ostringstream out;
  out << "speaker: " << s.speaker << "\n";
  out << "near_tau: " << fmt(s.near_tau) << "\n";
  for (const Entity& e : s.entities) {
    out << "\nentity {\n";
    out << "  id: " << e.id << "\n";
    if (!e.sort.empty()) out << "  sort: " << e.sort << "\n";
    out << "  position: " << fmt(e.position) << "\n";
    bool world_aligned = (e.frame.rt - Vec3{1, 0, 0}).norm() == 0.0 &&
                         (e.frame.ft - Vec3{0, 1, 0}).norm() == 0.0 &&
                         (e.frame.up - Vec3{0, 0, 1}).norm() == 0.0;
    if (!world_aligned) {
      out << "  frame { rt: " << fmt(e.frame.rt) << "  ft: " << fmt(e.frame.ft)
          << "  up: " << fmt(e.frame.up) << " }\n";
    }
    for (const NamedPath& np : e.axes) {
      out << "  axis_path";
      if (!np.label.empty()) out << " " << np.label;
      out << " ";
      write_path(out, np.path, "  ");
    }
    out << "}\n";
  }
  for (const Event& ev : s.events) {
    out << "\nevent {\n";
    out << "  id: " << ev.id << "\n";
    out << "  pred: " << ev.predicate << "\n";
    if (!ev.roles.empty()) {
      out << "  roles {";
      for (const auto& [role, target] : ev.roles)
        out << " " << role << ": " << target;
      out << " }\n";
    }
    if (ev.place_path) {
      out << "  place_path ";
      write_path(out, *ev.place_path, "  ");
    }
    if (ev.manner_handshape)
      out << "  manner_hs: " << ev.manner_handshape->code << "\n";
    if (!ev.cvm_tags.empty()) {
      out << "  cvm_tags: [";
      bool first = true;
      for (const std::string& t : ev.cvm_tags) {
        out << (first ? "" : " ") << t;
        first = false;
      }
      out << "]\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::function<bool(const Vec3&)> region_above(const Scene& s,
                                              std::string_view entity_id,
                                              AboveReading reading) {
  Frame frame = s.entity(entity_id).frame;
  return [frame, reading](const Vec3& v) {
    Vec3 local = frame.to_local(v);
    double n = local.norm();
    if (n <= 0.0) return false;
    double v_up = local.z;          // signed component on the UP level
    double v_rt = std::abs(local.x);
    switch (reading) {
      case AboveReading::VerticalOnly: return std::abs(v_up - n) <= 1e-12;
      case AboveReading::Dominant: return v_up > v_rt;
      case AboveReading::AnyPositive: return v_up > 0.0;
    }
    return false;
  };
}

bool near(const Scene& s, std::string_view a, std::string_view b, double tau) {
  const Entity& ea = s.entity(a);
  const Entity& eb = s.entity(b);
  return (ea.position - eb.position).norm() <= tau;
}

const Path3& VecSpace::primary_path() const {
  if (paths.empty() || paths.front().path.points.size() < 2)
    throw error(errc::no_spatial_extension,
                "'" + ref + "' projects no spatial extension");
  return paths.front().path;
}

VecSpace vecspace_of(const Scene& s, std::string_view ref_id) {
  if (const Entity* e = s.find_entity(ref_id)) {
    VecSpace vs;
    vs.kind = VecSpace::Kind::Entity;
    vs.ref = e->id;
    vs.origin = e->position;
    vs.frame = e->frame;
    vs.paths = e->axes;
    return vs;
  }
  if (const Event* ev = s.find_event(ref_id)) {
    const Entity& spk = s.entity(s.speaker);
    VecSpace vs;
    vs.kind = VecSpace::Kind::Event;
    vs.ref = ev->id;
    vs.origin = spk.position;
    vs.frame = spk.frame;
    if (ev->place_path)
      vs.paths.push_back({"place", *ev->place_path});
    return vs;
  }
  throw error(errc::reference_error,
              "no entity or event '" + std::string(ref_id) + "'");
}

}  // namespace gesem
