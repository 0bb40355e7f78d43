#include "gesem/annotation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gesem {

OrientingLevel level_of(DirectionCode d) {
  switch (d) {
    case DirectionCode::ML: return OrientingLevel::NegRt;
    case DirectionCode::MR: return OrientingLevel::Rt;
    case DirectionCode::MU: return OrientingLevel::Up;
    case DirectionCode::MD: return OrientingLevel::NegUp;
    case DirectionCode::MF: return OrientingLevel::Ft;
    case DirectionCode::MB: return OrientingLevel::NegFt;
  }
  return OrientingLevel::Rt;
}

DirectionCode direction_of(OrientingLevel level) {
  switch (level) {
    case OrientingLevel::NegRt: return DirectionCode::ML;
    case OrientingLevel::Rt: return DirectionCode::MR;
    case OrientingLevel::Up: return DirectionCode::MU;
    case OrientingLevel::NegUp: return DirectionCode::MD;
    case OrientingLevel::Ft: return DirectionCode::MF;
    case OrientingLevel::NegFt: return DirectionCode::MB;
  }
  return DirectionCode::MR;
}

std::string to_string(DirectionCode d) {
  switch (d) {
    case DirectionCode::ML: return "ML";
    case DirectionCode::MR: return "MR";
    case DirectionCode::MU: return "MU";
    case DirectionCode::MD: return "MD";
    case DirectionCode::MF: return "MF";
    case DirectionCode::MB: return "MB";
  }
  return "?";
}

std::optional<DirectionCode> direction_from_string(std::string_view s) {
  if (s == "ML") return DirectionCode::ML;
  if (s == "MR") return DirectionCode::MR;
  if (s == "MU") return DirectionCode::MU;
  if (s == "MD") return DirectionCode::MD;
  if (s == "MF") return DirectionCode::MF;
  if (s == "MB") return DirectionCode::MB;
  return std::nullopt;
}

bool valid_sector(std::string_view s) {
  static const char* kSectors[] = {"CC",  "CL",  "CR",  "CU", "CB",
                                   "CUL", "CUR", "CBL", "CBR"};
  return std::any_of(std::begin(kSectors), std::end(kSectors),
                     [&](const char* k) { return s == k; });
}

AnnotationOptions::AnnotationOptions()
    : handshapes{"B", "C", "D", "F", "G", "K", "L", "O", "P", "S"} {}

std::string to_string(Hand h) { return h == Hand::Left ? "left" : "right"; }

std::string to_string(PathLabel p) {
  return p == PathLabel::Line ? "line" : "arc";
}

std::string to_string(Extent e) {
  switch (e) {
    case Extent::Small: return "small";
    case Extent::Medium: return "medium";
    case Extent::Large: return "large";
  }
  return "?";
}

std::string to_string(SyncConfig s) {
  switch (s) {
    case SyncConfig::RHA: return "RHA";
    case SyncConfig::LHA: return "LHA";
    case SyncConfig::BHA: return "BHA";
  }
  return "?";
}

std::string to_string(const GridLocation& g) {
  return g.sector + "-" + std::string(1, g.depth);
}

namespace {

struct Line {
  std::string key;
  std::string value;
  int number = 0;
  int value_column = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

GridLocation parse_grid(const std::string& value, int line, int col) {
  auto dash = value.rfind('-');
  if (dash == std::string::npos || dash + 2 != value.size())
    throw parse_error("grid location must look like SECTOR-DEPTH, got '" +
                          value + "'",
                      line, col);
  GridLocation g;
  g.sector = value.substr(0, dash);
  g.depth = value[dash + 1];
  if (!valid_sector(g.sector))
    throw parse_error("unknown gesture-space sector '" + g.sector + "'", line,
                      col);
  if (g.depth != 'N' && g.depth != 'M' && g.depth != 'F')
    throw parse_error(std::string("unknown depth '") + g.depth +
                          "' (expected N, M or F)",
                      line, col);
  return g;
}

struct BlockState {
  KinematicAnnotation record;
  int start_line = 0;
  std::set<std::string> seen;
  bool open = false;
  bool has_s_loc = false;
  bool has_e_loc = false;
};

void finish_block(BlockState& b, std::vector<KinematicAnnotation>& out) {
  if (!b.open) return;
  if (!b.seen.count("hand"))
    throw parse_error("annotation block without a `hand:` field", b.start_line,
                      1);
  if (!b.seen.count("handshape"))
    throw parse_error("annotation block without a `handshape:` field",
                      b.start_line, 1);
  if (!b.has_s_loc || !b.has_e_loc)
    throw parse_error("annotation block needs sync.s-loc and sync.e-loc",
                      b.start_line, 1);
  if (b.record.wrist_paths.size() != b.record.wrist_dirs.size())
    throw error(errc::arity_error,
                "wrist.path lists " + std::to_string(b.record.wrist_paths.size()) +
                    " strokes but wrist.dir lists " +
                    std::to_string(b.record.wrist_dirs.size()) + " (line " +
                    std::to_string(b.start_line) + ")");
  if (b.record.wrist_paths.empty() && !(b.record.s_loc == b.record.e_loc))
    throw parse_error("a static gesture must start and end in the same slot",
                      b.start_line, 1);
  out.push_back(std::move(b.record));
  b = BlockState{};
}

}  // namespace

std::vector<KinematicAnnotation> parse_annotations(
    std::string_view text, const AnnotationOptions& options) {
  std::vector<KinematicAnnotation> out;
  BlockState block;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw parse_error("expected `key: value`", line_no, 1);
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    int vcol = static_cast<int>(colon) + 2;
    if (value.empty())
      throw parse_error("field `" + key + "` has no value", line_no, vcol);

    // `id:` or a repeated `hand:` opens a new block.
    if (key == "id" || (key == "hand" && block.seen.count("hand"))) {
      if (key == "id" || block.open) finish_block(block, out);
    }
    if (!block.open) {
      block.open = true;
      block.start_line = line_no;
    }
    if (block.seen.count(key))
      throw parse_error("duplicate field `" + key + "`", line_no, 1);
    block.seen.insert(key);
    KinematicAnnotation& r = block.record;

    if (key == "id") {
      r.id = value;
    } else if (key == "hand") {
      if (value == "left") r.hand = Hand::Left;
      else if (value == "right") r.hand = Hand::Right;
      else throw parse_error("hand must be left or right, got '" + value + "'",
                             line_no, vcol);
    } else if (key == "handshape") {
      if (!options.handshapes.count(value))
        throw parse_error("unknown handshape label '" + value + "'", line_no,
                          vcol);
      r.handshape.code = value;
    } else if (key == "palm.orient") {
      r.palm_orient = value;
    } else if (key == "boh.orient") {
      r.boh_orient = value;
    } else if (key == "wrist.path") {
      if (value != "none") {
        for (const std::string& item : split(value, '>')) {
          if (item == "line") r.wrist_paths.push_back(PathLabel::Line);
          else if (item == "arc") r.wrist_paths.push_back(PathLabel::Arc);
          else throw parse_error("unknown path label '" + item + "'", line_no,
                                 vcol);
        }
      }
    } else if (key == "wrist.dir") {
      if (value != "none") {
        for (const std::string& item : split(value, '>')) {
          auto d = direction_from_string(item);
          if (!d)
            throw parse_error("unknown direction code '" + item + "'", line_no,
                              vcol);
          r.wrist_dirs.push_back(*d);
        }
      }
    } else if (key == "wrist.extent") {
      if (value == "small") r.extent = Extent::Small;
      else if (value == "medium") r.extent = Extent::Medium;
      else if (value == "large") r.extent = Extent::Large;
      else throw parse_error("unknown extent '" + value + "'", line_no, vcol);
    } else if (key == "sync.config") {
      if (value == "RHA") r.sync_config = SyncConfig::RHA;
      else if (value == "LHA") r.sync_config = SyncConfig::LHA;
      else if (value == "BHA") r.sync_config = SyncConfig::BHA;
      else throw parse_error("unknown sync config '" + value + "'", line_no,
                             vcol);
    } else if (key == "sync.rel-mov") {
      r.rel_mov = value;
    } else if (key == "sync.s-loc") {
      r.s_loc = parse_grid(value, line_no, vcol);
      block.has_s_loc = true;
    } else if (key == "sync.e-loc") {
      r.e_loc = parse_grid(value, line_no, vcol);
      block.has_e_loc = true;
    } else {
      throw parse_error("unknown field `" + key + "`", line_no, 1);
    }
  }
  finish_block(block, out);
  if (out.empty())
    throw parse_error("annotation document contains no gesture block", 1, 1);
  return out;
}

std::vector<KinematicAnnotation> load_annotations(
    const std::filesystem::path& file, const AnnotationOptions& options) {
  std::ifstream in(file);
  if (!in)
    throw error(errc::io_error, "cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_annotations(buf.str(), options);
}

std::string serialize(const KinematicAnnotation& a) {
  std::ostringstream out;
  if (!a.id.empty()) out << "id: " << a.id << "\n";
  out << "hand: " << to_string(a.hand) << "\n";
  out << "handshape: " << a.handshape.code << "\n";
  if (!a.palm_orient.empty()) out << "palm.orient: " << a.palm_orient << "\n";
  if (!a.boh_orient.empty()) out << "boh.orient: " << a.boh_orient << "\n";
  out << "wrist.path: ";
  if (a.wrist_paths.empty()) {
    out << "none";
  } else {
    for (std::size_t i = 0; i < a.wrist_paths.size(); ++i)
      out << (i ? ">" : "") << to_string(a.wrist_paths[i]);
  }
  out << "\n";
  out << "wrist.dir: ";
  if (a.wrist_dirs.empty()) {
    out << "none";
  } else {
    for (std::size_t i = 0; i < a.wrist_dirs.size(); ++i)
      out << (i ? ">" : "") << to_string(a.wrist_dirs[i]);
  }
  out << "\n";
  out << "wrist.extent: " << to_string(a.extent) << "\n";
  out << "sync.config: " << to_string(a.sync_config) << "\n";
  out << "sync.rel-mov: " << a.rel_mov << "\n";
  out << "sync.s-loc: " << to_string(a.s_loc) << "\n";
  out << "sync.e-loc: " << to_string(a.e_loc) << "\n";
  return out.str();
}

std::string serialize(const std::vector<KinematicAnnotation>& all) {
  std::string out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i) out += "\n";
    out += serialize(all[i]);
  }
  return out;
}

const KinematicAnnotation& find_annotation(
    const std::vector<KinematicAnnotation>& all, std::string_view ref) {
  for (const KinematicAnnotation& a : all)
    if (!a.id.empty() && a.id == ref) return a;
  if (!ref.empty() && ref[0] == '#') {
    std::size_t n = 0;
    for (std::size_t i = 1; i < ref.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(ref[i]))) { n = 0; break; }
      n = n * 10 + static_cast<std::size_t>(ref[i] - '0');
    }
    if (n >= 1 && n <= all.size()) return all[n - 1];
  }
  throw error(errc::reference_error,
              "no annotation named '" + std::string(ref) + "'");
}

}  // namespace gesem
