#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gesem/composition.hpp"
#include "gesem/embed.hpp"
#include "gesem/lexicon.hpp"

namespace gesem {

struct BijectionPair {
  GestureFeature feature;
  std::string argument;

  bool operator==(const BijectionPair&) const = default;
};

/// Bijective mapping between gesture features (form features plus visually
/// presupposed ones) and the arguments of the extemplified predicate.
struct Bijection {
  std::vector<BijectionPair> pairs;

  bool operator==(const Bijection&) const = default;
};

enum class RelationKind { Unresolved, Identity, FrameElement };

struct Labeling {
  std::string predicate;
  Bijection bijection;
  RelationKind relation = RelationKind::Unresolved;
  std::string relation_element;  // set when relation == FrameElement
  int conventionality = 0;       // count of concurrently matching CVMs
};

struct ExtemplifyOutcome {
  std::vector<Labeling> labels;       // ranked
  std::vector<std::string> excluded;  // why candidates dropped out
};

/// Extended exemplification: every entry whose CVM classifies the model as 1
/// and whose argument slots are all witnessed by distinct gesture features.
/// An empty result is legal; the gesture then contributes only its iconic
/// model.
ExtemplifyOutcome extemplify(const IconicModel& m, const Lexicon& lex);

/// Gesture features the model makes available (given a CVM match).
std::vector<GestureFeature> available_features(const IconicModel& m);

struct ConditionedInterpretation {
  RelationKind relation = RelationKind::Unresolved;
  std::string predicate;
  std::string affiliate;
  LogicalForm lf;
  std::string rendering;  // e.g. "R(spiral, staircase), R = ?"
};

/// Interprets the utterance as alpha[R(p, beta)]: identity when the gesture
/// extemplifies its own affiliate, otherwise an unresolved R handed to
/// evoke_and_resolve. Rejects labels that extemplify() would not produce.
ConditionedInterpretation conditioned_interpret(const DerivationTree& tree,
                                                const std::string& affiliate,
                                                const Labeling& label,
                                                const Lexicon& lex);

// ---------------------------------------------------------------------------
// DRS-style frame integration.

struct DrsCondition {
  enum class Kind { FrameInstance, Atom, Element, RoleAtom, Slot, Equation };
  Kind kind = Kind::Atom;
  std::string a;                  // predicate / element / slot / lhs
  std::string b;                  // frame name / slot value / rhs
  std::vector<std::string> vars;  // argument variables

  bool operator==(const DrsCondition&) const = default;
};

struct DrsLite {
  std::vector<std::string> universe;  // overt referents
  std::vector<std::string> implicit;  // frame-introduced referents
  std::vector<DrsCondition> conditions;

  const DrsCondition* find_slot(std::string_view var) const;
};

std::string render_box(const DrsLite& drs);

struct Resolution {
  enum class Status { Resolved, Mismatch, Ambiguous };
  Status status = Status::Mismatch;
  DrsLite drs;
  std::string element;                 // resolved non-core element
  std::vector<std::string> candidates; // for Ambiguous
};

/// Frame evocation and R-resolution: extends the affiliate with its frame's
/// implicit referents and binds p to the unique sort-compatible non-core
/// element. Means-events additionally equate the implicit event and shared
/// roles with the overt ones.
Resolution evoke_and_resolve(const LexEntry& affiliate, const LexEntry& p,
                             const Lexicon& lex);

enum class Reading { Token, Kind, None };

std::string to_string(Reading r);

/// Token reading when the model itself embeds; kind reading when it does not
/// but the label's CVM prototype (searched over its wildcard atoms) does.
Reading kind_check(const IconicModel& m,
                   const std::optional<std::string>& label_lemma,
                   const VecSpace& target, const Lexicon& lex,
                   const EmbedOptions& opts = {});

}  // namespace gesem
