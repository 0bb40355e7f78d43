#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gesem/embed.hpp"
#include "gesem/lexicon.hpp"
#include "gesem/scene.hpp"

namespace gesem {

// ---------------------------------------------------------------------------
// Minimal typed term language for the ling dimension: variables, constants,
// predicates, role equations, conjunction, negation, existentials, lambda
// abstraction and application. Just enough Montague machinery for the
// derivations exercised here.

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { Entity, Event, Truth, Fun };
  Kind kind = Kind::Entity;
  TypePtr param;   // Fun
  TypePtr result;  // Fun
};

TypePtr ty_entity();
TypePtr ty_event();
TypePtr ty_truth();
TypePtr ty_fun(TypePtr param, TypePtr result);
bool type_equal(const TypePtr& a, const TypePtr& b);
std::string to_string(const TypePtr& t);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Const, Pred, RoleEq, And, Not, Exists, Lambda, App };
  Kind kind = Kind::Var;
  std::string name;  // variable/constant name, predicate or role
  std::vector<TermPtr> kids;
  TypePtr var_type;  // Var: its type; Lambda/Exists: the bound variable's type
};

TermPtr t_var(std::string name, TypePtr type);
TermPtr t_const(std::string name);
TermPtr t_pred(std::string pred, std::vector<TermPtr> args);
TermPtr t_role_eq(std::string role, TermPtr event, TermPtr value);
TermPtr t_and(TermPtr a, TermPtr b);
TermPtr t_not(TermPtr a);
TermPtr t_exists(std::string var, TypePtr type, TermPtr body);
TermPtr t_lambda(std::string var, TypePtr type, TermPtr body);
TermPtr t_app(TermPtr f, TermPtr a);

/// Type of a closed-enough term; raises type-error on an ill-typed
/// application.
TypePtr type_of(const TermPtr& t);

/// Beta-normalizes (capture-avoiding).
TermPtr beta_reduce(const TermPtr& t);

bool alpha_equal(const TermPtr& a, const TermPtr& b);
bool has_free_vars(const TermPtr& t);
std::string to_string(const TermPtr& t);

// ---------------------------------------------------------------------------
// Derivation trees with separated [ling]/[vis] dimensions.

struct GestureSpec {
  std::string annotation_ref;
  Mode mode = Mode::Drawing;
  bool perspectival = false;
  std::optional<IconicModel> model;  // set by bind_gestures
};

struct TreeNode {
  std::string label;
  std::optional<std::string> lemma;     // lex leaf
  std::optional<GestureSpec> gesture;   // gesture leaf
  bool multimodal = false;              // mm node
  std::vector<TreeNode> children;

  bool is_lex() const { return lemma.has_value(); }
  bool is_gesture() const { return gesture.has_value(); }
};

struct DerivationTree {
  TreeNode root;
};

/// S-expression utterance format: (label child...), (lex LEMMA),
/// (mm speech (gesture REF MODE [perspectival])). Exactly one gesture per
/// utterance.
DerivationTree parse_utterance(std::string_view text);
DerivationTree load_utterance(const std::filesystem::path& file);

/// Resolves every gesture reference against the annotation list and
/// vectorizes it under its declared mode.
void bind_gestures(DerivationTree& tree,
                   const std::vector<KinematicAnnotation>& annotations);

/// The same utterance with the gesture leaf removed (mm nodes collapse onto
/// their speech daughter).
DerivationTree without_gesture(const DerivationTree& tree);

const GestureSpec* find_gesture(const DerivationTree& tree);

/// Lemma of the gesture's affiliate: the leftmost lexical leaf of the
/// multimodal node's speech daughter.
std::optional<std::string> affiliate_of(const DerivationTree& tree);

// ---------------------------------------------------------------------------
// Logical forms.

struct GestureFill {
  IconicModel model;
  std::optional<HandshapeLabel> hsq;  // set for acting gestures
};

/// One vector constraint in the [vis] dimension. Unfilled constraints are
/// existentially closed at the root and hold whenever the projected space
/// has the required structure; a gesture fill strengthens them to an
/// embedding (plus handshape quotation) obligation.
struct VisTerm {
  VisKind kind = VisKind::PlacePath;
  std::string target = "e";  // event variable, role, or entity constant
  bool event_anchored = true;
  std::optional<GestureFill> fill;
  bool closed = false;
};

struct LogicalForm {
  TermPtr ling;
  std::vector<VisTerm> vis;
};

std::string to_string(const VisTerm& v);
std::string to_string(const LogicalForm& lf);

/// Whether a gesture of the given mode may land in a space of the given
/// kind: event spaces admit drawing and acting, entity spaces drawing and
/// molding.
bool check_domain(Mode mode, SpaceKind affiliate_space);

/// Builds the multimodal logical form: functional application on [ling],
/// set union on [vis], gesture application at the multimodal node, and
/// existential closure at the root.
LogicalForm compose(const DerivationTree& tree, const Lexicon& lex);

enum class Outcome { True, False, Mismatch };

std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::False;
  std::string diagnostics;
  std::map<std::string, std::string> witness;  // variable -> scene id
};

/// Finite-model truth evaluation: the utterance is true iff some witness
/// satisfies [ling] and every [vis] constraint; a mismatch is a satisfiable
/// [ling] whose gesture embedding fails on every witness.
Verdict evaluate(const LogicalForm& lf, const Scene& scene,
                 const EmbedOptions& opts = {});

}  // namespace gesem
