#include "gesem/composition.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include "gesem/textscan.hpp"

namespace gesem {

using detail::Scanner;

// ---------------------------------------------------------------------------
// Types.

namespace {

TypePtr make_type(Type::Kind k, TypePtr p = nullptr, TypePtr r = nullptr) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  t->param = std::move(p);
  t->result = std::move(r);
  return t;
}

}  // namespace

TypePtr ty_entity() {
  static TypePtr t = make_type(Type::Kind::Entity);
  return t;
}

TypePtr ty_event() {
  static TypePtr t = make_type(Type::Kind::Event);
  return t;
}

TypePtr ty_truth() {
  static TypePtr t = make_type(Type::Kind::Truth);
  return t;
}

TypePtr ty_fun(TypePtr param, TypePtr result) {
  return make_type(Type::Kind::Fun, std::move(param), std::move(result));
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  if (a->kind != Type::Kind::Fun) return true;
  return type_equal(a->param, b->param) && type_equal(a->result, b->result);
}

std::string to_string(const TypePtr& t) {
  if (!t) return "?";
  switch (t->kind) {
    case Type::Kind::Entity: return "e";
    case Type::Kind::Event: return "s";
    case Type::Kind::Truth: return "t";
    case Type::Kind::Fun:
      return "(" + to_string(t->param) + " -> " + to_string(t->result) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Terms.

namespace {

TermPtr make_term(Term::Kind k, std::string name, std::vector<TermPtr> kids,
                  TypePtr var_type = nullptr) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->name = std::move(name);
  t->kids = std::move(kids);
  t->var_type = std::move(var_type);
  return t;
}

std::atomic<unsigned> g_fresh_counter{0};

std::string fresh_name(const std::string& base) {
  return base + "'" + std::to_string(++g_fresh_counter);
}

bool free_in(const TermPtr& t, const std::string& var) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == var;
    case Term::Kind::Const: return false;
    case Term::Kind::Lambda:
    case Term::Kind::Exists:
      if (t->name == var) return false;
      return free_in(t->kids[0], var);
    default:
      return std::any_of(t->kids.begin(), t->kids.end(),
                         [&](const TermPtr& k) { return free_in(k, var); });
  }
}

TermPtr substitute(const TermPtr& t, const std::string& var,
                   const TermPtr& value) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == var ? value : t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::Lambda:
    case Term::Kind::Exists: {
      if (t->name == var) return t;
      if (free_in(value, t->name)) {
        // Rename the bound variable to avoid capture.
        std::string renamed = fresh_name(t->name);
        TermPtr body = substitute(t->kids[0], t->name,
                                  t_var(renamed, t->var_type));
        return make_term(t->kind, renamed,
                         {substitute(body, var, value)}, t->var_type);
      }
      return make_term(t->kind, t->name, {substitute(t->kids[0], var, value)},
                       t->var_type);
    }
    default: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (const TermPtr& k : t->kids)
        kids.push_back(substitute(k, var, value));
      return make_term(t->kind, t->name, std::move(kids), t->var_type);
    }
  }
}

}  // namespace

TermPtr t_var(std::string name, TypePtr type) {
  return make_term(Term::Kind::Var, std::move(name), {}, std::move(type));
}

TermPtr t_const(std::string name) {
  return make_term(Term::Kind::Const, std::move(name), {});
}

TermPtr t_pred(std::string pred, std::vector<TermPtr> args) {
  return make_term(Term::Kind::Pred, std::move(pred), std::move(args));
}

TermPtr t_role_eq(std::string role, TermPtr event, TermPtr value) {
  return make_term(Term::Kind::RoleEq, std::move(role),
                   {std::move(event), std::move(value)});
}

TermPtr t_and(TermPtr a, TermPtr b) {
  return make_term(Term::Kind::And, "", {std::move(a), std::move(b)});
}

TermPtr t_not(TermPtr a) {
  return make_term(Term::Kind::Not, "", {std::move(a)});
}

TermPtr t_exists(std::string var, TypePtr type, TermPtr body) {
  return make_term(Term::Kind::Exists, std::move(var), {std::move(body)},
                   std::move(type));
}

TermPtr t_lambda(std::string var, TypePtr type, TermPtr body) {
  return make_term(Term::Kind::Lambda, std::move(var), {std::move(body)},
                   std::move(type));
}

TermPtr t_app(TermPtr f, TermPtr a) {
  return make_term(Term::Kind::App, "", {std::move(f), std::move(a)});
}

namespace {

TypePtr type_of_impl(const TermPtr& t,
                     std::map<std::string, TypePtr>& env) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it != env.end()) return it->second;
      if (t->var_type) return t->var_type;
      throw error(errc::type_error, "variable '" + t->name + "' has no type");
    }
    case Term::Kind::Const:
      return ty_entity();
    case Term::Kind::Pred:
      for (const TermPtr& k : t->kids) type_of_impl(k, env);
      return ty_truth();
    case Term::Kind::RoleEq: {
      TypePtr ev = type_of_impl(t->kids[0], env);
      if (ev->kind != Type::Kind::Event)
        throw error(errc::type_error,
                    "role " + t->name + " applies to an event");
      type_of_impl(t->kids[1], env);
      return ty_truth();
    }
    case Term::Kind::And:
    case Term::Kind::Not:
      for (const TermPtr& k : t->kids)
        if (type_of_impl(k, env)->kind != Type::Kind::Truth)
          throw error(errc::type_error, "connective over a non-formula");
      return ty_truth();
    case Term::Kind::Exists: {
      auto saved = env;
      env[t->name] = t->var_type;
      TypePtr body = type_of_impl(t->kids[0], env);
      env = saved;
      if (body->kind != Type::Kind::Truth)
        throw error(errc::type_error, "existential over a non-formula");
      return ty_truth();
    }
    case Term::Kind::Lambda: {
      auto saved = env;
      env[t->name] = t->var_type;
      TypePtr body = type_of_impl(t->kids[0], env);
      env = saved;
      return ty_fun(t->var_type, body);
    }
    case Term::Kind::App: {
      TypePtr f = type_of_impl(t->kids[0], env);
      TypePtr a = type_of_impl(t->kids[1], env);
      if (f->kind != Type::Kind::Fun)
        throw error(errc::type_error, "applying a non-function");
      if (!type_equal(f->param, a))
        throw error(errc::type_error,
                    "type clash: expected " + to_string(f->param) + ", got " +
                        to_string(a));
      return f->result;
    }
  }
  throw error(errc::type_error, "malformed term");
}

}  // namespace

TypePtr type_of(const TermPtr& t) {
  std::map<std::string, TypePtr> env;
  return type_of_impl(t, env);
}

TermPtr beta_reduce(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      TermPtr f = beta_reduce(t->kids[0]);
      TermPtr a = beta_reduce(t->kids[1]);
      if (f->kind == Term::Kind::Lambda)
        return beta_reduce(substitute(f->kids[0], f->name, a));
      return make_term(Term::Kind::App, "", {f, a});
    }
    default: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (const TermPtr& k : t->kids) kids.push_back(beta_reduce(k));
      return make_term(t->kind, t->name, std::move(kids), t->var_type);
    }
  }
}

namespace {

bool alpha_equal_impl(const TermPtr& a, const TermPtr& b,
                      std::map<std::string, int>& ea,
                      std::map<std::string, int>& eb, int& depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var: {
      auto ia = ea.find(a->name);
      auto ib = eb.find(b->name);
      if (ia == ea.end() || ib == eb.end())
        return ia == ea.end() && ib == eb.end() && a->name == b->name;
      return ia->second == ib->second;
    }
    case Term::Kind::Const:
      return a->name == b->name;
    case Term::Kind::Lambda:
    case Term::Kind::Exists: {
      if (!type_equal(a->var_type, b->var_type)) return false;
      auto sa = ea, sb = eb;
      ea[a->name] = depth;
      eb[b->name] = depth;
      ++depth;
      bool ok = alpha_equal_impl(a->kids[0], b->kids[0], ea, eb, depth);
      ea = sa;
      eb = sb;
      return ok;
    }
    default: {
      if (a->name != b->name || a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!alpha_equal_impl(a->kids[i], b->kids[i], ea, eb, depth))
          return false;
      return true;
    }
  }
}

void collect_free(const TermPtr& t, std::map<std::string, bool>& bound,
                  bool& found) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) found = true;
      return;
    case Term::Kind::Const:
      return;
    case Term::Kind::Lambda:
    case Term::Kind::Exists: {
      bool was = bound.count(t->name);
      bound[t->name] = true;
      collect_free(t->kids[0], bound, found);
      if (!was) bound.erase(t->name);
      return;
    }
    default:
      for (const TermPtr& k : t->kids) collect_free(k, bound, found);
  }
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, int> ea, eb;
  int depth = 0;
  return alpha_equal_impl(a, b, ea, eb, depth);
}

bool has_free_vars(const TermPtr& t) {
  std::map<std::string, bool> bound;
  bool found = false;
  collect_free(t, bound, found);
  return found;
}

std::string to_string(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t->name;
    case Term::Kind::Pred: {
      std::string out = t->name + "(";
      for (std::size_t i = 0; i < t->kids.size(); ++i)
        out += (i ? ", " : "") + to_string(t->kids[i]);
      return out + ")";
    }
    case Term::Kind::RoleEq:
      return t->name + "(" + to_string(t->kids[0]) + ") = " +
             to_string(t->kids[1]);
    case Term::Kind::And:
      return to_string(t->kids[0]) + " ∧ " + to_string(t->kids[1]);
    case Term::Kind::Not:
      return "¬" + to_string(t->kids[0]);
    case Term::Kind::Exists:
      return "∃" + t->name + "[" + to_string(t->kids[0]) + "]";
    case Term::Kind::Lambda:
      return "λ" + t->name + ". " + to_string(t->kids[0]);
    case Term::Kind::App:
      return "(" + to_string(t->kids[0]) + ")(" + to_string(t->kids[1]) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Utterance trees.

namespace {

TreeNode parse_node(Scanner& sc, int& gesture_count) {
  sc.expect_punct('(');
  std::string head = sc.expect_ident("node label");
  TreeNode node;
  node.label = head;
  if (head == "lex") {
    node.lemma = sc.expect_ident("lemma");
    sc.expect_punct(')');
    return node;
  }
  if (head == "gesture") {
    GestureSpec g;
    g.annotation_ref = sc.expect_ident("annotation id");
    std::string mode = sc.expect_ident("gesture mode");
    auto m = mode_from_string(mode);
    if (!m) sc.fail("unknown gesture mode '" + mode + "'");
    g.mode = *m;
    if (sc.peek().kind == Scanner::Token::Kind::Ident &&
        sc.peek().text == "perspectival") {
      sc.next();
      g.perspectival = true;
    }
    sc.expect_punct(')');
    node.gesture = std::move(g);
    if (++gesture_count > 1)
      sc.fail("a multimodal utterance carries one gesture only");
    return node;
  }
  node.multimodal = (head == "mm");
  while (!sc.accept_punct(')')) {
    node.children.push_back(parse_node(sc, gesture_count));
    if (node.children.size() > 2)
      sc.fail("derivation nodes are at most binary");
  }
  if (node.children.empty())
    sc.fail("phrase node '" + head + "' has no children");
  if (node.multimodal) {
    if (node.children.size() != 2)
      sc.fail("mm node needs a speech daughter and a gesture daughter");
    int gestures = node.children[0].is_gesture() + node.children[1].is_gesture();
    if (gestures != 1)
      sc.fail("mm node needs exactly one gesture daughter");
  } else {
    for (const TreeNode& c : node.children)
      if (c.is_gesture())
        sc.fail("gesture leaves attach at mm nodes only");
  }
  return node;
}

}  // namespace

DerivationTree parse_utterance(std::string_view text) {
  Scanner sc(text);
  int gesture_count = 0;
  DerivationTree tree{parse_node(sc, gesture_count)};
  if (!sc.at_end()) sc.fail("trailing input after utterance");
  return tree;
}

DerivationTree load_utterance(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw error(errc::io_error, "cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_utterance(buf.str());
}

namespace {

void bind_node(TreeNode& node,
               const std::vector<KinematicAnnotation>& annotations) {
  if (node.gesture) {
    const KinematicAnnotation& ann =
        find_annotation(annotations, node.gesture->annotation_ref);
    node.gesture->model =
        vectorize(ann, node.gesture->mode, node.gesture->perspectival);
  }
  for (TreeNode& c : node.children) bind_node(c, annotations);
}

bool strip_node(const TreeNode& node, TreeNode& out) {
  if (node.is_gesture()) return false;
  out = TreeNode{};
  out.label = node.label;
  out.lemma = node.lemma;
  for (const TreeNode& c : node.children) {
    TreeNode stripped;
    if (strip_node(c, stripped)) out.children.push_back(std::move(stripped));
  }
  // An mm node loses its gesture daughter and collapses onto speech.
  if (node.multimodal && out.children.size() == 1) {
    TreeNode speech = std::move(out.children[0]);
    return (out = std::move(speech), true);
  }
  out.multimodal = false;
  return true;
}

const GestureSpec* find_gesture_node(const TreeNode& node) {
  if (node.gesture) return &*node.gesture;
  for (const TreeNode& c : node.children)
    if (const GestureSpec* g = find_gesture_node(c)) return g;
  return nullptr;
}

}  // namespace

void bind_gestures(DerivationTree& tree,
                   const std::vector<KinematicAnnotation>& annotations) {
  bind_node(tree.root, annotations);
}

DerivationTree without_gesture(const DerivationTree& tree) {
  TreeNode root;
  if (!strip_node(tree.root, root))
    throw error(errc::invalid_argument, "utterance has no speech content");
  return DerivationTree{std::move(root)};
}

const GestureSpec* find_gesture(const DerivationTree& tree) {
  return find_gesture_node(tree.root);
}

namespace {

const TreeNode* find_mm(const TreeNode& node) {
  if (node.multimodal) return &node;
  for (const TreeNode& c : node.children)
    if (const TreeNode* mm = find_mm(c)) return mm;
  return nullptr;
}

const std::string* leftmost_lemma(const TreeNode& node) {
  if (node.lemma) return &*node.lemma;
  for (const TreeNode& c : node.children)
    if (const std::string* l = leftmost_lemma(c)) return l;
  return nullptr;
}

}  // namespace

std::optional<std::string> affiliate_of(const DerivationTree& tree) {
  const TreeNode* mm = find_mm(tree.root);
  if (!mm) return std::nullopt;
  for (const TreeNode& c : mm->children) {
    if (c.is_gesture()) continue;
    if (const std::string* l = leftmost_lemma(c)) return *l;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Composition.

bool check_domain(Mode mode, SpaceKind affiliate_space) {
  if (affiliate_space == SpaceKind::Event)
    return mode == Mode::Drawing || mode == Mode::Acting;
  return mode == Mode::Drawing || mode == Mode::Molding;
}

namespace {

struct NodeSem {
  TermPtr ling;  // may be null (gesture leaves)
  std::vector<VisTerm> vis;
  const GestureSpec* pending_gesture = nullptr;
};

TermPtr verb_term(const LexEntry& e) {
  TermPtr ev = t_var("e", ty_event());
  TermPtr body = t_pred(e.lemma, {ev});
  for (const std::string& role : e.roles)
    body = t_and(body, t_role_eq(role, ev, t_var(role, ty_entity())));
  // Later roles are abstracted last, so the object applies first:
  // roles [agent, theme] yields lambda theme. lambda agent. lambda e. [...].
  TermPtr term = t_lambda("e", ty_event(), body);
  for (const std::string& role : e.roles) term = t_lambda(role, ty_entity(), term);
  return term;
}

NodeSem lex_sem(const LexEntry& e) {
  NodeSem sem;
  if (e.category == "v") {
    sem.ling = verb_term(e);
  } else {
    sem.ling = t_const(e.lemma);
  }
  for (const VisConstraint& v : e.vis) {
    VisTerm vt;
    vt.kind = v.kind;
    vt.target = v.target == "self" ? e.lemma : v.target;
    vt.event_anchored = (v.kind == VisKind::PlacePath);
    sem.vis.push_back(std::move(vt));
  }
  return sem;
}

NodeSem compose_node(const TreeNode& node, const Lexicon& lex) {
  if (node.is_lex()) return lex_sem(lex.lookup(*node.lemma));
  if (node.is_gesture()) {
    NodeSem sem;
    sem.pending_gesture = &*node.gesture;
    return sem;
  }

  std::vector<NodeSem> kids;
  for (const TreeNode& c : node.children)
    kids.push_back(compose_node(c, lex));

  if (node.multimodal) {
    NodeSem* speech = kids[0].pending_gesture ? &kids[1] : &kids[0];
    NodeSem* gest = kids[0].pending_gesture ? &kids[0] : &kids[1];
    const GestureSpec& spec = *gest->pending_gesture;
    if (!spec.model)
      throw error(errc::invalid_argument,
                  "gesture '" + spec.annotation_ref +
                      "' is unbound; call bind_gestures first");
    // Rule: the gesture applies to a compatible vis meaning of its
    // affiliate, provided the model is in that meaning's domain.
    for (VisTerm& vt : speech->vis) {
      if (vt.fill) continue;
      SpaceKind space = vt.kind == VisKind::PlacePath ? SpaceKind::Event
                                                      : SpaceKind::Entity;
      if (!check_domain(spec.mode, space)) continue;
      GestureFill fill;
      fill.model = *spec.model;
      if (spec.model->quoted_handshape) fill.hsq = spec.model->hs;
      vt.fill = std::move(fill);
      NodeSem out = std::move(*speech);
      out.pending_gesture = nullptr;
      return out;
    }
    throw error(errc::mode_mismatch,
                "no vis meaning of the affiliate admits a " +
                    to_string(spec.mode) + " gesture");
  }

  NodeSem out;
  for (NodeSem& k : kids) {
    if (k.pending_gesture)
      throw error(errc::invalid_argument,
                  "gesture leaves attach at mm nodes only");
    for (VisTerm& vt : k.vis) out.vis.push_back(std::move(vt));
  }
  if (kids.size() == 1) {
    out.ling = kids[0].ling;
    return out;
  }
  TermPtr a = kids[0].ling;
  TermPtr b = kids[1].ling;
  if (!a || !b) {
    out.ling = a ? a : b;
    return out;
  }
  TypePtr ta = type_of(a);
  TypePtr tb = type_of(b);
  if (ta->kind == Type::Kind::Fun && type_equal(ta->param, tb)) {
    out.ling = beta_reduce(t_app(a, b));
  } else if (tb->kind == Type::Kind::Fun && type_equal(tb->param, ta)) {
    out.ling = beta_reduce(t_app(b, a));
  } else {
    throw error(errc::type_error,
                "type clash at node '" + node.label + "': " + to_string(ta) +
                    " vs " + to_string(tb));
  }
  return out;
}

}  // namespace

LogicalForm compose(const DerivationTree& tree, const Lexicon& lex) {
  NodeSem sem = compose_node(tree.root, lex);
  if (sem.pending_gesture)
    throw error(errc::invalid_argument, "utterance has no speech content");
  if (!sem.ling)
    throw error(errc::invalid_argument, "utterance has no ling dimension");

  LogicalForm lf;
  TypePtr t = type_of(sem.ling);
  if (t->kind == Type::Kind::Fun && t->param->kind == Type::Kind::Event &&
      t->result->kind == Type::Kind::Truth) {
    // Existential closure over the event variable.
    lf.ling = t_exists("e", ty_event(),
                       beta_reduce(t_app(sem.ling, t_var("e", ty_event()))));
  } else if (t->kind == Type::Kind::Truth) {
    lf.ling = sem.ling;
  } else {
    throw error(errc::type_error,
                "utterance does not reduce to a sentence (type " +
                    to_string(t) + ")");
  }
  lf.vis = std::move(sem.vis);
  // Remaining free vector variables are closed existentially.
  for (VisTerm& vt : lf.vis)
    if (!vt.fill) vt.closed = true;
  return lf;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::True: return "true";
    case Outcome::False: return "false";
    case Outcome::Mismatch: return "mismatch";
  }
  return "?";
}

std::string to_string(const VisTerm& v) {
  std::string kind = v.kind == VisKind::PlacePath ? "placepath" : "axis";
  if (v.fill) {
    std::string inner = traj_to_string(v.fill->model) + " · k";
    if (v.fill->hsq) inner += " ∧ HSQ(" + v.fill->hsq->code + ")";
    return kind + "(" + v.target + ", [" + inner + "])";
  }
  std::string var = v.kind == VisKind::PlacePath ? "v" : "u";
  std::string body = kind + "(" + v.target + ", " + var + ")";
  if (v.closed) return "∃" + var + "[" + body + "]";
  return "λ" + var + "[" + body + "]";
}

std::string to_string(const LogicalForm& lf) {
  std::string out = "[ling] " + to_string(lf.ling) + "\n[vis]  {";
  for (std::size_t i = 0; i < lf.vis.size(); ++i)
    out += (i ? ", " : "") + to_string(lf.vis[i]);
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

using Env = std::map<std::string, std::string>;

std::string value_of(const TermPtr& t, const Env& env) {
  if (t->kind == Term::Kind::Const) return t->name;
  if (t->kind == Term::Kind::Var) {
    auto it = env.find(t->name);
    if (it == env.end())
      throw error(errc::closure_error,
                  "unbound variable '" + t->name + "' at evaluation");
    return it->second;
  }
  throw error(errc::type_error, "expected an individual-denoting term");
}

bool eval_term(const TermPtr& t, const Scene& scene, Env& env) {
  switch (t->kind) {
    case Term::Kind::Pred: {
      if (t->kids.size() != 1)
        throw error(errc::type_error, "predicates here are unary");
      std::string id = value_of(t->kids[0], env);
      if (const Event* ev = scene.find_event(id))
        return ev->predicate == t->name;
      if (const Entity* en = scene.find_entity(id))
        return en->sort == t->name;
      return false;
    }
    case Term::Kind::RoleEq: {
      std::string ev_id = value_of(t->kids[0], env);
      std::string val = value_of(t->kids[1], env);
      const Event* ev = scene.find_event(ev_id);
      if (!ev) return false;
      auto it = ev->roles.find(t->name);
      return it != ev->roles.end() && it->second == val;
    }
    case Term::Kind::And:
      return eval_term(t->kids[0], scene, env) &&
             eval_term(t->kids[1], scene, env);
    case Term::Kind::Not:
      return !eval_term(t->kids[0], scene, env);
    case Term::Kind::Exists: {
      bool over_events = t->var_type->kind == Type::Kind::Event;
      if (over_events) {
        for (const Event& ev : scene.events) {
          env[t->name] = ev.id;
          if (eval_term(t->kids[0], scene, env)) {
            env.erase(t->name);
            return true;
          }
        }
      } else {
        for (const Entity& en : scene.entities) {
          env[t->name] = en.id;
          if (eval_term(t->kids[0], scene, env)) {
            env.erase(t->name);
            return true;
          }
        }
      }
      env.erase(t->name);
      return false;
    }
    default:
      throw error(errc::type_error,
                  "term does not evaluate to a truth value");
  }
}

struct VisOutcome {
  bool ok = true;
  bool embed_failed = false;
  std::string note;
};

VisOutcome check_vis(const VisTerm& v, const Scene& scene, const Env& env,
                     const EmbedOptions& opts) {
  VisOutcome out;
  if (v.kind == VisKind::PlacePath) {
    std::string ev_id;
    auto it = env.find(v.target);
    if (it != env.end()) {
      ev_id = it->second;
    } else if (!env.empty()) {
      ev_id = env.begin()->second;
    }
    const Event* ev = ev_id.empty() ? nullptr : scene.find_event(ev_id);
    if (!ev) {
      out.ok = false;
      out.note = to_string(v) + ": no event witness";
      return out;
    }
    if (!v.fill) {
      out.ok = ev->place_path.has_value();
      if (!out.ok) out.note = to_string(v) + ": event has no place path";
      return out;
    }
    if (!ev->place_path) {
      out.ok = false;
      out.embed_failed = true;
      out.note = to_string(v) + ": event projects no place path";
      return out;
    }
    EmbeddingResult r = embed(v.fill->model, vecspace_of(scene, ev_id), opts);
    if (!r.success) {
      out.ok = false;
      out.embed_failed = true;
      out.note = to_string(v) + ": " + r.reason;
      return out;
    }
    if (v.fill->hsq) {
      HsqPredicate hsq{*v.fill->hsq};
      if (!hsq.matches(ev->manner_handshape)) {
        out.ok = false;
        out.note = "HSQ(" + v.fill->hsq->code + "): event manner is " +
                   (ev->manner_handshape ? ev->manner_handshape->code
                                         : std::string("unrecorded"));
        return out;
      }
    }
    return out;
  }

  // Axis constraint over an entity constant, or over a role resolved
  // through the witness event.
  const Entity* en = scene.find_entity(v.target);
  if (!en) {
    for (const auto& [var, id] : env) {
      (void)var;
      if (const Event* ev = scene.find_event(id)) {
        auto role = ev->roles.find(v.target);
        if (role != ev->roles.end()) {
          en = scene.find_entity(role->second);
          break;
        }
      }
    }
  }
  if (!en) {
    out.ok = false;
    out.note = to_string(v) + ": no entity '" + v.target + "'";
    return out;
  }
  if (!v.fill) {
    out.ok = !en->axes.empty();
    if (!out.ok) out.note = to_string(v) + ": entity has no axis";
    return out;
  }
  if (en->axes.empty()) {
    out.ok = false;
    out.embed_failed = true;
    out.note = to_string(v) + ": entity projects no axis path";
    return out;
  }
  EmbeddingResult r = embed(v.fill->model, vecspace_of(scene, en->id), opts);
  if (!r.success) {
    out.ok = false;
    out.embed_failed = true;
    out.note = to_string(v) + ": " + r.reason;
  }
  return out;
}

}  // namespace

Verdict evaluate(const LogicalForm& lf, const Scene& scene,
                 const EmbedOptions& opts) {
  if (!lf.ling)
    throw error(errc::closure_error, "logical form has no ling dimension");
  if (has_free_vars(lf.ling))
    throw error(errc::closure_error,
                "logical form is not closed; apply existential closure");
  if (type_of(lf.ling)->kind != Type::Kind::Truth)
    throw error(errc::closure_error, "logical form is not a sentence");

  // Peel the existential prefix so vis constraints see the witnesses.
  std::vector<std::pair<std::string, bool>> prefix;  // (var, is_event)
  TermPtr body = lf.ling;
  while (body->kind == Term::Kind::Exists) {
    prefix.emplace_back(body->name,
                        body->var_type->kind == Type::Kind::Event);
    body = body->kids[0];
  }

  std::vector<Env> assignments{{}};
  for (const auto& [var, is_event] : prefix) {
    std::vector<Env> next;
    for (const Env& env : assignments) {
      if (is_event) {
        for (const Event& ev : scene.events) {
          Env e = env;
          e[var] = ev.id;
          next.push_back(std::move(e));
        }
      } else {
        for (const Entity& en : scene.entities) {
          Env e = env;
          e[var] = en.id;
          next.push_back(std::move(e));
        }
      }
    }
    assignments = std::move(next);
  }

  bool any_ling_witness = false;
  bool all_embed_failed = true;
  bool any_filled = std::any_of(lf.vis.begin(), lf.vis.end(),
                                [](const VisTerm& v) { return v.fill.has_value(); });
  std::string first_note;

  for (Env& env : assignments) {
    if (!eval_term(body, scene, env)) continue;
    any_ling_witness = true;
    bool ok = true;
    bool embed_failed = false;
    for (const VisTerm& v : lf.vis) {
      VisOutcome vo = check_vis(v, scene, env, opts);
      if (!vo.ok) {
        ok = false;
        embed_failed |= vo.embed_failed;
        if (first_note.empty()) first_note = vo.note;
      }
    }
    if (ok) {
      Verdict verdict;
      verdict.outcome = Outcome::True;
      verdict.witness = env;
      return verdict;
    }
    if (!embed_failed) all_embed_failed = false;
  }

  Verdict verdict;
  if (!any_ling_witness) {
    verdict.outcome = Outcome::False;
    verdict.diagnostics = "no witness satisfies the linguistic content";
  } else if (any_filled && all_embed_failed) {
    verdict.outcome = Outcome::Mismatch;
    verdict.diagnostics = first_note;
  } else {
    verdict.outcome = Outcome::False;
    verdict.diagnostics = first_note;
  }
  return verdict;
}

}  // namespace gesem
