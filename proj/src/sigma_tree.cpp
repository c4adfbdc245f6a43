#include "gfix/sigma_tree.hpp"

#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gfix::tree {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t ptr_hash(const void* p) { return std::hash<const void*>{}(p); }

struct NodeHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};
struct NodeEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->kind == b->kind && a->sym == b->sym && a->elem == b->elem && a->kids == b->kids;
  }
};
struct ElemHash {
  std::size_t operator()(const Elem* e) const { return e->hash; }
};
struct ElemEq {
  bool operator()(const Elem* a, const Elem* b) const {
    return a->kind == b->kind && a->atom == b->atom && a->inner == b->inner && a->tree == b->tree;
  }
};

struct PairHash {
  template <class A>
  std::size_t operator()(const std::pair<A, int>& p) const {
    return mix(ptr_hash(p.first), static_cast<std::size_t>(p.second));
  }
};

class Store {
 public:
  Tree node(Node n) {
    n.hash = mix(mix(static_cast<std::size_t>(n.kind), static_cast<std::size_t>(n.sym + 7)), ptr_hash(n.elem));
    for (Tree k : n.kids) n.hash = mix(n.hash, ptr_hash(k));
    std::lock_guard lock(mu_);
    if (auto it = nodes_.find(&n); it != nodes_.end()) return *it;
    node_pool_.push_back(std::move(n));
    const Node* p = &node_pool_.back();
    nodes_.insert(p);
    return p;
  }

  E elem(Elem e) {
    e.hash = mix(mix(static_cast<std::size_t>(e.kind) + 101, static_cast<std::size_t>(e.atom)),
                 mix(ptr_hash(e.inner), ptr_hash(e.tree)));
    std::lock_guard lock(mu_);
    if (auto it = elems_.find(&e); it != elems_.end()) return *it;
    elem_pool_.push_back(e);
    const Elem* p = &elem_pool_.back();
    elems_.insert(p);
    return p;
  }

  template <class Key, class Val, class F>
  Val memo(std::unordered_map<Key, Val, PairHash>& table, const Key& key, F compute) {
    {
      std::lock_guard lock(memo_mu_);
      if (auto it = table.find(key); it != table.end()) return it->second;
    }
    Val v = compute();
    std::lock_guard lock(memo_mu_);
    table.emplace(key, v);
    return v;
  }

  std::size_t size() {
    std::lock_guard lock(mu_);
    return nodes_.size() + elems_.size();
  }

  std::unordered_map<std::pair<Tree, int>, Tree, PairHash> trunc_memo;
  std::unordered_map<std::pair<E, int>, E, PairHash> norm_memo;

 private:
  std::mutex mu_, memo_mu_;
  std::deque<Node> node_pool_;
  std::deque<Elem> elem_pool_;
  std::unordered_set<const Node*, NodeHash, NodeEq> nodes_;
  std::unordered_set<const Elem*, ElemHash, ElemEq> elems_;
};

Store& store() {
  static Store s;
  return s;
}

}  // namespace

E atom(int i) {
  Elem e{};
  e.kind = Elem::Kind::atom;
  e.atom = i;
  return store().elem(e);
}

E inl(E x) {
  Elem e{};
  e.kind = Elem::Kind::inl;
  e.inner = x;
  return store().elem(e);
}

E inr(E x) {
  Elem e{};
  e.kind = Elem::Kind::inr;
  e.inner = x;
  return store().elem(e);
}

E guard(Tree t) {
  Elem e{};
  e.kind = Elem::Kind::guard;
  e.tree = t;
  return store().elem(e);
}

Tree op(int sym, std::vector<Tree> kids) {
  Node n{};
  n.kind = Node::Kind::op;
  n.sym = sym;
  n.kids = std::move(kids);
  return store().node(std::move(n));
}

Tree var(E e) {
  Node n{};
  n.kind = Node::Kind::var;
  n.elem = e;
  return store().node(std::move(n));
}

Tree cut() {
  static Tree c = [] {
    Node n{};
    n.kind = Node::Kind::cut;
    return store().node(std::move(n));
  }();
  return c;
}

std::size_t store_size() { return store().size(); }

E norm(E e, int k) {
  switch (e->kind) {
    case Elem::Kind::atom:
      return e;
    case Elem::Kind::inl:
    case Elem::Kind::inr: {
      E in = norm(e->inner, k);
      if (in == e->inner) return e;
      return e->kind == Elem::Kind::inl ? inl(in) : inr(in);
    }
    case Elem::Kind::guard:
      return store().memo(store().norm_memo, std::pair<E, int>{e, k}, [&] {
        Tree t = trunc(e->tree, k);
        return t == e->tree ? e : guard(t);
      });
  }
  return e;
}

Tree trunc(Tree t, int k) {
  if (k <= 0) return cut();
  switch (t->kind) {
    case Node::Kind::cut:
      return t;
    case Node::Kind::var: {
      E e = norm(t->elem, k);
      return e == t->elem ? t : var(e);
    }
    case Node::Kind::op:
      if (t->kids.empty()) return t;
      if (k == 1) return cut();
      return store().memo(store().trunc_memo, std::pair<Tree, int>{t, k}, [&] {
        std::vector<Tree> kids;
        kids.reserve(t->kids.size());
        for (Tree c : t->kids) kids.push_back(trunc(c, k - 1));
        return op(t->sym, std::move(kids));
      });
  }
  return t;
}

Tree subst(Tree t, int k, const Subst& s) {
  std::unordered_map<std::pair<Tree, int>, Tree, PairHash> memo;
  std::function<Tree(Tree, int)> go = [&](Tree u, int b) -> Tree {
    if (b <= 0) return cut();
    switch (u->kind) {
      case Node::Kind::cut:
        return u;
      case Node::Kind::var:
        return s(u->elem, b);
      case Node::Kind::op: {
        if (u->kids.empty()) return u;
        if (b == 1) return cut();
        if (auto it = memo.find({u, b}); it != memo.end()) return it->second;
        std::vector<Tree> kids;
        kids.reserve(u->kids.size());
        for (Tree c : u->kids) kids.push_back(go(c, b - 1));
        Tree r = op(u->sym, std::move(kids));
        memo.emplace(std::pair<Tree, int>{u, b}, r);
        return r;
      }
    }
    return u;
  };
  return go(t, k);
}

// ------------------------------------------------------------ signatures

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].arity < 0) throw std::invalid_argument("negative arity for " + symbols_[i].name);
    for (std::size_t j = 0; j < i; ++j)
      if (symbols_[i].name == symbols_[j].name)
        throw std::invalid_argument("duplicate operation symbol " + symbols_[i].name);
  }
}

Signature Signature::standard() { return Signature({{"c", 0}, {"s", 1}, {"*", 2}}); }

std::optional<int> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int Signature::constant() const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].arity == 0) return static_cast<int>(i);
  throw std::invalid_argument("signature has no constant symbol");
}

std::string print(Tree t, const Signature& sig, const ElemPrinter& leaf) {
  switch (t->kind) {
    case Node::Kind::cut:
      return "□";
    case Node::Kind::var:
      return leaf(t->elem);
    case Node::Kind::op: {
      std::string s = sig.at(t->sym).name;
      if (t->kids.empty()) return s;
      s += '(';
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        if (i) s += ",";
        s += print(t->kids[i], sig, leaf);
      }
      return s + ')';
    }
  }
  return "?";
}

std::string print_elem(E e, const Signature& sig) {
  switch (e->kind) {
    case Elem::Kind::atom:
      return "a" + std::to_string(e->atom);
    case Elem::Kind::inl:
      return "inl(" + print_elem(e->inner, sig) + ")";
    case Elem::Kind::inr:
      return "inr(" + print_elem(e->inner, sig) + ")";
    case Elem::Kind::guard:
      return ">(" + print(e->tree, sig) + ")";
  }
  return "?";
}

std::string print(Tree t, const Signature& sig) {
  return print(t, sig, [&](E e) { return print_elem(e, sig); });
}

// ------------------------------------------------------------ equations

std::string EquationSystem::print_body(Tree t) const {
  return print(t, sig, [&](E e) -> std::string {
    if (e->kind == Elem::Kind::inl && e->inner->kind == Elem::Kind::atom)
      return vars.at(static_cast<std::size_t>(e->inner->atom));
    if (e->kind == Elem::Kind::inr && e->inner->kind == Elem::Kind::atom)
      return params.at(static_cast<std::size_t>(e->inner->atom));
    return print_elem(e, sig);
  });
}

std::string EquationSystem::print_solution(Tree t) const {
  return print(t, sig, [&](E e) -> std::string {
    if (e->kind == Elem::Kind::atom) return params.at(static_cast<std::size_t>(e->atom));
    return print_elem(e, sig);
  });
}

void check_guarded(const EquationSystem& sys) {
  for (std::size_t i = 0; i < sys.bodies.size(); ++i) {
    Tree b = sys.bodies[i];
    if (b->kind == Node::Kind::var && b->elem->kind == Elem::Kind::inl) throw GuardednessError(sys.vars[i], sys.print_body(b));
    if (b->kind == Node::Kind::cut) throw GuardednessError(sys.vars[i], "□");
  }
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

std::vector<std::string> name_list(const std::string& s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  for (auto& n : split(s, ',')) {
    if (n.empty()) throw ParseError("empty name in list '" + s + "'");
    out.push_back(n);
  }
  return out;
}

class TermParser {
 public:
  TermParser(std::string_view text, const EquationSystem& sys, int line)
      : s_(text), sys_(sys), line_(line) {}

  Tree parse() {
    Tree t = term();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string name() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != ',')
      ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }
  Tree term() {
    std::string n = name();
    skip();
    bool call = pos_ < s_.size() && s_[pos_] == '(';
    std::vector<Tree> kids;
    if (call) {
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
      } else {
        for (;;) {
          kids.push_back(term());
          skip();
          if (pos_ < s_.size() && s_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < s_.size() && s_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    if (auto sym = sys_.sig.find(n)) {
      int ar = sys_.sig.at(*sym).arity;
      if (static_cast<int>(kids.size()) != ar)
        fail("symbol " + n + " has arity " + std::to_string(ar) + " but is applied to " + std::to_string(kids.size()));
      return op(*sym, std::move(kids));
    }
    if (call) fail("unknown operation symbol " + n);
    for (std::size_t i = 0; i < sys_.vars.size(); ++i)
      if (sys_.vars[i] == n) return var(inl(atom(static_cast<int>(i))));
    for (std::size_t i = 0; i < sys_.params.size(); ++i)
      if (sys_.params[i] == n) return var(inr(atom(static_cast<int>(i))));
    fail("unknown name " + n);
  }

  std::string_view s_;
  const EquationSystem& sys_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

EquationSystem parse_system(std::string_view text) {
  EquationSystem sys;
  std::vector<std::pair<int, std::string>> lines;
  {
    std::string line;
    std::istringstream in{std::string(text)};
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      if (!trim(line).empty()) lines.emplace_back(no, trim(line));
    }
  }
  if (lines.empty()) throw ParseError("empty input: expected a header line");

  bool have_sig = false;
  std::vector<Symbol> symbols;
  for (const auto& part : split(lines[0].second, ';')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos) throw ParseError("header: expected 'key: value' in '" + part + "'");
    std::string key = trim(std::string_view(part).substr(0, colon));
    std::string val = trim(std::string_view(part).substr(colon + 1));
    if (key == "sig") {
      have_sig = true;
      for (const auto& sym : name_list(val)) {
        auto c = sym.rfind(':');
        if (c == std::string::npos) throw ParseError("header: symbol '" + sym + "' needs an arity");
        try {
          symbols.push_back({trim(std::string_view(sym).substr(0, c)), std::stoi(sym.substr(c + 1))});
        } catch (const std::logic_error&) {
          throw ParseError("header: bad arity in '" + sym + "'");
        }
      }
    } else if (key == "vars") {
      sys.vars = name_list(val);
    } else if (key == "params") {
      sys.params = name_list(val);
    } else {
      throw ParseError("header: unknown key '" + key + "'");
    }
  }
  if (!have_sig) throw ParseError("header: missing 'sig:'");
  try {
    sys.sig = Signature(symbols);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("header: ") + e.what());
  }
  for (const auto& v : sys.vars)
    if (sys.sig.find(v)) throw ParseError("variable " + v + " clashes with an operation symbol");
  for (const auto& p : sys.params) {
    if (sys.sig.find(p)) throw ParseError("parameter " + p + " clashes with an operation symbol");
    for (const auto& v : sys.vars)
      if (v == p) throw ParseError("name " + p + " is both a variable and a parameter");
  }

  sys.bodies.assign(sys.vars.size(), nullptr);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& [no, text] = lines[l];
    auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(no) + ": expected 'x = term'");
    std::string lhs = trim(std::string_view(text).substr(0, eq));
    std::size_t idx = sys.vars.size();
    for (std::size_t i = 0; i < sys.vars.size(); ++i)
      if (sys.vars[i] == lhs) idx = i;
    if (idx == sys.vars.size()) throw ParseError("line " + std::to_string(no) + ": " + lhs + " is not a declared variable");
    if (sys.bodies[idx]) throw ParseError("line " + std::to_string(no) + ": second equation for " + lhs);
    sys.bodies[idx] = TermParser(std::string_view(text).substr(eq + 1), sys, no).parse();
  }
  for (std::size_t i = 0; i < sys.vars.size(); ++i)
    if (!sys.bodies[i]) throw ParseError("no equation for variable " + sys.vars[i]);
  check_guarded(sys);
  return sys;
}

namespace {

// Lazy budgeted solution: sol(x, b) substitutes into body_x, recursing
// with strictly smaller budgets below the guarding operation.
class Solver {
 public:
  explicit Solver(const EquationSystem& sys) : sys_(sys) {}

  Tree sol(int x, int b) {
    if (b <= 0) return cut();
    if (auto it = memo_.find({x, b}); it != memo_.end()) return it->second;
    Tree r = subst(sys_.bodies[static_cast<std::size_t>(x)], b, [&](E e, int r2) -> Tree {
      if (e->kind == Elem::Kind::inl) return sol(e->inner->atom, r2);
      return var(e->inner);
    });
    memo_.emplace(std::pair<int, int>{x, b}, r);
    return r;
  }

 private:
  const EquationSystem& sys_;
  std::map<std::pair<int, int>, Tree> memo_;
};

}  // namespace

std::vector<Tree> solve(const EquationSystem& sys, int depth) {
  check_guarded(sys);
  Solver s(sys);
  std::vector<Tree> out;
  for (std::size_t i = 0; i < sys.vars.size(); ++i) out.push_back(s.sol(static_cast<int>(i), depth));
  return out;
}

bool check_solution_square(const EquationSystem& sys, const std::vector<Tree>& cand, int depth) {
  if (cand.size() != sys.vars.size()) return false;
  for (std::size_t i = 0; i < sys.vars.size(); ++i) {
    Tree lhs = subst(sys.bodies[i], depth, [&](E e, int r) -> Tree {
      if (e->kind == Elem::Kind::inl) return trunc(cand[static_cast<std::size_t>(e->inner->atom)], r);
      return var(e->inner);
    });
    if (lhs != trunc(cand[i], depth)) return false;
  }
  return true;
}

Factorisation guardedness_factor(const TaggedSystem& f) {
  Factorisation out;
  out.flat.sig = f.sig;
  out.flat.vars = f.vars;
  out.flat.params = f.params;
  const int nx = static_cast<int>(f.vars.size());
  const int ny = static_cast<int>(f.params.size());
  if (f.rhs.size() != f.vars.size()) throw MalformedTagging("one right-hand side per variable expected");

  std::function<Tree(Tree)> retag = [&](Tree t) -> Tree {
    switch (t->kind) {
      case Node::Kind::cut:
        return t;
      case Node::Kind::var:
        if (t->elem->kind != Elem::Kind::atom || t->elem->atom < 0 || t->elem->atom >= nx)
          throw MalformedTagging("guarded tree leaf must be a recursion variable");
        return var(inl(t->elem));
      case Node::Kind::op: {
        std::vector<Tree> kids;
        for (Tree c : t->kids) kids.push_back(retag(c));
        return op(t->sym, std::move(kids));
      }
    }
    return t;
  };
  std::function<Tree(Tree)> flatten = [&](Tree t) -> Tree {
    switch (t->kind) {
      case Node::Kind::cut:
        return t;
      case Node::Kind::var: {
        E e = t->elem;
        if (e->kind == Elem::Kind::inl && e->inner->kind == Elem::Kind::guard) {
          if (!guarded(e->inner->tree)) throw MalformedTagging("S'X leaf is not operation-rooted");
          return retag(e->inner->tree);
        }
        if (e->kind == Elem::Kind::inr && e->inner->kind == Elem::Kind::atom && e->inner->atom >= 0 &&
            e->inner->atom < ny)
          return t;
        throw MalformedTagging("leaf must be tagged S'X or Y");
      }
      case Node::Kind::op: {
        std::vector<Tree> kids;
        for (Tree c : t->kids) kids.push_back(flatten(c));
        return op(t->sym, std::move(kids));
      }
    }
    return t;
  };
  for (Tree t : f.rhs) {
    Tree b = flatten(t);
    out.flat.bodies.push_back(b);
    out.certificate.push_back(guarded(b) ? Summand::operation : Summand::parameter);
  }
  return out;
}

std::vector<Tree> dagger_citm(const TaggedSystem& f, int depth) {
  return solve(guardedness_factor(f).flat, depth);
}

}  // namespace gfix::tree
