#include "fvsat/theories.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "fvsat/ordering.hpp"
#include "fvsat/unify.hpp"

namespace fvsat {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Slash, Arrow, Implies, Gt, Semi, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Tokenizes a single line (no newlines inside).
std::vector<Token> tokenize(const std::string& src, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    std::size_t col = i + 1;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back(Token{k, src.substr(i, len), line, col});
      i += len;
    };
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (src.compare(i, 2, "->") == 0) {
      push(Tok::Arrow, 2);
      continue;
    }
    if (src.compare(i, 2, "=>") == 0) {
      push(Tok::Implies, 2);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '>': push(Tok::Gt, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case '=': push(Tok::Eq, 1); continue;
      default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back(Token{Tok::End, "", line, src.size() + 1});
  return out;
}

bool is_variable_name(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, Signature& sig, bool declare_constants)
      : toks_(std::move(toks)), sig_(sig), declare_constants_(declare_constants) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(peek(), std::string("expected ") + what);
    return next();
  }

  void expect_end() { expect(Tok::End, "end of line"); }

  Term term(std::map<std::string, VarId>& vars) {
    const Token t = expect(Tok::Ident, "a term");
    if (is_variable_name(t.text)) {
      if (at(Tok::LParen)) fail(t, "variable '" + t.text + "' applied to arguments");
      auto it = vars.find(t.text);
      if (it == vars.end()) it = vars.emplace(t.text, fresh_var_id()).first;
      return Term::var(it->second);
    }
    std::vector<Term> args;
    if (at(Tok::LParen)) {
      next();
      args.push_back(term(vars));
      while (at(Tok::Comma)) {
        next();
        args.push_back(term(vars));
      }
      expect(Tok::RParen, "')'");
    }
    auto ar = sig_.arity(t.text);
    if (!ar) {
      if (!args.empty() || !declare_constants_) fail(t, "undeclared symbol '" + t.text + "'");
      sig_.declare_free_constant(t.text);
      ar = 0;
    }
    if (*ar != args.size())
      fail(t, "symbol '" + t.text + "' has arity " + std::to_string(*ar) + " but is applied to " +
                  std::to_string(args.size()) + " argument(s)");
    return Term::app(t.text, std::move(args));
  }

  /// Comma-separated terms up to (not including) a token of kind `stop`.
  std::vector<Term> term_list(std::map<std::string, VarId>& vars, Tok stop) {
    std::vector<Term> out;
    if (at(stop)) return out;
    out.push_back(term(vars));
    while (at(Tok::Comma)) {
      next();
      out.push_back(term(vars));
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature& sig_;
  bool declare_constants_;
};

enum class Section { None, Signature, Constants, Precedence, Rules, Deduction, Saturated };

const std::map<std::string, Section> kSections = {
    {"signature", Section::Signature}, {"constants", Section::Constants},
    {"precedence", Section::Precedence}, {"rules", Section::Rules},
    {"deduction", Section::Deduction}, {"saturated", Section::Saturated}};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(l);
  }
  return lines;
}

DeductionRule parse_deduction_rule(LineParser& p) {
  std::map<std::string, VarId> vars;
  DeductionRule r;
  auto premises = p.term_list(vars, Tok::Implies);
  p.expect(Tok::Implies, "'=>'");
  const Token at_rhs = p.peek();
  r.rhs = p.term(vars);
  r.lhs = TermSet(premises.begin(), premises.end());
  VarSet lv = fvsat::vars(r.lhs);
  for (auto v : fvsat::vars(r.rhs))
    if (!lv.count(v)) p.fail(at_rhs, "conclusion has a variable not occurring in the premises");
  return r;
}

bool is_constructor_shape(const DeductionRule& r, std::size_t arity) {
  if (r.rhs.is_var() || r.rhs.arity() != arity || r.lhs.size() != arity) return false;
  VarSet seen;
  for (const auto& a : r.rhs.args()) {
    if (!a.is_var() || !seen.insert(a.var_id()).second) return false;
    if (!r.lhs.count(a)) return false;
  }
  return true;
}

}  // namespace

TheoryBundle parse_theory(const std::string& text) {
  TheoryBundle b;
  Section section = Section::None;
  bool saw_precedence = false;
  std::size_t precedence_line = 0, precedence_col = 0;
  std::vector<std::pair<std::string, Token>> precedence;
  std::vector<std::pair<DeductionRule, Token>> deduction;
  std::vector<Token> rule_tokens;
  auto lines = split_lines(text);

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto toks = tokenize(lines[ln], ln + 1);
    if (toks.front().kind == Tok::End) continue;
    if (toks[0].kind == Tok::Ident && toks[0].text == "theory" && toks[1].kind == Tok::Ident) {
      LineParser p(toks, b.sig, false);
      p.next();
      b.name = p.next().text;
      p.expect_end();
      continue;
    }
    if (toks[0].kind == Tok::Ident && kSections.count(toks[0].text)) {
      // A keyword followed by '(' or '/' is a symbol use, not a header.
      Tok follow = toks[1].kind;
      if (follow != Tok::LParen && follow != Tok::Slash && follow != Tok::Comma &&
          follow != Tok::Implies && follow != Tok::Arrow) {
        section = kSections.at(toks[0].text);
        if (section == Section::Precedence && !saw_precedence) {
          saw_precedence = true;
          precedence_line = toks[0].line;
          precedence_col = toks[0].col;
        }
        toks.erase(toks.begin());
        if (toks.front().kind == Tok::End) continue;
      }
    }
    LineParser p(toks, b.sig, false);
    switch (section) {
      case Section::None:
        p.fail(p.peek(), "content before any section header");
      case Section::Signature:
        while (!p.at(Tok::End)) {
          const Token name = p.expect(Tok::Ident, "a symbol name");
          if (is_variable_name(name.text))
            p.fail(name, "symbol names must not start with an uppercase letter");
          p.expect(Tok::Slash, "'/'");
          const Token ar = p.expect(Tok::Ident, "an arity");
          if (!std::all_of(ar.text.begin(), ar.text.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            p.fail(ar, "arity must be a number");
          try {
            b.sig.declare(name.text, std::stoul(ar.text));
          } catch (const std::invalid_argument& e) {
            p.fail(name, e.what());
          }
          if (p.at(Tok::Comma)) p.next();
        }
        break;
      case Section::Constants:
        while (!p.at(Tok::End)) {
          const Token name = p.expect(Tok::Ident, "a constant name");
          if (is_variable_name(name.text))
            p.fail(name, "constant names must not start with an uppercase letter");
          if (b.sig.contains(name.text) && b.sig.info(intern(name.text)).kind == SymbolKind::Function)
            p.fail(name, "'" + name.text + "' is already a function symbol");
          b.sig.declare_free_constant(name.text);
          if (p.at(Tok::Comma)) p.next();
        }
        break;
      case Section::Precedence:
        while (!p.at(Tok::End)) {
          const Token name = p.expect(Tok::Ident, "a symbol name");
          precedence.emplace_back(name.text, name);
          if (p.at(Tok::Gt) || p.at(Tok::Comma)) p.next();
        }
        break;
      case Section::Rules: {
        std::map<std::string, VarId> vars;
        const Token at_lhs = p.peek();
        Term lhs = p.term(vars);
        p.expect(Tok::Arrow, "'->'");
        const Token at_rhs = p.peek();
        Term rhs = p.term(vars);
        p.expect_end();
        if (lhs.is_var()) p.fail(at_lhs, "rewrite rule with a variable left-hand side");
        VarSet lv = fvsat::vars(lhs);
        for (auto v : fvsat::vars(rhs))
          if (!lv.count(v))
            p.fail(at_rhs, "right-hand side has a variable not occurring on the left");
        b.R.rules.push_back(RewriteRule{lhs, rhs});
        rule_tokens.push_back(at_lhs);
        break;
      }
      case Section::Deduction: {
        const Token first = p.peek();
        DeductionRule r = parse_deduction_rule(p);
        p.expect_end();
        r.origin = "constructor";
        deduction.emplace_back(std::move(r), first);
        break;
      }
      case Section::Saturated: {
        DeductionRule r = parse_deduction_rule(p);
        p.expect_end();
        r.origin = "saturated";
        b.saturated.push_back(std::move(r));
        break;
      }
    }
  }

  for (const auto& [r, tok] : deduction) {
    if (r.rhs.is_var() || !is_constructor_shape(r, r.rhs.arity()))
      throw ParseError(tok.line, tok.col,
                       "deduction rule must have the shape X1, ..., Xn => f(X1, ..., Xn)");
    if (b.sig.info(r.rhs.sym()).kind != SymbolKind::Function)
      throw ParseError(tok.line, tok.col, "deduction rule for a free constant");
    b.L0.push_back(r);
  }

  if (saw_precedence) {
    std::vector<SymId> order;
    std::set<SymId> seen;
    for (const auto& [name, tok] : precedence) {
      auto ar = b.sig.arity(name);
      if (!ar) throw ParseError(tok.line, tok.col, "undeclared symbol '" + name + "' in precedence");
      SymId s = intern(name);
      if (b.sig.info(s).kind != SymbolKind::Function)
        throw ParseError(tok.line, tok.col, "free constant '" + name + "' in precedence");
      if (!seen.insert(s).second)
        throw ParseError(tok.line, tok.col, "'" + name + "' listed twice in precedence");
      order.push_back(s);
    }
    if (order.size() != b.sig.functions().size()) {
      std::string missing;
      for (auto f : b.sig.functions())
        if (!seen.count(f)) missing += (missing.empty() ? "" : ", ") + symbol_name(f);
      throw ParseError(precedence_line, precedence_col, "precedence does not list every function symbol (missing " + missing +
                                 ")");
    }
    b.sig.set_precedence(order);
  }
  for (std::size_t i = 0; i < b.R.rules.size(); ++i)
    if (!lpo_greater(b.R.rules[i].lhs, b.R.rules[i].rhs, b.sig))
      throw ParseError(rule_tokens[i].line, rule_tokens[i].col,
                       "rewrite rule is not oriented: " + to_string(b.R.rules[i]));
  return b;
}

namespace {

std::string rule_text(const RewriteRule& r) {
  auto names = canonical_var_names({r.lhs, r.rhs});
  return to_string(r.lhs, names) + " -> " + to_string(r.rhs, names);
}

}  // namespace

std::string serialize(const TheoryBundle& b) {
  std::ostringstream out;
  if (!b.name.empty()) out << "theory " << b.name << "\n";
  out << "signature\n";
  for (auto f : b.sig.functions()) out << "  " << symbol_name(f) << "/" << b.sig.info(f).arity << "\n";
  if (!b.sig.free_constants().empty()) {
    out << "constants\n ";
    for (auto c : b.sig.free_constants()) out << " " << symbol_name(c);
    out << "\n";
  }
  out << "precedence\n ";
  for (std::size_t i = 0; i < b.sig.functions().size(); ++i)
    out << (i ? " > " : " ") << symbol_name(b.sig.functions()[i]);
  out << "\n";
  if (!b.R.rules.empty()) {
    out << "rules\n";
    for (const auto& r : b.R.rules) out << "  " << rule_text(r) << "\n";
  }
  if (!b.L0.empty()) {
    out << "deduction\n";
    for (const auto& r : b.L0) out << "  " << to_string(r) << "\n";
  }
  if (!b.saturated.empty()) {
    out << "saturated\n";
    for (const auto& r : b.saturated) out << "  " << to_string(r) << "\n";
  }
  return out.str();
}

bool equivalent(const TheoryBundle& a, const TheoryBundle& b) {
  if (a.name != b.name) return false;
  auto sig_view = [](const Signature& s) {
    std::vector<std::pair<std::string, std::size_t>> fs;
    for (auto f : s.functions()) fs.emplace_back(symbol_name(f), s.info(f).arity);
    std::set<std::string> cs;
    for (auto c : s.free_constants()) cs.insert(symbol_name(c));
    return std::make_pair(fs, cs);
  };
  if (sig_view(a.sig) != sig_view(b.sig)) return false;
  auto rw_keys = [](const RewriteSystem& R) {
    std::multiset<std::string> ks;
    for (const auto& r : R.rules) ks.insert(renaming_key({r.lhs, r.rhs}));
    return ks;
  };
  return rw_keys(a.R) == rw_keys(b.R) && same_rules(a.L0, b.L0) &&
         same_rules(a.saturated, b.saturated);
}

namespace {

const char* kDolevYao = R"(theory dy
# pairing, symmetric and asymmetric encryption
signature
  pair/2 fst/1 snd/1 encs/2 decs/2 enca/2 deca/2 pk/1 sk/1
rules
  decs(encs(X, Y), Y) -> X
  encs(decs(X, Y), Y) -> X
  deca(enca(X, pk(Y)), sk(Y)) -> X
  enca(deca(X, sk(Y)), pk(Y)) -> X
  fst(pair(X, Y)) -> X
  snd(pair(X, Y)) -> Y
deduction
  X, Y => pair(X, Y)
  X => fst(X)
  X => snd(X)
  X, Y => encs(X, Y)
  X, Y => decs(X, Y)
  X, Y => enca(X, Y)
  X, Y => deca(X, Y)
)";

const char* kBlindSignatures = R"(theory blind
# signatures with blinding
signature
  ubl/2 ver/2 sig/2 bl/2 pk/1 sk/1
rules
  ver(sig(X, sk(Y)), pk(Y)) -> X
  ubl(bl(X, Y), Y) -> X
  ubl(sig(bl(X, Y), sk(Z)), Y) -> sig(X, sk(Z))
deduction
  X, Y => sig(X, Y)
  X, Y => ver(X, Y)
  X, Y => bl(X, Y)
  X, Y => ubl(X, Y)
# closure diverges without redundancy elimination; this is the result with it
saturated
  X, Y => sig(X, Y)
  X, Y => ver(X, Y)
  X, Y => bl(X, Y)
  X, Y => ubl(X, Y)
  sig(X, sk(Y)), pk(Y) => X
  bl(X, Y), Y => X
  sig(bl(X, Y), sk(Z)), Y => sig(X, sk(Z))
  X, sk(Y), pk(Y) => X
)";

const char* kDuplicateSignatureKeySelection = R"(theory dsks
# signatures with adversarial key substitution
signature
  ver/3 sig/2 skp/2 pkp/2 pk/1 sk/1 0/0 1/0
rules
  ver(X, sig(X, sk(Y)), pk(Y)) -> 1
  ver(X, sig(X, skp(Y, Z)), pkp(Y, Z)) -> 1
  ver(X, sig(X, sk(Y)), pkp(pk(Y), sig(X, sk(Y)))) -> 1
  sig(X, skp(pk(Y), sig(X, sk(Y)))) -> sig(X, sk(Y))
deduction
  X, Y => sig(X, Y)
  X, Y, Z => ver(X, Y, Z)
  X, Y => skp(X, Y)
  X, Y => pkp(X, Y)
  => 0
  => 1
)";

const char* kTwoStack = R"(theory twostack
# two-stack automaton encoding
signature
  t1/1 t2/1 s/4 f/2 g/1 ua/1 bot/0 q0/0 q1/0 qf/0
rules
  t1(g(f(q0, f(q1, X)))) -> g(f(q1, X))
  t2(g(f(q1, f(qf, X)))) -> g(f(qf, X))
deduction
  X => t1(X)
  X => t2(X)
  X, Y, Z, U => s(X, Y, Z, U)
  X, Y => f(X, Y)
  X => ua(X)
  => bot
  => q0
  => q1
  => qf
)";

}  // namespace

std::vector<std::string> builtin_names() { return {"dy", "dsks", "blind", "twostack"}; }

TheoryBundle builtin(const std::string& name) {
  if (name == "dy") return parse_theory(kDolevYao);
  if (name == "dsks") return parse_theory(kDuplicateSignatureKeySelection);
  if (name == "blind") return parse_theory(kBlindSignatures);
  if (name == "twostack") return parse_theory(kTwoStack);
  throw std::invalid_argument("unknown builtin theory '" + name + "'");
}

Term parse_term(const std::string& text, Signature& sig, std::map<std::string, VarId>& vars,
                bool declare_constants) {
  if (text.find('\n') != std::string::npos) throw ParseError(1, 1, "term spans several lines");
  LineParser p(tokenize(text, 1), sig, declare_constants);
  Term t = p.term(vars);
  p.expect_end();
  return t;
}

std::vector<Term> parse_terms(const std::string& text, Signature& sig,
                              std::map<std::string, VarId>& vars, bool declare_constants) {
  if (text.find('\n') != std::string::npos) throw ParseError(1, 1, "terms span several lines");
  LineParser p(tokenize(text, 1), sig, declare_constants);
  auto ts = p.term_list(vars, Tok::End);
  p.expect_end();
  return ts;
}

ParsedConstraints parse_constraints(const std::string& text, Signature& sig) {
  ParsedConstraints out;
  std::vector<Term> knowledge;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto toks = tokenize(lines[ln], ln + 1);
    if (toks.front().kind == Tok::End) continue;
    LineParser p(toks, sig, true);
    for (;;) {
      const Token kw = p.expect(Tok::Ident, "'knows', 'deduce' or 'eq'");
      if (kw.text == "eq") {
        Term s = p.term(out.variables);
        p.expect(Tok::Eq, "'='");
        Term t = p.term(out.variables);
        out.system.equations.emplace_back(s, t);
      } else if (kw.text == "knows") {
        knowledge = make_knowledge(p.term_list(out.variables, Tok::Semi));
      } else if (kw.text == "deduce") {
        Term goal = p.term(out.variables);
        out.system.constraints.push_back(Constraint{knowledge, goal});
        if (auto err = check_wellformed(out.system))
          p.fail(kw, "constraint system is not well-formed: " + *err);
      } else {
        p.fail(kw, "expected 'knows', 'deduce' or 'eq'");
      }
      if (p.at(Tok::End)) break;
      p.expect(Tok::Semi, "';' or end of line");
      if (p.at(Tok::End)) break;
    }
  }
  return out;
}

std::string serialize(const ConstraintSystem& C) {
  std::vector<Term> all = C.all_terms();
  auto names = canonical_var_names(all);
  std::ostringstream out;
  for (const auto& c : C.constraints) {
    if (c.knowledge.empty()) {
      out << "deduce " << to_string(c.goal, names) << "\n";
      continue;
    }
    out << "knows ";
    for (std::size_t i = 0; i < c.knowledge.size(); ++i)
      out << (i ? ", " : "") << to_string(c.knowledge[i], names);
    out << "; deduce " << to_string(c.goal, names) << "\n";
  }
  for (const auto& [s, t] : C.equations)
    out << "eq " << to_string(s, names) << " = " << to_string(t, names) << "\n";
  return out.str();
}

}  // namespace fvsat
