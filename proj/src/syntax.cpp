#include "strnum/syntax.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace strnum {

std::string ParseError::render() const {
  std::ostringstream os;
  os << "line " << span.line << ", col " << span.col << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Reader
// ---------------------------------------------------------------------------

namespace {

struct ReaderFail {
  ParseError err;
};

[[noreturn]] void fail_at(SourceSpan span, std::string msg, std::vector<std::string> expected = {}) {
  throw ReaderFail{ParseError{span, std::move(msg), std::move(expected)}};
}

struct Reader {
  std::string_view text;
  size_t pos = 0, line = 1, col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  SourceSpan here() const { return SourceSpan{pos, pos + 1, line, col}; }

  void skip_trivia() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '!' || c == '\'' ||
           c == '-';
  }

  SExp read() {
    skip_trivia();
    if (eof()) fail_at(here(), "unexpected end of input", {"a formula"});
    SourceSpan start = here();
    char c = peek();
    if (c == '(') {
      advance();
      SExp list;
      list.kind = SExp::Kind::List;
      list.span = start;
      while (true) {
        skip_trivia();
        if (eof()) fail_at(here(), "unterminated list", {"')'"});
        if (peek() == ')') {
          advance();
          list.span.end = pos;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') fail_at(start, "unmatched ')'");
    if (c == '"') {
      advance();
      std::string chars;
      while (true) {
        if (eof()) fail_at(start, "unterminated string literal", {"'\"'"});
        char d = peek();
        if (d == '"') {
          advance();
          break;
        }
        if (d != '0' && d != '1') {
          fail_at(here(), "string literals may contain only '0' and '1'");
        }
        chars.push_back(d);
        advance();
      }
      SExp s;
      s.kind = SExp::Kind::String;
      s.text = std::move(chars);
      s.span = SourceSpan{start.begin, pos, start.line, start.col};
      return s;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        digits.push_back(peek());
        advance();
      }
      if (!eof() && ident_cont(peek())) {
        fail_at(here(), "malformed numeral");
      }
      SExp s;
      s.kind = SExp::Kind::Numeral;
      s.value = Nat(digits);
      s.span = SourceSpan{start.begin, pos, start.line, start.col};
      return s;
    }
    if (c == '=' || c == '<' || c == '+' || c == '*') {
      advance();
      SExp s;
      s.kind = SExp::Kind::Symbol;
      s.text = std::string(1, c);
      s.span = SourceSpan{start.begin, pos, start.line, start.col};
      return s;
    }
    if (ident_start(c)) {
      std::string name;
      while (!eof() && ident_cont(peek())) {
        name.push_back(peek());
        advance();
      }
      SExp s;
      s.kind = SExp::Kind::Symbol;
      s.text = std::move(name);
      s.span = SourceSpan{start.begin, pos, start.line, start.col};
      return s;
    }
    fail_at(start, std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

std::variant<std::vector<SExp>, ParseError> read_sexprs(std::string_view text) {
  Reader r{text};
  std::vector<SExp> out;
  try {
    while (true) {
      r.skip_trivia();
      if (r.eof()) break;
      out.push_back(r.read());
    }
  } catch (const ReaderFail& f) {
    return f.err;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula builder
// ---------------------------------------------------------------------------

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "and", "or",  "not",    "implies", "iff", "exists", "forall", "epsilon",
      "=",   "<",   "+",      "*",       "len", "concat", "numstr", "pi",
      "Str", "Num",
  };
  return words;
}

struct Builder {
  std::map<std::string, Sort> free;                  // inferred free-variable sorts
  std::vector<std::pair<std::string, Sort>> scope;   // innermost last

  std::optional<Sort> sort_of(const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    auto f = free.find(name);
    if (f != free.end()) return f->second;
    return std::nullopt;
  }

  // Records or checks the sort of a variable occurrence.
  void resolve(const std::string& name, Sort s, const SourceSpan& span) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) {
        if (it->second != s) {
          fail_at(span, "variable '" + name + "' is bound with sort " +
                            sort_name(it->second) + " but used as " + sort_name(s));
        }
        return;
      }
    }
    auto [f, inserted] = free.emplace(name, s);
    if (!inserted && f->second != s) {
      fail_at(span, "variable '" + name + "' was used with sort " + sort_name(f->second) +
                        " earlier but as " + sort_name(s) + " here");
    }
  }

  void check_var_name(const SExp& s) {
    if (s.kind != SExp::Kind::Symbol) fail_at(s.span, "expected a variable name");
    if (reserved_words().count(s.text))
      fail_at(s.span, "'" + s.text + "' is a reserved word and cannot be a variable");
  }

  StrTermPtr str_term(const SExp& s) {
    switch (s.kind) {
      case SExp::Kind::String:
        return lit(s.text);
      case SExp::Kind::Numeral:
        fail_at(s.span, "expected a string term, found a numeral",
                {"a string literal", "epsilon", "a variable", "(concat ...)"});
      case SExp::Kind::Symbol:
        if (s.text == "epsilon") return epsilon();
        check_var_name(s);
        resolve(s.text, Sort::Str, s.span);
        return svar(s.text);
      case SExp::Kind::List: {
        if (s.items.empty() || s.items[0].kind != SExp::Kind::Symbol)
          fail_at(s.span, "expected a string term", {"(concat ...)"});
        const std::string& head = s.items[0].text;
        if (head == "concat") {
          if (s.items.size() < 2) fail_at(s.span, "concat needs at least one argument");
          std::vector<StrTermPtr> parts;
          for (size_t i = 1; i < s.items.size(); ++i) parts.push_back(str_term(s.items[i]));
          return concat(std::move(parts));
        }
        fail_at(s.items[0].span, "'" + head + "' is not a string term constructor", {"concat"});
      }
    }
    fail_at(s.span, "expected a string term");
  }

  NumTermPtr num_term(const SExp& s) {
    switch (s.kind) {
      case SExp::Kind::Numeral:
        return nlit(s.value);
      case SExp::Kind::String:
        fail_at(s.span, "expected a numeric term, found a string literal",
                {"a numeral", "a variable", "(+ ...)", "(len ...)", "(* k t)"});
      case SExp::Kind::Symbol:
        if (s.text == "epsilon")
          fail_at(s.span, "expected a numeric term, found epsilon");
        check_var_name(s);
        resolve(s.text, Sort::Num, s.span);
        return nvar(s.text);
      case SExp::Kind::List: {
        if (s.items.empty() || s.items[0].kind != SExp::Kind::Symbol)
          fail_at(s.span, "expected a numeric term", {"(+ ...)", "(len ...)", "(* k t)"});
        const std::string& head = s.items[0].text;
        if (head == "+") {
          if (s.items.size() < 2) fail_at(s.span, "+ needs at least one argument");
          std::vector<NumTermPtr> parts;
          for (size_t i = 1; i < s.items.size(); ++i) parts.push_back(num_term(s.items[i]));
          return add(std::move(parts));
        }
        if (head == "len") {
          if (s.items.size() != 2) fail_at(s.span, "len takes exactly one string argument");
          return len(str_term(s.items[1]));
        }
        if (head == "*") {
          if (s.items.size() != 3) fail_at(s.span, "* takes a constant and a term");
          if (s.items[1].kind != SExp::Kind::Numeral)
            fail_at(s.items[1].span, "the first argument of * must be a numeral constant");
          return mul(s.items[1].value, num_term(s.items[2]));
        }
        fail_at(s.items[0].span, "'" + head + "' is not a numeric term constructor",
                {"+", "len", "*"});
      }
    }
    fail_at(s.span, "expected a numeric term");
  }

  // Classification for '=' without committing to a sort.
  enum class Kind3 { KStr, KNum, KUnknown };

  Kind3 classify(const SExp& s) {
    switch (s.kind) {
      case SExp::Kind::String:
        return Kind3::KStr;
      case SExp::Kind::Numeral:
        return Kind3::KNum;
      case SExp::Kind::Symbol: {
        if (s.text == "epsilon") return Kind3::KStr;
        check_var_name(s);
        auto known = sort_of(s.text);
        if (!known) return Kind3::KUnknown;
        return *known == Sort::Str ? Kind3::KStr : Kind3::KNum;
      }
      case SExp::Kind::List: {
        if (s.items.empty() || s.items[0].kind != SExp::Kind::Symbol)
          fail_at(s.span, "expected a term");
        const std::string& head = s.items[0].text;
        if (head == "concat") return Kind3::KStr;
        if (head == "+" || head == "len" || head == "*") return Kind3::KNum;
        fail_at(s.items[0].span, "'" + head + "' is not a term constructor",
                {"concat", "+", "len", "*"});
      }
    }
    fail_at(s.span, "expected a term");
  }

  Atom equality(const SExp& whole, const SExp& a, const SExp& b) {
    Kind3 ka = classify(a), kb = classify(b);
    if (ka == Kind3::KUnknown && kb == Kind3::KUnknown) {
      // No determining use on either side: default both to Str.
      resolve(a.text, Sort::Str, a.span);
      resolve(b.text, Sort::Str, b.span);
      ka = kb = Kind3::KStr;
    } else if (ka == Kind3::KUnknown) {
      resolve(a.text, kb == Kind3::KStr ? Sort::Str : Sort::Num, a.span);
      ka = kb;
    } else if (kb == Kind3::KUnknown) {
      resolve(b.text, ka == Kind3::KStr ? Sort::Str : Sort::Num, b.span);
      kb = ka;
    }
    if (ka != kb) {
      fail_at(whole.span, std::string("sort clash in '=': left side is ") +
                              (ka == Kind3::KStr ? "Str" : "Num") + ", right side is " +
                              (kb == Kind3::KStr ? "Str" : "Num"));
    }
    if (ka == Kind3::KStr) return str_eq(str_term(a), str_term(b));
    return num_eq(num_term(a), num_term(b));
  }

  FormulaPtr formula(const SExp& s) {
    if (s.kind == SExp::Kind::Symbol) {
      fail_at(s.span, "expected a formula, found symbol '" + s.text + "'",
              {"(and ...)", "(or ...)", "(not ...)", "(exists ...)", "(forall ...)",
               "(= ...)", "(< ...)", "(numstr ...)", "(pi ...)"});
    }
    if (s.kind != SExp::Kind::List || s.items.empty() ||
        s.items[0].kind != SExp::Kind::Symbol) {
      fail_at(s.span, "expected a formula");
    }
    const std::string& head = s.items[0].text;
    auto arity = [&](size_t n, const char* what) {
      if (s.items.size() != n + 1)
        fail_at(s.span, std::string(what) + " takes exactly " + std::to_string(n) +
                            (n == 1 ? " argument" : " arguments"));
    };

    if (head == "and" || head == "or") {
      if (s.items.size() < 2)
        fail_at(s.span, "'" + head + "' needs at least one argument");
      std::vector<FormulaPtr> parts;
      for (size_t i = 1; i < s.items.size(); ++i) parts.push_back(formula(s.items[i]));
      return head == "and" ? mk_and(std::move(parts)) : mk_or(std::move(parts));
    }
    if (head == "not") {
      arity(1, "not");
      return mk_not(formula(s.items[1]));
    }
    if (head == "implies") {
      arity(2, "implies");
      FormulaPtr a = formula(s.items[1]);
      return mk_implies(std::move(a), formula(s.items[2]));
    }
    if (head == "iff") {
      arity(2, "iff");
      FormulaPtr a = formula(s.items[1]);
      return mk_iff(std::move(a), formula(s.items[2]));
    }
    if (head == "exists" || head == "forall") {
      arity(2, head.c_str());
      const SExp& binders = s.items[1];
      if (binders.kind != SExp::Kind::List || binders.items.empty())
        fail_at(binders.span, "expected a binder list like ((x Num) (S Str))");
      std::vector<std::pair<std::string, Sort>> vars;
      for (const SExp& b : binders.items) {
        if (b.kind != SExp::Kind::List || b.items.size() != 2)
          fail_at(b.span, "each binder must be (name Sort)");
        check_var_name(b.items[0]);
        const SExp& srt = b.items[1];
        if (srt.kind != SExp::Kind::Symbol || (srt.text != "Str" && srt.text != "Num"))
          fail_at(srt.span, "unknown sort", {"Str", "Num"});
        vars.emplace_back(b.items[0].text, srt.text == "Str" ? Sort::Str : Sort::Num);
      }
      for (const auto& v : vars) scope.push_back(v);
      FormulaPtr body = formula(s.items[2]);
      scope.resize(scope.size() - vars.size());
      Quant kind = head == "exists" ? Quant::Exists : Quant::Forall;
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = mk_quant(kind, it->first, it->second, std::move(body));
      return body;
    }
    if (head == "=") {
      arity(2, "=");
      return mk_atom(equality(s, s.items[1], s.items[2]));
    }
    if (head == "<") {
      arity(2, "<");
      NumTermPtr a = num_term(s.items[1]);
      return mk_atom(num_lt(std::move(a), num_term(s.items[2])));
    }
    if (head == "numstr") {
      arity(2, "numstr");
      NumTermPtr n = num_term(s.items[1]);
      return mk_atom(numstr(std::move(n), str_term(s.items[2])));
    }
    if (head == "pi") {
      arity(3, "pi");
      NumTermPtr p = num_term(s.items[1]);
      NumTermPtr x = num_term(s.items[2]);
      return mk_atom(pi(std::move(p), std::move(x), num_term(s.items[3])));
    }
    fail_at(s.items[0].span, "unknown formula operator '" + head + "'",
            {"and", "or", "not", "implies", "iff", "exists", "forall", "=", "<", "numstr",
             "pi"});
  }
};

}  // namespace

std::variant<FormulaPtr, ParseError> build_formula(const SExp& sexp) {
  Builder b;
  try {
    return b.formula(sexp);
  } catch (const ReaderFail& f) {
    return f.err;
  }
}

ParseResult parse(std::string_view text) {
  auto read = read_sexprs(text);
  if (auto* err = std::get_if<ParseError>(&read)) return ParseResult{nullptr, *err};
  auto& forms = std::get<std::vector<SExp>>(read);
  if (forms.empty()) {
    return ParseResult{nullptr, ParseError{SourceSpan{}, "empty input", {"a formula"}}};
  }
  if (forms.size() > 1) {
    return ParseResult{
        nullptr, ParseError{forms[1].span, "unexpected trailing input after formula", {}}};
  }
  auto built = build_formula(forms[0]);
  if (auto* err = std::get_if<ParseError>(&built)) return ParseResult{nullptr, *err};
  return ParseResult{std::get<FormulaPtr>(built), std::nullopt};
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

void print_str(const StrTermPtr& t, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrLit>) {
          if (n.value.empty()) {
            out += "epsilon";
          } else {
            out += '"';
            out += n.value;
            out += '"';
          }
        } else if constexpr (std::is_same_v<T, StrVar>) {
          out += n.name;
        } else {
          out += "(concat";
          for (const auto& p : n.parts) {
            out += ' ';
            print_str(p, out);
          }
          out += ')';
        }
      },
      t->node);
}

void print_num(const NumTermPtr& t, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NumLit>) {
          out += n.value.str();
        } else if constexpr (std::is_same_v<T, NumVar>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Len>) {
          out += "(len ";
          print_str(n.arg, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Add>) {
          out += "(+";
          for (const auto& p : n.parts) {
            out += ' ';
            print_num(p, out);
          }
          out += ')';
        } else {
          out += "(* ";
          out += n.factor.str();
          out += ' ';
          print_num(n.arg, out);
          out += ')';
        }
      },
      t->node);
}

void print_atom(const Atom& a, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StrEq>) {
          out += "(= ";
          print_str(n.lhs, out);
          out += ' ';
          print_str(n.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, NumEq>) {
          out += "(= ";
          print_num(n.lhs, out);
          out += ' ';
          print_num(n.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, NumLt>) {
          out += "(< ";
          print_num(n.lhs, out);
          out += ' ';
          print_num(n.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, NumStr>) {
          out += "(numstr ";
          print_num(n.num, out);
          out += ' ';
          print_str(n.str, out);
          out += ')';
        } else {
          out += "(pi ";
          print_num(n.pow, out);
          out += ' ';
          print_num(n.base, out);
          out += ' ';
          print_num(n.exp, out);
          out += ')';
        }
      },
      a.node);
}

void print_formula(const FormulaPtr& f, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AtomF>) {
          print_atom(n.atom, out);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          out += std::is_same_v<T, And> ? "(and" : "(or";
          for (const auto& p : n.parts) {
            out += ' ';
            print_formula(p, out);
          }
          out += ')';
        } else if constexpr (std::is_same_v<T, Not>) {
          out += "(not ";
          print_formula(n.body, out);
          out += ')';
        } else {
          out += n.kind == Quant::Exists ? "(exists (" : "(forall (";
          out += '(';
          out += n.var;
          out += ' ';
          out += sort_name(n.sort);
          out += ')';
          const Formula* body = n.body.get();
          while (const auto* q = std::get_if<Quantified>(&body->node)) {
            if (q->kind != n.kind) break;
            out += " (";
            out += q->var;
            out += ' ';
            out += sort_name(q->sort);
            out += ')';
            body = q->body.get();
          }
          out += ") ";
          // Reuse the shared_ptr from the last quantifier we folded in.
          const Formula* walk = n.body.get();
          FormulaPtr inner = n.body;
          while (const auto* q = std::get_if<Quantified>(&walk->node)) {
            if (q->kind != n.kind) break;
            inner = q->body;
            walk = q->body.get();
          }
          print_formula(inner, out);
          out += ')';
        }
      },
      f->node);
}

}  // namespace

std::string print(const FormulaPtr& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

std::string print(const StrTermPtr& t) {
  std::string out;
  print_str(t, out);
  return out;
}

std::string print(const NumTermPtr& t) {
  std::string out;
  print_num(t, out);
  return out;
}

std::string print(const Atom& a) {
  std::string out;
  print_atom(a, out);
  return out;
}

}  // namespace strnum
