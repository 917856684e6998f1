#include "beauville/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "beauville/errors.hpp"

namespace beauville {

Word Word::gen(int index, std::int64_t exp) {
  Word w;
  if (exp != 0) w.terms.push_back({WordTerm::Kind::generator, index, {}, exp});
  return w;
}

Word Word::commutator(Word a, Word b, std::int64_t exp) {
  Word w;
  if (exp == 0) return w;
  WordTerm t;
  t.kind = WordTerm::Kind::commutator;
  t.args = {std::move(a), std::move(b)};
  t.exp = exp;
  w.terms.push_back(std::move(t));
  return w;
}

Word Word::power(Word base, std::int64_t exp) {
  Word w;
  if (exp == 0 || base.empty()) return w;
  if (exp == 1) return base;
  if (base.terms.size() == 1 && base.terms[0].exp == 1) {
    base.terms[0].exp = exp;
    return base;
  }
  WordTerm t;
  t.kind = WordTerm::Kind::group;
  t.args = {std::move(base)};
  t.exp = exp;
  w.terms.push_back(std::move(t));
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  w.terms.insert(w.terms.end(), rhs.terms.begin(), rhs.terms.end());
  return w;
}

int PcPresentation::index_of(std::string_view name) const {
  auto it = std::find(gens.begin(), gens.end(), name);
  return it == gens.end() ? -1 : static_cast<int>(it - gens.begin());
}

int PcPresentation::add_gen(std::string name, std::uint64_t rel_order) {
  gens.push_back(std::move(name));
  rel_orders.push_back(rel_order);
  power_rels.emplace_back();
  return static_cast<int>(gens.size()) - 1;
}

void PcPresentation::set_power(int i, Word w) { power_rels.at(i) = std::move(w); }

void PcPresentation::set_conj(int i, int j, Word w) { conj_rels[{i, j}] = std::move(w); }

std::pair<int, int> index_range(const Word& w) {
  int lo = std::numeric_limits<int>::max();
  int hi = -1;
  for (const auto& t : w.terms) {
    if (t.kind == WordTerm::Kind::generator) {
      lo = std::min(lo, t.gen);
      hi = std::max(hi, t.gen);
    } else {
      for (const auto& a : t.args) {
        auto [l, h] = index_range(a);
        lo = std::min(lo, l);
        hi = std::max(hi, h);
      }
    }
  }
  return {lo, hi};
}

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_power_of(std::uint64_t r, std::uint32_t p) {
  if (r < p) return false;
  while (r % p == 0) r /= p;
  return r == 1;
}

}  // namespace

void PcPresentation::validate() const {
  const int n = static_cast<int>(gens.size());
  if (!is_prime(prime)) throw InvalidParams("prime " + std::to_string(prime) + " is not prime");
  if (rel_orders.size() != gens.size() || power_rels.size() != gens.size())
    throw InvalidParams("generator, order and power-relation lists differ in length");
  std::set<std::string> seen;
  for (int i = 0; i < n; ++i) {
    if (gens[i].empty() || !seen.insert(gens[i]).second)
      throw InvalidParams("duplicate or empty generator name '" + gens[i] + "'");
    if (!is_power_of(rel_orders[i], prime))
      throw InvalidParams("relative order of " + gens[i] + " is not a positive power of " +
                          std::to_string(prime));
    auto [lo, hi] = index_range(power_rels[i]);
    if (hi >= n || (hi >= 0 && lo <= i))
      throw InvalidParams("power relation of " + gens[i] + " must use later generators only");
  }
  for (const auto& [key, w] : conj_rels) {
    auto [i, j] = key;
    if (i < 0 || j >= n || i >= j) throw InvalidParams("conjugate relation needs i < j");
    auto [lo, hi] = index_range(w);
    if (hi >= n || (hi >= 0 && lo < j))
      throw InvalidParams("conjugate relation " + gens[j] + "^" + gens[i] +
                          " must use generators from " + gens[j] + " on");
  }
  if (pair) {
    auto [a, b] = *pair;
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw InvalidParams("distinguished pair must name two distinct generators");
  }
  for (const auto& [k, w] : defs) {
    if (k < 0 || k >= n) throw InvalidParams("definition of unknown generator");
    if (pair && (k == pair->first || k == pair->second))
      throw InvalidParams("distinguished generator " + gens[k] + " cannot be defined");
    auto [lo, hi] = index_range(w);
    if (hi >= n || w.empty()) throw InvalidParams("bad definition of " + gens[k]);
  }
  // definitions must not be cyclic
  std::vector<int> state(n, 0);
  std::function<void(int)> visit = [&](int k) {
    if (state[k] == 2) return;
    if (state[k] == 1) throw InvalidParams("cyclic generator definitions at " + gens[k]);
    state[k] = 1;
    auto it = defs.find(k);
    if (it != defs.end()) {
      std::function<void(const Word&)> walk = [&](const Word& w) {
        for (const auto& t : w.terms) {
          if (t.kind == WordTerm::Kind::generator)
            visit(t.gen);
          else
            for (const auto& a : t.args) walk(a);
        }
      };
      walk(it->second);
    }
    state[k] = 2;
  };
  for (int k = 0; k < n; ++k) visit(k);
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& t : w.terms) {
    if (!out.empty()) out += ' ';
    switch (t.kind) {
      case WordTerm::Kind::generator:
        out += names.at(t.gen);
        break;
      case WordTerm::Kind::commutator: {
        out += '[';
        for (std::size_t a = 0; a < t.args.size(); ++a) {
          if (a) out += ", ";
          out += to_string(t.args[a], names);
        }
        out += ']';
        break;
      }
      case WordTerm::Kind::group:
        out += '(' + to_string(t.args.at(0), names) + ')';
        break;
    }
    if (t.exp != 1) out += '^' + std::to_string(t.exp);
  }
  return out;
}

std::string to_text(const PcPresentation& pres) {
  std::ostringstream os;
  const auto& g = pres.gens;
  os << "prime " << pres.prime << ";\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "gen " << g[i] << " order " << pres.rel_orders[i] << ";\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    os << "pow " << g[i] << " =";
    if (!pres.power_rels[i].empty()) os << ' ' << to_string(pres.power_rels[i], g);
    os << ";\n";
  }
  for (const auto& [key, w] : pres.conj_rels) {
    os << "conj " << g[key.second] << '^' << g[key.first] << " =";
    if (!w.empty()) os << ' ' << to_string(w, g);
    os << ";\n";
  }
  if (pres.pair) os << "pair " << g[pres.pair->first] << ' ' << g[pres.pair->second] << ";\n";
  for (const auto& [k, w] : pres.defs) os << "def " << g[k] << " = " << to_string(w, g) << ";\n";
  return os.str();
}

namespace {

struct Token {
  enum class Type { ident, integer, symbol, end };
  Type type;
  std::string text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::ident, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Type::integer, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (std::string_view(";=^[](),").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::symbol, std::string(1, c), line});
      ++i;
    } else {
      throw ParseError("line " + std::to_string(line) + ": unexpected character '" +
                       std::string(1, c) + "'");
    }
  }
  out.push_back({Token::Type::end, "", line});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  PcPresentation run() {
    bool have_prime = false;
    while (peek().type != Token::Type::end) {
      std::string kw = expect_ident();
      if (kw == "prime") {
        if (have_prime) fail("prime declared twice");
        pres_.prime = static_cast<std::uint32_t>(expect_int());
        have_prime = true;
      } else if (kw == "gen") {
        std::string name = expect_ident();
        if (pres_.index_of(name) >= 0) fail("generator '" + name + "' declared twice");
        if (expect_ident() != "order") fail("expected 'order'");
        std::int64_t ord = expect_int();
        if (ord < 2) fail("relative order must be at least 2");
        pres_.add_gen(name, static_cast<std::uint64_t>(ord));
      } else if (kw == "pow") {
        int i = expect_gen();
        expect_symbol("=");
        pres_.power_rels[i] = parse_word();
      } else if (kw == "conj") {
        int j = expect_gen();
        expect_symbol("^");
        int i = expect_gen();
        expect_symbol("=");
        if (i >= j) fail("conjugate relation must read later^earlier");
        pres_.conj_rels[{i, j}] = parse_word();
      } else if (kw == "pair") {
        int a = expect_gen();
        int b = expect_gen();
        pres_.pair = {a, b};
      } else if (kw == "def") {
        int k = expect_gen();
        expect_symbol("=");
        pres_.defs[k] = parse_word();
      } else {
        fail("unknown statement '" + kw + "'");
      }
      expect_symbol(";");
    }
    if (!have_prime) throw ParseError("missing 'prime' declaration");
    try {
      pres_.validate();
    } catch (const InvalidParams& e) {
      throw ParseError(e.what());
    }
    return std::move(pres_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(peek().line) + ": " + msg);
  }

  std::string expect_ident() {
    if (peek().type != Token::Type::ident) fail("expected identifier, got '" + peek().text + "'");
    return next().text;
  }
  std::int64_t expect_int() {
    if (peek().type != Token::Type::integer) fail("expected integer, got '" + peek().text + "'");
    return std::stoll(next().text);
  }
  void expect_symbol(const char* s) {
    if (peek().type != Token::Type::symbol || peek().text != s)
      fail(std::string("expected '") + s + "', got '" + peek().text + "'");
    next();
  }
  bool at_symbol(const char* s) const {
    return peek().type == Token::Type::symbol && peek().text == s;
  }
  int expect_gen() {
    std::string name = expect_ident();
    int i = pres_.index_of(name);
    if (i < 0) fail("undeclared generator '" + name + "'");
    return i;
  }

  Word parse_word() {
    Word w;
    while (peek().type == Token::Type::ident || at_symbol("[") || at_symbol("(")) {
      WordTerm t;
      if (peek().type == Token::Type::ident) {
        t.kind = WordTerm::Kind::generator;
        t.gen = expect_gen();
      } else if (at_symbol("[")) {
        next();
        t.kind = WordTerm::Kind::commutator;
        t.args.push_back(parse_word());
        while (at_symbol(",")) {
          next();
          t.args.push_back(parse_word());
        }
        if (t.args.size() < 2) fail("commutator needs at least two entries");
        expect_symbol("]");
      } else {
        next();
        t.kind = WordTerm::Kind::group;
        t.args.push_back(parse_word());
        expect_symbol(")");
      }
      if (at_symbol("^")) {
        next();
        t.exp = expect_int();
      }
      if (t.exp != 0) w.terms.push_back(std::move(t));
    }
    return w;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  PcPresentation pres_;
};

}  // namespace

PcPresentation parse_presentation(std::string_view text) { return Parser(text).run(); }

}  // namespace beauville
