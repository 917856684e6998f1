#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace beauville {

struct Word;

/// One factor of a word: a generator, a left-normed commutator
/// [w1, w2, ..., wk] = [[w1, w2], ..., wk], or a parenthesised subword,
/// raised to an integer exponent (negative allowed).
struct WordTerm {
  enum class Kind { generator, commutator, group };

  Kind kind = Kind::generator;
  int gen = -1;
  std::vector<Word> args;
  std::int64_t exp = 1;

  friend bool operator==(const WordTerm&, const WordTerm&) = default;
};

struct Word {
  std::vector<WordTerm> terms;

  bool empty() const { return terms.empty(); }
  friend bool operator==(const Word&, const Word&) = default;

  static Word gen(int index, std::int64_t exp = 1);
  static Word commutator(Word a, Word b, std::int64_t exp = 1);
  static Word power(Word base, std::int64_t exp);
  /// Concatenation.
  Word operator*(const Word& rhs) const;
};

/// Power-conjugate presentation of a finite p-group.
///
/// Generator g_i has relative order rel_orders[i] (a power of `prime`).
/// power_rels[i] is the word equal to g_i^{r_i}; conj_rels[{i, j}] with i < j
/// is the word equal to g_j^{g_i} = g_i^{-1} g_j g_i. Missing conjugate
/// relations mean g_i and g_j commute.
///
/// Commutators follow [u, v] = u^-1 v^-1 u v throughout.
///
/// `pair` names the distinguished two-generator pair and `defs` expresses
/// further pc generators as words in earlier ones (z = [y, x] and so on);
/// both are optional and only needed for automorphism extension.
struct PcPresentation {
  std::uint32_t prime = 2;
  std::vector<std::string> gens;
  std::vector<std::uint64_t> rel_orders;
  std::vector<Word> power_rels;
  std::map<std::pair<int, int>, Word> conj_rels;
  std::optional<std::pair<int, int>> pair;
  std::map<int, Word> defs;

  std::size_t size() const { return gens.size(); }
  int index_of(std::string_view name) const;

  /// Appends a generator with trivial power relation; returns its index.
  int add_gen(std::string name, std::uint64_t rel_order);
  void set_power(int i, Word w);
  void set_conj(int i, int j, Word w);

  /// Checks the syntactic invariants (prime-power orders, index bounds on
  /// relation words, acyclic definitions). Throws InvalidParams.
  void validate() const;

  friend bool operator==(const PcPresentation&, const PcPresentation&) = default;
};

std::string to_string(const Word& w, const std::vector<std::string>& names);

/// Text form, one statement per line:
///
///     prime 2;
///     gen x order 4;
///     pow x = ;              (empty word is the identity)
///     conj y^x = y z;
///     pair x y;
///     def z = [y, x];
///
/// `#` starts a comment. See docs/presentation-format.md for the grammar.
std::string to_text(const PcPresentation& pres);
PcPresentation parse_presentation(std::string_view text);

/// Lowest and highest generator index referenced in a word; (INT_MAX, -1)
/// for the empty word.
std::pair<int, int> index_range(const Word& w);

}  // namespace beauville
