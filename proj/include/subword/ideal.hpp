#pragma once

#include "subword/nfa.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subword {

/// Subset of an ambient alphabet (at most 64 letters), bit i = letter i.
using LetterSet = std::uint64_t;

inline bool has(LetterSet s, Letter a) { return (s >> a) & 1U; }
inline LetterSet singleton(Letter a) { return LetterSet{1} << a; }
LetterSet letters_of(const Word& w);

struct IdealAtom {
    bool star = true;
    LetterSet set = 0;   // star atoms
    Letter letter = EPS; // optional-letter atoms

    static IdealAtom star_of(LetterSet y) { return {true, y, EPS}; }
    static IdealAtom optional(Letter x) { return {false, 0, x}; }
    bool operator==(const IdealAtom&) const = default;
};

struct IdealExpr {
    Alphabet ambient;
    std::vector<IdealAtom> atoms;
};

/// Alternating form Y0* {x1,eps} Y1* ... {xn,eps} Yn*.
/// x_i lies in Y_{i-1} only as a bridge between two non-nested stars.
struct Ideal {
    Alphabet ambient;
    std::vector<LetterSet> stars;  // n+1 entries
    std::vector<Letter> opts;      // n entries

    std::size_t length() const { return opts.size(); }
    bool operator==(const Ideal& o) const { return stars == o.stars && opts == o.opts && ambient == o.ambient; }
};

Ideal normalize(const IdealExpr& e);
std::size_t expr_length(const IdealExpr& e);
IdealExpr to_expr(const Ideal& i);

Word canonical_word(LetterSet y, const Alphabet& ambient);
Word ideal_witness(const Ideal& i, std::size_t m);
Dfa ordered_dfa(const Ideal& i);
bool ideal_member(const Ideal& i, const Word& w);
bool ideal_inclusion(const Ideal& i, const Ideal& j);

/// Serialized normal form, e.g. "[a b] c? [b] a?". Empty stars and bridging letters are omitted.
std::string format_ideal(const Ideal& i);
std::string format_expr(const IdealExpr& e);
IdealExpr parse_ideal_seq(const std::string& seq, const Alphabet& ambient);

/// Deterministic order used for ideal listings: lexicographic on format_ideal.
bool ideal_less(const Ideal& a, const Ideal& b);

/// Keeps the inclusion-maximal ideals, one representative per language, sorted by ideal_less.
std::vector<Ideal> maximal_ideals(std::vector<Ideal> ideals);

/// Every ideal whose stored alternating form has exactly `len` optional letters
/// and is a fixed point of normalize.
std::vector<Ideal> candidate_ideals(const Alphabet& ambient, std::size_t len);

/// NFA for the union of the given ideals (the empty union gives an automaton for the empty set).
Nfa union_nfa(const std::vector<Ideal>& ideals, const Alphabet& ambient);

/// Maximal ideals whose union is L(a). Throws when L(a) is not downward closed.
std::vector<Ideal> decompose_downward_closed(const Nfa& a);

BigInt small_alphabet_bound(std::uint64_t alpha_size, std::uint64_t ideal_len_bound);
BigInt f_bound(std::uint64_t n, std::uint64_t k);

/// Position at which every ordered n-state DFA over `alpha_size` letters reads w with a loop.
/// Exhaustive; restricted to n <= 3 and alpha_size <= 2.
std::optional<std::size_t> verify_cycling(const Word& w, std::size_t n, std::size_t alpha_size);

}  // namespace subword
