#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace subword {

using BigInt = boost::multiprecision::cpp_int;

/// Letters are indices into an Alphabet; EPS marks an empty label.
using Letter = int;
inline constexpr Letter EPS = -1;

using Word = std::vector<Letter>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct AlphabetMismatch : Error {
    using Error::Error;
};
struct ResourceError : Error {
    using Error::Error;
};

/// State/word budget shared by all bounded searches.
/// Defaults to 2'000'000, or SUBSEQ_RESOURCE_CAP when set.
std::uint64_t resource_cap();
void set_resource_cap(std::uint64_t cap);

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(Letter a) const { return symbols_.at(static_cast<std::size_t>(a)); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    bool contains(const std::string& s) const { return index_.count(s) != 0; }
    Letter letter(const std::string& s) const;

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

    std::string format(const Word& w) const;
    Word parse_word(const std::string& text) const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, Letter> index_;
};

void require_same(const Alphabet& a, const Alphabet& b);

/// Shortlex order: shorter first, then lexicographic by letter index.
bool shortlex_less(const Word& u, const Word& w);

struct ShortlexLess {
    bool operator()(const Word& u, const Word& w) const { return shortlex_less(u, w); }
};

bool is_subword(const Word& u, const Word& w);

}  // namespace subword
