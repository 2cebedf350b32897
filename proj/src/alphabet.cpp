#include "subword/alphabet.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>

namespace subword {

namespace {

std::uint64_t initial_cap() {
    if (const char* env = std::getenv("SUBSEQ_RESOURCE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 2'000'000;
}

std::atomic<std::uint64_t>& cap_slot() {
    static std::atomic<std::uint64_t> cap{initial_cap()};
    return cap;
}

}  // namespace

std::uint64_t resource_cap() { return cap_slot().load(); }
void set_resource_cap(std::uint64_t cap) { cap_slot().store(cap); }

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& s = symbols_[i];
        if (s.empty() || s == "eps") throw ParseError("invalid alphabet symbol '" + s + "'");
        if (!index_.emplace(s, static_cast<Letter>(i)).second)
            throw ParseError("duplicate alphabet symbol '" + s + "'");
    }
}

Letter Alphabet::letter(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw ParseError("symbol '" + s + "' not in alphabet");
    return it->second;
}

std::string Alphabet::format(const Word& w) const {
    if (w.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += symbol(w[i]);
    }
    return out;
}

Word Alphabet::parse_word(const std::string& text) const {
    std::istringstream in(text);
    Word w;
    std::string tok;
    while (in >> tok) {
        if (tok == "eps") continue;
        w.push_back(letter(tok));
    }
    return w;
}

void require_same(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) throw AlphabetMismatch("alphabet mismatch between arguments");
}

bool shortlex_less(const Word& u, const Word& w) {
    if (u.size() != w.size()) return u.size() < w.size();
    return u < w;
}

bool is_subword(const Word& u, const Word& w) {
    std::size_t i = 0;
    for (Letter c : w) {
        if (i == u.size()) break;
        if (u[i] == c) ++i;
    }
    return i == u.size();
}

}  // namespace subword
