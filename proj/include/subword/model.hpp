#pragma once

#include "subword/blind.hpp"
#include "subword/grammar.hpp"
#include "subword/ideal.hpp"
#include "subword/nfa.hpp"

#include <string>
#include <variant>

namespace subword {

struct IdealModel {
    Ideal ideal;
};
struct NfaModel {
    Nfa nfa;
};
struct BlindModel {
    BlindAutomaton automaton;
};
struct CfgModel {
    CnfGrammar grammar;
};

using ModelRef = std::variant<IdealModel, NfaModel, BlindModel, CfgModel>;

const Alphabet& model_alphabet(const ModelRef& m);
std::string model_kind(const ModelRef& m);  // "ideal", "nfa", "blind" or "cfg"

}  // namespace subword
