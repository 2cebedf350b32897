#pragma once

#include "subword/model.hpp"

#include <string>

namespace subword {

/// Dispatches on the leading @nfa / @blind / @ideal / @cfg header.
ModelRef parse_model(const std::string& text);
ModelRef load_model(const std::string& path);
std::string serialize_model(const ModelRef& m);

Nfa parse_nfa(const std::string& text);
BlindAutomaton parse_blind(const std::string& text);
Ideal parse_ideal(const std::string& text);
Cfg parse_cfg(const std::string& text);

std::string serialize_nfa(const Nfa& a);
std::string serialize_dfa(const Dfa& d);
std::string serialize_blind(const BlindAutomaton& a);
std::string serialize_ideal(const Ideal& i);
std::string serialize_cfg(const Cfg& g);

}  // namespace subword
