#pragma once

#include "crnbound/parser.hpp"

#include <string>

namespace testing {

inline crn::ReactionNetwork net_of(const std::string& text) { return crn::parse_network(text).first; }

inline crn::RawNetwork raw(std::vector<std::string> species, std::vector<crn::IntVector> complexes,
                           std::vector<crn::Reaction> reactions) {
  return crn::RawNetwork{std::move(species), std::move(complexes), std::move(reactions)};
}

}  // namespace testing
