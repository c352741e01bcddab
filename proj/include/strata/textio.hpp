#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "strata/model.hpp"

namespace strata {

struct ParseWarning {
    int line = 0;
    int col = 0;
    std::string message;
};

struct ParseResult {
    LayeredModel model;
    std::vector<ParseWarning> warnings;  // unknown attribute keys and the like
};

/// Parses the line-oriented model text format. Unknown directives and layer
/// names are errors; unknown attribute keys are warnings. Referential
/// failures from build_model are rethrown as ParseError with the line of the
/// offending directive.
ParseResult parse_model(std::string_view text);

/// Canonical text form: model header, components top layer first, then links,
/// maps, and requirements, each in canonical order with normalized
/// whitespace. parse_model(serialize_model(m)).model == m for every built
/// model.
std::string serialize_model(const LayeredModel& model);

}  // namespace strata
