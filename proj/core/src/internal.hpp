#pragma once

#include <string>
#include <string_view>

#include "cdlevel/field.hpp"

namespace cdlevel::detail {

Element parse_expression(const Field& f, std::string_view text);
std::string element_to_string(const Field& f, const Element& e);

}  // namespace cdlevel::detail
