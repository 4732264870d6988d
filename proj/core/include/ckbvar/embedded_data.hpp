#pragma once

#include <optional>
#include <string_view>

namespace ckbvar {

// Returns the compiled-in copy of a file from core/data/, by file name.
std::optional<std::string_view> embedded_data(std::string_view name);

}  // namespace ckbvar
