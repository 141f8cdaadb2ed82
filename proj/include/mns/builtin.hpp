#pragma once

#include "mns/interval_system.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mns {

// Registry names: parabolic3, cf, binary, hyperbolic4.
std::vector<std::string> builtin_names();
// Throws ConfigError for unknown names.
NumberSystemSpec builtin_spec(std::string_view name);

NumberSystemSpec parabolic3_system();
NumberSystemSpec cf_system();
NumberSystemSpec binary_system();
NumberSystemSpec hyperbolic4_system();

// Variants outside the registry.
NumberSystemSpec binary_trivial_cover_system();
NumberSystemSpec parabolic3_rotated_cover_system();

// The parabolic map fixing `fixed` and sending `from` to `to`.
DiscMoebius parabolic_map(CirclePoint fixed, CirclePoint from, CirclePoint to);

} // namespace mns
