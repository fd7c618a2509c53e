#pragma once

#include <string>
#include <string_view>

namespace pidinst::timeutil {

/// Current UTC time as ISO-8601 with microseconds: 2024-05-01T12:34:56.123456Z.
std::string now_utc_iso();

/// The timestamp one microsecond later. Used to keep per-entry history
/// timestamps strictly increasing on coarse clocks.
std::string next_microsecond(std::string_view iso);

}  // namespace pidinst::timeutil
