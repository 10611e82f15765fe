#pragma once

#include <optional>
#include <string_view>

namespace samas {

enum class StyleClass {
    FaulknerEsque,
    HemingwayEsque,
};

inline const char* style_name(StyleClass c) {
    return c == StyleClass::FaulknerEsque ? "faulkner" : "hemingway";
}

inline std::optional<StyleClass> style_from_name(std::string_view s) {
    if (s == "faulkner") return StyleClass::FaulknerEsque;
    if (s == "hemingway") return StyleClass::HemingwayEsque;
    return std::nullopt;
}

} // namespace samas
