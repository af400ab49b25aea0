#pragma once

#include <json.hpp>

#include "pw2ss/pixel_word.hpp"

namespace pw2ss {

nlohmann::json screen_to_json(const ScreenSentence& s);
ScreenSentence screen_from_json(const nlohmann::json& j);

} // namespace pw2ss
