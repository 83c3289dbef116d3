#pragma once

#include <string>

#include "horo/domain.hpp"

namespace horo {

SlitDomain domain_from_json_text(const std::string& text);
std::string domain_to_json_text(const SlitDomain& d);
SlitDomain load_domain(const std::string& path);

}  // namespace horo
