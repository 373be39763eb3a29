#pragma once

#include <string>

#include "ptspeed/liouvillian.hpp"

namespace ptspeed {

/* On-disk model description:
     {"n": 2, "H": [[[re, im], ...], ...], "L": [[[[re, im], ...], ...], ...]}
   with matrices row-major and every complex entry an [re, im] pair. */
LindbladModel parse_model(const std::string& json_text);
LindbladModel load_model(const std::string& path);

std::string serialize_model(const LindbladModel& model);
void save_model(const LindbladModel& model, const std::string& path);

}  // namespace ptspeed
