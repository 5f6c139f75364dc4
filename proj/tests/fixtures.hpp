#pragma once

#include <string>

#include "resolvekit/io.hpp"
#include "resolvekit/rule.hpp"

namespace rktest {

inline std::string data_path(const std::string& name) { return std::string(RK_DATA_DIR) + "/" + name; }

inline resolvekit::LocalRule load_rule(const std::string& name) {
  return resolvekit::read_rule_file(data_path(name));
}

inline resolvekit::Endomorphism load_endo(const std::string& name) {
  return resolvekit::make_endomorphism(load_rule(name));
}

}  // namespace rktest
