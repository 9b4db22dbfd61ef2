#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "diffelim/cli/document.hpp"

#ifndef DIFFELIM_FIXTURE_DIR
#error "DIFFELIM_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace fixture {

inline std::string text(const std::string& name) {
  std::ifstream in(std::string(DIFFELIM_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline diffelim::cli::SystemDocument document(const std::string& name) {
  return diffelim::cli::parse_document(text(name));
}

inline diffelim::LinearSystem system(const std::string& name) {
  return diffelim::cli::to_system(document(name));
}

}  // namespace fixture
