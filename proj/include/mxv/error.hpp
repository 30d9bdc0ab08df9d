#pragma once

#include <stdexcept>
#include <string>

namespace mxv {

// Every library failure carries a stable error name (e.g. "MalformedXYZ")
// that the CLI and the HTTP service surface verbatim, plus optional
// location context such as "line 12".
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message, std::string context = {})
      : std::runtime_error(message), name_(std::move(name)), context_(std::move(context)) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& context() const noexcept { return context_; }

 private:
  std::string name_;
  std::string context_;
};

}  // namespace mxv
