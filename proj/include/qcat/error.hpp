#pragma once

#include <stdexcept>
#include <string>

namespace qcat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad parameters or structurally invalid input objects.
struct InvalidArgument : Error {
  using Error::Error;
};

// Neither supported enumeration case applies; the caller must pick another model.
struct UnsupportedEnumeration : Error {
  using Error::Error;
};

struct NotVerifiedQuasiCategory : Error {
  using Error::Error;
};

// A filler that fibrancy guarantees was not found.
struct FillerNotFound : Error {
  using Error::Error;
};

struct PreconditionNotQuasiIso : Error {
  using Error::Error;
};

// Unparseable or inconsistent file contents; `where` names the offending location.
struct MalformedInput : Error {
  MalformedInput(const std::string& where, const std::string& what)
      : Error(where + ": " + what) {}
};

}  // namespace qcat
