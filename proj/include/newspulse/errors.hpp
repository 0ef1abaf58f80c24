#pragma once

#include <stdexcept>
#include <string>

namespace newspulse {

// Bad or inconsistent input: malformed records, out-of-order streams,
// infeasible generator settings, unknown config keys.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A pipeline stage produced nothing downstream stages can use
// (no matching articles, no events inside the session, ...).
struct EmptyResultError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace newspulse
